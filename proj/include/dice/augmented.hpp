// The 17-component augmented state of the welfare OCP: time index, the six
// endogenous states, the five exogenous states, Delta-scaled per-step
// emissions E and consumption C, the applied inputs (mu, s), and accumulated
// discounted welfare W.  Inputs w = (mu_next, s_next) are shifted one step.
#pragma once

#include <Eigen/Dense>

#include <cmath>

#include "dice/dynamics.hpp"
#include "dice/dual.hpp"
#include "dice/params.hpp"

namespace dice {

inline constexpr int kAugDim = 17;
inline constexpr int kInputDim = 2;

// 0-based component indices; names follow the paper's 1-based x1..x17 order.
namespace aug {
inline constexpr int idx = 0;
inline constexpr int t_at = 1;
inline constexpr int t_lo = 2;
inline constexpr int m_at = 3;
inline constexpr int m_up = 4;
inline constexpr int m_lo = 5;
inline constexpr int capital = 6;
inline constexpr int sigma = 7;
inline constexpr int labor = 8;
inline constexpr int tfp = 9;
inline constexpr int e_land = 10;
inline constexpr int f_ex = 11;
inline constexpr int emissions = 12;    // E state, GtCO2 per step (Delta * annual rate)
inline constexpr int consumption = 13;  // C state, trillion USD per step (Delta * annual rate)
inline constexpr int mu = 14;
inline constexpr int savings = 15;
inline constexpr int welfare = 16;
}  // namespace aug

template <typename S>
using AugVec = Eigen::Matrix<S, kAugDim, 1>;
template <typename S>
using InVec = Eigen::Matrix<S, kInputDim, 1>;

using AugVecd = AugVec<double>;
using InVecd = InVec<double>;

// E(1) = Delta (sigma(1) (1-mu(1)) Y(1) + E_Land(1)) in terms of x(1).
template <typename S>
S initial_emissions_state(const AugVec<S>& x, const ParameterSet& p) {
  const S gross = gross_output(x[aug::tfp], x[aug::capital], x[aug::labor], p.gamma);
  return p.delta * (x[aug::sigma] * (1.0 - x[aug::mu]) * gross + x[aug::e_land]);
}

// C(1) = Delta (1 - theta1(1) mu(1)^theta2)/(1 + a2 T_AT(1)^a3) Y(1) (1 - s(1)).
template <typename S>
S initial_consumption_state(const AugVec<S>& x, const ParameterSet& p) {
  using std::pow;
  const S gross = gross_output(x[aug::tfp], x[aug::capital], x[aug::labor], p.gamma);
  const S theta1 = p.backstop_coeff() * pow(1.0 - p.delta_pb, x[aug::idx] - 1.0) * x[aug::sigma];
  return p.delta * damages_factor(x[aug::t_at], p.a2, p.a3) *
         (1.0 - theta1 * pow(x[aug::mu], p.theta2)) * gross * (1.0 - x[aug::savings]);
}

// x(1) from Appendix A initial conditions and the base-year inputs.
AugVecd initial_augmented_state(const ParameterSet& p, double mu1, double s1);

// One step of the augmented dynamics, x(i+1) = f(x(i), w(i)).
template <typename S>
AugVec<S> augmented_step(const AugVec<S>& x, const InVec<S>& w, const ParameterSet& p) {
  using std::exp;
  using std::log;
  using std::min;
  using std::pow;
  namespace a = aug;

  const S& i = x[a::idx];
  AugVec<S> y;
  y[a::idx] = i + 1.0;

  // climate, causal forcing at the current step
  const S forcing = p.eta * log(x[a::m_at] / p.m_at_1750) / std::log(2.0) + x[a::f_ex];
  y[a::t_at] = p.phi_T(0, 0) * x[a::t_at] + p.phi_T(0, 1) * x[a::t_lo] + p.xi1 * forcing;
  y[a::t_lo] = p.phi_T(1, 0) * x[a::t_at] + p.phi_T(1, 1) * x[a::t_lo];

  // carbon; the E state already carries the Delta factor, so xi2 alone converts
  y[a::m_at] = p.phi_M(0, 0) * x[a::m_at] + p.phi_M(0, 1) * x[a::m_up] + p.xi2 * x[a::emissions];
  y[a::m_up] = p.phi_M(1, 0) * x[a::m_at] + p.phi_M(1, 1) * x[a::m_up] + p.phi_M(1, 2) * x[a::m_lo];
  y[a::m_lo] = p.phi_M(2, 1) * x[a::m_up] + p.phi_M(2, 2) * x[a::m_lo];

  // capital, using the current-step inputs held in the state
  const S gross = gross_output(x[a::tfp], x[a::capital], x[a::labor], p.gamma);
  const S theta1_now = p.backstop_coeff() * pow(1.0 - p.delta_pb, i - 1.0) * x[a::sigma];
  const S net = damages_factor(x[a::t_at], p.a2, p.a3) *
                (1.0 - theta1_now * pow(x[a::mu], p.theta2)) * gross;
  y[a::capital] = p.phi_k() * x[a::capital] + p.delta * net * x[a::savings];

  // exogenous advance
  y[a::sigma] =
      x[a::sigma] * exp(-p.g_sigma * pow(1.0 - p.delta_sigma, p.delta * (i - 1.0)) * p.delta);
  y[a::labor] = x[a::labor] * pow((1.0 + p.la) / (1.0 + x[a::labor]), p.lg);
  y[a::tfp] = x[a::tfp] / (1.0 - p.g_a * exp(-p.delta_a * p.delta * (i - 1.0)));
  y[a::e_land] = (1.0 - p.delta_el) * x[a::e_land];
  y[a::f_ex] = p.f0 + min((p.f1 - p.f0) / p.tf * i, p.f1 - p.f0);

  // next-step emissions and consumption as Delta-scaled states
  const S gross_next = gross_output(y[a::tfp], y[a::capital], y[a::labor], p.gamma);
  y[a::emissions] = p.delta * (y[a::sigma] * (1.0 - w[0]) * gross_next + y[a::e_land]);
  const S theta1_next = p.backstop_coeff() * pow(1.0 - p.delta_pb, i) * y[a::sigma];
  y[a::consumption] = p.delta * damages_factor(y[a::t_at], p.a2, p.a3) *
                      (1.0 - theta1_next * pow(w[0], p.theta2)) * gross_next * (1.0 - w[1]);

  y[a::mu] = w[0];
  y[a::savings] = w[1];

  // welfare leaves step i with the utility of annual consumption x14/Delta
  const S disc = pow(1.0 + p.rho, -p.delta * (i - 1.0));
  y[a::welfare] =
      x[a::welfare] + utility(x[a::consumption] / p.delta, x[a::labor], p.alpha) * disc;
  return y;
}

// Hand-coded reverse sweep: xbar += (df/dx)^T ybar, wbar += (df/dw)^T ybar.
void augmented_step_vjp(const AugVecd& x, const InVecd& w, const ParameterSet& p,
                        const AugVecd& ybar, AugVecd& xbar, InVecd& wbar);

// Tangent propagation through one step: returns (df/dx) dx + (df/dw) dw.
AugVecd augmented_step_jvp(const AugVecd& x, const InVecd& w, const ParameterSet& p,
                           const AugVecd& dx, const InVecd& dw);

// Dense per-step Jacobians via 19-wide forward duals (test/reference path).
void augmented_step_jacobian(const AugVecd& x, const InVecd& w, const ParameterSet& p,
                             Eigen::Matrix<double, kAugDim, kAugDim>& d_dx,
                             Eigen::Matrix<double, kAugDim, kInputDim>& d_dw);

// VJPs of the initial E(1)/C(1) rows, via 17-wide forward duals.
AugVecd initial_emissions_state_gradient(const AugVecd& x, const ParameterSet& p);
AugVecd initial_consumption_state_gradient(const AugVecd& x, const ParameterSet& p);

struct Trajectory {
  Eigen::MatrixXd states;  // kAugDim x (N+1)
  Eigen::MatrixXd inputs;  // kInputDim x N
  int horizon() const { return static_cast<int>(inputs.cols()); }
};

// Forward simulation of the augmented dynamics under a fixed input sequence.
Trajectory rollout(const ParameterSet& p, const AugVecd& x1, const Eigen::MatrixXd& inputs);

// Annual-rate flows derived from one augmented state column.
struct Flows {
  double gross = 0;        // Y, trillion USD/yr
  double net = 0;          // Q
  double emissions = 0;    // E, GtCO2/yr
  double consumption = 0;  // C, trillion USD/yr
  double investment = 0;   // I = Q s
  double damages = 0;      // Omega(T_AT)
};

Flows flows_at(const AugVecd& x, const ParameterSet& p);

}  // namespace dice
