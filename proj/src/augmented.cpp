#include "dice/augmented.hpp"

#include <cmath>
#include <stdexcept>

namespace dice {

namespace a = aug;

AugVecd initial_augmented_state(const ParameterSet& p, double mu1, double s1) {
  AugVecd x;
  x[a::idx] = 1.0;
  x[a::t_at] = p.t_at0;
  x[a::t_lo] = p.t_lo0;
  x[a::m_at] = p.m_at0;
  x[a::m_up] = p.m_up0;
  x[a::m_lo] = p.m_lo0;
  x[a::capital] = p.k0;
  x[a::sigma] = p.sigma0();
  x[a::labor] = p.l0;
  x[a::tfp] = p.a0;
  x[a::e_land] = p.e_l0;
  x[a::f_ex] = p.f0;
  x[a::mu] = mu1;
  x[a::savings] = s1;
  x[a::welfare] = 0.0;
  x[a::emissions] = initial_emissions_state(x, p);
  x[a::consumption] = initial_consumption_state(x, p);
  return x;
}

void augmented_step_vjp(const AugVecd& x, const InVecd& w, const ParameterSet& p,
                        const AugVecd& yb, AugVecd& xb, InVecd& wb) {
  const double ln2 = std::log(2.0);
  const double i = x[a::idx];
  const double cpb = p.backstop_coeff();

  // forward intermediates, mirroring augmented_step
  const double y_t_at = p.phi_T(0, 0) * x[a::t_at] + p.phi_T(0, 1) * x[a::t_lo] +
                        p.xi1 * (p.eta * std::log(x[a::m_at] / p.m_at_1750) / ln2 + x[a::f_ex]);

  const double kg = std::pow(x[a::capital], p.gamma);
  const double lh = std::pow(x[a::labor] / 1000.0, 1.0 - p.gamma);
  const double gross = x[a::tfp] * kg * lh;
  const double dp_now = std::pow(1.0 - p.delta_pb, i - 1.0);
  const double theta1_now = cpb * dp_now * x[a::sigma];
  const double tp = std::pow(x[a::t_at], p.a3);
  const double omega = 1.0 / (1.0 + p.a2 * tp);
  const double mu_pow = std::pow(x[a::mu], p.theta2);
  const double abat = 1.0 - theta1_now * mu_pow;
  const double net = omega * abat * gross;

  const double sig_ex =
      std::exp(-p.g_sigma * std::pow(1.0 - p.delta_sigma, p.delta * (i - 1.0)) * p.delta);
  const double y_sigma = x[a::sigma] * sig_ex;
  const double lrat = (1.0 + p.la) / (1.0 + x[a::labor]);
  const double lpow = std::pow(lrat, p.lg);
  const double y_labor = x[a::labor] * lpow;
  const double tfp_den = 1.0 - p.g_a * std::exp(-p.delta_a * p.delta * (i - 1.0));
  const double y_tfp = x[a::tfp] / tfp_den;
  const double y_cap = p.phi_k() * x[a::capital] + p.delta * net * x[a::savings];

  const double kg2 = std::pow(y_cap, p.gamma);
  const double lh2 = std::pow(y_labor / 1000.0, 1.0 - p.gamma);
  const double gross2 = y_tfp * kg2 * lh2;
  const double dp_next = std::pow(1.0 - p.delta_pb, i);
  const double theta1_next = cpb * dp_next * y_sigma;
  const double dmg2 = 1.0 + p.a2 * std::pow(y_t_at, p.a3);
  const double mu_pow_w = std::pow(w[0], p.theta2);
  const double abat2 = 1.0 - theta1_next * mu_pow_w;

  const double cpc = 1000.0 * (x[a::consumption] / p.delta) / x[a::labor];
  const double beta = 1.0 - p.alpha;
  const double cpc_b = std::pow(cpc, beta);
  const double disc = std::pow(1.0 + p.rho, -p.delta * (i - 1.0));
  const double util = x[a::labor] * ((cpc_b - 1.0) / beta);

  // reverse sweep ------------------------------------------------------
  // y17: welfare accumulation
  xb[a::welfare] += yb[a::welfare];
  {
    const double ub = yb[a::welfare] * disc;
    xb[a::idx] += yb[a::welfare] * util * (-p.delta * std::log1p(p.rho)) * disc;
    xb[a::labor] += ub * ((cpc_b - 1.0) / beta - cpc_b);
    xb[a::consumption] += ub * std::pow(cpc, beta - 1.0) * 1000.0 / p.delta;
  }
  // y15, y16: input passthrough
  wb[0] += yb[a::mu];
  wb[1] += yb[a::savings];

  // adjoints of outputs that also feed y13/y14 internally
  double y_t_at_b = yb[a::t_at];
  double y_cap_b = yb[a::capital];
  double y_sigma_b = yb[a::sigma];
  double y_labor_b = yb[a::labor];
  double y_tfp_b = yb[a::tfp];
  double y_eland_b = yb[a::e_land];
  double gross2_b = 0.0;

  // y14: consumption state
  {
    const double c14 = yb[a::consumption] * p.delta;
    const double pref = c14 * (1.0 - w[1]) / dmg2;
    const double abat2_b = pref * gross2;
    gross2_b += pref * abat2;
    const double dmg2_b = -pref * abat2 * gross2 / dmg2;
    wb[1] += -c14 * abat2 * gross2 / dmg2;

    const double theta1_next_b = -abat2_b * mu_pow_w;
    if (w[0] > 0.0 || p.theta2 <= 1.0)
      wb[0] += -abat2_b * theta1_next * p.theta2 * std::pow(w[0], p.theta2 - 1.0);
    y_sigma_b += theta1_next_b * cpb * dp_next;
    xb[a::idx] += theta1_next_b * cpb * y_sigma * std::log(1.0 - p.delta_pb) * dp_next;
    y_t_at_b += dmg2_b * p.a2 * p.a3 * std::pow(y_t_at, p.a3 - 1.0);
  }
  // y13: emissions state
  {
    const double c13 = yb[a::emissions] * p.delta;
    y_sigma_b += c13 * (1.0 - w[0]) * gross2;
    wb[0] += -c13 * y_sigma * gross2;
    gross2_b += c13 * y_sigma * (1.0 - w[0]);
    y_eland_b += c13;
  }
  // gross2 = y_tfp y_cap^gamma (y_labor/1000)^(1-gamma)
  y_tfp_b += gross2_b * kg2 * lh2;
  y_cap_b += gross2_b * y_tfp * lh2 * p.gamma * std::pow(y_cap, p.gamma - 1.0);
  y_labor_b += gross2_b * y_tfp * kg2 * (1.0 - p.gamma) * std::pow(y_labor / 1000.0, -p.gamma) / 1000.0;

  // y12: exogenous forcing ramp
  {
    const double slope = (p.f1 - p.f0) / p.tf;
    if (slope * i <= p.f1 - p.f0) xb[a::idx] += yb[a::f_ex] * slope;
  }
  // y11: land-use decay
  xb[a::e_land] += y_eland_b * (1.0 - p.delta_el);
  // y10: TFP
  xb[a::tfp] += y_tfp_b / tfp_den;
  xb[a::idx] += y_tfp_b * (-x[a::tfp] / (tfp_den * tfp_den)) *
                (p.g_a * p.delta_a * p.delta * std::exp(-p.delta_a * p.delta * (i - 1.0)));
  // y9: Hassell map
  xb[a::labor] += y_labor_b * lpow * (1.0 - p.lg * x[a::labor] / (1.0 + x[a::labor]));
  // y8: emissions intensity
  xb[a::sigma] += y_sigma_b * sig_ex;
  xb[a::idx] += y_sigma_b * x[a::sigma] * sig_ex *
                (-p.g_sigma * p.delta * std::pow(1.0 - p.delta_sigma, p.delta * (i - 1.0))) *
                std::log(1.0 - p.delta_sigma) * p.delta;
  // y7: capital
  xb[a::capital] += y_cap_b * p.phi_k();
  const double net_b = y_cap_b * p.delta * x[a::savings];
  xb[a::savings] += y_cap_b * p.delta * net;
  {
    const double omega_b = net_b * abat * gross;
    const double abat_b = net_b * omega * gross;
    const double gross_b = net_b * omega * abat;

    const double theta1_now_b = -abat_b * mu_pow;
    if (x[a::mu] > 0.0 || p.theta2 <= 1.0)
      xb[a::mu] += -abat_b * theta1_now * p.theta2 * std::pow(x[a::mu], p.theta2 - 1.0);
    xb[a::sigma] += theta1_now_b * cpb * dp_now;
    xb[a::idx] += theta1_now_b * cpb * x[a::sigma] * std::log(1.0 - p.delta_pb) * dp_now;

    xb[a::t_at] += omega_b * (-p.a2 * omega * omega) * p.a3 * std::pow(x[a::t_at], p.a3 - 1.0);

    xb[a::tfp] += gross_b * kg * lh;
    xb[a::capital] += gross_b * x[a::tfp] * lh * p.gamma * std::pow(x[a::capital], p.gamma - 1.0);
    xb[a::labor] +=
        gross_b * x[a::tfp] * kg * (1.0 - p.gamma) * std::pow(x[a::labor] / 1000.0, -p.gamma) / 1000.0;
  }
  // y4..y6: carbon
  xb[a::m_at] += yb[a::m_at] * p.phi_M(0, 0) + yb[a::m_up] * p.phi_M(1, 0);
  xb[a::m_up] += yb[a::m_at] * p.phi_M(0, 1) + yb[a::m_up] * p.phi_M(1, 1) + yb[a::m_lo] * p.phi_M(2, 1);
  xb[a::m_lo] += yb[a::m_up] * p.phi_M(1, 2) + yb[a::m_lo] * p.phi_M(2, 2);
  xb[a::emissions] += yb[a::m_at] * p.xi2;
  // y2, y3: climate (y_t_at_b carries the damages use in y14)
  xb[a::t_at] += y_t_at_b * p.phi_T(0, 0) + yb[a::t_lo] * p.phi_T(1, 0);
  xb[a::t_lo] += y_t_at_b * p.phi_T(0, 1) + yb[a::t_lo] * p.phi_T(1, 1);
  {
    const double forcing_b = y_t_at_b * p.xi1;
    xb[a::m_at] += forcing_b * p.eta / (x[a::m_at] * ln2);
    xb[a::f_ex] += forcing_b;
  }
  // y1: time index
  xb[a::idx] += yb[a::idx];
}

AugVecd augmented_step_jvp(const AugVecd& x, const InVecd& w, const ParameterSet& p,
                           const AugVecd& dx, const InVecd& dw) {
  using D = Dual<1>;
  AugVec<D> xd;
  InVec<D> wd;
  for (int k = 0; k < kAugDim; ++k) xd[k] = D(x[k], D::Tangent::Constant(dx[k]));
  for (int k = 0; k < kInputDim; ++k) wd[k] = D(w[k], D::Tangent::Constant(dw[k]));
  const AugVec<D> yd = augmented_step(xd, wd, p);
  AugVecd dy;
  for (int k = 0; k < kAugDim; ++k) dy[k] = yd[k].d(0);
  return dy;
}

void augmented_step_jacobian(const AugVecd& x, const InVecd& w, const ParameterSet& p,
                             Eigen::Matrix<double, kAugDim, kAugDim>& d_dx,
                             Eigen::Matrix<double, kAugDim, kInputDim>& d_dw) {
  constexpr int n = kAugDim + kInputDim;
  using D = Dual<n>;
  AugVec<D> xd;
  InVec<D> wd;
  for (int k = 0; k < kAugDim; ++k) xd[k] = D::seed(x[k], k);
  for (int k = 0; k < kInputDim; ++k) wd[k] = D::seed(w[k], kAugDim + k);
  const AugVec<D> yd = augmented_step(xd, wd, p);
  for (int r = 0; r < kAugDim; ++r) {
    d_dx.row(r) = yd[r].d.template head<kAugDim>().transpose();
    d_dw.row(r) = yd[r].d.template tail<kInputDim>().transpose();
  }
}

namespace {

template <typename F>
AugVecd dual_gradient(const AugVecd& x, F&& f) {
  using D = Dual<kAugDim>;
  AugVec<D> xd;
  for (int k = 0; k < kAugDim; ++k) xd[k] = D::seed(x[k], k);
  return f(xd).d;
}

}  // namespace

AugVecd initial_emissions_state_gradient(const AugVecd& x, const ParameterSet& p) {
  return dual_gradient(x, [&](const AugVec<Dual<kAugDim>>& xd) {
    return initial_emissions_state(xd, p);
  });
}

AugVecd initial_consumption_state_gradient(const AugVecd& x, const ParameterSet& p) {
  return dual_gradient(x, [&](const AugVec<Dual<kAugDim>>& xd) {
    return initial_consumption_state(xd, p);
  });
}

Trajectory rollout(const ParameterSet& p, const AugVecd& x1, const Eigen::MatrixXd& inputs) {
  if (inputs.rows() != kInputDim) throw std::invalid_argument("rollout: inputs must be 2 x N");
  Trajectory traj;
  const int n = static_cast<int>(inputs.cols());
  traj.states.resize(kAugDim, n + 1);
  traj.inputs = inputs;
  traj.states.col(0) = x1;
  AugVecd x = x1;
  for (int j = 0; j < n; ++j) {
    x = augmented_step<double>(x, inputs.col(j), p);
    traj.states.col(j + 1) = x;
  }
  return traj;
}

Flows flows_at(const AugVecd& x, const ParameterSet& p) {
  Flows f;
  f.gross = gross_output(x[a::tfp], x[a::capital], x[a::labor], p.gamma);
  const double theta1 =
      p.backstop_coeff() * std::pow(1.0 - p.delta_pb, x[a::idx] - 1.0) * x[a::sigma];
  f.damages = damages_factor(x[a::t_at], p.a2, p.a3);
  f.net = f.damages * (1.0 - theta1 * std::pow(x[a::mu], p.theta2)) * f.gross;
  f.emissions = x[a::emissions] / p.delta;
  f.consumption = x[a::consumption] / p.delta;
  f.investment = f.net * x[a::savings];
  return f;
}

}  // namespace dice
