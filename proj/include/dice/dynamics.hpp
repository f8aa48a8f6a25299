// One-step endogenous dynamics and derived economic/geophysical quantities.
// Free functions templated on the scalar type so the same expressions run on
// plain doubles and on forward-mode dual numbers.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "dice/params.hpp"

namespace dice {

// Y = A K^gamma (L/1000)^(1-gamma); labor in millions enters in billions.
template <typename S>
S gross_output(const S& tfp, const S& capital, const S& labor, double gamma) {
  using std::pow;
  return tfp * pow(capital, gamma) * pow(labor / 1000.0, 1.0 - gamma);
}

// Omega = 1 / (1 + a2 T_AT^a3), the retained fraction of output.
template <typename S>
S damages_factor(const S& t_at, double a2, double a3) {
  using std::pow;
  return 1.0 / (1.0 + a2 * pow(t_at, a3));
}

// Q = Omega(T_AT) (1 - theta1 mu^theta2) Y.
template <typename S>
S net_output(const S& gross, const S& t_at, const S& theta1_i, const S& mu,
             const ParameterSet& p) {
  using std::pow;
  return damages_factor(t_at, p.a2, p.a3) * (1.0 - theta1_i * pow(mu, p.theta2)) * gross;
}

// E = sigma (1 - mu) Y + E_Land, GtCO2/yr.
template <typename S>
S emissions_rate(const S& sigma_i, const S& mu, const S& gross, const S& e_land_i) {
  return sigma_i * (1.0 - mu) * gross + e_land_i;
}

// F = eta log2(M_AT / M_AT_1750) + F_EX.
template <typename S>
S radiative_forcing(const S& m_at, const S& f_ex_i, double eta, double m_at_1750) {
  using std::log;
  return eta * log(m_at / m_at_1750) / std::log(2.0) + f_ex_i;
}

// T' = Phi_T T + [xi1, 0]^T F, forcing evaluated at the current step.
inline Eigen::Vector2d climate_step(const Eigen::Vector2d& temps, double forcing,
                                    const Eigen::Matrix2d& phi_T, double xi1) {
  return phi_T * temps + Eigen::Vector2d(xi1 * forcing, 0.0);
}

// M' = Phi_M M + [xi2 delta E, 0, 0]^T; E in GtCO2/yr over a delta-year step.
inline Eigen::Vector3d carbon_step(const Eigen::Vector3d& reservoirs, double emissions,
                                   const Eigen::Matrix3d& phi_M, double xi2, double delta) {
  return phi_M * reservoirs + Eigen::Vector3d(xi2 * delta * emissions, 0.0, 0.0);
}

// K' = (1-delta_K)^delta K + delta Q s.
template <typename S>
S capital_step(const S& capital, const S& net, const S& savings, double delta_k, double delta) {
  return std::pow(1.0 - delta_k, delta) * capital + delta * net * savings;
}

// C = Q (1 - s), trillion USD/yr.
template <typename S>
S consumption(const S& net, const S& savings) {
  return net * (1.0 - savings);
}

// U = L ((c^(1-alpha) - 1)/(1-alpha)) with per-capita c = 1000 C / L
// (thousands of 2010USD per person per year).
template <typename S>
S utility(const S& consumption_ann, const S& labor, double alpha) {
  using std::pow;
  const S cpc = 1000.0 * consumption_ann / labor;
  return labor * ((pow(cpc, 1.0 - alpha) - 1.0) / (1.0 - alpha));
}

double utility_checked(double consumption_ann, double labor, double alpha);

// W = scale2 + scale1 sum_i U(C(i), L(i)) / (1+rho)^(delta (i-1)).
double welfare_objective(const Eigen::VectorXd& consumption_path, const Eigen::VectorXd& labor_path,
                         double rho, double delta, double alpha, double scale1, double scale2);

// Two-layer energy balance calibration, explicit Euler with step delta:
//   phi11 = 1 - delta/C_AT (lambda + gamma_heat)   phi12 = delta gamma_heat / C_AT
//   phi21 = delta gamma_heat / C_LO                phi22 = 1 - delta gamma_heat / C_LO
//   xi1   = delta / C_AT
struct ClimateCalibration {
  Eigen::Matrix2d phi_T;
  double xi1 = 0;
};

ClimateCalibration build_climate_matrices(double c_at, double c_lo, double lambda,
                                          double gamma_heat, double delta);

// Inverse of the above: recover (C_AT, C_LO, lambda, gamma_heat) from a
// tabulated (phi_T, xi1).  Calibration aid; the tables stay authoritative.
struct ClimatePhysical {
  double c_at = 0, c_lo = 0, lambda = 0, gamma_heat = 0;
};

ClimatePhysical invert_climate_matrices(const Eigen::Matrix2d& phi_T, double xi1, double delta);

}  // namespace dice
