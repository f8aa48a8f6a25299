#include "dice/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace dice {

double utility_checked(double consumption_ann, double labor, double alpha) {
  if (!(consumption_ann > 0.0)) throw std::domain_error("utility: consumption must be positive");
  if (!(labor > 0.0)) throw std::domain_error("utility: labor must be positive");
  if (alpha == 1.0) return labor * std::log(1000.0 * consumption_ann / labor);
  return utility(consumption_ann, labor, alpha);
}

double welfare_objective(const Eigen::VectorXd& consumption_path, const Eigen::VectorXd& labor_path,
                         double rho, double delta, double alpha, double scale1, double scale2) {
  if (consumption_path.size() != labor_path.size())
    throw std::invalid_argument("welfare_objective: path lengths differ");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < consumption_path.size(); ++i) {
    const double disc = std::pow(1.0 + rho, -delta * static_cast<double>(i));
    sum += utility(consumption_path(i), labor_path(i), alpha) * disc;
  }
  return scale2 + scale1 * sum;
}

ClimateCalibration build_climate_matrices(double c_at, double c_lo, double lambda,
                                          double gamma_heat, double delta) {
  if (!(c_at > 0) || !(c_lo > 0) || !(lambda >= 0) || !(gamma_heat >= 0) || !(delta > 0))
    throw std::invalid_argument("build_climate_matrices: inputs must be positive");
  if (!(delta / c_at * (lambda + gamma_heat) < 1.0))
    throw std::domain_error("build_climate_matrices: explicit Euler unstable, delta/C_AT (lambda+gamma) >= 1");
  ClimateCalibration cal;
  cal.phi_T(0, 0) = 1.0 - delta / c_at * (lambda + gamma_heat);
  cal.phi_T(0, 1) = delta * gamma_heat / c_at;
  cal.phi_T(1, 0) = delta * gamma_heat / c_lo;
  cal.phi_T(1, 1) = 1.0 - delta * gamma_heat / c_lo;
  cal.xi1 = delta / c_at;
  return cal;
}

ClimatePhysical invert_climate_matrices(const Eigen::Matrix2d& phi_T, double xi1, double delta) {
  if (!(xi1 > 0)) throw std::invalid_argument("invert_climate_matrices: xi1 must be positive");
  ClimatePhysical phys;
  phys.c_at = delta / xi1;
  phys.gamma_heat = phi_T(0, 1) / xi1;
  phys.lambda = (1.0 - phi_T(0, 0)) / xi1 - phys.gamma_heat;
  phys.c_lo = delta * phys.gamma_heat / phi_T(1, 0);
  return phys;
}

}  // namespace dice
