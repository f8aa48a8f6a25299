#include "dice/exogenous.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dice {

double population_step(double l_i, double la, double lg) {
  return l_i * std::pow((1.0 + la) / (1.0 + l_i), lg);
}

double tfp_step(double a_i, double g_a, double delta_a, double delta, int i) {
  const double denom = 1.0 - g_a * std::exp(-delta_a * delta * (i - 1));
  if (!(denom > 0.0))
    throw std::domain_error("tfp_step: gA exp(-delta_A delta (i-1)) >= 1 at i=" + std::to_string(i));
  return a_i / denom;
}

double sigma_step(double sigma_i, double g_sigma, double delta_sigma, double delta, int i) {
  return sigma_i * std::exp(-g_sigma * std::pow(1.0 - delta_sigma, delta * (i - 1)) * delta);
}

double abatement_cost_coeff(double sigma_i, double pb, double delta_pb, double theta2, int i) {
  return pb / (1000.0 * theta2) * std::pow(1.0 - delta_pb, i - 1) * sigma_i;
}

double forcing_exo(int i, double f0, double f1, double tf) {
  return f0 + std::min(f1 - f0, (f1 - f0) / tf * (i - 1));
}

double land_emissions(int i, double e_l0, double delta_el) {
  return e_l0 * std::pow(1.0 - delta_el, i - 1);
}

ExogenousPath build_exogenous_path(const ParameterSet& p, int horizon) {
  if (horizon < 0) throw std::invalid_argument("build_exogenous_path: horizon must be >= 0");
  ExogenousPath path;
  path.horizon = horizon;
  const int n = horizon + 1;
  path.labor.resize(n);
  path.tfp.resize(n);
  path.sigma.resize(n);
  path.theta1.resize(n);
  path.forcing_ex.resize(n);
  path.land.resize(n);

  path.labor(0) = p.l0;
  path.tfp(0) = p.a0;
  path.sigma(0) = p.sigma0();
  for (int i = 1; i < n; ++i) {
    path.labor(i) = population_step(path.labor(i - 1), p.la, p.lg);
    path.tfp(i) = tfp_step(path.tfp(i - 1), p.g_a, p.delta_a, p.delta, i);
    path.sigma(i) = sigma_step(path.sigma(i - 1), p.g_sigma, p.delta_sigma, p.delta, i);
  }
  for (int i = 1; i <= n; ++i) {
    path.theta1(i - 1) = abatement_cost_coeff(path.sigma(i - 1), p.pb, p.delta_pb, p.theta2, i);
    path.forcing_ex(i - 1) = forcing_exo(i, p.f0, p.f1, p.tf);
    path.land(i - 1) = land_emissions(i, p.e_l0, p.delta_el);
  }
  return path;
}

std::string to_csv(const ExogenousPath& path, const ParameterSet& p) {
  std::ostringstream out;
  out << "step,year,L,A,sigma,theta1,F_EX,E_Land\n";
  char buf[256];
  for (int i = 1; i <= path.horizon + 1; ++i) {
    std::snprintf(buf, sizeof buf, "%d,%.0f,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n", i,
                  p.year_of_step(i), path.L(i), path.A(i), path.sig(i), path.th1(i), path.fex(i),
                  path.eland(i));
    out << buf;
  }
  return out.str();
}

}  // namespace dice
