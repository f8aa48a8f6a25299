// Exogenous drivers: population, total factor productivity, emissions
// intensity, abatement cost coefficient, non-CO2 forcing, land-use emissions.
// All are control-independent and precomputed once per scenario.
#pragma once

#include <Eigen/Dense>

#include <string>

#include "dice/params.hpp"

namespace dice {

// Hassell population map: L' = L ((1+La)/(1+L))^lg.
double population_step(double l_i, double la, double lg);

// A' = A / (1 - gA exp(-delta_A * delta * (i-1))), 1-based step index i.
// Throws std::domain_error when the denominator is not positive.
double tfp_step(double a_i, double g_a, double delta_a, double delta, int i);

// sigma' = sigma exp(-g_sigma (1-delta_sigma)^(delta (i-1)) delta).
double sigma_step(double sigma_i, double g_sigma, double delta_sigma, double delta, int i);

// theta1(i) = pb/(1000 theta2) (1-delta_pb)^(i-1) sigma(i).
double abatement_cost_coeff(double sigma_i, double pb, double delta_pb, double theta2, int i);

// F_EX(i) = f0 + min(f1-f0, (f1-f0)/tf (i-1)).
double forcing_exo(int i, double f0, double f1, double tf);

// E_Land(i) = E_L0 (1-delta_EL)^(i-1).
double land_emissions(int i, double e_l0, double delta_el);

// Sequences over steps 1..horizon+1; index 0 of each vector is the base year.
struct ExogenousPath {
  int horizon = 0;
  Eigen::VectorXd labor;       // L, millions of people
  Eigen::VectorXd tfp;         // A
  Eigen::VectorXd sigma;       // emissions intensity
  Eigen::VectorXd theta1;      // abatement cost coefficient
  Eigen::VectorXd forcing_ex;  // F_EX, W/m^2
  Eigen::VectorXd land;        // E_Land, GtCO2/yr

  // 1-based step access mirroring the paper's index convention.
  double L(int i) const { return labor(i - 1); }
  double A(int i) const { return tfp(i - 1); }
  double sig(int i) const { return sigma(i - 1); }
  double th1(int i) const { return theta1(i - 1); }
  double fex(int i) const { return forcing_ex(i - 1); }
  double eland(int i) const { return land(i - 1); }
};

ExogenousPath build_exogenous_path(const ParameterSet& p, int horizon);

// CSV with columns: step, year, L, A, sigma, theta1, F_EX, E_Land.
std::string to_csv(const ExogenousPath& path, const ParameterSet& p);

}  // namespace dice
