// DICE parameter tables: the 2013R and 2016R vintages, initial conditions,
// validation, and the flat key=value override format.
#pragma once

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace dice {

enum class Vintage { Dice2013R, Dice2016R };

std::string_view vintage_name(Vintage v);           // "2013R" / "2016R"
Vintage parse_vintage(std::string_view text);       // accepts "2013R", "DICE2013R", ...

// One vintage's complete parameter table.  Immutable by convention after
// construction; shareable across concurrent scenario runs.
struct ParameterSet {
  Vintage vintage = Vintage::Dice2016R;

  double delta = 5.0;   // years per step
  double t0 = 2015;     // base calendar year
  int n_default = 100;  // default horizon, steps

  Eigen::Matrix2d phi_T;  // climate diffusion [phi11 phi12; phi21 phi22]
  double xi1 = 0;         // forcing-to-temperature gain, per W/m^2 per step
  double eta = 0;         // F_2x, W/m^2 at CO2 doubling

  Eigen::Matrix3d phi_M;  // carbon diffusion (zeta entries, zeros at (0,2),(2,0))
  double xi2 = 12.0 / 44.0;  // GtC per GtCO2
  double m_at_1750 = 588.0;  // preindustrial atmospheric carbon, GtC

  double f0 = 0, f1 = 0;  // exogenous forcing endpoints, W/m^2
  double tf = 0;          // forcing ramp length, steps
  double e_l0 = 0;        // initial land-use emissions, GtCO2/yr
  double delta_el = 0;    // land-use decay per step

  double gamma = 0.3;     // capital elasticity
  double theta2 = 0;      // abatement cost exponent
  double a2 = 0, a3 = 2;  // damage coefficients
  double delta_k = 0.1;   // capital depreciation per year
  double alpha = 1.45;    // elasticity of marginal utility
  double rho = 0.015;     // discount rate per year

  double l0 = 0, la = 0, lg = 0;          // population: initial, asymptote (millions), exponent
  double a0 = 0, g_a = 0, delta_a = 0;    // TFP: initial, growth, decline
  double sigma0_table = 0;                // Appendix B reference; sigma0() recomputes
  double g_sigma = 0, delta_sigma = 0;    // emissions-intensity decline
  double pb = 0, delta_pb = 0;            // backstop price (2010USD/tCO2), decline per step
  double mu0 = 0;                         // base-year mitigation rate
  double e0 = 0, q0 = 0;                  // base-year emissions (GtCO2/yr), output (trillion USD/yr)
  double scale1 = 1, scale2 = 0;          // objective scaling, Eq-(32) style

  double t_at0 = 0, t_lo0 = 0;            // initial temperatures, degC above 1750
  double k0 = 0;                          // initial capital, trillion 2010USD
  double m_at0 = 0, m_up0 = 0, m_lo0 = 0; // initial reservoirs, GtC

  // sigma0 is always recomputed from (e0, q0, mu0); the table value is a
  // validation target only.
  double sigma0() const;
  double phi_k() const { return std::pow(1.0 - delta_k, delta); }
  double backstop_coeff() const { return pb / (1000.0 * theta2); }
  double year_of_step(int step) const { return t0 + delta * (step - 1); }
};

// sigma0 = e0 / (q0 (1 - mu0)); throws std::domain_error when q0(1-mu0) = 0.
double initial_sigma(double e0, double q0, double mu0);

ParameterSet load_parameter_set(Vintage v);

// Empty iff all ParameterSet invariants hold; each entry names field + rule.
std::vector<std::string> validate(const ParameterSet& p);

// Flat key = value text, keys exactly the field names (matrix entries as
// phi11..phi22, zeta11..zeta33).  Round-trips every field bit-exactly.
std::string serialize(const ParameterSet& p);

// Applies key = value overrides on top of `base`.  Unknown keys and malformed
// lines are errors; the message names key and line number.
ParameterSet apply_overrides(ParameterSet base, std::string_view text);

// Convenience: embedded table + optional override text + validation.  Throws
// std::runtime_error listing the violated invariants if validation fails.
ParameterSet load_validated(Vintage v, std::string_view override_text = {});

// FNV-1a digest of the serialized table; stable across runs.
std::string parameter_digest(const ParameterSet& p);

}  // namespace dice
