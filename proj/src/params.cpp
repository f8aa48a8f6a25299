#include "dice/params.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dice {

std::string_view vintage_name(Vintage v) {
  return v == Vintage::Dice2013R ? "2013R" : "2016R";
}

Vintage parse_vintage(std::string_view text) {
  if (text == "2013R" || text == "DICE2013R" || text == "dice2013r" || text == "2013")
    return Vintage::Dice2013R;
  if (text == "2016R" || text == "DICE2016R" || text == "dice2016r" || text == "2016")
    return Vintage::Dice2016R;
  throw std::invalid_argument("unknown vintage '" + std::string(text) +
                              "' (expected 2013R or 2016R)");
}

double initial_sigma(double e0, double q0, double mu0) {
  const double denom = q0 * (1.0 - mu0);
  if (denom == 0.0) {
    if (e0 == 0.0) return 0.0;
    throw std::domain_error("initial_sigma: q0 (1 - mu0) is zero");
  }
  return e0 / denom;
}

double ParameterSet::sigma0() const { return initial_sigma(e0, q0, mu0); }

ParameterSet load_parameter_set(Vintage v) {
  ParameterSet p;
  p.vintage = v;
  p.delta = 5.0;
  p.xi2 = 12.0 / 44.0;
  p.m_at_1750 = 588.0;
  p.gamma = 0.3;
  p.a3 = 2.0;
  p.delta_k = 0.1;
  p.alpha = 1.45;
  p.rho = 0.015;
  p.lg = 0.134;
  p.delta_sigma = 0.001;
  p.delta_pb = 0.025;

  if (v == Vintage::Dice2013R) {
    p.t0 = 2010;
    p.n_default = 60;
    p.mu0 = 0.039;
    p.phi_T << 0.8630, 0.0086, 0.025, 0.975;
    p.phi_M << 0.912, 0.03833, 0.0, 0.088, 0.9592, 0.0003375, 0.0, 0.00250, 0.9996625;
    p.eta = 3.8;
    p.xi1 = 0.098;
    p.f0 = 0.25;
    p.f1 = 0.70;
    p.tf = 18;
    p.e_l0 = 3.3;
    p.delta_el = 0.2;
    p.theta2 = 2.8;
    p.a2 = 0.00267;
    p.l0 = 6838;
    p.la = 10500;
    p.a0 = 3.80;
    p.g_a = 0.079;
    p.delta_a = 0.006;
    p.sigma0_table = 0.5491;
    p.g_sigma = 0.01;
    p.pb = 344;
    p.scale1 = 0.016408662;
    p.scale2 = 3855.106895;
    p.e0 = 33.61;
    p.q0 = 63.69;
    p.t_at0 = 0.8;
    p.t_lo0 = 0.0068;
    p.k0 = 135;
    p.m_at0 = 830.4;
    p.m_up0 = 1527;
    p.m_lo0 = 10010;
  } else {
    p.t0 = 2015;
    p.n_default = 100;
    p.mu0 = 0.03;
    p.phi_T << 0.8718, 0.0088, 0.025, 0.975;
    p.phi_M << 0.88, 0.196, 0.0, 0.12, 0.797, 0.001465, 0.0, 0.007, 0.99853488;
    p.eta = 3.6813;
    p.xi1 = 0.1005;
    p.f0 = 0.5;
    p.f1 = 1.0;
    p.tf = 17;
    p.e_l0 = 2.6;
    p.delta_el = 0.115;
    p.theta2 = 2.6;
    p.a2 = 0.00236;
    p.l0 = 7403;
    p.la = 11500;
    p.a0 = 5.115;
    p.g_a = 0.076;
    p.delta_a = 0.005;
    p.sigma0_table = 0.3503;
    p.g_sigma = 0.0152;
    p.pb = 550;
    p.scale1 = 0.030245527;
    p.scale2 = 10993.704;
    p.e0 = 35.85;
    p.q0 = 105.5;
    p.t_at0 = 0.85;
    p.t_lo0 = 0.0068;
    p.k0 = 223;
    p.m_at0 = 851;
    p.m_up0 = 460;
    p.m_lo0 = 1740;
  }
  return p;
}

namespace {

std::string fmt(double x, const char* f = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

std::vector<std::string> validate(const ParameterSet& p) {
  std::vector<std::string> bad;

  for (int c = 0; c < 3; ++c) {
    const double sum = p.phi_M.col(c).sum();
    if (std::abs(sum - 1.0) > 1e-4)
      bad.push_back("phi_M column " + std::to_string(c + 1) + " sums to " + fmt(sum, "%.6g"));
  }

  const Eigen::Vector2cd ev = p.phi_T.eigenvalues();
  const double rad = std::max(std::abs(ev(0)), std::abs(ev(1)));
  if (!(rad < 1.0))
    bad.push_back("phi_T: spectral radius >= 1 (" + fmt(rad, "%.6g") + ")");

  const auto unit = [&](double x, const char* name) {
    if (!in_open_unit(x)) bad.push_back(std::string(name) + ": must lie in (0,1), got " + fmt(x, "%.6g"));
  };
  unit(p.mu0, "mu0");
  unit(p.delta_el, "delta_EL");
  unit(p.delta_pb, "delta_pb");
  unit(p.g_sigma, "g_sigma");
  unit(p.delta_sigma, "delta_sigma");

  if (!(p.delta > 0)) bad.push_back("delta: must be positive");
  if (!(p.n_default > 0)) bad.push_back("N_default: must be positive");
  if (!(p.tf > 0)) bad.push_back("tf: must be positive");

  if (!(p.q0 > 0)) bad.push_back("q0: must be positive");
  if (p.q0 > 0 && p.mu0 < 1.0) {
    const double s0 = initial_sigma(p.e0, p.q0, p.mu0);
    if (std::abs(s0 - p.sigma0_table) > 1e-4)
      bad.push_back("sigma0: e0/(q0(1-mu0)) = " + fmt(s0, "%.6g") +
                    " deviates from tabulated " + fmt(p.sigma0_table, "%.6g") + " by more than 1e-4");
  }
  return bad;
}

namespace {

struct FieldMap {
  // name -> accessor; covers every serialized field
  std::map<std::string, std::function<double&(ParameterSet&)>, std::less<>> fields;

  FieldMap() {
    auto add = [&](const char* name, auto get) { fields.emplace(name, get); };
    add("delta", [](ParameterSet& p) -> double& { return p.delta; });
    add("t0", [](ParameterSet& p) -> double& { return p.t0; });
    add("phi11", [](ParameterSet& p) -> double& { return p.phi_T(0, 0); });
    add("phi12", [](ParameterSet& p) -> double& { return p.phi_T(0, 1); });
    add("phi21", [](ParameterSet& p) -> double& { return p.phi_T(1, 0); });
    add("phi22", [](ParameterSet& p) -> double& { return p.phi_T(1, 1); });
    add("xi1", [](ParameterSet& p) -> double& { return p.xi1; });
    add("eta", [](ParameterSet& p) -> double& { return p.eta; });
    add("zeta11", [](ParameterSet& p) -> double& { return p.phi_M(0, 0); });
    add("zeta12", [](ParameterSet& p) -> double& { return p.phi_M(0, 1); });
    add("zeta21", [](ParameterSet& p) -> double& { return p.phi_M(1, 0); });
    add("zeta22", [](ParameterSet& p) -> double& { return p.phi_M(1, 1); });
    add("zeta23", [](ParameterSet& p) -> double& { return p.phi_M(1, 2); });
    add("zeta32", [](ParameterSet& p) -> double& { return p.phi_M(2, 1); });
    add("zeta33", [](ParameterSet& p) -> double& { return p.phi_M(2, 2); });
    add("xi2", [](ParameterSet& p) -> double& { return p.xi2; });
    add("M_AT_1750", [](ParameterSet& p) -> double& { return p.m_at_1750; });
    add("f0", [](ParameterSet& p) -> double& { return p.f0; });
    add("f1", [](ParameterSet& p) -> double& { return p.f1; });
    add("tf", [](ParameterSet& p) -> double& { return p.tf; });
    add("E_L0", [](ParameterSet& p) -> double& { return p.e_l0; });
    add("delta_EL", [](ParameterSet& p) -> double& { return p.delta_el; });
    add("gamma", [](ParameterSet& p) -> double& { return p.gamma; });
    add("theta2", [](ParameterSet& p) -> double& { return p.theta2; });
    add("a2", [](ParameterSet& p) -> double& { return p.a2; });
    add("a3", [](ParameterSet& p) -> double& { return p.a3; });
    add("delta_K", [](ParameterSet& p) -> double& { return p.delta_k; });
    add("alpha", [](ParameterSet& p) -> double& { return p.alpha; });
    add("rho", [](ParameterSet& p) -> double& { return p.rho; });
    add("L0", [](ParameterSet& p) -> double& { return p.l0; });
    add("La", [](ParameterSet& p) -> double& { return p.la; });
    add("lg", [](ParameterSet& p) -> double& { return p.lg; });
    add("A0", [](ParameterSet& p) -> double& { return p.a0; });
    add("gA", [](ParameterSet& p) -> double& { return p.g_a; });
    add("delta_A", [](ParameterSet& p) -> double& { return p.delta_a; });
    add("sigma0", [](ParameterSet& p) -> double& { return p.sigma0_table; });
    add("g_sigma", [](ParameterSet& p) -> double& { return p.g_sigma; });
    add("delta_sigma", [](ParameterSet& p) -> double& { return p.delta_sigma; });
    add("pb", [](ParameterSet& p) -> double& { return p.pb; });
    add("delta_pb", [](ParameterSet& p) -> double& { return p.delta_pb; });
    add("mu0", [](ParameterSet& p) -> double& { return p.mu0; });
    add("e0", [](ParameterSet& p) -> double& { return p.e0; });
    add("q0", [](ParameterSet& p) -> double& { return p.q0; });
    add("scale1", [](ParameterSet& p) -> double& { return p.scale1; });
    add("scale2", [](ParameterSet& p) -> double& { return p.scale2; });
    add("T_AT0", [](ParameterSet& p) -> double& { return p.t_at0; });
    add("T_LO0", [](ParameterSet& p) -> double& { return p.t_lo0; });
    add("K0", [](ParameterSet& p) -> double& { return p.k0; });
    add("M_AT0", [](ParameterSet& p) -> double& { return p.m_at0; });
    add("M_UP0", [](ParameterSet& p) -> double& { return p.m_up0; });
    add("M_LO0", [](ParameterSet& p) -> double& { return p.m_lo0; });
  }
};

const FieldMap& field_map() {
  static const FieldMap m;
  return m;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string serialize(const ParameterSet& p) {
  std::ostringstream out;
  out << "vintage = " << vintage_name(p.vintage) << "\n";
  out << "N_default = " << p.n_default << "\n";
  ParameterSet copy = p;
  for (const auto& [name, get] : field_map().fields)
    out << name << " = " << fmt(get(copy)) << "\n";
  return out.str();
}

ParameterSet apply_overrides(ParameterSet base, std::string_view text) {
  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;

    if (const size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::runtime_error("override line " + std::to_string(lineno) + ": expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view val = trim(line.substr(eq + 1));

    if (key == "vintage") {
      base.vintage = parse_vintage(val);
      continue;
    }
    if (key == "N_default") {
      base.n_default = std::stoi(std::string(val));
      continue;
    }
    const auto it = field_map().fields.find(key);
    if (it == field_map().fields.end())
      throw std::runtime_error("override line " + std::to_string(lineno) + ": unknown key '" +
                               std::string(key) + "'");
    double parsed = 0;
    const auto [end, ec] = std::from_chars(val.data(), val.data() + val.size(), parsed);
    if (ec != std::errc{} || end != val.data() + val.size())
      throw std::runtime_error("override line " + std::to_string(lineno) + ": bad number for '" +
                               std::string(key) + "'");
    it->second(base) = parsed;
  }
  return base;
}

ParameterSet load_validated(Vintage v, std::string_view override_text) {
  ParameterSet p = load_parameter_set(v);
  if (!override_text.empty()) p = apply_overrides(p, override_text);
  if (const auto bad = validate(p); !bad.empty()) {
    std::string msg = "parameter validation failed:";
    for (const auto& b : bad) msg += "\n  " + b;
    throw std::runtime_error(msg);
  }
  return p;
}

std::string parameter_digest(const ParameterSet& p) {
  const std::string s = serialize(p);
  uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dice
