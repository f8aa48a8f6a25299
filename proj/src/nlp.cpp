#include "dice/nlp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace dice {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Eigen::VectorXd;

}  // namespace

Eigen::VectorXd Nlp::var_scales() const { return VectorXd::Ones(num_vars()); }
Eigen::VectorXd Nlp::eq_row_scales() const { return VectorXd::Ones(num_eq()); }

std::string_view status_name(SolveResult::Status s) {
  switch (s) {
    case SolveResult::Status::Optimal: return "optimal";
    case SolveResult::Status::Infeasible: return "infeasible";
    case SolveResult::Status::IterationLimit: return "iteration_limit";
    case SolveResult::Status::NumericFailure: return "numeric_failure";
  }
  return "unknown";
}

namespace {

// The problem in solver coordinates: slacks appended, variables and rows
// scaled to O(1), objective negated (internally we minimize).
struct Scaled {
  const Nlp& prob;
  int n0, m_eq, m_in, n, m;
  VectorXd dvar;   // size n
  VectorXd erow;   // size m
  double s_f = 1.0;
  VectorXd lb, ub;  // scaled, size n

  explicit Scaled(const Nlp& p) : prob(p) {
    n0 = p.num_vars();
    m_eq = p.num_eq();
    m_in = p.num_ineq();
    n = n0 + m_in;
    m = m_eq + m_in;

    dvar.resize(n);
    dvar.head(n0) = p.var_scales().cwiseMax(1e-8);
    erow.resize(m);
    erow.head(m_eq) = p.eq_row_scales().cwiseMax(1e-8);

    const auto& A = p.ineq_matrix();
    const auto& b = p.ineq_rhs();
    for (int r = 0; r < m_in; ++r) {
      double row_mag = std::abs(b(r));
      for (Eigen::SparseMatrix<double>::InnerIterator it(A, r); it; ++it)
        row_mag = std::max(row_mag, std::abs(it.value()) * dvar(it.col()));
      erow(m_eq + r) = std::max(1.0, row_mag);
      dvar(n0 + r) = erow(m_eq + r);  // slack scale matches its row
    }

    lb.resize(n);
    ub.resize(n);
    lb.head(n0) = p.lower_bounds().cwiseQuotient(dvar.head(n0));
    ub.head(n0) = p.upper_bounds().cwiseQuotient(dvar.head(n0));
    lb.tail(m_in).setZero();
    ub.tail(m_in).setConstant(kInf);
  }

  VectorXd to_z(const VectorXd& zeta) const { return dvar.head(n0).cwiseProduct(zeta.head(n0)); }

  // full scaled residual vector c(zeta)
  VectorXd residuals(const VectorXd& zeta) const {
    VectorXd c(m);
    const VectorXd z = to_z(zeta);
    c.head(m_eq) = prob.eq_residuals(z).cwiseQuotient(erow.head(m_eq));
    if (m_in > 0) {
      const VectorXd av = prob.ineq_matrix() * z - prob.ineq_rhs();
      const VectorXd s = dvar.tail(m_in).cwiseProduct(zeta.tail(m_in));
      c.tail(m_in) = (av + s).cwiseQuotient(erow.tail(m_in));
    }
    return c;
  }

  double objective_min(const VectorXd& zeta) const { return -prob.objective(to_z(zeta)) / s_f; }

  VectorXd grad_objective_min(const VectorXd& zeta) const {
    VectorXd g = VectorXd::Zero(n);
    g.head(n0) = -prob.objective_gradient(to_z(zeta)).cwiseProduct(dvar.head(n0)) / s_f;
    return g;
  }

  // (scaled J)^T y, size n
  VectorXd jac_tvp(const VectorXd& zeta, const VectorXd& y) const {
    const VectorXd z = to_z(zeta);
    VectorXd out = VectorXd::Zero(n);
    const VectorXd yeq = y.head(m_eq).cwiseQuotient(erow.head(m_eq));
    out.head(n0) = prob.eq_jac_tvp(z, yeq);
    if (m_in > 0) {
      const VectorXd yin = y.tail(m_in).cwiseQuotient(erow.tail(m_in));
      out.head(n0) += prob.ineq_matrix().transpose() * yin;
      out.tail(m_in) = dvar.tail(m_in).cwiseProduct(yin);
    }
    out.head(n0) = out.head(n0).cwiseProduct(dvar.head(n0));
    return out;
  }

  // scaled J v, size m
  VectorXd jac_vp(const VectorXd& zeta, const VectorXd& v) const {
    const VectorXd vz = dvar.head(n0).cwiseProduct(v.head(n0));
    VectorXd out(m);
    out.head(m_eq) = prob.eq_jac_vp(to_z(zeta), vz).cwiseQuotient(erow.head(m_eq));
    if (m_in > 0) {
      VectorXd t = prob.ineq_matrix() * vz;
      t += dvar.tail(m_in).cwiseProduct(v.tail(m_in));
      out.tail(m_in) = t.cwiseQuotient(erow.tail(m_in));
    }
    return out;
  }

  VectorXd project(const VectorXd& zeta) const { return zeta.cwiseMax(lb).cwiseMin(ub); }
};

struct LbfgsMemory {
  int cap;
  std::deque<VectorXd> s, y;
  std::deque<double> rho;

  explicit LbfgsMemory(int capacity) : cap(capacity) {}
  void clear() { s.clear(); y.clear(); rho.clear(); }

  void push(const VectorXd& si, const VectorXd& yi) {
    const double sy = si.dot(yi);
    if (!(sy > 1e-10 * si.norm() * yi.norm())) return;
    if (static_cast<int>(s.size()) == cap) {
      s.pop_front();
      y.pop_front();
      rho.pop_front();
    }
    s.push_back(si);
    y.push_back(yi);
    rho.push_back(1.0 / sy);
  }

  // two-loop recursion on the subspace where mask == 1
  VectorXd apply(const VectorXd& g, const Eigen::ArrayXd& mask) const {
    VectorXd q = g.array() * mask;
    const int k = static_cast<int>(s.size());
    if (k == 0) return q;
    std::vector<double> alpha(k);
    for (int i = k - 1; i >= 0; --i) {
      const VectorXd si = s[i].array() * mask;
      alpha[i] = rho[i] * si.dot(q);
      q -= alpha[i] * VectorXd(y[i].array() * mask);
    }
    const double yy = y.back().squaredNorm();
    const double gamma = yy > 0 ? 1.0 / (rho.back() * yy) : 1.0;
    q *= gamma;
    for (int i = 0; i < k; ++i) {
      const VectorXd yi = y[i].array() * mask;
      const double beta = rho[i] * yi.dot(q);
      q += (alpha[i] - beta) * VectorXd(s[i].array() * mask);
    }
    return VectorXd(q.array() * mask);
  }
};

struct InnerResult {
  double pg_norm = kInf;
  int iterations = 0;
  bool numeric_failure = false;
};

class IterationLog {
 public:
  IterationLog(bool enabled, const std::string& path) {
    if (enabled) {
      out_.open(path.empty() ? "iterations.csv" : path);
      out_ << "iter,merit,feas,opt,step_size\n";
    }
  }
  void row(int iter, double merit, double feas, double opt, double step) {
    if (out_.is_open()) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%d,%.10g,%.10g,%.10g,%.10g\n", iter, merit, feas, opt, step);
      out_ << buf;
    }
  }

 private:
  std::ofstream out_;
};

}  // namespace

SolveResult solve(const Nlp& prob, const SolverOptions& opts, const Eigen::VectorXd* warm_primal,
                  const Eigen::VectorXd* warm_eq_multipliers) {
  Scaled sp(prob);

  // objective scale from the initial guess
  VectorXd z0 = warm_primal ? *warm_primal : prob.initial_guess();
  sp.s_f = std::max(1.0, std::abs(prob.objective(z0)));

  VectorXd zeta(sp.n);
  zeta.head(sp.n0) = z0.cwiseQuotient(sp.dvar.head(sp.n0));
  if (sp.m_in > 0) {
    // start slacks so inequality rows hold exactly where possible
    const VectorXd av = prob.ineq_matrix() * z0 - prob.ineq_rhs();
    zeta.tail(sp.m_in) = (-av).cwiseMax(0.0).cwiseQuotient(sp.erow.tail(sp.m_in));
  }
  zeta = sp.project(zeta);

  VectorXd lambda = VectorXd::Zero(sp.m);  // scaled, minimization convention
  if (warm_eq_multipliers && warm_eq_multipliers->size() == sp.m_eq)
    lambda.head(sp.m_eq) =
        warm_eq_multipliers->cwiseProduct(sp.erow.head(sp.m_eq)) / sp.s_f;

  double penalty = opts.penalty_init;
  double omega = std::max(opts.opt_tol, 1.0 / penalty);
  double eta = std::max(opts.feas_tol, 1.0 / std::pow(penalty, 0.1));

  IterationLog log(opts.iteration_log, opts.iteration_log_path);

  SolveResult res;
  res.eq_multipliers = VectorXd::Zero(sp.m_eq);
  res.ineq_multipliers = VectorXd::Zero(sp.m_in);

  const auto merit = [&](const VectorXd& zt, const VectorXd& c) {
    return sp.objective_min(zt) - lambda.dot(c) + 0.5 * penalty * c.squaredNorm();
  };

  int total_inner = 0;
  int global_iter = 0;
  double best_feas = kInf;
  int stall = 0;
  bool numeric_failure = false;

  VectorXd c = sp.residuals(zeta);
  double feas = c.cwiseAbs().maxCoeff();
  double pg_norm = kInf;

  int outer = 0;
  for (outer = 1; outer <= opts.max_outer; ++outer) {
    // ---- inner: projected L-BFGS on the augmented Lagrangian ----
    LbfgsMemory mem(opts.lbfgs_memory);
    double phi = merit(zeta, c);
    if (!std::isfinite(phi)) {
      numeric_failure = true;
      break;
    }
    VectorXd grad = sp.grad_objective_min(zeta) + sp.jac_tvp(zeta, penalty * c - lambda);
    InnerResult inner;
    int consecutive_fails = 0;

    for (int it = 0; it < opts.max_iter; ++it) {
      const VectorXd pg = zeta - sp.project(zeta - grad);
      inner.pg_norm = pg.cwiseAbs().maxCoeff();
      if (inner.pg_norm <= omega) break;

      // active set: at a bound with the gradient pushing outward
      Eigen::ArrayXd mask(sp.n);
      for (int k = 0; k < sp.n; ++k) {
        const bool at_lb = zeta(k) <= sp.lb(k) + 1e-12 * (1.0 + std::abs(sp.lb(k))) && grad(k) > 0;
        const bool at_ub = zeta(k) >= sp.ub(k) - 1e-12 * (1.0 + std::abs(sp.ub(k))) && grad(k) < 0;
        mask(k) = (at_lb || at_ub) ? 0.0 : 1.0;
      }

      VectorXd dir = -mem.apply(grad, mask);
      if (!(dir.dot(grad) < -1e-12 * dir.norm() * grad.norm())) {
        mem.clear();
        dir = -VectorXd(grad.array() * mask);
      }

      // backtracking Armijo along the projected path
      double step = 1.0;
      bool accepted = false;
      VectorXd zeta_new, c_new;
      double phi_new = 0.0;
      for (int ls = 0; ls < 50; ++ls) {
        zeta_new = sp.project(zeta + step * dir);
        c_new = sp.residuals(zeta_new);
        phi_new = merit(zeta_new, c_new);
        const double pred = grad.dot(zeta_new - zeta);
        if (std::isfinite(phi_new) && pred < 0 && phi_new <= phi + 1e-4 * pred) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        if (++consecutive_fails >= 2) break;  // no further progress in this round
        mem.clear();
        continue;
      }
      consecutive_fails = 0;

      VectorXd grad_new =
          sp.grad_objective_min(zeta_new) + sp.jac_tvp(zeta_new, penalty * c_new - lambda);
      if (!grad_new.allFinite()) {
        inner.numeric_failure = true;
        break;
      }
      mem.push(zeta_new - zeta, grad_new - grad);
      zeta.swap(zeta_new);
      grad.swap(grad_new);
      c.swap(c_new);
      phi = phi_new;
      ++inner.iterations;
      ++total_inner;
      ++global_iter;
      log.row(global_iter, phi, c.cwiseAbs().maxCoeff(), inner.pg_norm, step);
    }

    if (inner.numeric_failure) {
      numeric_failure = true;
      break;
    }

    c = sp.residuals(zeta);
    feas = c.cwiseAbs().maxCoeff();
    pg_norm = inner.pg_norm;

    // convergence: the inner gradient is the Lagrangian gradient at the
    // first-order multiplier update lambda - penalty*c
    if (feas <= opts.feas_tol && pg_norm <= opts.opt_tol) {
      lambda -= penalty * c;
      res.status = SolveResult::Status::Optimal;
      break;
    }

    // infeasibility stall tracking
    if (feas > 1e2 * opts.feas_tol && feas > 0.9 * best_feas) {
      if (++stall >= opts.stall_limit) {
        res.status = SolveResult::Status::Infeasible;
        break;
      }
    } else {
      stall = 0;
    }
    best_feas = std::min(best_feas, feas);

    if (feas <= eta) {
      lambda -= penalty * c;
      eta = std::max(opts.feas_tol, eta / std::pow(penalty, 0.9));
      omega = std::max(opts.opt_tol, omega / penalty);
    } else {
      penalty = std::min(penalty * opts.penalty_growth, opts.penalty_max);
      eta = std::max(opts.feas_tol, 1.0 / std::pow(penalty, 0.1));
      omega = std::max(opts.opt_tol, 1.0 / penalty);
    }
  }

  if (numeric_failure)
    res.status = SolveResult::Status::NumericFailure;
  else if (res.status != SolveResult::Status::Optimal &&
           res.status != SolveResult::Status::Infeasible)
    res.status = SolveResult::Status::IterationLimit;

  // ---- multiplier refinement: least-squares fit on the free subspace ----
  if (opts.refine_multipliers && res.status == SolveResult::Status::Optimal) {
    Eigen::ArrayXd freem(sp.n);
    const VectorXd gf = sp.grad_objective_min(zeta);
    for (int k = 0; k < sp.n; ++k) {
      const bool interior = zeta(k) > sp.lb(k) + 1e-9 * (1.0 + std::abs(sp.lb(k))) &&
                            zeta(k) < sp.ub(k) - 1e-9 * (1.0 + std::abs(sp.ub(k)));
      freem(k) = interior ? 1.0 : 0.0;
    }
    // CGLS on J_free^T mu = grad_free
    const auto op = [&](const VectorXd& mu) -> VectorXd {
      return VectorXd(sp.jac_tvp(zeta, mu).array() * freem);
    };
    const auto op_t = [&](const VectorXd& v) -> VectorXd {
      return sp.jac_vp(zeta, VectorXd(v.array() * freem));
    };
    VectorXd mu = lambda;
    VectorXd r = VectorXd(gf.array() * freem) - op(mu);
    VectorXd srhs = op_t(r);
    VectorXd pdir = srhs;
    double gamma = srhs.squaredNorm();
    const double gamma0 = gamma;
    for (int it = 0; it < 200 && gamma > 1e-24 * std::max(1.0, gamma0); ++it) {
      const VectorXd q = op(pdir);
      const double qn = q.squaredNorm();
      if (!(qn > 0)) break;
      const double alpha = gamma / qn;
      mu += alpha * pdir;
      r -= alpha * q;
      srhs = op_t(r);
      const double gamma_new = srhs.squaredNorm();
      pdir = srhs + (gamma_new / gamma) * pdir;
      gamma = gamma_new;
    }
    const double before = (VectorXd(gf.array() * freem) - op(lambda)).cwiseAbs().maxCoeff();
    const double after = (VectorXd(gf.array() * freem) - op(mu)).cwiseAbs().maxCoeff();
    if (after < before) lambda = mu;
  }

  // unscale and report
  const VectorXd z_final = sp.to_z(zeta);
  res.primal = z_final;
  res.objective = prob.objective(z_final);
  for (int r = 0; r < sp.m_eq; ++r) res.eq_multipliers(r) = lambda(r) * sp.s_f / sp.erow(r);
  for (int r = 0; r < sp.m_in; ++r)
    res.ineq_multipliers(r) = lambda(sp.m_eq + r) * sp.s_f / sp.erow(sp.m_eq + r);

  res.diagnostics.outer_iterations = outer;
  res.diagnostics.inner_iterations = total_inner;
  res.diagnostics.feasibility = feas;
  res.diagnostics.stationarity = pg_norm;
  res.diagnostics.penalty = penalty;
  {
    // complementarity over slacked inequality rows
    double comp = 0.0;
    if (sp.m_in > 0) {
      const VectorXd av = prob.ineq_matrix() * z_final - prob.ineq_rhs();
      for (int r = 0; r < sp.m_in; ++r)
        comp = std::max(comp, std::abs(res.ineq_multipliers(r) * av(r)));
    }
    res.diagnostics.complementarity = comp;
  }
  return res;
}

Evaluation evaluate(const Nlp& prob, const Eigen::VectorXd& z) {
  Evaluation ev;
  ev.objective = prob.objective(z);
  ev.objective_gradient = prob.objective_gradient(z);
  ev.eq_residuals = prob.eq_residuals(z);
  for (int r = 0; r < ev.eq_residuals.size(); ++r)
    if (!std::isfinite(ev.eq_residuals(r)))
      throw std::domain_error("evaluate: non-finite residual at " + prob.describe_eq_row(r));
  if (prob.num_ineq() > 0)
    ev.ineq_values = prob.ineq_matrix() * z - prob.ineq_rhs();
  else
    ev.ineq_values = VectorXd();
  return ev;
}

double check_gradient(const Nlp& prob, const Eigen::VectorXd& z, double h, unsigned seed) {
  // merit m(z) = f(z) + 0.5||g(z)||^2 exercises both the objective gradient
  // and the Jacobian-transpose action
  const auto value = [&](const VectorXd& zz) {
    const VectorXd g = prob.eq_residuals(zz);
    return prob.objective(zz) + 0.5 * g.squaredNorm();
  };
  const VectorXd g0 = prob.eq_residuals(z);
  const VectorXd analytic = prob.objective_gradient(z) + prob.eq_jac_tvp(z, g0);

  const int n = prob.num_vars();
  const int sample = std::min(n, std::max(50, n / 10));
  std::mt19937 gen(seed);
  std::vector<int> coords(n);
  for (int i = 0; i < n; ++i) coords[i] = i;
  std::shuffle(coords.begin(), coords.end(), gen);

  double worst = 0.0;
  VectorXd zp = z;
  for (int t = 0; t < sample; ++t) {
    const int k = coords[t];
    const double hk = h * (1.0 + std::abs(z(k)));
    zp(k) = z(k) + hk;
    const double fp = value(zp);
    zp(k) = z(k) - hk;
    const double fm = value(zp);
    zp(k) = z(k);
    const double fd = (fp - fm) / (2.0 * hk);
    worst = std::max(worst, std::abs(analytic(k) - fd) / (1.0 + std::abs(analytic(k))));
  }
  return worst;
}

KktReport kkt_check(const Nlp& prob, const Eigen::VectorXd& z,
                    const Eigen::VectorXd& eq_multipliers,
                    const Eigen::VectorXd& ineq_multipliers) {
  KktReport rep;
  const VectorXd dvar = prob.var_scales().cwiseMax(1e-8);
  const VectorXd erow = prob.eq_row_scales().cwiseMax(1e-8);
  const double s_f = std::max(1.0, std::abs(prob.objective(z)));

  VectorXd grad_l = prob.objective_gradient(z) + prob.eq_jac_tvp(z, eq_multipliers);
  if (prob.num_ineq() > 0) grad_l += prob.ineq_matrix().transpose() * ineq_multipliers;

  const VectorXd& lo = prob.lower_bounds();
  const VectorXd& up = prob.upper_bounds();
  double stat = 0.0, comp = 0.0;
  for (int k = 0; k < prob.num_vars(); ++k) {
    const double gl = grad_l(k) * dvar(k) / s_f;  // scaled-space stationarity
    const double dl = z(k) - lo(k), du = up(k) - z(k);
    const bool at_lb = std::isfinite(lo(k)) && dl <= 1e-8 * (1.0 + std::abs(lo(k)));
    const bool at_ub = std::isfinite(up(k)) && du <= 1e-8 * (1.0 + std::abs(up(k)));
    if (at_lb && at_ub) continue;
    if (at_lb)
      stat = std::max(stat, std::max(0.0, gl));  // maximization: dL <= 0 at lower bound
    else if (at_ub)
      stat = std::max(stat, std::max(0.0, -gl));
    else
      stat = std::max(stat, std::abs(gl));
  }
  rep.stationarity = stat;

  const VectorXd geq = prob.eq_residuals(z);
  double feas = 0.0;
  for (int r = 0; r < geq.size(); ++r) feas = std::max(feas, std::abs(geq(r)) / erow(r));
  for (int k = 0; k < prob.num_vars(); ++k) {
    feas = std::max(feas, std::max(0.0, lo(k) - z(k)) / dvar(k));
    feas = std::max(feas, std::max(0.0, z(k) - up(k)) / dvar(k));
  }
  if (prob.num_ineq() > 0) {
    const VectorXd av = prob.ineq_matrix() * z - prob.ineq_rhs();
    for (int r = 0; r < av.size(); ++r) {
      feas = std::max(feas, std::max(0.0, av(r)));
      comp = std::max(comp, std::abs(ineq_multipliers(r) * av(r)) / s_f);
    }
  }
  rep.feasibility = feas;
  rep.complementarity = comp;
  return rep;
}

}  // namespace dice
