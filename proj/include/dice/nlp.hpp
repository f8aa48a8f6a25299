// Smooth NLP interface and solver: maximize f(z) subject to equality rows
// g(z) = 0, linear inequality rows A z <= b, and box bounds.  The solver is an
// augmented-Lagrangian outer loop over a projected L-BFGS inner solver;
// inequalities are slacked into equalities internally.
//
// Multiplier convention (maximization): L = f + sum_r lambda_r g_r, so at an
// optimum  grad f + J_eq^T lambda_eq + A^T lambda_in  lies in the normal cone
// of the box.  Equality rows are oriented by the problem (for the DICE
// transcription: g = f(x(j),w(j)) - x(j+1), so lambda is dW*/d(row data)).
// Active inequality multipliers are <= 0 under this convention.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <optional>
#include <string>

namespace dice {

class Nlp {
 public:
  virtual ~Nlp() = default;

  virtual int num_vars() const = 0;
  virtual int num_eq() const = 0;
  int num_ineq() const { return static_cast<int>(ineq_rhs().size()); }

  virtual const Eigen::VectorXd& lower_bounds() const = 0;
  virtual const Eigen::VectorXd& upper_bounds() const = 0;

  virtual double objective(const Eigen::VectorXd& z) const = 0;
  virtual Eigen::VectorXd objective_gradient(const Eigen::VectorXd& z) const = 0;

  virtual Eigen::VectorXd eq_residuals(const Eigen::VectorXd& z) const = 0;
  // J_eq(z)^T y  and  J_eq(z) v, matrix-free
  virtual Eigen::VectorXd eq_jac_tvp(const Eigen::VectorXd& z, const Eigen::VectorXd& y) const = 0;
  virtual Eigen::VectorXd eq_jac_vp(const Eigen::VectorXd& z, const Eigen::VectorXd& v) const = 0;

  virtual const Eigen::SparseMatrix<double>& ineq_matrix() const = 0;
  virtual const Eigen::VectorXd& ineq_rhs() const = 0;

  virtual Eigen::VectorXd initial_guess() const = 0;

  // O(1)-magnitude scalings; defaults are all ones.
  virtual Eigen::VectorXd var_scales() const;
  virtual Eigen::VectorXd eq_row_scales() const;

  virtual std::string describe_eq_row(int r) const { return "eq row " + std::to_string(r); }
};

struct SolverOptions {
  double opt_tol = 1e-6;       // projected Lagrangian-gradient tolerance, scaled space
  double feas_tol = 1e-8;      // equality residual tolerance, scaled space
  int max_iter = 500;          // inner iterations per outer round
  int max_outer = 40;
  double penalty_init = 10.0;
  double penalty_growth = 10.0;
  double penalty_max = 1e12;
  int lbfgs_memory = 25;
  int stall_limit = 20;        // infeasibility: no feasibility progress for this many rounds
  bool refine_multipliers = true;
  bool iteration_log = false;  // CSV: iter, merit, feas, opt, step_size
  std::string iteration_log_path;
};

struct SolveDiagnostics {
  int outer_iterations = 0;
  int inner_iterations = 0;
  double stationarity = std::numeric_limits<double>::quiet_NaN();
  double feasibility = std::numeric_limits<double>::quiet_NaN();
  double complementarity = std::numeric_limits<double>::quiet_NaN();
  double penalty = 0.0;
};

struct SolveResult {
  enum class Status { Optimal, Infeasible, IterationLimit, NumericFailure };
  Status status = Status::NumericFailure;
  Eigen::VectorXd primal;            // size num_vars (slacks stripped)
  double objective = 0.0;
  Eigen::VectorXd eq_multipliers;    // per equality row, maximization convention
  Eigen::VectorXd ineq_multipliers;  // per inequality row (<= 0 when active)
  SolveDiagnostics diagnostics;
};

std::string_view status_name(SolveResult::Status s);

SolveResult solve(const Nlp& prob, const SolverOptions& opts = {},
                  const Eigen::VectorXd* warm_primal = nullptr,
                  const Eigen::VectorXd* warm_eq_multipliers = nullptr);

// Pointwise evaluation bundle; throws std::domain_error naming the first
// non-finite equality row (step/component for transcription problems).
struct Evaluation {
  double objective = 0.0;
  Eigen::VectorXd objective_gradient;
  Eigen::VectorXd eq_residuals;
  Eigen::VectorXd ineq_values;  // A z - b, feasible <= 0
};

Evaluation evaluate(const Nlp& prob, const Eigen::VectorXd& z);

// Central-difference audit of the gradient machinery on the merit
// m(z) = f(z) + 0.5 ||g(z)||^2 over >= 50 randomly chosen coordinates
// (deterministic seed).  Returns max |analytic - fd| / (1 + |analytic|).
double check_gradient(const Nlp& prob, const Eigen::VectorXd& z, double h = 1e-5,
                      unsigned seed = 20240901);

// Independent KKT audit given a candidate primal/dual point.
struct KktReport {
  double stationarity = 0.0;    // projected-gradient norm of the Lagrangian
  double feasibility = 0.0;     // max of eq residual / ineq violation / bound violation
  double complementarity = 0.0;
};

KktReport kkt_check(const Nlp& prob, const Eigen::VectorXd& z,
                    const Eigen::VectorXd& eq_multipliers,
                    const Eigen::VectorXd& ineq_multipliers);

}  // namespace dice
