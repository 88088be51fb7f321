#pragma once

// Bounded Levenberg-Marquardt with a numeric forward-difference Jacobian.
// Bounds are enforced by reparameterization, so every iterate is feasible:
//
//   lower and upper finite   z = log((x - lo) / (hi - x))
//   lower finite only        z = log(x - lo)
//   upper finite only        z = log(hi - x)
//   unbounded                z = x

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace hencky {

struct ParamSpec {
  std::string name;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
};

/// Physical <-> optimizer coordinates for one parameter.
double to_internal(const ParamSpec& s, double x);
double to_physical(const ParamSpec& s, double z);
/// dx/dz at z.
double physical_slope(const ParamSpec& s, double z);

/// Fills `r` with the residual vector for physical parameters `x`.
/// May throw hencky::Error; the trial point is then treated as infeasible.
using ResidualFn = std::function<void(std::span<const double> x, std::vector<double>& r)>;

struct FitProblem {
  std::vector<ParamSpec> params;
  ResidualFn residuals;
};

struct LmOptions {
  int max_iter = 500;
  /// Relative decrease of the residual norm below which an accepted step ends the run.
  double ftol = 1e-10;
  /// Infinity norm of the gradient (optimizer coordinates) for convergence.
  double gtol = 1e-10;
  double lambda_init = 1e-3;
  double lambda_min = 1e-12;
  double lambda_max = 1e12;
  /// Largest step (infinity norm, optimizer coordinates) per iteration.
  double max_step = 1.0;
};

struct FitResult {
  std::vector<std::string> names;
  std::vector<double> params;       ///< physical values
  std::vector<double> residuals;    ///< at the returned parameters
  double residual_norm = 0.0;       ///< 2-norm of residuals
  double initial_residual_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string status;
  /// Gauss-Newton covariance s^2 (J^T J)^+ in physical coordinates, row-major.
  std::vector<double> covariance;
  /// Residual norm after each accepted step, starting with the initial one.
  std::vector<double> history;

  double param(const std::string& name) const;
};

/// Throws InputError for an initial point outside the bounds or an empty
/// residual, and DomainError if the initial residual cannot be evaluated.
/// Non-convergence is reported through `converged` / `status`.
FitResult lm_fit(const FitProblem& problem, std::span<const double> initial, const LmOptions& opts = {});

}  // namespace hencky
