#include "hencky/lm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "hencky/error.hpp"

namespace hencky {

double to_internal(const ParamSpec& s, double x) {
  const bool lo = std::isfinite(s.lower), hi = std::isfinite(s.upper);
  if (lo && hi) return std::log((x - s.lower) / (s.upper - x));
  if (lo) return std::log(x - s.lower);
  if (hi) return std::log(s.upper - x);
  return x;
}

double to_physical(const ParamSpec& s, double z) {
  const bool lo = std::isfinite(s.lower), hi = std::isfinite(s.upper);
  if (lo && hi) {
    // Logistic map, written to stay exact at both tails.
    if (z >= 0.0) {
      const double e = std::exp(-z);
      return (s.upper + s.lower * e) / (1.0 + e);
    }
    const double e = std::exp(z);
    return (s.lower + s.upper * e) / (1.0 + e);
  }
  if (lo) return s.lower + std::exp(z);
  if (hi) return s.upper - std::exp(z);
  return z;
}

double physical_slope(const ParamSpec& s, double z) {
  const bool lo = std::isfinite(s.lower), hi = std::isfinite(s.upper);
  if (lo && hi) {
    const double e = std::exp(-std::abs(z));
    return (s.upper - s.lower) * e / ((1.0 + e) * (1.0 + e));
  }
  if (lo) return std::exp(z);
  if (hi) return -std::exp(z);
  return 1.0;
}

double FitResult::param(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return params[i];
  throw InputError("FitResult: no parameter '" + name + "'");
}

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Evaluator {
  const FitProblem& problem;
  int count = 0;

  std::vector<double> physical(const Vec& z) const {
    std::vector<double> x(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) x[i] = to_physical(problem.params[i], z[i]);
    return x;
  }

  // false when the point is infeasible (throws or produces non-finite values).
  bool operator()(const Vec& z, Vec& r) {
    ++count;
    std::vector<double> out;
    try {
      const std::vector<double> x = physical(z);
      // Rounding can land a mapped value on its bound; such points are rejected.
      for (std::size_t i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i]) || !(x[i] > problem.params[i].lower) || !(x[i] < problem.params[i].upper))
          return false;
      problem.residuals(x, out);
    } catch (const Error&) {
      return false;
    }
    r = Eigen::Map<const Vec>(out.data(), static_cast<Eigen::Index>(out.size()));
    return r.allFinite();
  }
};

}  // namespace

FitResult lm_fit(const FitProblem& problem, std::span<const double> initial, const LmOptions& opts) {
  const auto n = static_cast<Eigen::Index>(problem.params.size());
  if (static_cast<std::size_t>(n) != initial.size())
    throw InputError("lm_fit: initial vector has the wrong length");

  Vec z(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const ParamSpec& s = problem.params[i];
    const double x = initial[i];
    const bool above = std::isfinite(s.lower) ? x > s.lower : std::isfinite(x);
    const bool below = std::isfinite(s.upper) ? x < s.upper : true;
    if (!above || !below)
      throw InputError("lm_fit: initial value of '" + s.name + "' is outside its open bounds");
    z[i] = to_internal(s, x);
  }

  Evaluator eval{problem};
  Vec r;
  if (!eval(z, r)) throw DomainError("lm_fit: residual cannot be evaluated at the initial point");
  if (r.size() == 0) throw InputError("lm_fit: empty residual vector (no active data)");
  const auto m = r.size();

  FitResult res;
  for (const auto& s : problem.params) res.names.push_back(s.name);
  double norm = r.norm();
  res.initial_residual_norm = norm;
  res.history.push_back(norm);

  double lambda = opts.lambda_init;
  Vec scale = Vec::Zero(n);
  Mat jac(m, n);
  Vec r_trial;
  bool jac_failed = false;
  bool have_jac = false;

  int it = 0;
  for (; it < opts.max_iter; ++it) {
    if (norm == 0.0) {
      res.converged = true;
      res.status = "zero residual";
      break;
    }
    // Forward-difference Jacobian in optimizer coordinates.
    for (Eigen::Index j = 0; j < n; ++j) {
      const double h = std::max(1e-7, 1e-7 * std::abs(z[j]));
      Vec zp = z;
      zp[j] += h;
      if (!eval(zp, r_trial)) {
        zp[j] = z[j] - h;
        if (!eval(zp, r_trial)) {
          jac_failed = true;
          break;
        }
        jac.col(j) = (r - r_trial) / h;
      } else {
        jac.col(j) = (r_trial - r) / h;
      }
    }
    if (jac_failed) {
      res.status = "Jacobian could not be evaluated";
      break;
    }
    have_jac = true;

    const Vec grad = jac.transpose() * r;
    if (grad.lpNorm<Eigen::Infinity>() < opts.gtol) {
      res.converged = true;
      res.status = "gradient below tolerance";
      break;
    }

    const Mat jtj = jac.transpose() * jac;
    // Marquardt scaling: running maximum of the diagonal, floored for
    // parameters that currently have no influence.
    for (Eigen::Index j = 0; j < n; ++j) scale[j] = std::max(scale[j], jtj(j, j));
    const double floor = std::max(1e-12 * scale.maxCoeff(), 1e-300);

    bool accepted = false;
    double new_norm = norm;
    while (lambda <= opts.lambda_max) {
      Mat a = jtj;
      for (Eigen::Index j = 0; j < n; ++j) a(j, j) += lambda * std::max(scale[j], floor);
      Vec step = a.ldlt().solve(-grad);
      // Log-mapped parameters near zero have a tiny Jacobian column and the
      // linear model then proposes jumps of tens of decades; cap the step.
      const double len = step.lpNorm<Eigen::Infinity>();
      if (len > opts.max_step) step *= opts.max_step / len;
      if (step.allFinite()) {
        const Vec z_trial = z + step;
        if (eval(z_trial, r_trial)) {
          new_norm = r_trial.norm();
          if (new_norm < norm) {
            z = z_trial;
            r = r_trial;
            accepted = true;
            lambda = std::max(lambda / 10.0, opts.lambda_min);
            break;
          }
        }
      }
      lambda *= 10.0;
    }
    if (!accepted) {
      lambda = opts.lambda_max;
      res.status = "damping limit reached without a decreasing step";
      // A stationary point within rounding still counts as converged.
      res.converged = grad.lpNorm<Eigen::Infinity>() <= 1e3 * opts.gtol;
      break;
    }
    const double rel = (norm - new_norm) / norm;
    norm = new_norm;
    res.history.push_back(norm);
    if (rel < opts.ftol) {
      res.converged = true;
      res.status = "relative decrease below tolerance";
      ++it;
      break;
    }
  }
  if (it >= opts.max_iter && res.status.empty()) res.status = "iteration limit reached";

  res.iterations = it;
  res.evaluations = eval.count;
  res.params = eval.physical(z);
  res.residuals.assign(r.data(), r.data() + r.size());
  res.residual_norm = norm;

  // Covariance in physical coordinates from the last Jacobian.
  if (have_jac) {
    Mat jp = jac;
    for (Eigen::Index j = 0; j < n; ++j) jp.col(j) /= physical_slope(problem.params[j], z[j]);
    const double dof = static_cast<double>(std::max<Eigen::Index>(m - n, 1));
    const Mat cov = (jp.transpose() * jp).completeOrthogonalDecomposition().pseudoInverse() *
                    (norm * norm / dof);
    res.covariance.assign(cov.data(), cov.data() + cov.size());  // symmetric: order irrelevant
  }
  return res;
}

}  // namespace hencky
