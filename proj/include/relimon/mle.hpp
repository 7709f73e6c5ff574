#pragma once

#include <cstddef>

#include "relimon/failure_data.hpp"
#include "relimon/go_model.hpp"

namespace relimon {

struct FitOptions {
  double bracket_lo = 0.0;      ///< lower b bracket; 0 = auto (1e-6 / s_n)
  double bracket_hi = 0.0;      ///< upper b bracket; 0 = auto (50 / s_n)
  double tol_step_rel = 1e-12;  ///< stop when |delta b| <= tol_step_rel * b
  double tol_score_rel = 1e-9;  ///< converged when |g(b)| <= tol_score_rel * n / b
  int max_iterations = 100;
  int scan_points = 256;        ///< log-spaced sign-change scan resolution
};

struct FitResult {
  OrderedGoModel model;
  std::size_t n_groups = 0;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;  ///< |g(b)| at the returned b
  double log_lik = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int root_count = 0;     ///< sign changes found in the bracket
};

/// Exact grouped log-likelihood:
///   -[a(1-e^{-b s_n})]^r
///   + sum_k [ r ln a + ln b + ln r - b s_k + (r-1) ln(1 - e^{-b s_k}) ].
/// Overflow of the leading term is reported as an error, never as infinity.
double log_likelihood(const GroupedSeries& g, double a, double b);

/// Stationary point of the log-likelihood in a for fixed b:
///   a = n^{1/r} / (1 - e^{-b s_n}).
double a_given_b(const GroupedSeries& g, double b);

/// Profile score g(b) = d/db of log_likelihood(a_given_b(b), b):
///   n/b - sum s_k + (r-1) sum s_k e^{-b s_k}/(1-e^{-b s_k})
///       - n r s_n e^{-b s_n}/(1-e^{-b s_n}).
/// The fitted b is its root.
double profile_score(const GroupedSeries& g, double b);

/// g'(b) = -n/b^2 - (r-1) sum s_k^2 e^{-b s_k}/(1-e^{-b s_k})^2
///        + n r s_n^2 e^{-b s_n}/(1-e^{-b s_n})^2.
double profile_score_derivative(const GroupedSeries& g, double b);

/// Maximum-likelihood fit: scans the bracket for sign changes of the profile
/// score, runs Newton with bisection safeguard inside each sign-change
/// interval, and returns the root with the largest log-likelihood. Throws if
/// no sign change exists ("model may not fit this data"); returns
/// converged=false with the best iterate if the iteration cap is hit.
FitResult fit(const GroupedSeries& g, const FitOptions& options = {});

}  // namespace relimon
