#include "relimon/mle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "relimon/error.hpp"

namespace relimon {

namespace {

void check_rate(double b) {
  if (!(b > 0.0) || !std::isfinite(b))
    raise(ErrorCode::invalid_argument, "rate b must be positive and finite");
}

// s e^{-bs}/(1-e^{-bs}) = s / (e^{bs} - 1); stable for all bs > 0 and
// underflows cleanly to 0 for huge bs (s / inf).
double weight(double s, double b) { return s / std::expm1(b * s); }

// e^{-x}/(1-e^{-x})^2: (E+1)/E^2 with E = expm1(x) while E is finite,
// exp(-x)-based form once e^x would overflow.
double weight_sq(double x) {
  if (x > 500.0) {
    const double ex = std::exp(-x);
    const double d = 1.0 - ex;
    return ex / (d * d);
  }
  const double e = std::expm1(x);
  return (e + 1.0) / (e * e);
}

}  // namespace

double log_likelihood(const GroupedSeries& g, double a, double b) {
  validate(g);
  check_rate(b);
  if (!(a > 0.0) || !std::isfinite(a))
    raise(ErrorCode::invalid_argument, "parameter a must be positive and finite");

  const auto& s = g.cum_times;
  const double n = static_cast<double>(s.size());
  const int r = g.order_r;

  const double w = a * num::one_minus_exp_neg(b * s.back());
  const double log_mterm = static_cast<double>(r) * std::log(w);
  if (log_mterm > 709.0)
    raise(ErrorCode::numeric_overflow, "[a(1-e^{-b s_n})]^r overflows");
  const double mterm = log_mterm > 650.0 ? std::exp(log_mterm) : num::ipow(w, r);

  double sum_s = 0.0;
  double sum_log = 0.0;
  for (const double sk : s) {
    sum_s += sk;
    sum_log += num::log1mexp(b * sk);
  }
  return -mterm +
         n * (static_cast<double>(r) * std::log(a) + std::log(b) + std::log(static_cast<double>(r))) -
         b * sum_s + static_cast<double>(r - 1) * sum_log;
}

double a_given_b(const GroupedSeries& g, double b) {
  validate(g);
  check_rate(b);
  const double n = static_cast<double>(g.cum_times.size());
  return std::pow(n, 1.0 / g.order_r) / num::one_minus_exp_neg(b * g.cum_times.back());
}

double profile_score(const GroupedSeries& g, double b) {
  validate(g);
  check_rate(b);
  const auto& s = g.cum_times;
  const double n = static_cast<double>(s.size());
  const int r = g.order_r;

  double sum_s = 0.0;
  double sum_w = 0.0;
  for (const double sk : s) {
    sum_s += sk;
    sum_w += weight(sk, b);
  }
  return n / b - sum_s + static_cast<double>(r - 1) * sum_w -
         n * static_cast<double>(r) * weight(s.back(), b);
}

double profile_score_derivative(const GroupedSeries& g, double b) {
  validate(g);
  check_rate(b);
  const auto& s = g.cum_times;
  const double n = static_cast<double>(s.size());
  const int r = g.order_r;

  double sum_v = 0.0;
  for (const double sk : s) sum_v += sk * sk * weight_sq(b * sk);
  const double sn = s.back();
  return -n / (b * b) - static_cast<double>(r - 1) * sum_v +
         n * static_cast<double>(r) * sn * sn * weight_sq(b * sn);
}

namespace {

struct RootSolve {
  double b = 0.0;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;
};

// Newton from the geometric midpoint of a sign-change interval, falling back
// to bisection whenever a step leaves the current bracket.
RootSolve solve_interval(const GroupedSeries& g, double lo, double hi, double g_lo,
                         const FitOptions& opt) {
  const double n = static_cast<double>(g.cum_times.size());
  RootSolve out;
  double b = std::sqrt(lo * hi);
  for (out.iterations = 1; out.iterations <= opt.max_iterations; ++out.iterations) {
    const double gb = profile_score(g, b);
    if ((gb > 0.0) == (g_lo > 0.0)) {
      lo = b;
      g_lo = gb;
    } else {
      hi = b;
    }
    if (std::abs(gb) <= opt.tol_score_rel * (n / b)) break;
    const double deriv = profile_score_derivative(g, b);
    double next = b - gb / deriv;
    if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
    const bool small_step = std::abs(next - b) <= opt.tol_step_rel * b;
    b = next;
    if (small_step) break;
  }
  out.iterations = std::min(out.iterations, opt.max_iterations);
  out.b = b;
  out.residual = std::abs(profile_score(g, b));
  out.converged = out.residual <= opt.tol_score_rel * (n / b);
  return out;
}

}  // namespace

FitResult fit(const GroupedSeries& g, const FitOptions& options) {
  validate(g);
  if (g.cum_times.size() < 2)
    raise(ErrorCode::invalid_argument, "fit requires at least 2 subgroups");
  if (options.scan_points < 2 || options.max_iterations < 1)
    raise(ErrorCode::invalid_argument, "invalid solver settings");

  const double sn = g.cum_times.back();
  const double lo = options.bracket_lo > 0.0 ? options.bracket_lo : 1e-6 / sn;
  const double hi = options.bracket_hi > 0.0 ? options.bracket_hi : 50.0 / sn;
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi))
    raise(ErrorCode::invalid_argument, "invalid bracket");

  // Log-spaced scan for sign changes of the profile score.
  const int np = options.scan_points;
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / (np - 1);
  std::vector<double> grid(static_cast<std::size_t>(np));
  std::vector<double> score(static_cast<std::size_t>(np));
  for (int i = 0; i < np; ++i) {
    grid[static_cast<std::size_t>(i)] = std::exp(log_lo + i * step);
    score[static_cast<std::size_t>(i)] = profile_score(g, grid[static_cast<std::size_t>(i)]);
  }

  std::vector<RootSolve> roots;
  for (int i = 0; i + 1 < np; ++i) {
    const double ga = score[static_cast<std::size_t>(i)];
    const double gb = score[static_cast<std::size_t>(i + 1)];
    if (ga == 0.0) {
      RootSolve exact;
      exact.b = grid[static_cast<std::size_t>(i)];
      exact.converged = true;
      roots.push_back(exact);
    } else if (ga * gb < 0.0) {
      roots.push_back(solve_interval(g, grid[static_cast<std::size_t>(i)],
                                     grid[static_cast<std::size_t>(i + 1)], ga, options));
    }
  }
  if (roots.empty())
    raise(ErrorCode::no_root,
          "profile score has no sign change in the bracket; the model may not fit this data");

  const RootSolve* best = nullptr;
  double best_ll = 0.0;
  for (const auto& root : roots) {
    const double ll = log_likelihood(g, a_given_b(g, root.b), root.b);
    if (best == nullptr || ll > best_ll) {
      best = &root;
      best_ll = ll;
    }
  }

  FitResult result;
  result.model.params.a = a_given_b(g, best->b);
  result.model.params.b = best->b;
  result.model.order_r = g.order_r;
  result.n_groups = g.cum_times.size();
  result.iterations = best->iterations;
  result.converged = best->converged;
  result.residual = best->residual;
  result.log_lik = best_ll;
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  result.root_count = static_cast<int>(roots.size());
  return result;
}

}  // namespace relimon
