#pragma once

#include <cmath>

namespace relimon {

/// Goel-Okumoto parameters: a = asymptotic expected fault content (> 0),
/// b = failure detection rate per unit time (> 0).
struct GoParams {
  double a = 0.0;
  double b = 0.0;
};

/// Goel-Okumoto model evaluated on r-th order grouped data. With r = 1 this
/// is the plain time-domain model.
struct OrderedGoModel {
  GoParams params;
  int order_r = 1;
};

void validate(const GoParams& p);
void validate(const OrderedGoModel& m);

/// m(t) = a (1 - e^{-bt}), expected cumulative failures by time t.
double mean_value(const GoParams& p, double t);

/// m_r(t) = [a (1 - e^{-bt})]^r, the grouped mean value function.
double ordered_mean_value(const OrderedGoModel& m, double t);

/// m_r'(t) = a^r r (1 - e^{-bt})^{r-1} b e^{-bt}, failures per unit time.
double intensity(const OrderedGoModel& m, double t);

namespace num {

/// 1 - e^{-x} without cancellation for small x (x >= 0).
inline double one_minus_exp_neg(double x) { return -std::expm1(-x); }

/// log(1 - e^{-x}) for x > 0, stable over the whole range.
inline double log1mexp(double x) {
  constexpr double ln2 = 0.6931471805599453;
  return x <= ln2 ? std::log(-std::expm1(-x)) : std::log1p(-std::exp(-x));
}

/// Integer power by repeated squaring; exact factor count for small r.
inline double ipow(double base, int exp) {
  double result = 1.0;
  double acc = base;
  for (int e = exp; e > 0; e >>= 1) {
    if (e & 1) result *= acc;
    if (e > 1) acc *= acc;
  }
  return result;
}

}  // namespace num

}  // namespace relimon
