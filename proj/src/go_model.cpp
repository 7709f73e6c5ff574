#include "relimon/go_model.hpp"

#include <cmath>

#include "relimon/error.hpp"

namespace relimon {

void validate(const GoParams& p) {
  if (!(p.a > 0.0) || !std::isfinite(p.a))
    raise(ErrorCode::invalid_argument, "parameter a must be positive and finite");
  if (!(p.b > 0.0) || !std::isfinite(p.b))
    raise(ErrorCode::invalid_argument, "parameter b must be positive and finite");
}

void validate(const OrderedGoModel& m) {
  validate(m.params);
  if (m.order_r < 1) raise(ErrorCode::invalid_argument, "order r must be >= 1");
}

namespace {

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    raise(ErrorCode::invalid_argument, "time t must be non-negative and finite");
}

}  // namespace

double mean_value(const GoParams& p, double t) {
  validate(p);
  check_time(t);
  return p.a * num::one_minus_exp_neg(p.b * t);
}

double ordered_mean_value(const OrderedGoModel& m, double t) {
  validate(m);
  check_time(t);
  return num::ipow(m.params.a * num::one_minus_exp_neg(m.params.b * t), m.order_r);
}

double intensity(const OrderedGoModel& m, double t) {
  validate(m);
  check_time(t);
  const double a = m.params.a;
  const double b = m.params.b;
  const int r = m.order_r;
  const double w = num::one_minus_exp_neg(b * t);
  return num::ipow(a, r) * static_cast<double>(r) * num::ipow(w, r - 1) * b * std::exp(-b * t);
}

}  // namespace relimon
