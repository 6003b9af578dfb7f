#pragma once

#include "fitztk/core.hpp"
#include "fitztk/extended_real.hpp"

namespace fitztk {

// One evaluated inequality instance, oriented so that the inequality holds
// iff slack = rhs - lhs >= 0. An infinite rhs dominates: slack is +inf
// whenever rhs is +inf, so such instances pass by convention.
struct SlackReport {
  ExtendedReal lhs;
  ExtendedReal rhs;
  ExtendedReal slack;
  bool pass = false;
};

inline SlackReport make_slack(ExtendedReal lhs, ExtendedReal rhs, const TolerancePolicy& pol) {
  SlackReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  if (rhs.is_plus_inf()) {
    r.slack = ExtendedReal::plus_inf();
  } else if (lhs.is_minus_inf()) {
    r.slack = ExtendedReal::plus_inf();
  } else if (lhs.is_plus_inf()) {
    r.slack = ExtendedReal::minus_inf();
  } else if (rhs.is_minus_inf()) {
    r.slack = ExtendedReal::minus_inf();
  } else {
    r.slack = ExtendedReal(rhs.value() - lhs.value());
  }
  r.pass = r.slack >= ExtendedReal(-pol.tol_slack);
  return r;
}

}  // namespace fitztk
