#include "fitztk/extended_real.hpp"

#include <charconv>
#include <cstdio>
#include <limits>
#include <ostream>

namespace fitztk {

ExtendedReal::ExtendedReal(double v) : kind_(Kind::Finite), value_(v) {
  if (!std::isfinite(v)) {
    throw InvariantError("ExtendedReal finite payload must be a finite real");
  }
}

double ExtendedReal::value() const {
  if (!is_finite()) throw InvariantError("ExtendedReal::value() on an infinite value");
  return value_;
}

ExtendedReal ExtendedReal::operator-() const {
  if (is_plus_inf()) return minus_inf();
  if (is_minus_inf()) return plus_inf();
  return ExtendedReal(-value_);
}

ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
  if (a.is_finite() && b.is_finite()) return ExtendedReal(a.value_ + b.value_);
  if (a.is_plus_inf()) {
    if (b.is_minus_inf()) throw IndeterminateSum();
    return ExtendedReal::plus_inf();
  }
  if (a.is_minus_inf()) {
    if (b.is_plus_inf()) throw IndeterminateSum();
    return ExtendedReal::minus_inf();
  }
  return b;  // a finite, b infinite
}

ExtendedReal operator-(ExtendedReal a, ExtendedReal b) { return a + (-b); }

ExtendedReal operator*(double s, ExtendedReal a) {
  if (!std::isfinite(s)) throw InvariantError("ExtendedReal scaling by non-finite factor");
  if (a.is_finite()) return ExtendedReal(s * a.value_);
  if (s == 0.0) throw IndeterminateSum();
  if (s > 0.0) return a;
  return -a;
}

bool operator==(ExtendedReal a, ExtendedReal b) {
  if (a.kind_ != b.kind_) return false;
  return !a.is_finite() || a.value_ == b.value_;
}

bool operator<(ExtendedReal a, ExtendedReal b) {
  if (a.is_minus_inf()) return !b.is_minus_inf();
  if (a.is_plus_inf()) return false;
  if (b.is_plus_inf()) return true;
  if (b.is_minus_inf()) return false;
  return a.value_ < b.value_;
}

std::string ExtendedReal::str() const {
  if (is_plus_inf()) return "inf";
  if (is_minus_inf()) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value_ == 0.0 ? 0.0 : value_);
  return buf;
}

std::ostream& operator<<(std::ostream& os, ExtendedReal v) { return os << v.str(); }

}  // namespace fitztk
