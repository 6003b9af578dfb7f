#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <string>

#include "fitztk/errors.hpp"

namespace fitztk {

// Value in R ∪ {-inf, +inf}. Finite payloads are always finite doubles;
// adding +inf to -inf throws IndeterminateSum instead of producing a NaN.
class ExtendedReal {
 public:
  constexpr ExtendedReal() : kind_(Kind::Finite), value_(0.0) {}
  ExtendedReal(double v);  // NOLINT(google-explicit-constructor): finite reals convert freely

  static constexpr ExtendedReal plus_inf() { return ExtendedReal(Kind::PlusInf); }
  static constexpr ExtendedReal minus_inf() { return ExtendedReal(Kind::MinusInf); }

  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_plus_inf() const { return kind_ == Kind::PlusInf; }
  constexpr bool is_minus_inf() const { return kind_ == Kind::MinusInf; }

  /// Finite payload; throws unless is_finite().
  double value() const;

  /// The value as a double, mapping infinities to IEEE infinities.
  constexpr double as_double() const {
    if (kind_ == Kind::PlusInf) return std::numeric_limits<double>::infinity();
    if (kind_ == Kind::MinusInf) return -std::numeric_limits<double>::infinity();
    return value_;
  }

  ExtendedReal operator-() const;

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b);
  friend ExtendedReal operator-(ExtendedReal a, ExtendedReal b);
  /// Scaling by a finite nonzero real; 0 * (±inf) is a hard error like inf - inf.
  friend ExtendedReal operator*(double s, ExtendedReal a);

  friend bool operator==(ExtendedReal a, ExtendedReal b);
  friend bool operator<(ExtendedReal a, ExtendedReal b);
  friend bool operator<=(ExtendedReal a, ExtendedReal b) { return a < b || a == b; }
  friend bool operator>(ExtendedReal a, ExtendedReal b) { return b < a; }
  friend bool operator>=(ExtendedReal a, ExtendedReal b) { return b <= a; }

  /// "1.5", "inf", "-inf" — the token format used by the CSV surfaces.
  std::string str() const;

 private:
  enum class Kind { Finite, PlusInf, MinusInf };
  explicit constexpr ExtendedReal(Kind k) : kind_(k), value_(0.0) {}

  Kind kind_;
  double value_;
};

std::ostream& operator<<(std::ostream& os, ExtendedReal v);

inline ExtendedReal min(ExtendedReal a, ExtendedReal b) { return a < b ? a : b; }
inline ExtendedReal max(ExtendedReal a, ExtendedReal b) { return a < b ? b : a; }

}  // namespace fitztk
