#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace ekv {

/// Dense index of a point in a finite space.
using PointId = std::size_t;

/// Tolerance bundle shared by the solvers and checkers.
///
/// `membership` is an absolute slack on defining inequalities (sublevel sets,
/// X0 membership). `equality` is a relative slack for "f(y) = f(z)" style
/// tests. `limit` bounds distances treated as "converged to zero" on
/// sequence prefixes.
struct Tolerances {
  double membership = 1e-12;
  double equality = 1e-9;
  double limit = 1e-9;
  double triangle = 1e-12;
};

inline bool approx_equal(double a, double b, double rel) {
  if (a == b) return true;
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= rel * scale;
}

/// a <= b up to a relative slack.
inline bool leq_rel(double a, double b, double rel) {
  return a <= b + rel * std::max({1.0, std::abs(a), std::abs(b)});
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Negative, non-finite or ill-shaped distance data.
class MalformedSpaceError : public Error {
 public:
  using Error::Error;
};

/// A numeric or structural parameter outside its documented range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive operation was asked to run on a formula-backed space.
class ImplicitSpaceError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition does not hold (e.g. x0 outside dom f).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Something that the theory says cannot happen did happen.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Extended real in (-inf, +inf]. +inf is a distinguished state, not a big
/// float; NaN and -inf are rejected at construction.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  ExtReal(double v) : v_(v) {  // NOLINT: implicit from finite reals
    if (std::isnan(v) || v == -std::numeric_limits<double>::infinity())
      throw ParameterError("extended real must be finite or +inf");
  }
  static ExtReal infinity() {
    ExtReal r;
    r.v_ = std::numeric_limits<double>::infinity();
    return r;
  }

  bool is_finite() const { return v_ != std::numeric_limits<double>::infinity(); }
  bool is_infinite() const { return !is_finite(); }

  /// Finite value. Throws when +inf.
  double value() const {
    if (!is_finite()) throw PreconditionError("value() on +inf");
    return v_;
  }
  /// IEEE view (+inf maps to HUGE_VAL); only for arithmetic that already
  /// handles the infinite branch.
  double raw() const { return v_; }

  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend std::partial_ordering operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }
  friend ExtReal operator+(ExtReal a, double b) {
    if (a.is_infinite()) return a;
    return ExtReal(a.v_ + b);
  }

 private:
  double v_ = 0.0;
};

/// Uniform double in [0,1) from the top 53 bits, identical across standard
/// libraries (std::uniform_real_distribution is not).
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_uniform(rng);
}

/// Uniform integer in [lo, hi] (inclusive), portable.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::size_t>(rng() % span);
}

}  // namespace ekv
