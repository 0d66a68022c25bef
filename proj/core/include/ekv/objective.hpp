#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ekv/common.hpp"
#include "ekv/space.hpp"

namespace ekv {

/// Extended-real objective on a finite space, indexed by PointId.
/// Proper (some finite value) and bounded below by construction.
class Objective {
 public:
  explicit Objective(std::vector<ExtReal> values);

  static Objective constant(std::size_t n, double c);

  std::size_t size() const { return values_.size(); }
  ExtReal operator()(PointId p) const { return values_[p]; }
  bool in_domain(PointId p) const { return values_[p].is_finite(); }
  /// min over the domain (the infimum, attained on a finite space).
  double infimum() const { return inf_; }
  std::vector<PointId> domain() const;
  const std::vector<ExtReal>& values() const { return values_; }

  /// Restriction to the listed points, in order.
  Objective restrict(std::span<const PointId> points) const;

  friend bool operator==(const Objective& a, const Objective& b) { return a.values_ == b.values_; }

 private:
  std::vector<ExtReal> values_;
  double inf_ = 0.0;
};

struct RandomObjectiveParams {
  double inf_fraction = 0.1;      ///< chance a value is +inf (one finite value is always kept)
  double tie_probability = 0.2;   ///< chance a finite value copies an earlier one
  double lo = 0.0;
  double hi = 10.0;
};

/// Deterministic per seed.
Objective random_objective(std::size_t n, std::uint64_t seed, const RandomObjectiveParams& params = {});

/// tau_d-lower semicontinuity on a finite space: f(y) <= f(a) whenever
/// d(y, a) = 0 (the smallest neighbourhood of y is {a : d(y, a) = 0}).
/// Not every function on a finite non-T1 space has this property.
bool is_lsc(const FiniteSpace& space, const Objective& f);

/// Largest lsc minorant: f~(y) = min { f(a) : d(y, a) = 0 }.
Objective lsc_envelope(const FiniteSpace& space, const Objective& f);

/// Real function on the coordinates of an implicit space.
struct ImplicitObjective {
  std::string name;
  std::function<double(double)> eval;

  double operator()(double x) const { return eval(x); }

  /// Known formulas: "x2_exp_neg" (x^2 e^{-x}), "square" (x^2), "abs" (|x|),
  /// "zero".
  static ImplicitObjective by_name(const std::string& name);

  /// Tabulates the objective on the first n sampled points of `space`.
  Objective tabulate(const ImplicitSpace& space, std::size_t n) const;
};

}  // namespace ekv
