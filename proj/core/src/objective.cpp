#include "ekv/objective.hpp"

#include <cmath>
#include <limits>

namespace ekv {

Objective::Objective(std::vector<ExtReal> values) : values_(std::move(values)) {
  inf_ = std::numeric_limits<double>::infinity();
  for (const ExtReal v : values_)
    if (v.is_finite()) inf_ = std::min(inf_, v.value());
  if (!std::isfinite(inf_)) throw ParameterError("objective is not proper: dom f is empty");
}

Objective Objective::constant(std::size_t n, double c) {
  return Objective(std::vector<ExtReal>(n, ExtReal(c)));
}

std::vector<PointId> Objective::domain() const {
  std::vector<PointId> out;
  for (PointId p = 0; p < values_.size(); ++p)
    if (values_[p].is_finite()) out.push_back(p);
  return out;
}

Objective Objective::restrict(std::span<const PointId> points) const {
  std::vector<ExtReal> v;
  v.reserve(points.size());
  for (PointId p : points) v.push_back(values_.at(p));
  return Objective(std::move(v));
}

Objective random_objective(std::size_t n, std::uint64_t seed, const RandomObjectiveParams& params) {
  if (n == 0) throw ParameterError("objective needs at least one point");
  std::mt19937_64 rng(seed);
  std::vector<ExtReal> v(n);
  std::vector<double> finite_seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (unit_uniform(rng) < params.inf_fraction) {
      v[i] = ExtReal::infinity();
      continue;
    }
    double x = uniform_in(rng, params.lo, params.hi);
    if (!finite_seen.empty() && unit_uniform(rng) < params.tie_probability)
      x = finite_seen[uniform_index(rng, 0, finite_seen.size() - 1)];
    finite_seen.push_back(x);
    v[i] = x;
  }
  if (finite_seen.empty()) v[uniform_index(rng, 0, n - 1)] = uniform_in(rng, params.lo, params.hi);
  return Objective(std::move(v));
}

bool is_lsc(const FiniteSpace& space, const Objective& f) {
  for (PointId y = 0; y < space.size(); ++y)
    for (PointId a = 0; a < space.size(); ++a)
      if (space(y, a) == 0.0 && f(y) > f(a)) return false;
  return true;
}

Objective lsc_envelope(const FiniteSpace& space, const Objective& f) {
  std::vector<ExtReal> v(space.size());
  for (PointId y = 0; y < space.size(); ++y) {
    ExtReal best = f(y);
    for (PointId a = 0; a < space.size(); ++a)
      if (space(y, a) == 0.0 && f(a) < best) best = f(a);
    v[y] = best;
  }
  return Objective(std::move(v));
}

ImplicitObjective ImplicitObjective::by_name(const std::string& name) {
  if (name == "x2_exp_neg") return {name, [](double x) { return x * x * std::exp(-x); }};
  if (name == "square") return {name, [](double x) { return x * x; }};
  if (name == "abs") return {name, [](double x) { return std::abs(x); }};
  if (name == "zero") return {name, [](double) { return 0.0; }};
  throw ParameterError("unknown objective formula '" + name + "'");
}

Objective ImplicitObjective::tabulate(const ImplicitSpace& space, std::size_t n) const {
  std::vector<ExtReal> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = eval(space.sample(k));
  return Objective(std::move(v));
}

}  // namespace ekv
