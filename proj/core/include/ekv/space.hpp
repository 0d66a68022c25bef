#pragma once

#include <algorithm>
#include <array>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ekv/common.hpp"

namespace ekv {

/// Finite quasi-pseudometric space: ordered point ids plus a row-major
/// "from -> to" distance matrix, entry (i, j) = d(p_i, p_j).
///
/// The constructor only checks shape and id uniqueness; numeric validity is
/// the business of validate_axioms(). Immutable after construction.
class FiniteSpace {
 public:
  using point_type = PointId;

  FiniteSpace() = default;
  FiniteSpace(std::vector<std::string> ids, std::vector<double> matrix);

  std::size_t size() const { return ids_.size(); }
  double distance(PointId from, PointId to) const { return matrix_[from * ids_.size() + to]; }
  double operator()(PointId from, PointId to) const { return distance(from, to); }

  const std::string& id(PointId p) const { return ids_.at(p); }
  const std::vector<std::string>& ids() const { return ids_; }
  std::optional<PointId> index_of(std::string_view id) const;
  std::span<const double> matrix() const { return matrix_; }

  /// Subspace on the listed points, in the given order.
  FiniteSpace subspace(std::span<const PointId> points) const;

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
    return a.ids_ == b.ids_ && a.matrix_ == b.matrix_;
  }

 private:
  std::vector<std::string> ids_;
  std::vector<double> matrix_;
  std::unordered_map<std::string, PointId> index_;
};

/// Distance formulas on subsets of the real line.
enum class Formula {
  upper,     ///< u(x, y) = max(y - x, 0)
  lower,     ///< conjugate of upper: max(x - y, 0)
  absolute,  ///< |x - y|
};

std::string_view to_string(Formula f);
Formula formula_from_string(std::string_view name);

/// Formula-backed space on real coordinates, with the sampler
/// k -> origin + k * step enumerating the ray {origin, origin + step, ...}.
class ImplicitSpace {
 public:
  using point_type = double;

  ImplicitSpace(Formula formula, double origin, double step);

  Formula formula() const { return formula_; }
  double origin() const { return origin_; }
  double step() const { return step_; }

  double distance(double from, double to) const;
  double operator()(double from, double to) const { return distance(from, to); }
  double sample(std::size_t k) const { return origin_ + static_cast<double>(k) * step_; }

  /// The first n sampled points as a finite space.
  FiniteSpace truncate(std::size_t n) const;

  friend bool operator==(const ImplicitSpace&, const ImplicitSpace&) = default;

 private:
  Formula formula_;
  double origin_;
  double step_;
};

using QpmSpace = std::variant<FiniteSpace, ImplicitSpace>;

/// Anything with a `distance(point, point)` member and a `point_type`.
template <class S>
concept DistanceSpace = requires(const S& s, const typename S::point_type& p) {
  { s.distance(p, p) } -> std::convertible_to<double>;
};

template <class S>
inline constexpr bool is_finite_space_v = std::same_as<S, FiniteSpace>;

/// Unwraps the finite alternative or throws ImplicitSpaceError.
const FiniteSpace& require_finite(const QpmSpace& space, std::string_view op);

// ---------------------------------------------------------------------------
// Axioms

struct AxiomReport {
  bool qm1_ok = true;
  std::optional<PointId> qm1_witness;  ///< a point with d(x, x) != 0
  bool qm2_ok = true;
  std::optional<std::array<PointId, 3>> qm2_witness;  ///< (x, y, z) with d(x,z) > d(x,y) + d(y,z)
  bool is_quasi_metric = true;
  std::optional<std::pair<PointId, PointId>> qm3_witness;  ///< x != y, d(x,y) = d(y,x) = 0
  bool is_t1 = true;
  std::optional<std::pair<PointId, PointId>> t1_witness;  ///< x != y, d(x,y) = 0
  bool sampled = false;
  std::size_t sample_size = 0;

  bool valid() const { return qm1_ok && qm2_ok; }
};

/// Exhaustive QM1/QM2/QM3/T1 check. Witnesses are the lexicographically
/// first offenders. Throws MalformedSpaceError on negative or non-finite
/// entries.
AxiomReport validate_axioms(const FiniteSpace& space, const Tolerances& tol = {});

/// Checks an implicit space on the finite set of coordinates `sample`; the
/// report is flagged as sampled and indices refer to `sample`.
AxiomReport validate_axioms(const ImplicitSpace& space, std::span<const double> sample,
                            const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Transformations

FiniteSpace conjugate(const FiniteSpace& space);
ImplicitSpace conjugate(const ImplicitSpace& space);
QpmSpace conjugate(const QpmSpace& space);

/// d^s(x, y) = max(d(x, y), d(y, x)).
FiniteSpace symmetrize(const FiniteSpace& space);
ImplicitSpace symmetrize(const ImplicitSpace& space);
QpmSpace symmetrize(const QpmSpace& space);

enum class BallShape { open, closed };
enum class Which { d, dbar, ds };

std::string_view to_string(Which w);
Which which_from_string(std::string_view name);

/// Distance from `a` to `b` read through d, its conjugate or its symmetrization.
template <DistanceSpace S>
double distance_as(const S& space, Which which, const typename S::point_type& a,
                   const typename S::point_type& b) {
  switch (which) {
    case Which::d: return space.distance(a, b);
    case Which::dbar: return space.distance(b, a);
    case Which::ds: return std::max(space.distance(a, b), space.distance(b, a));
  }
  return space.distance(a, b);
}

/// B(center, r) = {y : dist(center, y) < r} (open) or <= r (closed), with dist
/// chosen by `which`. Non-positive radius for an open ball gives the empty set.
std::vector<PointId> ball(const FiniteSpace& space, PointId center, double r, BallShape shape,
                          Which which);

/// {y : d(y, z) = 0}, the tau_d-closure of {z}.
std::vector<PointId> closure_of_singleton(const FiniteSpace& space, PointId z);

// ---------------------------------------------------------------------------
// Construction

/// In-place Floyd-Warshall over (min, +). Entries may be +inf (no edge).
void min_plus_closure(std::vector<double>& matrix, std::size_t n);

struct RandomSpaceParams {
  double zero_probability = 0.0;  ///< chance a raw off-diagonal entry is 0
  double scale = 1.0;             ///< raw entries drawn from [0.05, 1) * scale
  bool integer_valued = false;    ///< raw entries drawn from {1, ..., 10}
};

/// Random finite quasi-pseudometric: zero-diagonal nonnegative matrix, then
/// min-plus closure. Ids are "p0", "p1", ... Deterministic per seed.
FiniteSpace generate_random_qpm(std::size_t n, std::uint64_t seed,
                                const RandomSpaceParams& params = {});

enum class CanonicalFamily { upper_grid, directed_cycle, asymmetric_graph, symmetric_metric };

std::string_view to_string(CanonicalFamily f);
CanonicalFamily canonical_family_from_string(std::string_view name);

struct CanonicalParams {
  double lo = 0.0;
  double hi = 1.0;
  double step = 0.5;
  std::size_t nodes = 3;
  double forward = 1.0;
  double backward = 1.0;
};

/// Finite canonical spaces:
///  - upper_grid: u(x,y) = max(y-x, 0) on {lo, lo+step, ..., <= hi}
///  - symmetric_metric: |x-y| on the same grid
///  - directed_cycle: closure of the cycle v0 -> v1 -> ... -> v0, weight `forward`
///  - asymmetric_graph: closure of the path with v_i -> v_{i+1} weight
///    `forward` and v_{i+1} -> v_i weight `backward`
FiniteSpace canonical_space(CanonicalFamily family, const CanonicalParams& params);

/// Unbounded ray variant; defined for upper_grid and symmetric_metric.
ImplicitSpace canonical_implicit(CanonicalFamily family, const CanonicalParams& params);

/// Shortest decimal form of a double that round-trips.
std::string format_coordinate(double x);

}  // namespace ekv
