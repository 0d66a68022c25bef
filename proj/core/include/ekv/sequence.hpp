#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "ekv/common.hpp"
#include "ekv/space.hpp"

namespace ekv {

/// A finite prefix of a conceptual infinite sequence. Either the items are
/// stored, or they come from a rule index -> point evaluated on demand; the
/// latter allows very long conceptual prefixes whose tail is inspected
/// without materializing the head.
template <class P>
class PointSeq {
 public:
  explicit PointSeq(std::vector<P> items) : items_(std::move(items)), length_(items_.size()) {
    if (items_.empty()) throw ParameterError("sequence prefix must be nonempty");
  }
  PointSeq(std::function<P(std::size_t)> rule, std::size_t length)
      : rule_(std::move(rule)), length_(length) {
    if (length_ == 0) throw ParameterError("sequence prefix must be nonempty");
  }

  std::size_t size() const { return length_; }
  bool generated() const { return static_cast<bool>(rule_); }
  P at(std::size_t n) const { return rule_ ? rule_(n) : items_.at(n); }

  /// First min(cap, size()) items.
  std::vector<P> head(std::size_t cap) const {
    if (!rule_ && items_.size() <= cap) return items_;
    const std::size_t len = std::min(cap, length_);
    std::vector<P> out;
    out.reserve(len);
    for (std::size_t n = 0; n < len; ++n) out.push_back(at(n));
    return out;
  }

 private:
  std::vector<P> items_;
  std::function<P(std::size_t)> rule_;
  std::size_t length_;
};

enum class Tri { yes, no, inconclusive };
std::string_view to_string(Tri t);

struct CauchyWitness {
  std::size_t n;  ///< earlier index
  std::size_t m;  ///< later index
  double eps;
  double distance;
};

struct CauchyVerdict {
  Tri verdict = Tri::inconclusive;
  std::optional<CauchyWitness> witness;
};

template <class P>
struct SeqVerdict {
  std::vector<P> d_limits;
  std::vector<P> dbar_limits;
  std::vector<P> ds_limits;
  CauchyVerdict left;
  CauchyVerdict right;
};

enum class CauchySide { left, right };

/// Default epsilon schedule (1/2, 1/4, ..., 2^-10).
std::vector<double> default_eps_schedule();

/// Materialization cap for rule-backed sequences in pairwise tests.
inline constexpr std::size_t kCauchyPrefixCap = 4096;

/// Limit membership on the last `tail` items: x is a d-limit when
/// d(x, x_n) <= tol on the tail, a dbar-limit when d(x_n, x) <= tol, and a
/// d^s-limit when both hold. Only the limit fields are filled.
template <DistanceSpace S>
SeqVerdict<typename S::point_type> classify_convergence(
    const S& space, const PointSeq<typename S::point_type>& seq,
    const std::vector<typename S::point_type>& candidates, double tol = 1e-9,
    std::size_t tail = 10) {
  if (candidates.empty()) throw ParameterError("classify_convergence: empty candidate set");
  if (tail == 0 || seq.size() < tail)
    throw ParameterError("classify_convergence: prefix shorter than the tail window");
  SeqVerdict<typename S::point_type> v;
  const std::size_t start = seq.size() - tail;
  std::vector<typename S::point_type> tail_items;
  tail_items.reserve(tail);
  for (std::size_t n = start; n < seq.size(); ++n) tail_items.push_back(seq.at(n));
  for (const auto& x : candidates) {
    bool d_ok = true, dbar_ok = true;
    for (const auto& xn : tail_items) {
      d_ok = d_ok && space.distance(x, xn) <= tol;
      dbar_ok = dbar_ok && space.distance(xn, x) <= tol;
    }
    if (d_ok) v.d_limits.push_back(x);
    if (dbar_ok) v.dbar_limits.push_back(x);
    if (d_ok && dbar_ok) v.ds_limits.push_back(x);
  }
  return v;
}

/// Prefix verdict for the left or right K-Cauchy condition.
///
/// With L items and the window start t = floor(3L/4), every eps in the
/// schedule must be met by all pairs n < m inside [t, L). On formula-backed
/// spaces a miss is tolerated when the pairwise oscillation is decaying
/// (oscillation from t is at most half of that from floor(L/4)). Prefixes
/// shorter than 4 * |schedule| are "yes" only when every pair is already
/// below the smallest eps, and inconclusive otherwise.
template <DistanceSpace S>
CauchyVerdict classify_cauchy_side(const S& space, const PointSeq<typename S::point_type>& seq,
                                   const std::vector<double>& eps_schedule, CauchySide side) {
  if (eps_schedule.empty()) throw ParameterError("classify_cauchy: empty eps schedule");
  for (std::size_t k = 0; k < eps_schedule.size(); ++k) {
    if (!(eps_schedule[k] > 0.0)) throw ParameterError("classify_cauchy: eps must be positive");
    if (k > 0 && !(eps_schedule[k] < eps_schedule[k - 1]))
      throw ParameterError("classify_cauchy: eps schedule must be strictly decreasing");
  }
  const auto items = seq.head(kCauchyPrefixCap);
  const std::size_t len = items.size();
  CauchyVerdict out;
  const double smallest = eps_schedule.back();

  auto pair_dist = [&](std::size_t n, std::size_t m) {
    // n < m; right: d(x_m, x_n), left: d(x_n, x_m)
    return side == CauchySide::right ? space.distance(items[m], items[n])
                                     : space.distance(items[n], items[m]);
  };
  // Largest pair distance with the earlier index >= start, and its location.
  auto oscillation = [&](std::size_t start) {
    CauchyWitness w{start, start, 0.0, 0.0};
    for (std::size_t n = start; n < len; ++n)
      for (std::size_t m = n + 1; m < len; ++m) {
        const double dist = pair_dist(n, m);
        if (dist > w.distance) w = {n, m, 0.0, dist};
      }
    return w;
  };

  if (len < 4 * eps_schedule.size()) {
    if (oscillation(0).distance < smallest) out.verdict = Tri::yes;
    return out;
  }
  const std::size_t window = (3 * len) / 4;
  CauchyWitness late = oscillation(window);
  if (late.distance < smallest) {
    out.verdict = Tri::yes;
    return out;
  }
  if constexpr (!is_finite_space_v<S>) {
    const CauchyWitness early = oscillation(len / 4);
    if (late.distance <= 0.5 * early.distance) {
      out.verdict = Tri::yes;
      return out;
    }
  }
  // First (largest) eps that the window violates.
  for (double eps : eps_schedule) {
    if (late.distance >= eps) {
      late.eps = eps;
      break;
    }
  }
  out.verdict = Tri::no;
  out.witness = late;
  return out;
}

template <DistanceSpace S>
SeqVerdict<typename S::point_type> classify_cauchy(
    const S& space, const PointSeq<typename S::point_type>& seq,
    const std::vector<double>& eps_schedule = default_eps_schedule()) {
  SeqVerdict<typename S::point_type> v;
  v.left = classify_cauchy_side(space, seq, eps_schedule, CauchySide::left);
  v.right = classify_cauchy_side(space, seq, eps_schedule, CauchySide::right);
  return v;
}

enum class SeparationClass { not_t0, t0_not_t1, t1 };
std::string_view to_string(SeparationClass c);

SeparationClass separation_class(const FiniteSpace& space);

struct PromotionResult {
  bool holds = true;
  std::optional<std::size_t> witness_index;  ///< tail index where the full sequence misses the limit
};

/// For a right K-Cauchy prefix whose subsequence converges (in mode `which`)
/// to `limit`, checks that the whole prefix converges to `limit` on its tail.
/// A false result on a genuinely right K-Cauchy input points at a bug.
template <DistanceSpace S>
PromotionResult check_subsequence_promotion(const S& space,
                                            const PointSeq<typename S::point_type>& seq,
                                            const std::vector<std::size_t>& subseq_indices,
                                            const typename S::point_type& limit, Which which,
                                            double tol = 1e-9, std::size_t tail = 10) {
  if (subseq_indices.empty()) throw ParameterError("subsequence is empty");
  for (std::size_t k = 0; k < subseq_indices.size(); ++k) {
    if (subseq_indices[k] >= seq.size()) throw ParameterError("subsequence index out of range");
    if (k > 0 && subseq_indices[k] <= subseq_indices[k - 1])
      throw ParameterError("subsequence indices must be strictly increasing");
  }
  if (classify_cauchy_side(space, seq, default_eps_schedule(), CauchySide::right).verdict != Tri::yes)
    throw PreconditionError("sequence is not right K-Cauchy on its prefix");

  auto converges = [&](std::size_t n) { return distance_as(space, which, limit, seq.at(n)) <= tol; };
  const std::size_t sub_tail = std::min(tail, subseq_indices.size());
  for (std::size_t k = subseq_indices.size() - sub_tail; k < subseq_indices.size(); ++k)
    if (!converges(subseq_indices[k]))
      throw PreconditionError("subsequence does not converge to the given limit");

  PromotionResult r;
  const std::size_t full_tail = std::min(tail, seq.size());
  for (std::size_t n = seq.size() - full_tail; n < seq.size(); ++n) {
    if (!converges(n)) {
      r.holds = false;
      r.witness_index = n;
      break;
    }
  }
  return r;
}

/// Right K-Cauchy sequence on a finite space built by construction: a random
/// transient, then a walk where each new item y satisfies d(y, x_j) = 0 for
/// every earlier walk item x_j, continued until the candidate set is a
/// d^s-zero class and then cycled inside that class for `settle` more steps.
std::vector<PointId> random_right_cauchy_sequence(const FiniteSpace& space, std::mt19937_64& rng,
                                                  std::size_t transient_max, std::size_t settle);

struct BoundednessReport {
  bool bounded = true;
  bool prefix_only = false;  ///< verdict rests on the prefix alone (implicit spaces)
  double radius = 0.0;       ///< sup_n d(x_n, anchor) over the prefix
};

/// dbar-boundedness: sup_n dbar(anchor, x_n) = sup_n d(x_n, anchor) finite,
/// anchored at x_0. Always bounded on finite spaces; on implicit spaces the
/// prefix radius is flagged unbounded when it at least 1.5x-es between the
/// half-prefix and the full prefix.
template <DistanceSpace S>
BoundednessReport check_dbar_bounded(const S& space, const PointSeq<typename S::point_type>& seq) {
  BoundednessReport r;
  const auto anchor = seq.at(0);
  const std::size_t len = std::min(seq.size(), kCauchyPrefixCap);
  double half_radius = 0.0;
  for (std::size_t n = 0; n < len; ++n) {
    r.radius = std::max(r.radius, space.distance(seq.at(n), anchor));
    if (n + 1 == std::max<std::size_t>(1, len / 2)) half_radius = r.radius;
  }
  if constexpr (!is_finite_space_v<S>) {
    r.prefix_only = true;
    r.bounded = !(len >= 4 && r.radius > 0.0 && r.radius >= 1.5 * half_radius);
  }
  return r;
}

}  // namespace ekv
