#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ekv/common.hpp"
#include "ekv/objective.hpp"
#include "ekv/space.hpp"

namespace ekv {

enum class CondStatus { pass, fail, not_applicable };
std::string_view to_string(CondStatus s);

/// One certified condition. `witness` holds the offending point(s) on failure.
struct Condition {
  std::string name;
  CondStatus status = CondStatus::pass;
  std::vector<PointId> witness;

  bool ok() const { return status != CondStatus::fail; }
};

/// Deliberate checker defects for harness self-tests. Only the certificate
/// checkers honour these; the solvers and the oracle never do.
enum class Mutation {
  none,
  cond_i_strict,       ///< descent inequality checked with strict '<' and no slack
  cond_ii_point_only,  ///< demands S_gamma(z) = {z}
  cond_iii_reversed,   ///< uses d(z, x) instead of d(x, z)
  cond_iv_halved,      ///< localization bound halved
  sublevel_strict,     ///< checker's sublevel membership uses strict '<'
};
std::string_view to_string(Mutation m);
Mutation mutation_from_string(std::string_view name);
inline constexpr std::array<Mutation, 5> kAllMutations = {
    Mutation::cond_i_strict, Mutation::cond_ii_point_only, Mutation::cond_iii_reversed,
    Mutation::cond_iv_halved, Mutation::sublevel_strict};

/// Argument order of the distance inside the perturbed value used by the
/// strong-minimum condition: `proof` is f(y) + g * d(y, z), `statement` is
/// f(y) + g * d(z, y).
enum class DOrder { proof, statement };
std::string_view to_string(DOrder o);
DOrder d_order_from_string(std::string_view name);

struct CheckOptions {
  Tolerances tol;
  Mutation mutation = Mutation::none;
  DOrder d_order = DOrder::proof;
};

// ---------------------------------------------------------------------------
// Sublevel map S_alpha(x) = {y : f(y) + alpha d(y, x) <= f(x)}

/// Membership with the additive slack tol.membership; S_alpha(x) = X when
/// f(x) = +inf.
bool in_sublevel(const FiniteSpace& space, const Objective& f, double alpha, PointId y, PointId x,
                 const Tolerances& tol = {});

struct SublevelSet {
  PointId base = 0;
  double alpha = 0.0;
  std::vector<PointId> members;  ///< increasing

  bool contains(PointId p) const;
};

SublevelSet sublevel_set(const FiniteSpace& space, const Objective& f, double alpha, PointId x,
                         const Tolerances& tol = {});

struct SublevelPropertyReport {
  /// (i) .. (v); (v) is closedness, not_applicable when f is not lsc.
  std::array<Condition, 5> properties;
  std::optional<PointId> base;  ///< x at which the first failure occurred

  bool ok() const;
};

/// Checks the five structural properties of S_alpha at every x in dom f.
/// Any failure is an implementation bug; the report keeps the first one.
SublevelPropertyReport check_sublevel_properties(const FiniteSpace& space, const Objective& f,
                                                 double alpha, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Picard iteration

struct PicardResult {
  std::vector<PointId> trace;
  PointId z = 0;
  std::vector<double> eps_used;  ///< eps_n per step; exact minimization meets them trivially
};

/// z is a fixed point when every y in S_alpha(z) has f(y) = f(z) =
/// min f(S_alpha(z)) and S_alpha(y) inside closure{y}.
bool is_picard_fixed_point(const FiniteSpace& space, const Objective& f, double alpha, PointId z,
                           const Tolerances& tol = {});

/// x_{n+1} = lowest-index minimizer of f over S_alpha(x_n), stopping at the
/// first fixed point. Throws PreconditionError when x0 is outside dom f.
PicardResult picard_sequence(const FiniteSpace& space, const Objective& f, double alpha, PointId x0,
                             const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Ekeland points

struct EkelandCertificate {
  PointId x0 = 0;
  PointId z = 0;
  std::optional<double> eps;
  std::optional<double> lambda;        ///< set by the (eps, lambda) form
  std::optional<double> lambda_prime;  ///< set by the primed form
  double gamma = 0.0;                  ///< perturbation weight actually used
  std::optional<double> localization_bound;  ///< lambda, or eps / lambda'
  std::array<Condition, 4> conditions;
  std::vector<PointId> picard_trace;
  std::uint64_t instance_hash = 0;

  bool all_pass() const;
};

/// Runs Picard with alpha = eps / lambda from x0 and certifies
///  (i)   f(z) + (eps/lambda) d(z, x0) <= f(x0)
///  (ii)  f(y) = f(z) for y in S_gamma(z)
///  (iii) f(z) < f(x) + (eps/lambda) d(x, z) for x outside S_gamma(z)
///  (iv)  d(z, x0) <= lambda, when f(x0) <= eps + inf f.
EkelandCertificate ekeland_point(const FiniteSpace& space, const Objective& f, double eps,
                                 double lambda, PointId x0, const CheckOptions& opts = {});

/// Same construction with alpha = lambda'; (iv) reads d(z, x0) <= eps / lambda'
/// and is only evaluated when eps is supplied.
EkelandCertificate ekeland_point_prime(const FiniteSpace& space, const Objective& f,
                                       double lambda_prime, PointId x0,
                                       std::optional<double> eps = std::nullopt,
                                       const CheckOptions& opts = {});

// Condition checkers, shared with the strong constructions.

/// f(z) + gamma d(z, x0) <= f(x0) + slack.
Condition check_descent(const FiniteSpace& space, const Objective& f, double gamma, PointId z,
                        PointId x0, double slack, const CheckOptions& opts);
/// f(y) = f(z) for all y in S_gamma(z).
Condition check_flat_sublevel(const FiniteSpace& space, const Objective& f, double gamma, PointId z,
                              const CheckOptions& opts);
/// f(z) < f(x) + gamma d(x, z) for all x outside S_gamma(z).
Condition check_strict_outside(const FiniteSpace& space, const Objective& f, double gamma,
                               PointId z, const CheckOptions& opts);
/// d(z, x0) <= bound when f(x0) <= eps + inf f; not_applicable otherwise.
Condition check_localization(const FiniteSpace& space, const Objective& f, PointId z, PointId x0,
                             std::optional<double> eps, double bound, const CheckOptions& opts);

void require_positive(double value, std::string_view name);
void require_domain_point(const FiniteSpace& space, const Objective& f, PointId x0);

}  // namespace ekv
