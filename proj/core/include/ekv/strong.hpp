#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ekv/objective.hpp"
#include "ekv/space.hpp"
#include "ekv/variational.hpp"

namespace ekv {

enum class StrongFlavor { georgiev, suzuki };
std::string_view to_string(StrongFlavor f);
StrongFlavor strong_flavor_from_string(std::string_view name);

struct StrongCertificate {
  StrongFlavor flavor = StrongFlavor::georgiev;
  PointId x0 = 0;
  PointId z = 0;
  double gamma = 0.0;            ///< gamma (Georgiev) or lambda (Suzuki)
  std::optional<double> delta;   ///< Georgiev only
  double lambda_internal = 0.0;  ///< Georgiev: lambda in (0,1) of the construction
  double lambda_prime = 0.0;     ///< weight handed to the primed Ekeland solver
  std::vector<PointId> restricted_set;  ///< X0 (the whole space for Suzuki)
  double inf_full = 0.0;
  double inf_restricted = 0.0;
  /// Georgiev (a)..(d) or Suzuki (i)..(iv).
  std::array<Condition, 4> conditions;
  /// Georgiev proof-step checks; empty for Suzuki.
  std::vector<Condition> internal_checks;
  std::vector<PointId> picard_trace;
  std::uint64_t instance_hash = 0;

  bool conditions_pass() const;
  bool all_pass() const;
};

/// Strong-minimum condition on a finite space: it holds iff every y with
/// f(y) + gamma d(y, z) = f(z) (argument order per opts.d_order) has
/// d(y, z) = 0. gamma may be 0. Witness: the offending y.
Condition check_strong_min_finite(const FiniteSpace& space, const Objective& f, double gamma,
                                  PointId z, const CheckOptions& opts = {});

/// Georgiev-style strong principle through the X0-restriction construction:
/// X0 = {y : f(y) <= f(x0) + delta}, lambda = delta / (delta + (f(x0) - inf f))
/// (1/2 when x0 is already minimal), lambda' = (1 - lambda) gamma, primed
/// Ekeland on (X0, f|X0), then (a)..(d) are certified on the whole space.
StrongCertificate strong_ekeland_georgiev(const FiniteSpace& space, const Objective& f, double gamma,
                                          double delta, PointId x0, const CheckOptions& opts = {});

/// Suzuki-style strong principle: primed Ekeland with lambda' = lambda on the
/// whole space, then (i)..(iv) with (iv) the strong-minimum condition.
StrongCertificate strong_ekeland_suzuki(const FiniteSpace& space, const Objective& f, double lambda,
                                        PointId x0, const CheckOptions& opts = {});

// ---------------------------------------------------------------------------
// Minimizing-sequence probes

enum class TraceVerdict { converges_to_z, diverges, not_minimizing };
std::string_view to_string(TraceVerdict v);

template <class P>
struct MinimizingTrace {
  std::vector<P> seq;
  std::vector<double> g_values;  ///< f(x_n) + gamma d(x_n, z) (or d(z, x_n))
  std::vector<double> dists;     ///< d(x_n, z)
  TraceVerdict verdict = TraceVerdict::not_minimizing;
  std::optional<std::size_t> witness;  ///< index with d(x_n, z) above tolerance
};

/// Evaluates one sequence. The last max(1, len/4) entries form the tail: the
/// trace is minimizing when all tail g-values equal f(z) up to
/// tol.equality, and converges when all tail distances are <= tol.limit.
MinimizingTrace<PointId> evaluate_trace(const FiniteSpace& space, const Objective& f, double gamma,
                                        PointId z, std::vector<PointId> seq,
                                        const CheckOptions& opts = {});
MinimizingTrace<double> evaluate_trace(const ImplicitSpace& space, const ImplicitObjective& f,
                                       double gamma, double z, std::vector<double> seq,
                                       const CheckOptions& opts = {});

/// Random sequences biased toward low g-values, all drawn from one engine
/// seeded with `seed`. gamma >= 0; horizon >= 2.
std::vector<MinimizingTrace<PointId>> minimizing_sequence_probe(
    const FiniteSpace& space, const Objective& f, double gamma, PointId z, std::size_t trials,
    std::size_t horizon, std::uint64_t seed, const CheckOptions& opts = {});

/// Implicit variant (trial t seeded from (seed, t)): mixes escaping sequences along the sampler
/// (x_n = sample(s + n * stride)) with sequences settling among the first
/// `pool` sampled points.
std::vector<MinimizingTrace<double>> minimizing_sequence_probe(
    const ImplicitSpace& space, const ImplicitObjective& f, double gamma, double z,
    std::size_t trials, std::size_t horizon, std::uint64_t seed, const CheckOptions& opts = {},
    std::size_t pool = 64);

/// Strong-minimum verdict by direct simulation: fail (with the first
/// diverging trace's witness point) iff some probe trace is minimizing but
/// does not converge to z.
Condition simulate_strong_min(const FiniteSpace& space, const Objective& f, double gamma, PointId z,
                              std::size_t trials, std::size_t horizon, std::uint64_t seed,
                              const CheckOptions& opts = {});

// ---------------------------------------------------------------------------
// Smyth completeness probe

struct SmythReport {
  std::size_t trials = 0;
  std::size_t limits_found = 0;
  std::optional<std::vector<PointId>> counterexample;

  bool ok() const { return !counterexample && limits_found == trials; }
};

/// Generates right K-Cauchy prefixes on a finite space and checks each has a
/// d^s-limit among the points of its tail.
SmythReport check_smyth_hypothesis(const FiniteSpace& space, std::size_t trials, std::uint64_t seed,
                                   const Tolerances& tol = {});

/// splitmix64 step, for per-trial seeds.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace ekv
