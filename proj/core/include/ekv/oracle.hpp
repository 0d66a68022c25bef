#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ekv/objective.hpp"
#include "ekv/space.hpp"
#include "ekv/strong.hpp"
#include "ekv/variational.hpp"

namespace ekv {

inline constexpr std::size_t kDefaultOracleCap = 64;

class CapExceededError : public Error {
 public:
  using Error::Error;
};

class InstanceMismatchError : public Error {
 public:
  using Error::Error;
};

/// Ground truth on a finite instance: every candidate z evaluated directly
/// against each theorem condition.
struct OracleResult {
  std::vector<PointId> admissible;                      ///< increasing
  std::vector<std::array<CondStatus, 4>> per_condition;  ///< indexed by candidate z
  std::uint64_t instance_hash = 0;

  bool contains(PointId z) const;
};

/// Brute force for the (eps, lambda) Ekeland conditions (i)..(iv).
OracleResult oracle_ekeland_all(const FiniteSpace& space, const Objective& f, double eps,
                                double lambda, PointId x0, const Tolerances& tol = {},
                                std::size_t cap = kDefaultOracleCap);

/// Brute force for Georgiev (a)..(d) (gamma, delta) or Suzuki (i)..(iv)
/// (lambda = gamma, delta ignored), using the finite characterization of the
/// strong-minimum condition.
OracleResult oracle_strong_all(const FiniteSpace& space, const Objective& f, double gamma,
                               std::optional<double> delta, PointId x0, StrongFlavor flavor,
                               const Tolerances& tol = {}, DOrder order = DOrder::proof,
                               std::size_t cap = kDefaultOracleCap);

struct CrossCheckReport {
  bool z_admissible = false;
  bool flags_agree = false;
  std::vector<std::string> mismatches;  ///< human-readable, with witnesses

  bool ok() const { return z_admissible && flags_agree; }
};

/// Throws InstanceMismatchError when the certificate and the oracle result
/// were computed on different instances.
CrossCheckReport cross_check(const EkelandCertificate& cert, const OracleResult& oracle);
CrossCheckReport cross_check(const StrongCertificate& cert, const OracleResult& oracle);

// ---------------------------------------------------------------------------
// Instance generation and falsification

struct RandomInstance {
  std::uint64_t seed = 0;
  FiniteSpace space;
  Objective f{std::vector<ExtReal>{0.0}};
  PointId x0 = 0;
  double eps = 1.0;
  double lambda = 1.0;
  double gamma = 1.0;
  double delta = 1.0;
};

struct InstanceParams {
  std::size_t n_min = 1;
  std::size_t n_max = 12;
  double inf_fraction = 0.1;
  double param_max = 5.0;   ///< eps, lambda drawn from (0, param_max]
  double strong_max = 3.0;  ///< gamma, delta drawn from (0, strong_max]
};

/// Random space (mix of T1, T0-not-T1 and non-T0 via zero entries, some
/// integer-valued), objective with +inf entries and ties, x0 in dom f and
/// random parameters. Deterministic per seed.
RandomInstance make_random_instance(std::uint64_t seed, const InstanceParams& params = {});

enum class FalsifyFamily { random, probe };
std::string_view to_string(FalsifyFamily f);
FalsifyFamily falsify_family_from_string(std::string_view name);

struct FalsifyConfig {
  FalsifyFamily family = FalsifyFamily::random;
  std::size_t budget = 1000;
  std::uint64_t seed = 1;
  InstanceParams instances;
  CheckOptions opts;
  std::size_t jobs = 1;
};

struct Counterexample {
  std::size_t instance_index = 0;
  std::uint64_t instance_seed = 0;
  std::string check;   ///< which assertion broke
  std::string detail;  ///< witness description
};

struct FalsifyReport {
  FalsifyFamily family = FalsifyFamily::random;
  std::size_t instances_tested = 0;
  std::optional<Counterexample> counterexample;
  std::vector<std::string> notes;  ///< descriptive findings (probe family)
};

/// Runs every solver, certificate and oracle on one instance and returns the
/// first broken assertion, if any.
std::optional<Counterexample> check_instance(const RandomInstance& inst, const CheckOptions& opts);

/// Searches `budget` random instances for a broken assertion. With the
/// probe family it only gathers descriptive notes (ray demonstration and
/// statement-order behaviour) and never reports a counterexample.
FalsifyReport falsify(const FalsifyConfig& config);

}  // namespace ekv
