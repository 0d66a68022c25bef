#include "ekv/strong.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ekv/hash.hpp"
#include "ekv/sequence.hpp"

namespace ekv {

namespace {

Condition named(std::string name, bool ok, std::vector<PointId> witness = {}) {
  Condition c;
  c.name = std::move(name);
  if (!ok) {
    c.status = CondStatus::fail;
    c.witness = std::move(witness);
  }
  return c;
}

bool loose_member(const FiniteSpace& space, const Objective& f, double alpha, PointId y, PointId x,
                  const Tolerances& tol) {
  if (f(x).is_infinite()) return true;
  if (f(y).is_infinite()) return false;
  return leq_rel(f(y).value() + alpha * space(y, x), f(x).value(), tol.equality);
}

// Perturbed value and distance-to-z for one point, shared by both probe kinds.
template <class Space, class P>
double perturbed(const Space& space, double fy, double gamma, const P& y, const P& z, DOrder order) {
  if (std::isinf(fy)) return fy;
  return fy + gamma * (order == DOrder::proof ? space.distance(y, z) : space.distance(z, y));
}

template <class Space, class P, class F>
MinimizingTrace<P> evaluate_generic(const Space& space, const F& fval, double gamma, const P& z,
                                    std::vector<P> seq, const CheckOptions& opts) {
  if (seq.size() < 2) throw ParameterError("trace horizon must be at least 2");
  MinimizingTrace<P> t;
  const double fz = fval(z);
  t.g_values.reserve(seq.size());
  t.dists.reserve(seq.size());
  for (const P& x : seq) {
    t.g_values.push_back(perturbed(space, fval(x), gamma, x, z, opts.d_order));
    t.dists.push_back(space.distance(x, z));
  }
  t.seq = std::move(seq);
  const std::size_t len = t.seq.size();
  const std::size_t tail = std::max<std::size_t>(1, len / 4);
  bool minimizing = true;
  bool converged = true;
  double worst = -1.0;
  for (std::size_t n = len - tail; n < len; ++n) {
    const double g = t.g_values[n];
    minimizing = minimizing && std::isfinite(g) && approx_equal(g, fz, opts.tol.equality);
    if (t.dists[n] > opts.tol.limit) {
      converged = false;
      if (t.dists[n] > worst) {
        worst = t.dists[n];
        t.witness = n;
      }
    }
  }
  if (!minimizing) {
    t.verdict = TraceVerdict::not_minimizing;
    t.witness.reset();
  } else if (converged) {
    t.verdict = TraceVerdict::converges_to_z;
  } else {
    t.verdict = TraceVerdict::diverges;
  }
  return t;
}

// Candidates ordered by |g - f(z)|, +inf last, ties by position.
template <class P>
std::vector<P> rank_by_gap(const std::vector<P>& pool, const std::vector<double>& g, double fz) {
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  auto gap = [&](std::size_t i) {
    return std::isfinite(g[i]) ? std::abs(g[i] - fz) : std::numeric_limits<double>::infinity();
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gap(a) < gap(b); });
  std::vector<P> out;
  out.reserve(pool.size());
  for (std::size_t i : order) out.push_back(pool[i]);
  return out;
}

// A transient of random pool points followed by a tail cycling over a random
// nonempty subset of the k best-ranked points (k uniform), or a constant run.
template <class P>
std::vector<P> settling_sequence(const std::vector<P>& pool, const std::vector<P>& ranked,
                                 std::size_t horizon, std::mt19937_64& rng) {
  const std::size_t k = uniform_index(rng, 1, ranked.size());
  std::vector<P> seq;
  seq.reserve(horizon);
  if (unit_uniform(rng) < 0.2) {
    seq.assign(horizon, ranked[uniform_index(rng, 0, k - 1)]);
    return seq;
  }
  std::vector<P> subset;
  for (std::size_t i = 0; i < k; ++i)
    if (unit_uniform(rng) < 0.5) subset.push_back(ranked[i]);
  if (subset.empty()) subset.push_back(ranked[uniform_index(rng, 0, k - 1)]);
  const std::size_t transient = uniform_index(rng, 0, horizon / 2);
  for (std::size_t i = 0; i < transient; ++i) seq.push_back(pool[uniform_index(rng, 0, pool.size() - 1)]);
  while (seq.size() < horizon) seq.push_back(subset[uniform_index(rng, 0, subset.size() - 1)]);
  return seq;
}

}  // namespace

std::string_view to_string(StrongFlavor f) { return f == StrongFlavor::georgiev ? "georgiev" : "suzuki"; }

StrongFlavor strong_flavor_from_string(std::string_view name) {
  if (name == "georgiev") return StrongFlavor::georgiev;
  if (name == "suzuki") return StrongFlavor::suzuki;
  throw ParameterError("unknown flavor '" + std::string(name) + "'");
}

std::string_view to_string(TraceVerdict v) {
  switch (v) {
    case TraceVerdict::converges_to_z: return "converges_to_z";
    case TraceVerdict::diverges: return "diverges";
    case TraceVerdict::not_minimizing: return "not_minimizing";
  }
  return "?";
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool StrongCertificate::conditions_pass() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.ok(); });
}

bool StrongCertificate::all_pass() const {
  return conditions_pass() &&
         std::all_of(internal_checks.begin(), internal_checks.end(), [](const Condition& c) { return c.ok(); });
}

Condition check_strong_min_finite(const FiniteSpace& space, const Objective& f, double gamma,
                                  PointId z, const CheckOptions& opts) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ParameterError("gamma must be >= 0");
  if (z >= space.size() || !f.in_domain(z)) throw PreconditionError("z must lie in dom f");
  Condition c;
  c.name = "strong_minimum";
  const double fz = f(z).value();
  for (PointId y : f.domain()) {
    const double g = perturbed(space, f(y).value(), gamma, y, z, opts.d_order);
    if (approx_equal(g, fz, opts.tol.equality) && space(y, z) > opts.tol.limit) {
      c.status = CondStatus::fail;
      c.witness = {y};
      break;
    }
  }
  return c;
}

StrongCertificate strong_ekeland_georgiev(const FiniteSpace& space, const Objective& f, double gamma,
                                          double delta, PointId x0, const CheckOptions& opts) {
  require_positive(gamma, "gamma");
  require_positive(delta, "delta");
  require_domain_point(space, f, x0);
  const Tolerances& tol = opts.tol;

  StrongCertificate cert;
  cert.flavor = StrongFlavor::georgiev;
  cert.x0 = x0;
  cert.gamma = gamma;
  cert.delta = delta;

  const double fx0 = f(x0).value();
  const double level = fx0 + delta;
  for (PointId y : f.domain())
    if (f(y).value() <= level + tol.membership) cert.restricted_set.push_back(y);

  cert.inf_full = f.infimum();
  cert.inf_restricted = std::numeric_limits<double>::infinity();
  for (PointId y : cert.restricted_set) cert.inf_restricted = std::min(cert.inf_restricted, f(y).value());

  const double gap = fx0 - cert.inf_full;
  const double lambda = gap > 0.0 ? delta / (delta + gap) : 0.5;
  cert.lambda_internal = lambda;
  cert.lambda_prime = (1.0 - lambda) * gamma;

  const auto x0_pos = static_cast<PointId>(
      std::find(cert.restricted_set.begin(), cert.restricted_set.end(), x0) - cert.restricted_set.begin());
  const FiniteSpace sub = space.subspace(cert.restricted_set);
  const Objective fsub = f.restrict(cert.restricted_set);
  const EkelandCertificate inner = ekeland_point_prime(sub, fsub, cert.lambda_prime, x0_pos, std::nullopt, opts);
  cert.z = cert.restricted_set[inner.z];
  for (PointId p : inner.picard_trace) cert.picard_trace.push_back(cert.restricted_set[p]);
  const PointId z = cert.z;

  // proof steps
  cert.internal_checks.push_back(
      named("lambda_choice", lambda > 0.0 && lambda < 1.0 && leq_rel(lambda / (1.0 - lambda) * gap, delta, tol.equality)));
  cert.internal_checks.push_back(named("lambda_prime_below_gamma", cert.lambda_prime < gamma));
  cert.internal_checks.push_back(
      named("inf_preserved", approx_equal(cert.inf_full, cert.inf_restricted, tol.equality)));
  cert.internal_checks.push_back(named("restricted_ekeland", inner.all_pass()));
  {
    Condition c = named("s_gamma_in_s_lambda_prime", true);
    for (PointId y = 0; y < space.size() && c.ok(); ++y)
      if (in_sublevel(space, f, gamma, y, z, tol) && !loose_member(space, f, cert.lambda_prime, y, z, tol))
        c = named(c.name, false, {y});
    cert.internal_checks.push_back(c);
  }
  {
    Condition c = named("s_lambda_prime_in_x0", true);
    for (PointId y = 0; y < space.size() && c.ok(); ++y)
      if (in_sublevel(space, f, cert.lambda_prime, y, z, tol) &&
          !(f(y).is_finite() && leq_rel(f(y).value(), level, tol.equality)))
        c = named(c.name, false, {y});
    cert.internal_checks.push_back(c);
  }

  cert.conditions[0] = check_descent(space, f, gamma, z, x0, delta, opts);
  cert.conditions[1] = check_flat_sublevel(space, f, gamma, z, opts);
  cert.conditions[2] = check_strict_outside(space, f, gamma, z, opts);
  cert.conditions[3] = check_strong_min_finite(space, f, gamma, z, opts);

  const double params[2] = {gamma, delta};
  cert.instance_hash = instance_hash(space, f, "georgiev", params, x0);
  return cert;
}

StrongCertificate strong_ekeland_suzuki(const FiniteSpace& space, const Objective& f, double lambda,
                                        PointId x0, const CheckOptions& opts) {
  require_positive(lambda, "lambda");
  require_domain_point(space, f, x0);
  StrongCertificate cert;
  cert.flavor = StrongFlavor::suzuki;
  cert.x0 = x0;
  cert.gamma = lambda;
  cert.lambda_prime = lambda;
  cert.restricted_set.resize(space.size());
  std::iota(cert.restricted_set.begin(), cert.restricted_set.end(), PointId{0});
  cert.inf_full = cert.inf_restricted = f.infimum();

  const EkelandCertificate inner = ekeland_point_prime(space, f, lambda, x0, std::nullopt, opts);
  cert.z = inner.z;
  cert.picard_trace = inner.picard_trace;
  cert.conditions[0] = check_descent(space, f, lambda, cert.z, x0, 0.0, opts);
  cert.conditions[1] = check_flat_sublevel(space, f, lambda, cert.z, opts);
  cert.conditions[2] = check_strict_outside(space, f, lambda, cert.z, opts);
  cert.conditions[3] = check_strong_min_finite(space, f, lambda, cert.z, opts);

  const double params[1] = {lambda};
  cert.instance_hash = instance_hash(space, f, "suzuki", params, x0);
  return cert;
}

MinimizingTrace<PointId> evaluate_trace(const FiniteSpace& space, const Objective& f, double gamma,
                                        PointId z, std::vector<PointId> seq, const CheckOptions& opts) {
  if (z >= space.size() || !f.in_domain(z)) throw PreconditionError("z must lie in dom f");
  auto fval = [&](PointId p) { return f(p).raw(); };
  return evaluate_generic(space, fval, gamma, z, std::move(seq), opts);
}

MinimizingTrace<double> evaluate_trace(const ImplicitSpace& space, const ImplicitObjective& f,
                                       double gamma, double z, std::vector<double> seq,
                                       const CheckOptions& opts) {
  return evaluate_generic(space, f, gamma, z, std::move(seq), opts);
}

std::vector<MinimizingTrace<PointId>> minimizing_sequence_probe(
    const FiniteSpace& space, const Objective& f, double gamma, PointId z, std::size_t trials,
    std::size_t horizon, std::uint64_t seed, const CheckOptions& opts) {
  if (horizon < 2) throw ParameterError("horizon must be at least 2");
  if (!(gamma >= 0.0)) throw ParameterError("gamma must be >= 0");
  if (z >= space.size() || !f.in_domain(z)) throw PreconditionError("z must lie in dom f");
  std::vector<PointId> pool(space.size());
  std::iota(pool.begin(), pool.end(), PointId{0});
  std::vector<double> g(pool.size());
  for (PointId p : pool) g[p] = perturbed(space, f(p).raw(), gamma, p, z, opts.d_order);
  const std::vector<PointId> ranked = rank_by_gap(pool, g, f(z).value());

  std::vector<MinimizingTrace<PointId>> out;
  out.reserve(trials);
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    out.push_back(evaluate_trace(space, f, gamma, z, settling_sequence(pool, ranked, horizon, rng), opts));
  }
  return out;
}

std::vector<MinimizingTrace<double>> minimizing_sequence_probe(
    const ImplicitSpace& space, const ImplicitObjective& f, double gamma, double z,
    std::size_t trials, std::size_t horizon, std::uint64_t seed, const CheckOptions& opts,
    std::size_t pool_size) {
  if (horizon < 2) throw ParameterError("horizon must be at least 2");
  if (!(gamma >= 0.0)) throw ParameterError("gamma must be >= 0");
  if (pool_size == 0) throw ParameterError("pool must be nonempty");
  std::vector<double> pool(pool_size);
  std::vector<double> g(pool_size);
  for (std::size_t k = 0; k < pool_size; ++k) {
    pool[k] = space.sample(k);
    g[k] = perturbed(space, f(pool[k]), gamma, pool[k], z, opts.d_order);
  }
  const std::vector<double> ranked = rank_by_gap(pool, g, f(z));

  std::vector<MinimizingTrace<double>> out;
  out.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(split_seed(seed, t));
    std::vector<double> seq;
    if (t == 0 || unit_uniform(rng) < 1.0 / 3.0) {
      // escape along the sampler; trial 0 is always the plain walk x_n = sample(n)
      const std::size_t start = t == 0 ? 0 : uniform_index(rng, 0, pool_size - 1);
      const std::size_t stride = t == 0 ? 1 : uniform_index(rng, 1, 3);
      for (std::size_t n = 0; n < horizon; ++n) seq.push_back(space.sample(start + n * stride));
    } else {
      seq = settling_sequence(pool, ranked, horizon, rng);
    }
    out.push_back(evaluate_trace(space, f, gamma, z, std::move(seq), opts));
  }
  return out;
}

Condition simulate_strong_min(const FiniteSpace& space, const Objective& f, double gamma, PointId z,
                              std::size_t trials, std::size_t horizon, std::uint64_t seed,
                              const CheckOptions& opts) {
  Condition c;
  c.name = "strong_minimum_simulated";
  const auto traces = minimizing_sequence_probe(space, f, gamma, z, trials, horizon, seed, opts);
  for (const auto& t : traces) {
    if (t.verdict == TraceVerdict::diverges) {
      c.status = CondStatus::fail;
      c.witness = {t.seq[*t.witness]};
      break;
    }
  }
  return c;
}

SmythReport check_smyth_hypothesis(const FiniteSpace& space, std::size_t trials, std::uint64_t seed,
                                   const Tolerances& tol) {
  SmythReport r;
  r.trials = trials;
  const std::size_t n = space.size();
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(split_seed(seed, t));
    std::vector<PointId> items = random_right_cauchy_sequence(space, rng, 2 * n, 4 * n + 4 * default_eps_schedule().size());
    const PointSeq<PointId> seq(items);
    const bool cauchy = classify_cauchy_side(space, seq, default_eps_schedule(), CauchySide::right).verdict == Tri::yes;
    const std::size_t tail = std::max<std::size_t>(1, items.size() / 4);
    std::vector<PointId> candidates(items.end() - static_cast<std::ptrdiff_t>(tail), items.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    const auto v = classify_convergence(space, seq, candidates, tol.limit, tail);
    if (cauchy && !v.ds_limits.empty()) {
      ++r.limits_found;
    } else if (!r.counterexample) {
      r.counterexample = items;
    }
  }
  return r;
}

}  // namespace ekv
