#include "ekv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "ekv/hash.hpp"

namespace ekv {

namespace {

CondStatus status_of(bool ok) { return ok ? CondStatus::pass : CondStatus::fail; }

void check_cap(const FiniteSpace& space, std::size_t cap) {
  if (space.size() > cap)
    throw CapExceededError("oracle cap exceeded: " + std::to_string(space.size()) + " points > " +
                           std::to_string(cap));
}

// (ii)/(b) and (iii)/(c) evaluated straight from the defining inequality.
std::pair<bool, bool> flat_and_strict(const FiniteSpace& space, const Objective& f, double gamma,
                                      PointId z, const Tolerances& tol) {
  const double fz = f(z).value();
  bool flat = true, strict = true;
  for (PointId x = 0; x < space.size(); ++x) {
    if (f(x).is_infinite()) continue;  // never in S(z), and f(z) < +inf
    const double gx = f(x).value() + gamma * space(x, z);
    if (gx <= fz + tol.membership) {
      flat = flat && approx_equal(f(x).value(), fz, tol.equality);
    } else {
      strict = strict && fz < gx;
    }
  }
  return {flat, strict};
}

OracleResult finish(OracleResult r) {
  for (PointId z = 0; z < r.per_condition.size(); ++z) {
    const auto& c = r.per_condition[z];
    if (std::none_of(c.begin(), c.end(), [](CondStatus s) { return s == CondStatus::fail; }))
      r.admissible.push_back(z);
  }
  return r;
}

std::string ids_of(const FiniteSpace& space, const std::vector<PointId>& ps) {
  std::string out;
  for (PointId p : ps) {
    if (!out.empty()) out += ",";
    out += space.id(p);
  }
  return out;
}

template <class Cert>
CrossCheckReport cross_check_impl(const Cert& cert, const OracleResult& oracle) {
  if (cert.instance_hash != oracle.instance_hash)
    throw InstanceMismatchError("certificate " + hash_hex(cert.instance_hash) + " vs oracle " +
                                hash_hex(oracle.instance_hash));
  CrossCheckReport r;
  if (cert.z >= oracle.per_condition.size()) {
    r.mismatches.push_back("certificate z is not a point of the oracle instance");
    return r;
  }
  r.z_admissible = oracle.contains(cert.z);
  if (!r.z_admissible) {
    std::ostringstream msg;
    msg << "z=" << cert.z << " is not admissible; oracle admissible set has " << oracle.admissible.size()
        << " points";
    if (!oracle.admissible.empty()) msg << " (first: " << oracle.admissible.front() << ")";
    r.mismatches.push_back(msg.str());
  }
  r.flags_agree = true;
  const auto& truth = oracle.per_condition[cert.z];
  for (std::size_t k = 0; k < 4; ++k) {
    if (cert.conditions[k].status != truth[k]) {
      r.flags_agree = false;
      std::ostringstream msg;
      msg << "condition " << k + 1 << " (" << cert.conditions[k].name << "): certificate says "
          << to_string(cert.conditions[k].status) << ", oracle says " << to_string(truth[k]);
      if (!cert.conditions[k].witness.empty()) {
        msg << "; certificate witness:";
        for (PointId w : cert.conditions[k].witness) msg << ' ' << w;
      }
      r.mismatches.push_back(msg.str());
    }
  }
  return r;
}

std::string describe(const Condition& c, const FiniteSpace& space) {
  std::string s = c.name + " failed";
  if (!c.witness.empty()) s += " (witness " + ids_of(space, c.witness) + ")";
  return s;
}

}  // namespace

bool OracleResult::contains(PointId z) const {
  return std::binary_search(admissible.begin(), admissible.end(), z);
}

OracleResult oracle_ekeland_all(const FiniteSpace& space, const Objective& f, double eps,
                                double lambda, PointId x0, const Tolerances& tol, std::size_t cap) {
  check_cap(space, cap);
  require_positive(eps, "eps");
  require_positive(lambda, "lambda");
  require_domain_point(space, f, x0);
  const double gamma = eps / lambda;
  const double fx0 = f(x0).value();
  const bool localizes = leq_rel(fx0, eps + f.infimum(), tol.equality);

  OracleResult r;
  r.per_condition.resize(space.size());
  for (PointId z = 0; z < space.size(); ++z) {
    auto& c = r.per_condition[z];
    if (f(z).is_infinite()) {
      c = {CondStatus::fail, CondStatus::fail, CondStatus::fail, CondStatus::fail};
      if (!localizes) c[3] = CondStatus::not_applicable;
      continue;
    }
    const auto [flat, strict] = flat_and_strict(space, f, gamma, z, tol);
    c[0] = status_of(leq_rel(f(z).value() + gamma * space(z, x0), fx0, tol.equality));
    c[1] = status_of(flat);
    c[2] = status_of(strict);
    c[3] = localizes ? status_of(leq_rel(space(z, x0), lambda, tol.equality)) : CondStatus::not_applicable;
  }
  const double params[2] = {gamma, eps};
  r.instance_hash = instance_hash(space, f, "ekeland", params, x0);
  return finish(std::move(r));
}

OracleResult oracle_strong_all(const FiniteSpace& space, const Objective& f, double gamma,
                               std::optional<double> delta, PointId x0, StrongFlavor flavor,
                               const Tolerances& tol, DOrder order, std::size_t cap) {
  check_cap(space, cap);
  require_positive(gamma, "gamma");
  if (flavor == StrongFlavor::georgiev) {
    if (!delta) throw ParameterError("georgiev oracle needs delta");
    require_positive(*delta, "delta");
  }
  require_domain_point(space, f, x0);
  const double slack = flavor == StrongFlavor::georgiev ? *delta : 0.0;
  const double fx0 = f(x0).value();

  OracleResult r;
  r.per_condition.resize(space.size());
  for (PointId z = 0; z < space.size(); ++z) {
    auto& c = r.per_condition[z];
    if (f(z).is_infinite()) {
      c = {CondStatus::fail, CondStatus::fail, CondStatus::fail, CondStatus::fail};
      continue;
    }
    const double fz = f(z).value();
    const auto [flat, strict] = flat_and_strict(space, f, gamma, z, tol);
    // every y whose perturbed value equals f(z) must sit at d-distance 0 from z
    bool strong = true;
    for (PointId y = 0; y < space.size() && strong; ++y) {
      if (f(y).is_infinite()) continue;
      const double dist = order == DOrder::proof ? space(y, z) : space(z, y);
      if (approx_equal(f(y).value() + gamma * dist, fz, tol.equality) && space(y, z) > tol.limit)
        strong = false;
    }
    c[0] = status_of(leq_rel(fz + gamma * space(z, x0), fx0 + slack, tol.equality));
    c[1] = status_of(flat);
    c[2] = status_of(strict);
    c[3] = status_of(strong);
  }
  if (flavor == StrongFlavor::georgiev) {
    const double params[2] = {gamma, *delta};
    r.instance_hash = instance_hash(space, f, "georgiev", params, x0);
  } else {
    const double params[1] = {gamma};
    r.instance_hash = instance_hash(space, f, "suzuki", params, x0);
  }
  return finish(std::move(r));
}

CrossCheckReport cross_check(const EkelandCertificate& cert, const OracleResult& oracle) {
  return cross_check_impl(cert, oracle);
}

CrossCheckReport cross_check(const StrongCertificate& cert, const OracleResult& oracle) {
  return cross_check_impl(cert, oracle);
}

RandomInstance make_random_instance(std::uint64_t seed, const InstanceParams& p) {
  if (p.n_min == 0 || p.n_max < p.n_min) throw ParameterError("bad instance size range");
  std::mt19937_64 rng(seed);
  RandomInstance inst;
  inst.seed = seed;
  const std::size_t n = uniform_index(rng, p.n_min, p.n_max);

  RandomSpaceParams sp;
  static constexpr double kZeroProbabilities[] = {0.0, 0.1, 0.3};
  sp.zero_probability = kZeroProbabilities[uniform_index(rng, 0, 2)];
  sp.integer_valued = unit_uniform(rng) < 0.25;
  inst.space = generate_random_qpm(n, rng(), sp);

  RandomObjectiveParams op;
  op.inf_fraction = p.inf_fraction;
  op.tie_probability = 0.25;
  inst.f = random_objective(n, rng(), op);

  const auto dom = inst.f.domain();
  inst.x0 = dom[uniform_index(rng, 0, dom.size() - 1)];
  // (0, max]
  inst.eps = p.param_max * (1.0 - unit_uniform(rng));
  inst.lambda = p.param_max * (1.0 - unit_uniform(rng));
  inst.gamma = p.strong_max * (1.0 - unit_uniform(rng));
  inst.delta = p.strong_max * (1.0 - unit_uniform(rng));
  return inst;
}

std::string_view to_string(FalsifyFamily f) { return f == FalsifyFamily::random ? "random" : "probe"; }

FalsifyFamily falsify_family_from_string(std::string_view name) {
  if (name == "random") return FalsifyFamily::random;
  if (name == "probe") return FalsifyFamily::probe;
  throw ParameterError("unknown falsify family '" + std::string(name) + "'");
}

std::optional<Counterexample> check_instance(const RandomInstance& inst, const CheckOptions& opts) {
  const FiniteSpace& space = inst.space;
  const Objective& f = inst.f;
  auto broken = [&](std::string check, std::string detail) {
    Counterexample c;
    c.instance_seed = inst.seed;
    c.check = std::move(check);
    c.detail = std::move(detail);
    return std::optional<Counterexample>(std::move(c));
  };
  auto first_failure = [&](const auto& conds) -> std::string {
    for (const Condition& c : conds)
      if (!c.ok()) return describe(c, space);
    return {};
  };
  const bool use_oracle = space.size() <= kDefaultOracleCap;

  // plain principle, both forms
  const EkelandCertificate ek = ekeland_point(space, f, inst.eps, inst.lambda, inst.x0, opts);
  if (!ek.all_pass()) return broken("ekeland_conditions", first_failure(ek.conditions));
  const EkelandCertificate ekp =
      ekeland_point_prime(space, f, inst.eps / inst.lambda, inst.x0, inst.eps, opts);
  if (ekp.z != ek.z) return broken("substitution_coherence", "different z");
  for (std::size_t k = 0; k < 4; ++k)
    if (ekp.conditions[k].status != ek.conditions[k].status)
      return broken("substitution_coherence", "condition " + std::to_string(k + 1) + " flags differ");
  if (use_oracle) {
    const OracleResult o = oracle_ekeland_all(space, f, inst.eps, inst.lambda, inst.x0, opts.tol);
    if (o.admissible.empty()) return broken("ekeland_nonempty", "oracle admissible set is empty");
    const CrossCheckReport cc = cross_check(ek, o);
    if (!cc.ok()) return broken("ekeland_cross_check", cc.mismatches.front());
  }

  // strong principle, both flavors
  const StrongCertificate geo = strong_ekeland_georgiev(space, f, inst.gamma, inst.delta, inst.x0, opts);
  if (!geo.conditions_pass()) return broken("georgiev_conditions", first_failure(geo.conditions));
  if (!geo.all_pass()) return broken("georgiev_internal", first_failure(geo.internal_checks));
  const StrongCertificate suz = strong_ekeland_suzuki(space, f, inst.gamma, inst.x0, opts);
  if (!suz.all_pass()) return broken("suzuki_conditions", first_failure(suz.conditions));
  if (use_oracle) {
    const OracleResult og = oracle_strong_all(space, f, inst.gamma, inst.delta, inst.x0,
                                              StrongFlavor::georgiev, opts.tol, opts.d_order);
    if (og.admissible.empty()) return broken("georgiev_nonempty", "oracle admissible set is empty");
    const CrossCheckReport cg = cross_check(geo, og);
    if (!cg.ok()) return broken("georgiev_cross_check", cg.mismatches.front());
    const OracleResult os = oracle_strong_all(space, f, inst.gamma, std::nullopt, inst.x0,
                                              StrongFlavor::suzuki, opts.tol, opts.d_order);
    if (os.admissible.empty()) return broken("suzuki_nonempty", "oracle admissible set is empty");
    const CrossCheckReport cs = cross_check(suz, os);
    if (!cs.ok()) return broken("suzuki_cross_check", cs.mismatches.front());
  }

  const SublevelPropertyReport props = check_sublevel_properties(space, f, inst.gamma, opts.tol);
  if (!props.ok()) return broken("sublevel_properties", first_failure(props.properties));
  return std::nullopt;
}

namespace {

FalsifyReport probe_family(const FalsifyConfig& cfg) {
  FalsifyReport rep;
  rep.family = FalsifyFamily::probe;

  // Unbounded ray with |x - y| and f(x) = x^2 e^{-x}: z = 0 is a strict but
  // not strong minimum.
  const ImplicitSpace ray(Formula::absolute, 0.0, 1.0);
  const ImplicitObjective f = ImplicitObjective::by_name("x2_exp_neg");
  const auto traces = minimizing_sequence_probe(ray, f, 0.0, 0.0, 64, 51, cfg.seed, cfg.opts);
  const auto diverging = std::count_if(traces.begin(), traces.end(),
                                       [](const auto& t) { return t.verdict == TraceVerdict::diverges; });
  {
    std::ostringstream s;
    s << "ray |x-y|, f=x^2 e^-x, z=0, gamma=0: " << diverging << " of " << traces.size()
      << " probe traces are minimizing yet leave every ball around 0";
    rep.notes.push_back(s.str());
  }
  std::size_t truncation_ok = 0, truncations = 0;
  for (std::size_t n = 2; n <= 64; n *= 2, ++truncations) {
    const FiniteSpace trunc = ray.truncate(n);
    const Objective ft = f.tabulate(ray, n);
    const StrongCertificate cert = strong_ekeland_suzuki(trunc, ft, 1.0, 0, cfg.opts);
    if (cert.z == 0 && cert.conditions[3].ok()) ++truncation_ok;
  }
  {
    std::ostringstream s;
    s << "finite truncations of the ray: suzuki certificate (lambda=1) gives z=0 passing the strong-minimum condition on " << truncation_ok << " of "
      << truncations;
    rep.notes.push_back(s.str());
  }

  // Literal argument order of the strong-minimum condition on random instances.
  CheckOptions statement = cfg.opts;
  statement.d_order = DOrder::statement;
  std::size_t geo_fail = 0, suz_fail = 0;
  for (std::size_t i = 0; i < cfg.budget; ++i) {
    const RandomInstance inst = make_random_instance(split_seed(cfg.seed, i), cfg.instances);
    const StrongCertificate geo = strong_ekeland_georgiev(inst.space, inst.f, inst.gamma, inst.delta, inst.x0, cfg.opts);
    const StrongCertificate suz = strong_ekeland_suzuki(inst.space, inst.f, inst.gamma, inst.x0, cfg.opts);
    if (!check_strong_min_finite(inst.space, inst.f, inst.gamma, geo.z, statement).ok()) ++geo_fail;
    if (!check_strong_min_finite(inst.space, inst.f, inst.gamma, suz.z, statement).ok()) ++suz_fail;
    ++rep.instances_tested;
  }
  {
    std::ostringstream s;
    s << "statement-order strong-minimum condition fails for the certified z on " << geo_fail
      << " (georgiev) and " << suz_fail << " (suzuki) of " << cfg.budget << " random instances";
    rep.notes.push_back(s.str());
  }
  return rep;
}

}  // namespace

FalsifyReport falsify(const FalsifyConfig& cfg) {
  if (cfg.family == FalsifyFamily::probe) return probe_family(cfg);

  FalsifyReport rep;
  rep.family = FalsifyFamily::random;
  const std::size_t jobs = std::max<std::size_t>(1, cfg.jobs);
  const std::size_t batch = jobs == 1 ? 1 : 64 * jobs;
  auto run_one = [&](std::size_t i) {
    const std::uint64_t s = split_seed(cfg.seed, i);
    auto ce = check_instance(make_random_instance(s, cfg.instances), cfg.opts);
    if (ce) ce->instance_index = i;
    return ce;
  };
  for (std::size_t start = 0; start < cfg.budget; start += batch) {
    const std::size_t end = std::min(cfg.budget, start + batch);
    std::vector<std::optional<Counterexample>> results(end - start);
    if (jobs == 1) {
      for (std::size_t i = start; i < end; ++i) results[i - start] = run_one(i);
    } else {
      std::vector<std::future<void>> workers;
      for (std::size_t w = 0; w < jobs; ++w)
        workers.push_back(std::async(std::launch::async, [&, w] {
          for (std::size_t i = start + w; i < end; i += jobs) results[i - start] = run_one(i);
        }));
      for (auto& w : workers) w.get();
    }
    for (std::size_t i = start; i < end; ++i) {
      rep.instances_tested = i + 1;
      if (results[i - start]) {
        rep.counterexample = std::move(results[i - start]);
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace ekv
