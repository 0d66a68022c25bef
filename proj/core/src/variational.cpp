#include "ekv/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ekv/hash.hpp"

namespace ekv {

namespace {

[[noreturn]] void bad_name(std::string_view what, std::string_view name) {
  throw ParameterError(std::string("unknown ") + std::string(what) + ": '" + std::string(name) + "'");
}

// Membership as seen by the certificate checkers (subject to mutation).
bool checker_in_sublevel(const FiniteSpace& space, const Objective& f, double alpha, PointId y,
                         PointId x, const CheckOptions& opts) {
  if (opts.mutation != Mutation::sublevel_strict) return in_sublevel(space, f, alpha, y, x, opts.tol);
  if (f(x).is_infinite()) return true;
  if (f(y).is_infinite()) return false;
  return f(y).value() + alpha * space(y, x) < f(x).value();
}

// y in S_alpha(x) up to the relative equality slack; used on the "superset"
// side of inclusions, where two membership slacks can stack up.
bool in_sublevel_loose(const FiniteSpace& space, const Objective& f, double alpha, PointId y,
                       PointId x, const Tolerances& tol) {
  if (f(x).is_infinite()) return true;
  if (f(y).is_infinite()) return false;
  return leq_rel(f(y).value() + alpha * space(y, x), f(x).value(), tol.equality);
}

bool ext_equal(ExtReal a, ExtReal b, double rel) {
  if (a.is_infinite() || b.is_infinite()) return a == b;
  return approx_equal(a.value(), b.value(), rel);
}

Condition make(std::string name) {
  Condition c;
  c.name = std::move(name);
  return c;
}

void fail(Condition& c, std::vector<PointId> witness) {
  c.status = CondStatus::fail;
  c.witness = std::move(witness);
}

}  // namespace

std::string_view to_string(CondStatus s) {
  switch (s) {
    case CondStatus::pass: return "pass";
    case CondStatus::fail: return "fail";
    case CondStatus::not_applicable: return "not_applicable";
  }
  return "?";
}

std::string_view to_string(Mutation m) {
  switch (m) {
    case Mutation::none: return "none";
    case Mutation::cond_i_strict: return "cond_i_strict";
    case Mutation::cond_ii_point_only: return "cond_ii_point_only";
    case Mutation::cond_iii_reversed: return "cond_iii_reversed";
    case Mutation::cond_iv_halved: return "cond_iv_halved";
    case Mutation::sublevel_strict: return "sublevel_strict";
  }
  return "?";
}

Mutation mutation_from_string(std::string_view name) {
  if (name == "none") return Mutation::none;
  for (Mutation m : kAllMutations)
    if (to_string(m) == name) return m;
  bad_name("mutation", name);
}

std::string_view to_string(DOrder o) { return o == DOrder::proof ? "proof" : "statement"; }

DOrder d_order_from_string(std::string_view name) {
  if (name == "proof") return DOrder::proof;
  if (name == "statement") return DOrder::statement;
  bad_name("d-order", name);
}

void require_positive(double value, std::string_view name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw ParameterError(std::string(name) + " must be a positive finite number");
}

void require_domain_point(const FiniteSpace& space, const Objective& f, PointId x0) {
  if (f.size() != space.size()) throw ParameterError("objective and space sizes differ");
  if (x0 >= space.size()) throw ParameterError("x0 out of range");
  if (!f.in_domain(x0)) throw PreconditionError("x0 '" + space.id(x0) + "' is not in dom f");
}

bool in_sublevel(const FiniteSpace& space, const Objective& f, double alpha, PointId y, PointId x,
                 const Tolerances& tol) {
  if (f(x).is_infinite()) return true;
  if (f(y).is_infinite()) return false;
  return f(y).value() + alpha * space(y, x) <= f(x).value() + tol.membership;
}

bool SublevelSet::contains(PointId p) const {
  return std::binary_search(members.begin(), members.end(), p);
}

SublevelSet sublevel_set(const FiniteSpace& space, const Objective& f, double alpha, PointId x,
                         const Tolerances& tol) {
  require_positive(alpha, "alpha");
  if (x >= space.size()) throw ParameterError("point out of range");
  SublevelSet s{x, alpha, {}};
  for (PointId y = 0; y < space.size(); ++y)
    if (in_sublevel(space, f, alpha, y, x, tol)) s.members.push_back(y);
  return s;
}

bool SublevelPropertyReport::ok() const {
  return std::all_of(properties.begin(), properties.end(), [](const Condition& c) { return c.ok(); });
}

SublevelPropertyReport check_sublevel_properties(const FiniteSpace& space, const Objective& f,
                                                 double alpha, const Tolerances& tol) {
  require_positive(alpha, "alpha");
  SublevelPropertyReport r;
  r.properties = {make("member_and_domain"), make("descent_and_nesting"), make("strict_off_closure"),
                  make("strict_above_infimum"), make("closed")};
  const bool lsc = is_lsc(space, f);
  if (!lsc) r.properties[4].status = CondStatus::not_applicable;

  const std::size_t n = space.size();
  std::vector<SublevelSet> sets;
  sets.reserve(n);
  for (PointId x = 0; x < n; ++x) sets.push_back(sublevel_set(space, f, alpha, x, tol));

  auto record = [&](std::size_t k, PointId x, std::vector<PointId> w) {
    if (!r.properties[k].ok()) return;
    fail(r.properties[k], std::move(w));
    if (!r.base) r.base = x;
  };

  for (PointId x : f.domain()) {
    const SublevelSet& s = sets[x];
    // (i)
    if (!s.contains(x)) record(0, x, {x});
    for (PointId y : s.members)
      if (!f.in_domain(y)) record(0, x, {y});
    // (ii)
    for (PointId y : s.members) {
      if (!leq_rel(f(y).value(), f(x).value(), tol.equality)) record(1, x, {y});
      for (PointId w : sets[y].members)
        if (!in_sublevel_loose(space, f, alpha, w, x, tol)) record(1, x, {y, w});
    }
    // (iii)
    for (PointId y : s.members)
      if (space(y, x) != 0.0 && !(f(y).value() < f(x).value())) record(2, x, {y});
    // (iv)
    const bool beyond_closure =
        std::any_of(s.members.begin(), s.members.end(), [&](PointId y) { return space(y, x) != 0.0; });
    if (beyond_closure) {
      double m = std::numeric_limits<double>::infinity();
      for (PointId y : s.members) m = std::min(m, f(y).value());
      if (!(f(x).value() > m)) record(3, x, {x});
    }
    // (v): complement is tau_d-open, i.e. no outsider sits at d-distance 0 from a member
    if (lsc) {
      for (PointId y = 0; y < n; ++y) {
        if (s.contains(y)) continue;
        for (PointId a : s.members)
          if (space(y, a) == 0.0) record(4, x, {y, a});
      }
    }
  }
  return r;
}

bool is_picard_fixed_point(const FiniteSpace& space, const Objective& f, double alpha, PointId z,
                           const Tolerances& tol) {
  if (!f.in_domain(z)) return false;
  const SublevelSet s = sublevel_set(space, f, alpha, z, tol);
  double m = std::numeric_limits<double>::infinity();
  for (PointId y : s.members) m = std::min(m, f(y).value());
  if (!approx_equal(f(z).value(), m, tol.equality)) return false;
  for (PointId y : s.members) {
    if (!approx_equal(f(y).value(), f(z).value(), tol.equality)) return false;
    for (PointId w = 0; w < space.size(); ++w)
      if (in_sublevel(space, f, alpha, w, y, tol) && space(w, y) != 0.0) return false;
  }
  return true;
}

PicardResult picard_sequence(const FiniteSpace& space, const Objective& f, double alpha, PointId x0,
                             const Tolerances& tol) {
  require_positive(alpha, "alpha");
  require_domain_point(space, f, x0);
  PicardResult r;
  r.trace.push_back(x0);
  PointId x = x0;
  const std::size_t cap = f.domain().size() + 2;
  double eps_n = 1.0;
  for (std::size_t step = 0; step <= cap; ++step, eps_n *= 0.5) {
    if (is_picard_fixed_point(space, f, alpha, x, tol)) {
      r.z = x;
      return r;
    }
    const SublevelSet s = sublevel_set(space, f, alpha, x, tol);
    PointId best = s.members.front();
    for (PointId y : s.members)
      if (f(y) < f(best)) best = y;
    if (best == x) break;
    r.eps_used.push_back(eps_n);
    r.trace.push_back(best);
    x = best;
  }
  throw InternalError("Picard iteration did not reach a fixed point on a finite space");
}

Condition check_descent(const FiniteSpace& space, const Objective& f, double gamma, PointId z,
                        PointId x0, double slack, const CheckOptions& opts) {
  Condition c = make("descent");
  if (f(z).is_infinite()) {
    fail(c, {z, x0});
    return c;
  }
  const double lhs = f(z).value() + gamma * space(z, x0);
  const double rhs = f(x0).value() + slack;
  const bool ok = opts.mutation == Mutation::cond_i_strict ? lhs < rhs
                                                            : leq_rel(lhs, rhs, opts.tol.equality);
  if (!ok) fail(c, {z, x0});
  return c;
}

Condition check_flat_sublevel(const FiniteSpace& space, const Objective& f, double gamma, PointId z,
                              const CheckOptions& opts) {
  Condition c = make("flat_sublevel");
  for (PointId y = 0; y < space.size(); ++y) {
    if (!checker_in_sublevel(space, f, gamma, y, z, opts)) continue;
    const bool ok = opts.mutation == Mutation::cond_ii_point_only
                        ? y == z
                        : ext_equal(f(y), f(z), opts.tol.equality);
    if (!ok) {
      fail(c, {y});
      break;
    }
  }
  return c;
}

Condition check_strict_outside(const FiniteSpace& space, const Objective& f, double gamma,
                               PointId z, const CheckOptions& opts) {
  Condition c = make("strict_outside");
  if (f(z).is_infinite()) {
    fail(c, {z});
    return c;
  }
  for (PointId x = 0; x < space.size(); ++x) {
    if (checker_in_sublevel(space, f, gamma, x, z, opts) || f(x).is_infinite()) continue;
    const double dist = opts.mutation == Mutation::cond_iii_reversed ? space(z, x) : space(x, z);
    if (!(f(z).value() < f(x).value() + gamma * dist)) {
      fail(c, {x});
      break;
    }
  }
  return c;
}

Condition check_localization(const FiniteSpace& space, const Objective& f, PointId z, PointId x0,
                             std::optional<double> eps, double bound, const CheckOptions& opts) {
  Condition c = make("localization");
  if (!eps || !leq_rel(f(x0).value(), *eps + f.infimum(), opts.tol.equality)) {
    c.status = CondStatus::not_applicable;
    return c;
  }
  const double limit = opts.mutation == Mutation::cond_iv_halved ? 0.5 * bound : bound;
  if (!leq_rel(space(z, x0), limit, opts.tol.equality)) fail(c, {z, x0});
  return c;
}

bool EkelandCertificate::all_pass() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.ok(); });
}

namespace {

EkelandCertificate certify_ekeland(const FiniteSpace& space, const Objective& f, double gamma,
                                   PointId x0, std::optional<double> eps, std::optional<double> bound,
                                   const CheckOptions& opts) {
  EkelandCertificate cert;
  cert.x0 = x0;
  cert.gamma = gamma;
  cert.eps = eps;
  cert.localization_bound = bound;
  const PicardResult pic = picard_sequence(space, f, gamma, x0, opts.tol);
  cert.z = pic.z;
  cert.picard_trace = pic.trace;
  cert.conditions[0] = check_descent(space, f, gamma, cert.z, x0, 0.0, opts);
  cert.conditions[1] = check_flat_sublevel(space, f, gamma, cert.z, opts);
  cert.conditions[2] = check_strict_outside(space, f, gamma, cert.z, opts);
  cert.conditions[3] = check_localization(space, f, cert.z, x0, eps, bound.value_or(0.0), opts);
  const double params[2] = {gamma, eps.value_or(std::numeric_limits<double>::quiet_NaN())};
  cert.instance_hash = instance_hash(space, f, "ekeland", params, x0);
  return cert;
}

}  // namespace

EkelandCertificate ekeland_point(const FiniteSpace& space, const Objective& f, double eps,
                                 double lambda, PointId x0, const CheckOptions& opts) {
  require_positive(eps, "eps");
  require_positive(lambda, "lambda");
  require_domain_point(space, f, x0);
  EkelandCertificate cert = certify_ekeland(space, f, eps / lambda, x0, eps, lambda, opts);
  cert.lambda = lambda;
  return cert;
}

EkelandCertificate ekeland_point_prime(const FiniteSpace& space, const Objective& f,
                                       double lambda_prime, PointId x0, std::optional<double> eps,
                                       const CheckOptions& opts) {
  require_positive(lambda_prime, "lambda'");
  if (eps) require_positive(*eps, "eps");
  require_domain_point(space, f, x0);
  std::optional<double> bound;
  if (eps) bound = *eps / lambda_prime;
  EkelandCertificate cert = certify_ekeland(space, f, lambda_prime, x0, eps, bound, opts);
  cert.lambda_prime = lambda_prime;
  return cert;
}

}  // namespace ekv
