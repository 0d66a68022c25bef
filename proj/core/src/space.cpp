#include "ekv/space.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace ekv {

namespace {

[[noreturn]] void bad_name(std::string_view what, std::string_view name) {
  throw ParameterError(std::string("unknown ") + std::string(what) + ": '" + std::string(name) + "'");
}

std::vector<double> grid_points(const CanonicalParams& p) {
  if (!(p.step > 0.0) || !std::isfinite(p.step))
    throw ParameterError("grid step must be positive");
  if (!(p.hi >= p.lo))
    throw ParameterError("grid range is empty");
  const auto count = static_cast<std::size_t>(std::floor((p.hi - p.lo) / p.step + 1e-9)) + 1;
  std::vector<double> xs(count);
  for (std::size_t k = 0; k < count; ++k) xs[k] = p.lo + static_cast<double>(k) * p.step;
  return xs;
}

FiniteSpace grid_space(const std::vector<double>& xs, Formula formula) {
  const ImplicitSpace formula_space(formula, 0.0, 1.0);
  const std::size_t n = xs.size();
  std::vector<std::string> ids;
  ids.reserve(n);
  for (double x : xs) ids.push_back(format_coordinate(x));
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = formula_space.distance(xs[i], xs[j]);
  return FiniteSpace(std::move(ids), std::move(m));
}

std::vector<std::string> node_ids(std::size_t n, char prefix) {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

}  // namespace

FiniteSpace::FiniteSpace(std::vector<std::string> ids, std::vector<double> matrix)
    : ids_(std::move(ids)), matrix_(std::move(matrix)) {
  if (ids_.empty()) throw MalformedSpaceError("space has no points");
  if (matrix_.size() != ids_.size() * ids_.size())
    throw MalformedSpaceError("matrix is " + std::to_string(matrix_.size()) + " entries, expected " +
                              std::to_string(ids_.size() * ids_.size()));
  index_.reserve(ids_.size());
  for (PointId i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second)
      throw MalformedSpaceError("duplicate point id '" + ids_[i] + "'");
  }
}

std::optional<PointId> FiniteSpace::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FiniteSpace FiniteSpace::subspace(std::span<const PointId> points) const {
  const std::size_t k = points.size();
  std::vector<std::string> ids;
  ids.reserve(k);
  std::vector<double> m(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    ids.push_back(ids_.at(points[a]));
    for (std::size_t b = 0; b < k; ++b) m[a * k + b] = distance(points[a], points[b]);
  }
  return FiniteSpace(std::move(ids), std::move(m));
}

std::string_view to_string(Formula f) {
  switch (f) {
    case Formula::upper: return "upper";
    case Formula::lower: return "lower";
    case Formula::absolute: return "absolute";
  }
  return "?";
}

Formula formula_from_string(std::string_view name) {
  if (name == "upper") return Formula::upper;
  if (name == "lower") return Formula::lower;
  if (name == "absolute") return Formula::absolute;
  bad_name("distance formula", name);
}

ImplicitSpace::ImplicitSpace(Formula formula, double origin, double step)
    : formula_(formula), origin_(origin), step_(step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ParameterError("sampler step must be positive");
  if (!std::isfinite(origin)) throw ParameterError("sampler origin must be finite");
}

double ImplicitSpace::distance(double from, double to) const {
  switch (formula_) {
    case Formula::upper: return std::max(to - from, 0.0);
    case Formula::lower: return std::max(from - to, 0.0);
    case Formula::absolute: return std::abs(from - to);
  }
  return 0.0;
}

FiniteSpace ImplicitSpace::truncate(std::size_t n) const {
  if (n == 0) throw ParameterError("truncation needs at least one point");
  std::vector<double> xs(n);
  for (std::size_t k = 0; k < n; ++k) xs[k] = sample(k);
  return grid_space(xs, formula_);
}

const FiniteSpace& require_finite(const QpmSpace& space, std::string_view op) {
  if (const auto* f = std::get_if<FiniteSpace>(&space)) return *f;
  throw ImplicitSpaceError(std::string(op) + " needs a finite space; got an implicit one");
}

AxiomReport validate_axioms(const FiniteSpace& space, const Tolerances& tol) {
  const std::size_t n = space.size();
  for (PointId x = 0; x < n; ++x) {
    for (PointId y = 0; y < n; ++y) {
      const double v = space(x, y);
      if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream msg;
        msg << "distance d(" << space.id(x) << ", " << space.id(y) << ") = " << v
            << " is not a finite nonnegative number";
        throw MalformedSpaceError(msg.str());
      }
    }
  }

  AxiomReport r;
  for (PointId x = 0; x < n && r.qm1_ok; ++x) {
    if (space(x, x) != 0.0) {
      r.qm1_ok = false;
      r.qm1_witness = x;
    }
  }
  for (PointId x = 0; x < n && r.qm2_ok; ++x) {
    for (PointId y = 0; y < n && r.qm2_ok; ++y) {
      for (PointId z = 0; z < n; ++z) {
        if (space(x, z) > space(x, y) + space(y, z) + tol.triangle) {
          r.qm2_ok = false;
          r.qm2_witness = std::array<PointId, 3>{x, y, z};
          break;
        }
      }
    }
  }
  for (PointId x = 0; x < n; ++x) {
    for (PointId y = 0; y < n; ++y) {
      if (x == y || space(x, y) != 0.0) continue;
      if (r.is_t1) {
        r.is_t1 = false;
        r.t1_witness = std::pair{x, y};
      }
      if (r.is_quasi_metric && space(y, x) == 0.0) {
        r.is_quasi_metric = false;
        r.qm3_witness = std::pair{x, y};
      }
    }
  }
  return r;
}

AxiomReport validate_axioms(const ImplicitSpace& space, std::span<const double> sample,
                            const Tolerances& tol) {
  if (sample.empty()) throw ParameterError("sampled validation needs a nonempty sample");
  const std::size_t n = sample.size();
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back("s" + std::to_string(i));
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = space.distance(sample[i], sample[j]);
  AxiomReport r = validate_axioms(FiniteSpace(std::move(ids), std::move(m)), tol);
  r.sampled = true;
  r.sample_size = n;
  return r;
}

FiniteSpace conjugate(const FiniteSpace& space) {
  const std::size_t n = space.size();
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = space(j, i);
  return FiniteSpace(space.ids(), std::move(m));
}

ImplicitSpace conjugate(const ImplicitSpace& space) {
  Formula f = space.formula();
  if (f == Formula::upper)
    f = Formula::lower;
  else if (f == Formula::lower)
    f = Formula::upper;
  return ImplicitSpace(f, space.origin(), space.step());
}

QpmSpace conjugate(const QpmSpace& space) {
  return std::visit([](const auto& s) -> QpmSpace { return conjugate(s); }, space);
}

FiniteSpace symmetrize(const FiniteSpace& space) {
  const std::size_t n = space.size();
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = std::max(space(i, j), space(j, i));
  return FiniteSpace(space.ids(), std::move(m));
}

ImplicitSpace symmetrize(const ImplicitSpace& space) {
  // max(max(y-x,0), max(x-y,0)) = |x-y|
  return ImplicitSpace(Formula::absolute, space.origin(), space.step());
}

QpmSpace symmetrize(const QpmSpace& space) {
  return std::visit([](const auto& s) -> QpmSpace { return symmetrize(s); }, space);
}

std::string_view to_string(Which w) {
  switch (w) {
    case Which::d: return "d";
    case Which::dbar: return "dbar";
    case Which::ds: return "ds";
  }
  return "?";
}

Which which_from_string(std::string_view name) {
  if (name == "d") return Which::d;
  if (name == "dbar") return Which::dbar;
  if (name == "ds") return Which::ds;
  bad_name("distance mode", name);
}

std::vector<PointId> ball(const FiniteSpace& space, PointId center, double r, BallShape shape,
                          Which which) {
  if (center >= space.size()) throw ParameterError("ball center out of range");
  std::vector<PointId> out;
  if (shape == BallShape::open && !(r > 0.0)) return out;
  for (PointId y = 0; y < space.size(); ++y) {
    const double dist = distance_as(space, which, center, y);
    if (shape == BallShape::open ? dist < r : dist <= r) out.push_back(y);
  }
  return out;
}

std::vector<PointId> closure_of_singleton(const FiniteSpace& space, PointId z) {
  if (z >= space.size()) throw ParameterError("point out of range");
  std::vector<PointId> out;
  for (PointId y = 0; y < space.size(); ++y)
    if (space(y, z) == 0.0) out.push_back(y);
  return out;
}

void min_plus_closure(std::vector<double>& m, std::size_t n) {
  if (m.size() != n * n) throw ParameterError("closure: matrix shape mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = m[i * n + k];
      if (dik == std::numeric_limits<double>::infinity()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double via = dik + m[k * n + j];
        if (via < m[i * n + j]) m[i * n + j] = via;
      }
    }
  }
}

FiniteSpace generate_random_qpm(std::size_t n, std::uint64_t seed, const RandomSpaceParams& params) {
  if (n == 0) throw ParameterError("random space needs n >= 1");
  if (!(params.scale > 0.0)) throw ParameterError("scale must be positive");
  std::mt19937_64 rng(seed);
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (unit_uniform(rng) < params.zero_probability) continue;
      m[i * n + j] = params.integer_valued
                         ? static_cast<double>(uniform_index(rng, 1, 10))
                         : params.scale * uniform_in(rng, 0.05, 1.0);
    }
  }
  min_plus_closure(m, n);
  return FiniteSpace(node_ids(n, 'p'), std::move(m));
}

std::string_view to_string(CanonicalFamily f) {
  switch (f) {
    case CanonicalFamily::upper_grid: return "upper_grid";
    case CanonicalFamily::directed_cycle: return "directed_cycle";
    case CanonicalFamily::asymmetric_graph: return "asymmetric_graph";
    case CanonicalFamily::symmetric_metric: return "symmetric_metric";
  }
  return "?";
}

CanonicalFamily canonical_family_from_string(std::string_view name) {
  if (name == "upper_grid") return CanonicalFamily::upper_grid;
  if (name == "directed_cycle") return CanonicalFamily::directed_cycle;
  if (name == "asymmetric_graph") return CanonicalFamily::asymmetric_graph;
  if (name == "symmetric_metric") return CanonicalFamily::symmetric_metric;
  bad_name("canonical family", name);
}

FiniteSpace canonical_space(CanonicalFamily family, const CanonicalParams& p) {
  switch (family) {
    case CanonicalFamily::upper_grid: return grid_space(grid_points(p), Formula::upper);
    case CanonicalFamily::symmetric_metric: return grid_space(grid_points(p), Formula::absolute);
    case CanonicalFamily::directed_cycle:
    case CanonicalFamily::asymmetric_graph: break;
  }
  const std::size_t n = p.nodes;
  if (n == 0) throw ParameterError("graph family needs at least one node");
  if (!(p.forward > 0.0) || !std::isfinite(p.forward)) throw ParameterError("edge weight must be positive");
  const bool cycle = family == CanonicalFamily::directed_cycle;
  if (!cycle && (!(p.backward > 0.0) || !std::isfinite(p.backward)))
    throw ParameterError("edge weight must be positive");

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> m(n * n, inf);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    m[i * n + i + 1] = std::min(m[i * n + i + 1], p.forward);
    if (!cycle) m[(i + 1) * n + i] = std::min(m[(i + 1) * n + i], p.backward);
  }
  if (cycle && n > 1) m[(n - 1) * n] = std::min(m[(n - 1) * n], p.forward);
  min_plus_closure(m, n);
  return FiniteSpace(node_ids(n, 'v'), std::move(m));
}

ImplicitSpace canonical_implicit(CanonicalFamily family, const CanonicalParams& p) {
  if (!(p.step > 0.0)) throw ParameterError("grid step must be positive");
  switch (family) {
    case CanonicalFamily::upper_grid: return ImplicitSpace(Formula::upper, p.lo, p.step);
    case CanonicalFamily::symmetric_metric: return ImplicitSpace(Formula::absolute, p.lo, p.step);
    default: break;
  }
  throw ParameterError("no implicit variant for family '" + std::string(to_string(family)) + "'");
}

std::string format_coordinate(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace ekv
