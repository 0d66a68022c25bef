#include "ekv/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "ekv/hash.hpp"

namespace ekv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double number_or_inf(const Json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && v.get<std::string>() == "inf") return kInf;
  throw FormatError(where + ": expected a number or \"inf\"");
}

Json number_json(double x) {
  if (std::isinf(x)) return "inf";
  return x;
}

const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(what + ": missing field '" + key + "'");
  return j.at(key);
}

Json ids_json(const std::vector<PointId>& ps, const FiniteSpace& space) {
  Json arr = Json::array();
  for (PointId p : ps) arr.push_back(space.id(p));
  return arr;
}

Json optional_json(const std::optional<double>& x) { return x ? number_json(*x) : Json(nullptr); }

Json conditions_json(const std::array<Condition, 4>& conds, const FiniteSpace& space) {
  Json arr = Json::array();
  for (const auto& c : conds) arr.push_back(to_json(c, space));
  return arr;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Spaces

QpmSpace space_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("space: expected an object");
  try {
    if (j.contains("formula")) {
      const Formula formula = formula_from_string(j.at("formula").get<std::string>());
      double origin = 0.0, step = 1.0;
      if (j.contains("params")) {
        const Json& p = j.at("params");
        origin = p.value("origin", 0.0);
        step = p.value("step", 1.0);
      }
      return ImplicitSpace(formula, origin, step);
    }
    const auto ids = field(j, "points", "space").get<std::vector<std::string>>();
    const Json& rows = field(j, "matrix", "space");
    if (!rows.is_array() || rows.size() != ids.size())
      throw FormatError("space: matrix must have one row per point");
    std::vector<double> m;
    m.reserve(ids.size() * ids.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_array() || rows[i].size() != ids.size())
        throw FormatError("space: row " + std::to_string(i) + " has the wrong length");
      for (std::size_t k = 0; k < ids.size(); ++k)
        m.push_back(number_or_inf(rows[i][k], "space: matrix[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    }
    return FiniteSpace(ids, std::move(m));
  } catch (const Json::exception& e) {
    throw FormatError(std::string("space: ") + e.what());
  } catch (const ParameterError& e) {
    throw FormatError(std::string("space: ") + e.what());
  } catch (const MalformedSpaceError& e) {
    throw FormatError(std::string("space: ") + e.what());
  }
}

Json to_json(const FiniteSpace& space) {
  Json rows = Json::array();
  for (PointId i = 0; i < space.size(); ++i) {
    Json row = Json::array();
    for (PointId k = 0; k < space.size(); ++k) row.push_back(number_json(space(i, k)));
    rows.push_back(std::move(row));
  }
  return {{"schema_version", kSchemaVersion}, {"points", space.ids()}, {"matrix", std::move(rows)}};
}

Json to_json(const ImplicitSpace& space) {
  return {{"schema_version", kSchemaVersion},
          {"formula", to_string(space.formula())},
          {"params", {{"origin", space.origin()}, {"step", space.step()}}}};
}

Json to_json(const QpmSpace& space) {
  return std::visit([](const auto& s) { return to_json(s); }, space);
}

// ---------------------------------------------------------------------------
// Objectives

ObjectiveSpec objective_from_json(const Json& j, const QpmSpace& space) {
  if (!j.is_object()) throw FormatError("objective: expected an object");
  try {
    if (j.contains("formula")) return ImplicitObjective::by_name(j.at("formula").get<std::string>());
    if (std::holds_alternative<ImplicitSpace>(space))
      throw FormatError("objective: an implicit space needs a formula objective");
    const auto& fs = std::get<FiniteSpace>(space);
    const Json& values = field(j, "values", "objective");
    if (!values.is_object()) throw FormatError("objective: 'values' must map point ids to values");
    std::vector<ExtReal> v(fs.size());
    std::vector<bool> seen(fs.size(), false);
    for (const auto& [id, val] : values.items()) {
      const auto p = fs.index_of(id);
      if (!p) throw FormatError("objective: unknown point id '" + id + "'");
      const double x = number_or_inf(val, "objective: value of '" + id + "'");
      v[*p] = std::isinf(x) ? ExtReal::infinity() : ExtReal(x);
      seen[*p] = true;
    }
    for (PointId p = 0; p < fs.size(); ++p)
      if (!seen[p]) throw FormatError("objective: no value for point '" + fs.id(p) + "'");
    return Objective(std::move(v));
  } catch (const Json::exception& e) {
    throw FormatError(std::string("objective: ") + e.what());
  } catch (const ParameterError& e) {
    throw FormatError(std::string("objective: ") + e.what());
  }
}

Json to_json(const Objective& f, const FiniteSpace& space) {
  Json values = Json::object();
  for (PointId p = 0; p < f.size(); ++p) values[space.id(p)] = number_json(f(p).raw());
  return {{"schema_version", kSchemaVersion}, {"values", std::move(values)}};
}

// ---------------------------------------------------------------------------
// Sequences

PointSeq<PointId> finite_sequence_from_json(const Json& j, const FiniteSpace& space) {
  try {
    auto idx = field(j, "indices", "sequence").get<std::vector<std::size_t>>();
    for (std::size_t i : idx)
      if (i >= space.size()) throw FormatError("sequence: index " + std::to_string(i) + " out of range");
    return PointSeq<PointId>(std::move(idx));
  } catch (const Json::exception& e) {
    throw FormatError(std::string("sequence: ") + e.what());
  }
}

PointSeq<double> implicit_sequence_from_json(const Json& j, const ImplicitSpace& space) {
  try {
    const auto formula = field(j, "formula", "sequence").get<std::string>();
    const auto length = field(j, "length", "sequence").get<std::size_t>();
    if (formula == "sample")
      return PointSeq<double>([space](std::size_t n) { return space.sample(n); }, length);
    if (formula == "harmonic")
      return PointSeq<double>(
          [space](std::size_t n) { return space.origin() + space.step() / static_cast<double>(n + 1); }, length);
    throw FormatError("sequence: unknown formula '" + formula + "'");
  } catch (const Json::exception& e) {
    throw FormatError(std::string("sequence: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports

Json to_json(const AxiomReport& r, const std::vector<std::string>& ids) {
  auto id = [&](PointId p) { return p < ids.size() ? ids[p] : std::to_string(p); };
  Json j = {{"valid", r.valid()},
            {"qm1", r.qm1_ok},
            {"qm2", r.qm2_ok},
            {"quasi_metric", r.is_quasi_metric},
            {"t1", r.is_t1},
            {"sampled", r.sampled}};
  if (r.sampled) j["sample_size"] = r.sample_size;
  if (r.qm1_witness) j["qm1_witness"] = id(*r.qm1_witness);
  if (r.qm2_witness) {
    const auto& [x, y, z] = *r.qm2_witness;
    j["qm2_witness"] = {id(x), id(y), id(z)};
  }
  if (r.qm3_witness) j["qm3_witness"] = {id(r.qm3_witness->first), id(r.qm3_witness->second)};
  if (r.t1_witness) j["t1_witness"] = {id(r.t1_witness->first), id(r.t1_witness->second)};
  return j;
}

Json to_json(const Condition& c, const FiniteSpace& space) {
  return {{"name", c.name}, {"status", to_string(c.status)}, {"witness", ids_json(c.witness, space)}};
}

Json to_json(const EkelandCertificate& c, const FiniteSpace& space) {
  return {{"x0", space.id(c.x0)},
          {"z", space.id(c.z)},
          {"eps", optional_json(c.eps)},
          {"lambda", optional_json(c.lambda)},
          {"lambda_prime", optional_json(c.lambda_prime)},
          {"gamma", c.gamma},
          {"localization_bound", optional_json(c.localization_bound)},
          {"conditions", conditions_json(c.conditions, space)},
          {"picard_trace", ids_json(c.picard_trace, space)},
          {"all_pass", c.all_pass()},
          {"instance_hash", hash_hex(c.instance_hash)}};
}

Json to_json(const StrongCertificate& c, const FiniteSpace& space) {
  Json internal = Json::array();
  for (const auto& k : c.internal_checks) internal.push_back(to_json(k, space));
  Json j = {{"flavor", to_string(c.flavor)},
            {"x0", space.id(c.x0)},
            {"z", space.id(c.z)},
            {c.flavor == StrongFlavor::georgiev ? "gamma" : "lambda", c.gamma},
            {"delta", optional_json(c.delta)},
            {"lambda_prime", c.lambda_prime},
            {"restricted_set", ids_json(c.restricted_set, space)},
            {"inf_full", c.inf_full},
            {"inf_restricted", c.inf_restricted},
            {"conditions", conditions_json(c.conditions, space)},
            {"internal_checks", std::move(internal)},
            {"picard_trace", ids_json(c.picard_trace, space)},
            {"all_pass", c.all_pass()},
            {"instance_hash", hash_hex(c.instance_hash)}};
  if (c.flavor == StrongFlavor::georgiev) j["lambda_internal"] = c.lambda_internal;
  return j;
}

Json to_json(const OracleResult& o, const FiniteSpace& space) {
  Json per = Json::object();
  for (PointId z = 0; z < o.per_condition.size(); ++z) {
    std::string bits;
    for (CondStatus s : o.per_condition[z]) bits += s == CondStatus::pass ? '1' : s == CondStatus::fail ? '0' : '-';
    per[space.id(z)] = bits;
  }
  return {{"admissible", ids_json(o.admissible, space)},
          {"per_condition", std::move(per)},
          {"instance_hash", hash_hex(o.instance_hash)}};
}

Json to_json(const CrossCheckReport& r) {
  return {{"ok", r.ok()}, {"z_admissible", r.z_admissible}, {"flags_agree", r.flags_agree}, {"mismatches", r.mismatches}};
}

Json to_json(const SublevelPropertyReport& r, const FiniteSpace& space) {
  Json props = Json::array();
  for (const auto& c : r.properties) props.push_back(to_json(c, space));
  Json j = {{"ok", r.ok()}, {"properties", std::move(props)}};
  j["base"] = r.base ? Json(space.id(*r.base)) : Json(nullptr);
  return j;
}

Json to_json(const FalsifyReport& r) {
  Json j = {{"family", to_string(r.family)}, {"instances_tested", r.instances_tested}, {"notes", r.notes}};
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    j["counterexample"] = {{"instance_index", c.instance_index},
                           {"instance_seed", c.instance_seed},
                           {"check", c.check},
                           {"detail", c.detail}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

Json to_json(const CauchyVerdict& v) {
  Json j = {{"verdict", to_string(v.verdict)}};
  if (v.witness)
    j["witness"] = {{"n", v.witness->n}, {"m", v.witness->m}, {"eps", v.witness->eps}, {"distance", v.witness->distance}};
  return j;
}

Json envelope(std::string_view kind, Json body) {
  body["schema_version"] = kSchemaVersion;
  body["kind"] = std::string(kind);
  return body;
}

Json trace_summary(const MinimizingTrace<PointId>& t, const FiniteSpace& space) {
  Json j = {{"length", t.seq.size()}, {"verdict", to_string(t.verdict)}};
  j["witness"] = t.witness ? Json({{"index", *t.witness}, {"point", space.id(t.seq[*t.witness])}}) : Json(nullptr);
  return j;
}

Json trace_summary(const MinimizingTrace<double>& t) {
  Json j = {{"length", t.seq.size()}, {"verdict", to_string(t.verdict)}};
  j["witness"] = t.witness ? Json({{"index", *t.witness}, {"point", t.seq[*t.witness]}}) : Json(nullptr);
  return j;
}

}  // namespace ekv
