#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "ekv/objective.hpp"
#include "ekv/oracle.hpp"
#include "ekv/sequence.hpp"
#include "ekv/space.hpp"
#include "ekv/strong.hpp"
#include "ekv/variational.hpp"

namespace ekv {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Input files that cannot be read or do not match the expected layout.
class FormatError : public Error {
 public:
  using Error::Error;
};

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
/// Pretty-printed, key-sorted, newline-terminated.
std::string dump(const Json& j);

/// Shortest round-trip decimal; "inf" for +infinity.
std::string format_double(double x);

// Spaces: {"points": [...], "matrix": [[...], ...]} or
// {"formula": "upper|lower|absolute", "params": {"origin": a, "step": h}}.
// Matrix entries may be numbers or "inf".
QpmSpace space_from_json(const Json& j);
Json to_json(const FiniteSpace& space);
Json to_json(const ImplicitSpace& space);
Json to_json(const QpmSpace& space);

// Objectives: {"values": {"id": number | "inf", ...}} for finite spaces,
// {"formula": name} for implicit ones. Every point id must be present.
using ObjectiveSpec = std::variant<Objective, ImplicitObjective>;
ObjectiveSpec objective_from_json(const Json& j, const QpmSpace& space);
Json to_json(const Objective& f, const FiniteSpace& space);

// Sequences: {"indices": [...]} over a finite space's point list, or
// {"formula": "sample" | "harmonic", "length": n} on an implicit space
// (sample: x_n = sample(n); harmonic: x_n = origin + step / (n + 1)).
PointSeq<PointId> finite_sequence_from_json(const Json& j, const FiniteSpace& space);
PointSeq<double> implicit_sequence_from_json(const Json& j, const ImplicitSpace& space);

// Reports. Point witnesses are written as ids.
Json to_json(const AxiomReport& report, const std::vector<std::string>& ids);
Json to_json(const Condition& c, const FiniteSpace& space);
Json to_json(const EkelandCertificate& cert, const FiniteSpace& space);
Json to_json(const StrongCertificate& cert, const FiniteSpace& space);
Json to_json(const OracleResult& oracle, const FiniteSpace& space);
Json to_json(const CrossCheckReport& report);
Json to_json(const SublevelPropertyReport& report, const FiniteSpace& space);
Json to_json(const FalsifyReport& report);
Json to_json(const CauchyVerdict& v);

/// Wraps a report body with {"schema_version", "kind"}.
Json envelope(std::string_view kind, Json body);

/// CSV with header `n,g_value,dist`.
template <class P>
std::string trace_csv(const MinimizingTrace<P>& trace) {
  std::string out = "n,g_value,dist\n";
  for (std::size_t n = 0; n < trace.g_values.size(); ++n)
    out += std::to_string(n) + "," + format_double(trace.g_values[n]) + "," + format_double(trace.dists[n]) + "\n";
  return out;
}

Json trace_summary(const MinimizingTrace<PointId>& t, const FiniteSpace& space);
Json trace_summary(const MinimizingTrace<double>& t);

}  // namespace ekv
