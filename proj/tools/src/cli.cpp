#include "ekv_cli/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>

#include "ekv/hash.hpp"
#include "ekv/io.hpp"
#include "ekv/objective.hpp"
#include "ekv/oracle.hpp"
#include "ekv/space.hpp"
#include "ekv/strong.hpp"
#include "ekv/variational.hpp"

namespace ekv::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Config {
  std::string space_path;
  std::string objective_path;
  std::string gen;
  std::optional<double> eps, lambda, lambda_prime, gamma, delta;
  std::string x0;
  std::string flavor = "georgiev";
  bool oracle = false;
  std::optional<std::size_t> probe;
  std::string d_order = "proof";
  std::string out;
  std::size_t jobs = 1;
  std::string tol;
  std::size_t horizon = 51;
  std::size_t sample = 64;
  std::size_t budget = 1000;
  std::size_t n_max = 12;
  std::uint64_t seed = 1;
  std::string family = "random";
  std::string mutate;
};

struct Instance {
  QpmSpace space;
  std::optional<ObjectiveSpec> f;
};

std::map<std::string, std::string> parse_pairs(const std::string& text, const std::string& what) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError(what + ": expected key=value, got '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

double to_double(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("'" + key + "' expects a number, got '" + s + "'");
  }
}

std::uint64_t to_uint(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size() || s.front() == '-') throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("'" + key + "' expects a non-negative integer, got '" + s + "'");
  }
}

Tolerances parse_tolerances(const std::string& text) {
  Tolerances tol;
  if (text.empty()) return tol;
  if (text.find('=') == std::string::npos) {
    const double v = to_double(text, "--tol");
    tol.equality = v;
    tol.limit = v;
  } else {
    for (const auto& [k, v] : parse_pairs(text, "--tol")) {
      const double x = to_double(v, k);
      if (k == "membership") tol.membership = x;
      else if (k == "equality") tol.equality = x;
      else if (k == "limit") tol.limit = x;
      else if (k == "triangle") tol.triangle = x;
      else throw UsageError("--tol: unknown key '" + k + "'");
    }
  }
  for (double x : {tol.membership, tol.equality, tol.limit, tol.triangle})
    if (!(x >= 0.0) || !std::isfinite(x)) throw UsageError("--tol: tolerances must be finite and >= 0");
  return tol;
}

CheckOptions make_options(const Config& cfg) {
  CheckOptions opts;
  opts.tol = parse_tolerances(cfg.tol);
  opts.d_order = d_order_from_string(cfg.d_order);
  if (!cfg.mutate.empty()) opts.mutation = mutation_from_string(cfg.mutate);
  return opts;
}

Instance generate(const std::string& spec) {
  auto kv = parse_pairs(spec, "--gen");
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  const std::string family = take("family").value_or("random");
  const std::uint64_t seed = to_uint(take("seed").value_or("1"), "seed");
  const auto n_text = take("n");
  const std::string objective = take("objective").value_or(family == "ray" ? "x2_exp_neg" : "random");
  const double inf_fraction = to_double(take("inf").value_or("0.1"), "inf");

  Instance inst{FiniteSpace{}, std::nullopt};
  if (family == "ray") {
    const double origin = to_double(take("origin").value_or("0"), "origin");
    const double step = to_double(take("step").value_or("1"), "step");
    inst.space = ImplicitSpace(Formula::absolute, origin, step);
    if (objective != "none") inst.f = ImplicitObjective::by_name(objective);
  } else {
    FiniteSpace space;
    if (family == "random") {
      RandomSpaceParams p;
      p.zero_probability = to_double(take("zero").value_or("0"), "zero");
      p.integer_valued = to_uint(take("integer").value_or("0"), "integer") != 0;
      p.scale = to_double(take("scale").value_or("1"), "scale");
      space = generate_random_qpm(to_uint(n_text.value_or("5"), "n"), seed, p);
    } else {
      CanonicalParams p;
      if (n_text) p.nodes = to_uint(*n_text, "n");
      if (auto v = take("lo")) p.lo = to_double(*v, "lo");
      if (auto v = take("hi")) p.hi = to_double(*v, "hi");
      if (auto v = take("step")) p.step = to_double(*v, "step");
      if (auto v = take("forward")) p.forward = to_double(*v, "forward");
      if (auto v = take("backward")) p.backward = to_double(*v, "backward");
      space = canonical_space(canonical_family_from_string(family), p);
    }
    if (objective == "random" || objective == "envelope") {
      RandomObjectiveParams op;
      op.inf_fraction = inf_fraction;
      Objective f = random_objective(space.size(), split_seed(seed, 1), op);
      if (objective == "envelope") f = lsc_envelope(space, f);
      inst.f = std::move(f);
    } else if (objective == "constant") {
      inst.f = Objective::constant(space.size(), 0.0);
    } else if (objective != "none") {
      throw UsageError("--gen: unknown objective '" + objective + "'");
    }
    inst.space = std::move(space);
  }
  if (!kv.empty()) throw UsageError("--gen: unknown key '" + kv.begin()->first + "'");
  return inst;
}

Instance load_instance(const Config& cfg) {
  if (cfg.space_path.empty() == cfg.gen.empty())
    throw UsageError("give exactly one of --space or --gen");
  Instance inst = cfg.gen.empty() ? Instance{space_from_json(read_json_file(cfg.space_path)), std::nullopt}
                                  : generate(cfg.gen);
  if (!cfg.objective_path.empty()) inst.f = objective_from_json(read_json_file(cfg.objective_path), inst.space);
  return inst;
}

const FiniteSpace& finite_space(const Instance& inst, const char* cmd) {
  if (!std::holds_alternative<FiniteSpace>(inst.space))
    throw UsageError(std::string(cmd) + " needs a finite space");
  return std::get<FiniteSpace>(inst.space);
}

const Objective& finite_objective(const Instance& inst, const char* cmd) {
  if (!inst.f) throw UsageError(std::string(cmd) + " needs an objective (--objective or a generated one)");
  if (!std::holds_alternative<Objective>(*inst.f))
    throw UsageError(std::string(cmd) + " needs a tabulated objective");
  return std::get<Objective>(*inst.f);
}

PointId resolve_x0(const Config& cfg, const FiniteSpace& space, const Objective& f) {
  if (cfg.x0.empty()) {
    const auto dom = f.domain();
    return dom.front();
  }
  const auto p = space.index_of(cfg.x0);
  if (!p) throw UsageError("--x0: unknown point id '" + cfg.x0 + "'");
  return *p;
}

PointId argmin(const Objective& f) {
  PointId best = f.domain().front();
  for (PointId p : f.domain())
    if (f(p) < f(best)) best = p;
  return best;
}

double require_param(const std::optional<double>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing ") + flag);
  return *v;
}

void emit(const Config& cfg, const Json& report, std::ostream& out) {
  if (cfg.out.empty()) out << dump(report);
  else write_text_file(cfg.out, dump(report));
}

fs::path sibling(const std::string& out, const std::string& suffix) {
  const fs::path p(out);
  return p.parent_path() / (p.stem().string() + suffix);
}

template <class P>
void write_traces(const Config& cfg, const std::vector<MinimizingTrace<P>>& traces) {
  if (cfg.out.empty()) return;
  for (std::size_t i = 0; i < traces.size(); ++i)
    write_text_file(sibling(cfg.out, "_trace_" + std::to_string(i) + ".csv"), trace_csv(traces[i]));
}

std::size_t count_diverging(const auto& traces) {
  std::size_t k = 0;
  for (const auto& t : traces) k += t.verdict == TraceVerdict::diverges;
  return k;
}

// ---------------------------------------------------------------------------

int cmd_validate(const Config& cfg, std::ostream& out) {
  const Instance inst = load_instance(cfg);
  const Tolerances tol = parse_tolerances(cfg.tol);
  Json body;
  AxiomReport report;
  if (const auto* fsp = std::get_if<FiniteSpace>(&inst.space)) {
    report = validate_axioms(*fsp, tol);
    body["axioms"] = to_json(report, fsp->ids());
    body["points"] = fsp->size();
  } else {
    const auto& sp = std::get<ImplicitSpace>(inst.space);
    std::vector<double> sample(cfg.sample);
    for (std::size_t k = 0; k < sample.size(); ++k) sample[k] = sp.sample(k);
    report = validate_axioms(sp, sample, tol);
    std::vector<std::string> ids;
    for (double x : sample) ids.push_back(format_coordinate(x));
    body["axioms"] = to_json(report, ids);
  }
  emit(cfg, envelope("axiom_report", std::move(body)), out);
  return report.valid() ? kPass : kConditionFailure;
}

int cmd_ekeland(const Config& cfg, std::ostream& out) {
  const Instance inst = load_instance(cfg);
  const FiniteSpace& space = finite_space(inst, "ekeland");
  const Objective& f = finite_objective(inst, "ekeland");
  const CheckOptions opts = make_options(cfg);
  const PointId x0 = resolve_x0(cfg, space, f);

  EkelandCertificate cert;
  std::optional<double> eps = cfg.eps, lambda = cfg.lambda;
  if (cfg.lambda_prime) {
    if (cfg.lambda) throw UsageError("--lambda and --lambda-prime are mutually exclusive");
    cert = ekeland_point_prime(space, f, *cfg.lambda_prime, x0, cfg.eps, opts);
    if (eps) lambda = *eps / *cfg.lambda_prime;
  } else {
    cert = ekeland_point(space, f, require_param(cfg.eps, "--eps"), require_param(cfg.lambda, "--lambda"), x0, opts);
  }
  Json body = {{"certificate", to_json(cert, space)}};
  bool ok = cert.all_pass();
  if (cfg.oracle) {
    if (!eps) throw UsageError("--oracle with --lambda-prime also needs --eps");
    const OracleResult o = oracle_ekeland_all(space, f, *eps, *lambda, x0, opts.tol);
    const CrossCheckReport cc = cross_check(cert, o);
    body["oracle"] = to_json(o, space);
    body["cross_check"] = to_json(cc);
    ok = ok && cc.ok();
  }
  emit(cfg, envelope("ekeland_certificate", std::move(body)), out);
  return ok ? kPass : kConditionFailure;
}

int strong_implicit(const Config& cfg, const Instance& inst, std::ostream& out) {
  const auto& space = std::get<ImplicitSpace>(inst.space);
  if (!inst.f || !std::holds_alternative<ImplicitObjective>(*inst.f))
    throw UsageError("strong on an implicit space needs a formula objective");
  const auto& f = std::get<ImplicitObjective>(*inst.f);
  const CheckOptions opts = make_options(cfg);
  const double z = cfg.x0.empty() ? space.origin() : to_double(cfg.x0, "--x0");
  const double gamma = cfg.gamma.value_or(cfg.lambda.value_or(0.0));
  if (gamma < 0.0) throw UsageError("--gamma must be >= 0");
  const auto traces = minimizing_sequence_probe(space, f, gamma, z, cfg.probe.value_or(8), cfg.horizon, cfg.seed, opts);
  write_traces(cfg, traces);
  const std::size_t diverging = count_diverging(traces);
  Json summaries = Json::array();
  for (const auto& t : traces) summaries.push_back(trace_summary(t));
  Json body = {{"space", to_json(space)},
               {"z", z},
               {"gamma", gamma},
               {"strong_minimum", diverging == 0 ? "pass" : "fail"},
               {"diverging_traces", diverging},
               {"traces", std::move(summaries)}};
  emit(cfg, envelope("strong_probe", std::move(body)), out);
  return diverging == 0 ? kPass : kConditionFailure;
}

int cmd_strong(const Config& cfg, std::ostream& out) {
  const Instance inst = load_instance(cfg);
  if (std::holds_alternative<ImplicitSpace>(inst.space)) return strong_implicit(cfg, inst, out);
  const FiniteSpace& space = finite_space(inst, "strong");
  const Objective& f = finite_objective(inst, "strong");
  const CheckOptions opts = make_options(cfg);
  const PointId x0 = resolve_x0(cfg, space, f);
  const StrongFlavor flavor = strong_flavor_from_string(cfg.flavor);

  StrongCertificate cert;
  std::optional<double> delta;
  if (flavor == StrongFlavor::georgiev) {
    delta = require_param(cfg.delta, "--delta");
    cert = strong_ekeland_georgiev(space, f, require_param(cfg.gamma, "--gamma"), *delta, x0, opts);
  } else {
    const auto lambda = cfg.lambda ? cfg.lambda : cfg.gamma;
    cert = strong_ekeland_suzuki(space, f, require_param(lambda, "--lambda"), x0, opts);
  }
  Json body = {{"certificate", to_json(cert, space)}};
  bool ok = cert.all_pass();
  if (cfg.oracle) {
    const OracleResult o = oracle_strong_all(space, f, cert.gamma, delta, x0, flavor, opts.tol, opts.d_order);
    const CrossCheckReport cc = cross_check(cert, o);
    body["oracle"] = to_json(o, space);
    body["cross_check"] = to_json(cc);
    ok = ok && cc.ok();
  }
  if (cfg.probe && *cfg.probe > 0) {
    const auto traces =
        minimizing_sequence_probe(space, f, cert.gamma, cert.z, *cfg.probe, cfg.horizon, cfg.seed, opts);
    write_traces(cfg, traces);
    Json summaries = Json::array();
    for (const auto& t : traces) summaries.push_back(trace_summary(t, space));
    body["traces"] = std::move(summaries);
    body["diverging_traces"] = count_diverging(traces);
    ok = ok && count_diverging(traces) == 0;
  }
  emit(cfg, envelope("strong_certificate", std::move(body)), out);
  return ok ? kPass : kConditionFailure;
}

int cmd_probe(const Config& cfg, std::ostream& out) {
  const Instance inst = load_instance(cfg);
  const CheckOptions opts = make_options(cfg);
  const double gamma = cfg.gamma.value_or(0.0);
  if (gamma < 0.0) throw UsageError("--gamma must be >= 0");
  const std::size_t trials = cfg.probe.value_or(8);
  Json body;
  if (const auto* isp = std::get_if<ImplicitSpace>(&inst.space)) {
    if (!inst.f || !std::holds_alternative<ImplicitObjective>(*inst.f))
      throw UsageError("probe on an implicit space needs a formula objective");
    const auto& f = std::get<ImplicitObjective>(*inst.f);
    const double z = cfg.x0.empty() ? isp->origin() : to_double(cfg.x0, "--x0");
    const auto traces = minimizing_sequence_probe(*isp, f, gamma, z, trials, cfg.horizon, cfg.seed, opts);
    write_traces(cfg, traces);
    Json summaries = Json::array();
    for (const auto& t : traces) summaries.push_back(trace_summary(t));
    const double last = isp->sample(cfg.horizon - 1);
    body = {{"space", to_json(*isp)},
            {"objective", f.name},
            {"z", z},
            {"gamma", gamma},
            {"f_at_last_sample", {{"x", last}, {"f", f(last)}, {"dist_to_z", isp->distance(last, z)}}},
            {"diverging_traces", count_diverging(traces)},
            {"traces", std::move(summaries)}};
    if (z == isp->origin()) {
      const FiniteSpace trunc = isp->truncate(cfg.horizon);
      const Objective ft = f.tabulate(*isp, cfg.horizon);
      const StrongCertificate cert = strong_ekeland_suzuki(trunc, ft, cfg.lambda.value_or(1.0), 0, opts);
      body["truncation"] = {{"points", cfg.horizon},
                            {"lambda", cert.gamma},
                            {"z", trunc.id(cert.z)},
                            {"strong_minimum", to_json(cert.conditions[3], trunc)}};
    }
  } else {
    const FiniteSpace& space = std::get<FiniteSpace>(inst.space);
    const Objective& f = finite_objective(inst, "probe");
    const PointId z = cfg.x0.empty() ? argmin(f) : resolve_x0(cfg, space, f);
    const auto traces = minimizing_sequence_probe(space, f, gamma, z, trials, cfg.horizon, cfg.seed, opts);
    write_traces(cfg, traces);
    Json summaries = Json::array();
    for (const auto& t : traces) summaries.push_back(trace_summary(t, space));
    body = {{"z", space.id(z)},
            {"gamma", gamma},
            {"strong_minimum", to_json(check_strong_min_finite(space, f, gamma, z, opts), space)},
            {"diverging_traces", count_diverging(traces)},
            {"traces", std::move(summaries)}};
  }
  emit(cfg, envelope("probe_report", std::move(body)), out);
  return kPass;
}

int cmd_falsify(const Config& cfg, std::ostream& out) {
  FalsifyConfig fc;
  fc.family = falsify_family_from_string(cfg.family);
  fc.budget = cfg.budget;
  fc.seed = cfg.seed;
  fc.jobs = cfg.jobs;
  fc.opts = make_options(cfg);
  fc.instances.n_max = cfg.n_max;
  if (fc.instances.n_max < fc.instances.n_min) throw UsageError("--n-max must be >= 1");
  const FalsifyReport report = falsify(fc);
  Json body = to_json(report);
  body["budget"] = cfg.budget;
  body["seed"] = cfg.seed;
  body["mutation"] = to_string(fc.opts.mutation);
  emit(cfg, envelope("falsify_report", std::move(body)), out);
  return report.counterexample ? kConditionFailure : kPass;
}

int cmd_gen(const Config& cfg, std::ostream& out) {
  if (cfg.gen.empty()) throw UsageError("gen needs --gen");
  if (cfg.out.empty()) throw UsageError("gen needs --out");
  const Instance inst = generate(cfg.gen);
  write_text_file(cfg.out, dump(to_json(inst.space)));
  Json written = {cfg.out};
  if (inst.f) {
    const fs::path objective_path = sibling(cfg.out, ".objective.json");
    Json j;
    if (const auto* f = std::get_if<Objective>(&*inst.f)) {
      j = to_json(*f, std::get<FiniteSpace>(inst.space));
    } else {
      j = {{"schema_version", kSchemaVersion}, {"formula", std::get<ImplicitObjective>(*inst.f).name}};
    }
    write_text_file(objective_path, dump(j));
    written.push_back(objective_path.string());
  }
  out << dump(envelope("gen", {{"written", written}}));
  return kPass;
}

// ---------------------------------------------------------------------------

void add_instance_options(CLI::App* sub, Config& cfg) {
  sub->add_option("--space", cfg.space_path, "Space file (JSON)");
  sub->add_option("--gen", cfg.gen, "Generator spec, e.g. n=5,seed=3,family=random");
  sub->add_option("--objective", cfg.objective_path, "Objective file (JSON)");
  sub->add_option("--tol", cfg.tol, "Tolerance override: a number or key=value list");
  sub->add_option("--out", cfg.out, "Report path (stdout when absent)");
}

void add_check_options(CLI::App* sub, Config& cfg) {
  sub->add_option("--x0", cfg.x0, "Starting point id (coordinate on implicit spaces)");
  sub->add_option("--d-order", cfg.d_order, "Argument order in the strong-minimum condition")
      ->check(CLI::IsMember({"proof", "statement"}));
#ifdef EKV_MUTATION_HOOKS
  sub->add_option("--mutate", cfg.mutate, "Enable a checker mutation (self-test)");
#endif
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Ekeland variational principle toolkit for quasi-pseudometric spaces", "ekv"};
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "Check quasi-pseudometric axioms");
  add_instance_options(validate, cfg);
  validate->add_option("--sample", cfg.sample, "Sample size for implicit spaces");

  auto* ekeland = app.add_subcommand("ekeland", "Certify an Ekeland point");
  add_instance_options(ekeland, cfg);
  add_check_options(ekeland, cfg);
  ekeland->add_option("--eps", cfg.eps);
  ekeland->add_option("--lambda", cfg.lambda);
  ekeland->add_option("--lambda-prime", cfg.lambda_prime);
  ekeland->add_flag("--oracle", cfg.oracle, "Cross-check against the brute-force oracle");

  auto* strong = app.add_subcommand("strong", "Certify a strong Ekeland point");
  add_instance_options(strong, cfg);
  add_check_options(strong, cfg);
  strong->add_option("--flavor", cfg.flavor)->check(CLI::IsMember({"georgiev", "suzuki"}));
  strong->add_option("--gamma", cfg.gamma);
  strong->add_option("--delta", cfg.delta);
  strong->add_option("--lambda", cfg.lambda);
  strong->add_flag("--oracle", cfg.oracle, "Cross-check against the brute-force oracle");
  strong->add_option("--probe", cfg.probe, "Number of minimizing-sequence traces");
  strong->add_option("--horizon", cfg.horizon, "Trace length");
  strong->add_option("--seed", cfg.seed);

  auto* probe = app.add_subcommand("probe", "Minimizing-sequence probe around a candidate minimizer");
  add_instance_options(probe, cfg);
  add_check_options(probe, cfg);
  probe->add_option("--gamma", cfg.gamma, "Perturbation weight (default 0)");
  probe->add_option("--lambda", cfg.lambda, "Weight for the truncation certificate (default 1)");
  probe->add_option("--probe", cfg.probe, "Number of traces (default 8)");
  probe->add_option("--horizon", cfg.horizon, "Trace length");
  probe->add_option("--seed", cfg.seed);

  auto* falsify_cmd = app.add_subcommand("falsify", "Random counterexample search");
  falsify_cmd->add_option("--family", cfg.family)->check(CLI::IsMember({"random", "probe"}));
  falsify_cmd->add_option("--budget", cfg.budget);
  falsify_cmd->add_option("--seed", cfg.seed);
  falsify_cmd->add_option("--jobs", cfg.jobs);
  falsify_cmd->add_option("--n-max", cfg.n_max, "Largest random space");
  falsify_cmd->add_option("--tol", cfg.tol);
  falsify_cmd->add_option("--out", cfg.out);
  add_check_options(falsify_cmd, cfg);

  auto* gen = app.add_subcommand("gen", "Write a generated space and objective");
  gen->add_option("--gen", cfg.gen)->required();
  gen->add_option("--out", cfg.out)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(cfg, out);
    if (ekeland->parsed()) return cmd_ekeland(cfg, out);
    if (strong->parsed()) return cmd_strong(cfg, out);
    if (probe->parsed()) return cmd_probe(cfg, out);
    if (falsify_cmd->parsed()) return cmd_falsify(cfg, out);
    if (gen->parsed()) return cmd_gen(cfg, out);
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kConditionFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace ekv::cli
