#include "ecmo/io.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ecmo/fixtures.hpp"

namespace ecmo {

using nlohmann::json;

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw NumericError("cannot format double");
  return std::string(buf, ptr);
}

double parse_double(const std::string& token) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw InputError("cannot parse number '" + token + "'");
  return value;
}

std::uint64_t content_hash(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

namespace {

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected a numeric array");
  Vector v(static_cast<int>(j.size()));
  int i = 0;
  for (const json& x : j) v[i++] = x.get<double>();
  return v;
}

void check_schema(const json& j, const std::string& what) {
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
    throw InputError(what + ": missing schema_version");
  if (j["schema_version"].get<int>() != kSchemaVersion)
    throw InputError(what + ": unsupported schema_version " +
                     std::to_string(j["schema_version"].get<int>()));
}

json monomial_to_json(const MonomialFunction& m) {
  json terms = json::array();
  for (const MonomialFunction::Term& t : m.terms()) {
    json exps = json::array();
    for (int p : t.exponents) exps.push_back(p);
    terms.push_back(json::array({t.coeff, exps}));
  }
  return json{{"monomial", terms}};
}

MonomialFunction monomial_from_json(const json& j, int k, const std::string& what) {
  if (!j.contains("monomial"))
    throw InputError(what + ": only monomial functions load from files");
  std::vector<MonomialFunction::Term> terms;
  for (const json& tj : j["monomial"]) {
    if (!tj.is_array() || tj.size() != 2)
      throw InputError(what + ": each term must be [coeff, [exponents]]");
    MonomialFunction::Term t;
    t.coeff = tj[0].get<double>();
    for (const json& e : tj[1]) {
      if (!e.is_number_integer()) throw InputError(what + ": exponents must be integers");
      t.exponents.push_back(e.get<int>());
    }
    if (static_cast<int>(t.exponents.size()) != k)
      throw InputError(what + ": exponent vector length must equal k");
    terms.push_back(std::move(t));
  }
  return MonomialFunction(k, std::move(terms));
}

std::optional<BoundingBox> box_from_json(const json& j) {
  if (!j.contains("bounding_box")) return std::nullopt;
  BoundingBox box;
  for (const json& pair : j["bounding_box"]) {
    if (!pair.is_array() || pair.size() != 2)
      throw InputError("bounding_box entries must be [lo, hi]");
    box.push_back({pair[0].get<double>(), pair[1].get<double>()});
  }
  return box;
}

}  // namespace

LoadedProblem load_problem_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    throw InputError(std::string("problem file is not valid JSON: ") + err.what());
  }
  for (const char* field : {"name", "k", "objectives"})
    if (!j.contains(field)) throw InputError(std::string("problem file: missing field '") + field + "'");
  const std::string name = j["name"].get<std::string>();
  const int k = j["k"].get<int>();
  if (k <= 0) throw InputError("problem file: field 'k' must be positive");

  std::vector<ScalarFunction> objectives;
  for (const json& oj : j["objectives"])
    objectives.emplace_back(monomial_from_json(oj, k, "objectives"));

  std::optional<BoundingBox> box = box_from_json(j);

  if (j.contains("mtbl")) {
    const json& mj = j["mtbl"];
    for (const char* field : {"p", "q", "lower_objective"})
      if (!mj.contains(field)) throw InputError(std::string("problem file: mtbl missing '") + field + "'");
    const int p = mj["p"].get<int>();
    const int q = mj["q"].get<int>();
    if (p + q != k) throw InputError("problem file: mtbl p + q must equal k");
    MonomialFunction g = monomial_from_json(mj["lower_objective"], k, "lower_objective");
    MTBLProblem mtbl(name, p, q, objectives, ScalarFunction(std::move(g)), {}, box);
    return LoadedProblem{mtbl_to_ecmo(mtbl), mtbl};
  }

  std::vector<ScalarFunction> constraints;
  if (j.contains("constraints"))
    for (const json& cj : j["constraints"])
      constraints.emplace_back(monomial_from_json(cj, k, "constraints"));
  return LoadedProblem{ECMOProblem(name, k, std::move(objectives), std::move(constraints), box),
                       std::nullopt};
}

LoadedProblem load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open problem file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_problem_json(buffer.str());
}

namespace {

json problem_body_json(const ECMOProblem& problem) {
  json j;
  j["name"] = problem.name();
  j["k"] = problem.dimension();
  json objectives = json::array();
  for (const ScalarFunction& f : problem.objectives()) {
    if (!f.is_monomial())
      throw CapabilityError("native objective cannot serialize to the problem format");
    objectives.push_back(monomial_to_json(f.monomial()));
  }
  j["objectives"] = objectives;
  json constraints = json::array();
  for (const ScalarFunction& h : problem.constraints()) {
    if (!h.is_monomial())
      throw CapabilityError("native constraint cannot serialize to the problem format");
    constraints.push_back(monomial_to_json(h.monomial()));
  }
  j["constraints"] = constraints;
  if (problem.bounding_box()) {
    json box = json::array();
    for (const auto& interval : *problem.bounding_box())
      box.push_back(json::array({interval[0], interval[1]}));
    j["bounding_box"] = box;
  }
  return j;
}

}  // namespace

std::string problem_to_json(const ECMOProblem& problem) {
  return problem_body_json(problem).dump(2);
}

std::string problem_to_json(const MTBLProblem& mtbl) {
  if (!mtbl.lower_objective().is_monomial())
    throw CapabilityError("native lower objective cannot serialize to the problem format");
  json j;
  j["name"] = mtbl.name();
  j["k"] = mtbl.dimension();
  json objectives = json::array();
  for (const ScalarFunction& f : mtbl.upper_objectives()) {
    if (!f.is_monomial())
      throw CapabilityError("native objective cannot serialize to the problem format");
    objectives.push_back(monomial_to_json(f.monomial()));
  }
  j["objectives"] = objectives;
  j["mtbl"] = json{{"p", mtbl.upper_dim()},
                   {"q", mtbl.lower_dim()},
                   {"lower_objective", monomial_to_json(mtbl.lower_objective().monomial())}};
  if (mtbl.bounding_box()) {
    json box = json::array();
    for (const auto& interval : *mtbl.bounding_box())
      box.push_back(json::array({interval[0], interval[1]}));
    j["bounding_box"] = box;
  }
  return j.dump(2);
}

std::string trace_csv(const Trace& trace) {
  std::ostringstream out;
  out << "iter,P,kkt_sq,kkt_rho,kkt_z_norm,kkt_primal_norm,kkt_slack_norm,rho,h_norm\n";
  for (const TraceRow& r : trace.rows) {
    out << r.iter << ',' << format_double(r.P) << ',' << format_double(r.kkt_sq) << ','
        << format_double(r.kkt_rho) << ',' << format_double(r.kkt_z_norm) << ','
        << format_double(r.kkt_primal_norm) << ',' << format_double(r.kkt_slack_norm) << ','
        << format_double(r.rho) << ',' << format_double(r.h_norm) << '\n';
  }
  return out.str();
}

std::string front_csv(const ParetoFront& front) {
  std::ostringstream out;
  int S = 0, k = 0;
  if (!front.empty()) {
    S = static_cast<int>(front.entries[0].F.size());
    k = static_cast<int>(front.entries[0].z.size());
  }
  out << "run_id";
  for (int s = 1; s <= S; ++s) out << ",lambda_" << s;
  for (int i = 1; i <= k; ++i) out << ",z_" << i;
  for (int s = 1; s <= S; ++s) out << ",F_" << s;
  out << '\n';
  for (const FrontEntry& e : front.entries) {
    out << e.run_id;
    for (int s = 0; s < S; ++s)
      out << ',' << format_double(e.lambda.size() == S ? e.lambda[s] : 0.0);
    for (int i = 0; i < k; ++i) out << ',' << format_double(e.z[i]);
    for (int s = 0; s < S; ++s) out << ',' << format_double(e.F[s]);
    out << '\n';
  }
  return out.str();
}

std::string front_display_csv(const ParetoFront& front) {
  std::ostringstream out;
  int S = 0, k = 0;
  if (!front.empty()) {
    S = static_cast<int>(front.entries[0].F.size());
    k = static_cast<int>(front.entries[0].z.size());
  }
  out << "run_id";
  for (int s = 1; s <= S; ++s) out << ",lambda_" << s;
  for (int i = 1; i <= k; ++i) out << ",z_" << i;
  for (int s = 1; s <= S; ++s) out << ",F_" << s;
  for (int s = 1; s <= S; ++s) out << ",inv_F_" << s;
  out << '\n';
  for (const FrontEntry& e : front.entries) {
    out << e.run_id;
    for (int s = 0; s < S; ++s)
      out << ',' << format_double(e.lambda.size() == S ? e.lambda[s] : 0.0);
    for (int i = 0; i < k; ++i) out << ',' << format_double(e.z[i]);
    for (int s = 0; s < S; ++s) out << ',' << format_double(e.F[s]);
    for (int s = 0; s < S; ++s) out << ',' << format_double(1.0 / e.F[s]);
    out << '\n';
  }
  return out.str();
}

ParetoFront parse_front_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InputError("front csv: empty file");
  if (line.rfind("run_id", 0) != 0) throw InputError("front csv: unexpected header");
  int S = 0, k = 0;
  {
    std::istringstream header(line);
    std::string col;
    while (std::getline(header, col, ',')) {
      if (col.rfind("lambda_", 0) == 0) ++S;
      if (col.rfind("z_", 0) == 0) ++k;
    }
  }
  ParetoFront front;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (static_cast<int>(cells.size()) != 1 + 2 * S + k)
      throw InputError("front csv: wrong column count");
    FrontEntry e;
    e.run_id = static_cast<int>(parse_double(cells[0]));
    e.lambda.resize(S);
    e.z.resize(k);
    e.F.resize(S);
    int c = 1;
    for (int s = 0; s < S; ++s) e.lambda[s] = parse_double(cells[c++]);
    for (int i = 0; i < k; ++i) e.z[i] = parse_double(cells[c++]);
    for (int s = 0; s < S; ++s) e.F[s] = parse_double(cells[c++]);
    front.entries.push_back(std::move(e));
  }
  return front;
}

namespace {

json config_to_json(const SolverConfig& config, const Vector& lambda,
                    const std::string& solver_name) {
  json j;
  j["solver"] = solver_name;
  j["lambda"] = vector_to_json(lambda);
  j["T"] = config.T;
  j["eta"] = config.params.eta;
  j["u"] = config.params.u;
  j["v"] = config.params.v;
  j["batch_objective"] = config.params.batch_objective;
  j["batch_constraint"] = config.params.batch_constraint;
  j["record_every"] = config.record_every;
  if (config.stop_tol)
    j["stop_tol"] = *config.stop_tol;
  else
    j["stop_tol"] = nullptr;
  j["z0"] = vector_to_json(config.z0);
  j["seed"] = config.seed;
  j["stream"] = config.stream;
  if (config.ls_lipschitz)
    j["ls_lipschitz"] = *config.ls_lipschitz;
  else
    j["ls_lipschitz"] = nullptr;
  j["sigma_f"] = config.sigma_f;
  j["sigma_h"] = config.sigma_h;
  j["shift_margin"] = config.shift_margin;
  return j;
}

SolverConfig config_from_json(const json& j) {
  SolverConfig config;
  config.T = j.at("T").get<long long>();
  config.params.T = config.T;
  config.params.eta = j.at("eta").get<double>();
  config.params.u = j.at("u").get<double>();
  config.params.v = j.at("v").get<double>();
  config.params.batch_objective = j.at("batch_objective").get<long long>();
  config.params.batch_constraint = j.at("batch_constraint").get<long long>();
  config.record_every = j.at("record_every").get<long long>();
  if (!j.at("stop_tol").is_null()) config.stop_tol = j.at("stop_tol").get<double>();
  config.z0 = vector_from_json(j.at("z0"));
  config.seed = j.at("seed").get<std::uint64_t>();
  config.stream = j.at("stream").get<std::uint64_t>();
  if (!j.at("ls_lipschitz").is_null()) config.ls_lipschitz = j.at("ls_lipschitz").get<double>();
  config.sigma_f = j.at("sigma_f").get<double>();
  config.sigma_h = j.at("sigma_h").get<double>();
  config.shift_margin = j.at("shift_margin").get<double>();
  return config;
}

}  // namespace

std::string solve_result_json(const SolveResult& result, const std::string& solver_name) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = config_to_json(result.config, result.lambda, solver_name);
  j["final_state"] = json{{"rho", result.final_state.rho},
                          {"z", vector_to_json(result.final_state.z)},
                          {"delta", vector_to_json(result.final_state.delta)}};
  j["final_F"] = vector_to_json(result.final_F);
  j["final_constraint_norm"] = result.final_constraint_norm;
  j["avg_kkt_sq"] = result.avg_kkt_sq;
  j["min_kkt_sq"] = result.min_kkt_sq;
  j["iterations_run"] = result.iterations_run;
  j["truncated"] = result.truncated;
  j["min_rho"] = result.min_rho;
  j["min_delta"] = result.min_delta;
  j["ls_projected_start"] = result.ls_projected_start;
  j["ls_convexity_warning"] = result.ls_convexity_warning;
  j["seed"] = result.seed;
  return j.dump(2);
}

std::string solve_config_json(const SolveResult& result, const std::string& solver_name) {
  return config_to_json(result.config, result.lambda, solver_name).dump(2);
}

std::string metrics_json(const Metrics& metrics) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["hv"] = metrics.hypervolume;
  j["ref_point"] = vector_to_json(metrics.ref_point);
  if (metrics.epsilon)
    j["epsilon"] = *metrics.epsilon;
  else
    j["epsilon"] = nullptr;
  j["reference_name"] = metrics.reference_name;
  // The epsilon direction is a reporting convention, recorded with the value.
  j["epsilon_definition"] = "additive indicator, front covers reference";
  return j.dump(2);
}

std::string run_record_json(const RunRecord& record) {
  json j;
  j["schema_version"] = record.schema_version;
  j["timestamp"] = record.timestamp;
  j["command"] = record.command;
  j["solver"] = record.solver;
  j["problem"] = json{{"ref", record.problem_ref}, {"content_hash", record.problem_hash}};
  j["config"] = json::parse(record.config_json);
  j["results"] = json::parse(record.results_json);
  j["environment"] = record.environment;
  return j.dump(2);
}

RunRecord parse_run_record(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    throw InputError(std::string("run record is not valid JSON: ") + err.what());
  }
  check_schema(j, "run record");
  try {
    RunRecord record;
    record.schema_version = j["schema_version"].get<int>();
    record.timestamp = j.value("timestamp", "");
    record.command = j.value("command", "");
    record.solver = j.at("solver").get<std::string>();
    record.problem_ref = j.at("problem").at("ref").get<std::string>();
    record.problem_hash = j.at("problem").at("content_hash").get<std::uint64_t>();
    record.config_json = j.at("config").dump();
    record.results_json = j.at("results").dump();
    record.environment = j.value("environment", "");
    return record;
  } catch (const json::exception& err) {
    throw InputError(std::string("run record: ") + err.what());
  }
}

LoadedProblem resolve_problem_ref(const std::string& ref) {
  if (ref.rfind("fixture:", 0) == 0) {
    Fixture fx = get_fixture(ref.substr(8));
    return LoadedProblem{fx.problem, fx.mtbl};
  }
  return load_problem_file(ref);
}

std::uint64_t problem_ref_hash(const std::string& ref) {
  LoadedProblem loaded = resolve_problem_ref(ref);
  try {
    return content_hash(problem_to_json(loaded.problem));
  } catch (const CapabilityError&) {
    // Native fixtures hash their registry identity instead.
    return content_hash("native:" + loaded.problem.name());
  }
}

SolveResult replay_run_record(const RunRecord& record) {
  const json config_json = json::parse(record.config_json);
  SolverConfig config;
  Vector lambda;
  try {
    config = config_from_json(config_json);
    lambda = vector_from_json(config_json.at("lambda"));
  } catch (const json::exception& err) {
    throw InputError(std::string("run record: config is not replayable: ") + err.what());
  }
  LoadedProblem loaded = resolve_problem_ref(record.problem_ref);
  ECMOProblem problem = loaded.problem;
  if (config.shift_margin > 0.0)
    problem = shift_positive(problem, default_probes(problem, config.z0), config.shift_margin);

  if (record.solver == "wc") {
    return solve_wc_penalty(problem, Preference(lambda), config);
  }
  if (record.solver == "wc-stoc") {
    StochasticProblem stoch(problem, config.sigma_f, config.sigma_h);
    return solve_wc_penalty_stochastic(stoch, Preference(lambda), config);
  }
  if (record.solver == "ls") {
    return solve_ls(problem, lambda, config);
  }
  throw InputError("run record: unknown solver '" + record.solver + "'");
}

std::string fixture_export_json(const Fixture& fixture) {
  try {
    if (fixture.mtbl) return problem_to_json(*fixture.mtbl);
    return problem_to_json(fixture.problem);
  } catch (const CapabilityError&) {
    // Native fixtures: metadata only; they are addressable by registry name.
    json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = fixture.name;
    j["k"] = fixture.problem.dimension();
    j["S"] = fixture.problem.num_objectives();
    j["q"] = fixture.problem.num_constraints();
    j["native"] = true;
    j["notes"] = fixture.notes;
    j["z0"] = vector_to_json(fixture.z0);
    json box = json::array();
    for (const auto& interval : fixture.bounding_box)
      box.push_back(json::array({interval[0], interval[1]}));
    j["bounding_box"] = box;
    if (fixture.mtbl)
      j["mtbl"] = json{{"p", fixture.mtbl->upper_dim()}, {"q", fixture.mtbl->lower_dim()}};
    return j.dump(2);
  }
}

std::string build_environment_note() {
  std::ostringstream out;
#if defined(__VERSION__)
  out << "compiler " << __VERSION__;
#else
  out << "compiler unknown";
#endif
  out << ", eigen " << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.'
      << EIGEN_MINOR_VERSION;
  return out.str();
}

}  // namespace ecmo
