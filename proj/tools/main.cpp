// Command-line driver: solve, sweep, bench, gradcheck.
// Exit codes: 0 success, 1 input error, 2 numerical divergence.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <ecmo/explorer.hpp>
#include <ecmo/fixtures.hpp>
#include <ecmo/io.hpp>

namespace fs = std::filesystem;
using namespace ecmo;

namespace {

std::string join_command(int argc, char** argv) {
  std::ostringstream out;
  for (int i = 0; i < argc; ++i) out << (i ? " " : "") << argv[i];
  return out.str();
}

std::string iso_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

Vector parse_vector(const std::string& text, const char* field) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    try {
      values.push_back(parse_double(token));
    } catch (const InputError&) {
      throw InputError(std::string(field) + ": cannot parse '" + token + "'");
    }
  }
  if (values.empty()) throw InputError(std::string(field) + ": empty list");
  Vector v(static_cast<int>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<int>(i)] = values[i];
  return v;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << content;
}

struct CommonOptions {
  std::string problem_ref;
  std::string solver = "wc";
  long long T = 10000;
  double eta_c = kDefaultEtaScale;
  double uv_c = kDefaultPenaltyScale;
  double batch_c = kDefaultBatchScale;
  std::uint64_t seed = 0;
  double sigma_f = 0.0;
  double sigma_h = 0.0;
  std::string out_dir = "ecmo_out";
  long long record_every = 100;
  double stop_tol = 0.0;  // 0 = disabled
  std::string z0_text;
  double ls_lipschitz = 0.0;  // 0 = estimate
  double shift_margin = 0.1;  // 0 = no shift
  std::string display;        // "inverse" mirrors 1/loss axes in reports
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--problem", opt.problem_ref, "fixture:NAME or a problem JSON file")->required();
  cmd->add_option("--solver", opt.solver, "wc | wc-stoc | ls")
      ->check(CLI::IsMember({"wc", "wc-stoc", "ls"}));
  cmd->add_option("--T", opt.T, "iteration count");
  cmd->add_option("--eta-c", opt.eta_c, "step-size scale: eta = eta_c * T^(-1/4)");
  cmd->add_option("--uv-c", opt.uv_c, "penalty scale: u = v = uv_c * T^(1/4)");
  cmd->add_option("--batch-c", opt.batch_c, "batch scale: B = ceil(batch_c * T^(5/4))");
  cmd->add_option("--seed", opt.seed, "RNG seed for stochastic solves");
  cmd->add_option("--sigma-f", opt.sigma_f, "objective noise level");
  cmd->add_option("--sigma-h", opt.sigma_h, "constraint noise level");
  cmd->add_option("--out", opt.out_dir, "output directory");
  cmd->add_option("--record-every", opt.record_every, "trace thinning stride");
  cmd->add_option("--stop-tol", opt.stop_tol, "early stop on ||K||^2 <= tol (0 = off)");
  cmd->add_option("--z0", opt.z0_text, "start point, comma list (default: fixture/box center)");
  cmd->add_option("--L", opt.ls_lipschitz, "smoothness constant for ls (0 = estimate)");
  cmd->add_option("--shift-margin", opt.shift_margin,
                  "shift objectives positive over probes by this margin (0 = off)");
  cmd->add_option("--display", opt.display,
                  "'inverse' adds 1/F views next to the raw values")
      ->check(CLI::IsMember({"", "inverse"}));
}

struct PreparedProblem {
  ECMOProblem problem;
  Vector z0;
  std::optional<Fixture> fixture;
};

PreparedProblem prepare(const CommonOptions& opt) {
  PreparedProblem prep{resolve_problem_ref(opt.problem_ref).problem, Vector(), std::nullopt};
  if (opt.problem_ref.rfind("fixture:", 0) == 0)
    prep.fixture = get_fixture(opt.problem_ref.substr(8));

  if (!opt.z0_text.empty()) {
    prep.z0 = parse_vector(opt.z0_text, "--z0");
    if (prep.z0.size() != prep.problem.dimension())
      throw InputError("--z0: expected " + std::to_string(prep.problem.dimension()) +
                       " coordinates");
  } else if (prep.fixture) {
    prep.z0 = prep.fixture->z0;
  } else if (prep.problem.bounding_box()) {
    prep.z0 = Vector(prep.problem.dimension());
    for (int i = 0; i < prep.problem.dimension(); ++i) {
      const auto& interval = (*prep.problem.bounding_box())[i];
      prep.z0[i] = 0.5 * (interval[0] + interval[1]);
    }
  } else {
    prep.z0 = Vector::Zero(prep.problem.dimension());
  }

  // The WC solvers want positive objectives; LS is indifferent to constants.
  if (opt.shift_margin > 0.0 && opt.solver != "ls") {
    prep.problem =
        shift_positive(prep.problem, default_probes(prep.problem, prep.z0), opt.shift_margin);
  }
  return prep;
}

SolverConfig make_config(const CommonOptions& opt, const Vector& z0) {
  SolverConfig cfg;
  cfg.T = opt.T;
  cfg.params = default_schedule(opt.T, opt.eta_c, opt.uv_c, opt.batch_c);
  cfg.z0 = z0;
  cfg.record_every = opt.record_every;
  if (opt.stop_tol > 0.0) cfg.stop_tol = opt.stop_tol;
  cfg.seed = opt.seed;
  if (opt.ls_lipschitz > 0.0) cfg.ls_lipschitz = opt.ls_lipschitz;
  cfg.sigma_f = opt.sigma_f;
  cfg.sigma_h = opt.sigma_h;
  cfg.shift_margin = opt.solver == "ls" ? 0.0 : opt.shift_margin;
  return cfg;
}

SolveResult dispatch_solve(const CommonOptions& opt, const ECMOProblem& problem,
                           const Vector& lambda, const SolverConfig& cfg) {
  if (opt.solver == "wc") return solve_wc_penalty(problem, Preference(lambda), cfg);
  if (opt.solver == "wc-stoc") {
    StochasticProblem stoch(problem, opt.sigma_f, opt.sigma_h);
    return solve_wc_penalty_stochastic(stoch, Preference(lambda), cfg);
  }
  return solve_ls(problem, lambda, cfg);
}

RunRecord base_record(const CommonOptions& opt, const std::string& command) {
  RunRecord record;
  record.timestamp = iso_timestamp();
  record.command = command;
  record.solver = opt.solver;
  record.problem_ref = opt.problem_ref;
  record.problem_hash = problem_ref_hash(opt.problem_ref);
  record.environment = build_environment_note();
  return record;
}

int cmd_solve(const CommonOptions& opt, const std::string& lambda_text,
              const std::string& command) {
  const Vector lambda = parse_vector(lambda_text, "--lambda");
  PreparedProblem prep = prepare(opt);
  if (lambda.size() != prep.problem.num_objectives())
    throw InputError("--lambda: expected " + std::to_string(prep.problem.num_objectives()) +
                     " weights");
  const SolverConfig cfg = make_config(opt, prep.z0);
  const SolveResult result = dispatch_solve(opt, prep.problem, lambda, cfg);

  fs::create_directories(opt.out_dir);
  write_file(fs::path(opt.out_dir) / "trace.csv", trace_csv(result.trace));
  RunRecord record = base_record(opt, command);
  record.config_json = solve_config_json(result, opt.solver);
  record.results_json = solve_result_json(result, opt.solver);
  write_file(fs::path(opt.out_dir) / "run.json", run_record_json(record));

  const Vector reported = result.final_F - prep.problem.objective_shifts();
  std::cout << "final_F =";
  for (int s = 0; s < reported.size(); ++s) std::cout << ' ' << format_double(reported[s]);
  if (opt.display == "inverse") {
    std::cout << "\nfinal_inv_F =";
    for (int s = 0; s < reported.size(); ++s)
      std::cout << ' ' << format_double(1.0 / reported[s]);
  }
  std::cout << "\nh_norm = " << format_double(result.final_constraint_norm)
            << "\navg_kkt_sq = " << format_double(result.avg_kkt_sq) << std::endl;
  return 0;
}

int cmd_sweep(const CommonOptions& opt, int resolution, double floor, int workers,
              double admission_tol, int grid_density, const std::string& command) {
  PreparedProblem prep = prepare(opt);
  SweepSpec spec;
  spec.grid_resolution = resolution;
  spec.grid_floor = floor;
  spec.config = make_config(opt, prep.z0);
  spec.workers = workers;
  spec.admission_tol = admission_tol;

  SweepResult sweep;
  if (opt.solver == "wc-stoc") {
    StochasticProblem stoch(prep.problem, opt.sigma_f, opt.sigma_h);
    sweep = sweep_preferences(stoch, spec);
  } else {
    sweep = sweep_preferences(prep.problem, spec,
                              opt.solver == "ls" ? SolverKind::Ls : SolverKind::WcPenalty);
  }

  fs::create_directories(opt.out_dir);
  std::vector<std::string> result_files(sweep.per_lambda.size());
  for (std::size_t i = 0; i < sweep.per_lambda.size(); ++i) {
    const SweepItem& item = sweep.per_lambda[i];
    char name[40];
    std::snprintf(name, sizeof(name), "lambda_%03zu.json", i);
    if (item.result) {
      result_files[i] = name;
      write_file(fs::path(opt.out_dir) / name, solve_result_json(*item.result, opt.solver));
    }
  }
  write_file(fs::path(opt.out_dir) / "front.csv", front_csv(sweep.front));
  if (opt.display == "inverse")
    write_file(fs::path(opt.out_dir) / "front_display.csv", front_display_csv(sweep.front));

  Metrics metrics;
  if (!sweep.front.empty()) {
    const int S = static_cast<int>(sweep.front.entries[0].F.size());
    Vector ref = Vector::Constant(S, -std::numeric_limits<double>::infinity());
    for (const FrontEntry& e : sweep.front.entries) ref = ref.cwiseMax(e.F);
    metrics.ref_point = ref * 1.1 + Vector::Constant(S, 0.1);
    metrics.hypervolume = hypervolume(sweep.front, metrics.ref_point);
    if (prep.fixture && prep.fixture->has_reference_front()) {
      const int density = grid_density > 0 ? grid_density : prep.fixture->default_grid_density;
      metrics.epsilon = epsilon_indicator(sweep.front, reference_front(*prep.fixture, density));
      metrics.reference_name = "fixture:" + prep.fixture->name;
    }
  }
  write_file(fs::path(opt.out_dir) / "metrics.json", metrics_json(metrics));

  // Manifest is the commit point, written last.
  std::ostringstream manifest;
  manifest << "{\n  \"schema_version\": " << kSchemaVersion << ",\n  \"problem\": \""
           << opt.problem_ref << "\",\n  \"front_csv\": \"front.csv\",\n"
           << "  \"metrics_json\": \"metrics.json\",\n  \"per_lambda\": [\n";
  for (std::size_t i = 0; i < sweep.per_lambda.size(); ++i) {
    const SweepItem& item = sweep.per_lambda[i];
    manifest << "    {\"file\": \"" << result_files[i] << "\", \"admitted\": "
             << (item.admitted ? "true" : "false") << ", \"status\": "
             << (item.result ? 0 : 1) << ", \"error\": \"" << item.error << "\"}"
             << (i + 1 < sweep.per_lambda.size() ? ",\n" : "\n");
  }
  manifest << "  ]\n}\n";
  write_file(fs::path(opt.out_dir) / "manifest.json", manifest.str());

  RunRecord record = base_record(opt, command);
  record.config_json = "{\"grid_resolution\": " + std::to_string(resolution) +
                       ", \"floor\": " + format_double(floor) +
                       ", \"T\": " + std::to_string(opt.T) +
                       ", \"workers\": " + std::to_string(workers) + "}";
  record.results_json = "{\"manifest\": \"manifest.json\"}";
  write_file(fs::path(opt.out_dir) / "run.json", run_record_json(record));

  std::cout << "front_size = " << sweep.front.size()
            << "\nhv = " << format_double(metrics.hypervolume) << std::endl;
  return sweep.front.empty() ? 2 : 0;
}

int cmd_bench(const std::string& fixture_name, int grid_density, const std::string& out_dir,
              const std::string& against, bool export_problem) {
  Fixture fixture = get_fixture(fixture_name);
  fs::create_directories(out_dir);
  if (export_problem) {
    write_file(fs::path(out_dir) / (fixture_name + ".json"), fixture_export_json(fixture));
    std::cout << "exported = " << (fs::path(out_dir) / (fixture_name + ".json")).string()
              << std::endl;
    if (!fixture.has_reference_front()) return 0;
  }
  ParetoFront oracle = reference_front(fixture, grid_density);
  write_file(fs::path(out_dir) / (fixture_name + "_reference_front.csv"), front_csv(oracle));
  std::cout << "reference_front_size = " << oracle.size() << std::endl;
  if (!against.empty()) {
    std::ifstream in(against);
    if (!in) throw InputError("cannot open front file '" + against + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    ParetoFront candidate = parse_front_csv(buffer.str());
    if (candidate.empty()) throw InputError("front file '" + against + "' has no entries");
    std::cout << "epsilon_vs_reference = "
              << format_double(epsilon_indicator(candidate, oracle)) << std::endl;
  }
  return 0;
}

int cmd_gradcheck(const std::string& fixture_name, double step) {
  Fixture fixture = get_fixture(fixture_name);
  const ECMOProblem& problem = fixture.problem;
  RandomStream rng(0x6772616463ULL, 0);
  bool all_ok = true;
  auto check = [&](const ScalarFunction& fn, const std::string& label) {
    double max_rel = 0.0, max_abs = 0.0;
    for (int n = 0; n < 5; ++n) {
      Vector z(problem.dimension());
      for (int i = 0; i < problem.dimension(); ++i) {
        const auto& interval = fixture.bounding_box[i];
        z[i] = interval[0] + rng.uniform(RandomStream::key(n, i)) * (interval[1] - interval[0]);
      }
      const GradCheckReport report = gradcheck(fn, z, step);
      max_rel = std::max(max_rel, report.max_rel_err);
      max_abs = std::max(max_abs, report.max_abs_err);
      if (!report.within()) all_ok = false;
    }
    std::cout << label << ": max_rel_err = " << format_double(max_rel)
              << ", max_abs_err = " << format_double(max_abs) << '\n';
  };
  for (int s = 0; s < problem.num_objectives(); ++s)
    check(problem.objectives()[s], "objective_" + std::to_string(s + 1));
  for (int i = 0; i < problem.num_constraints(); ++i)
    check(problem.constraints()[i], "constraint_" + std::to_string(i + 1));
  std::cout << (all_ok ? "gradcheck: OK" : "gradcheck: FAILED") << std::endl;
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equality-constrained multi-objective solver"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string lambda_text;
  int resolution = 10, workers = 0, grid_density = 0;
  double floor = 0.01, admission_tol = 1e-2, step = 1e-5;
  std::string fixture_name, against;

  CLI::App* solve = app.add_subcommand("solve", "run one solve for a fixed preference");
  add_common_flags(solve, opt);
  solve->add_option("--lambda", lambda_text, "preference weights, comma list")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "solve across a lattice of preferences");
  add_common_flags(sweep, opt);
  sweep->add_option("--grid-resolution", resolution, "simplex lattice resolution");
  sweep->add_option("--floor", floor, "minimum preference weight");
  sweep->add_option("--workers", workers, "worker threads (0 = hardware)");
  sweep->add_option("--admission-tol", admission_tol, "||h|| gate for front membership");
  sweep->add_option("--grid-density", grid_density, "reference front density for metrics");

  CLI::App* bench = app.add_subcommand("bench", "emit a fixture's oracle reference front");
  bench->add_option("--fixture", fixture_name, "fixture name")->required();
  bench->add_option("--grid-density", grid_density, "parameter grid density");
  bench->add_option("--out", opt.out_dir, "output directory");
  bench->add_option("--against", against, "front CSV to score against the oracle");
  bool export_problem = false;
  bench->add_flag("--export", export_problem, "also write the fixture's problem JSON");

  CLI::App* gradcheck_cmd = app.add_subcommand("gradcheck", "finite-difference gradient check");
  gradcheck_cmd->add_option("--fixture", fixture_name, "fixture name")->required();
  gradcheck_cmd->add_option("--step", step, "central difference step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string command = join_command(argc, argv);
  try {
    if (solve->parsed()) return cmd_solve(opt, lambda_text, command);
    if (sweep->parsed())
      return cmd_sweep(opt, resolution, floor, workers, admission_tol, grid_density, command);
    if (bench->parsed())
      return cmd_bench(fixture_name, grid_density, opt.out_dir, against, export_problem);
    if (gradcheck_cmd->parsed()) return cmd_gradcheck(fixture_name, step);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << std::endl;
    return 1;
  } catch (const CapabilityError& e) {
    std::cerr << "input error: " << e.what() << std::endl;
    return 1;
  } catch (const DivergedError& e) {
    std::cerr << "diverged: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 1;
}
