#pragma once

#include <optional>
#include <string>

#include "ecmo/explorer.hpp"
#include "ecmo/fixtures.hpp"
#include "ecmo/pareto.hpp"
#include "ecmo/problem.hpp"
#include "ecmo/solver.hpp"

namespace ecmo {

// Every emitted file carries this version; loaders reject anything else.
inline constexpr int kSchemaVersion = 1;

/// Shortest decimal that round-trips the exact double (to_chars).
std::string format_double(double value);
double parse_double(const std::string& token);

/// FNV-1a 64-bit, used as the problem content hash in run records.
std::uint64_t content_hash(const std::string& text);

// --- problem files ---------------------------------------------------------
// JSON schema:
// { "name": ..., "k": ..., "objectives": [ {"monomial": [[coeff, [p1..pk]], ...]} ],
//   "constraints": [...], optional "mtbl": {"p", "q", "lower_objective": {...}},
//   optional "bounding_box": [[lo, hi] x k] }
// With "mtbl" present the objectives are the upper level over z = (x, y) and
// the constraints are derived from the lower objective; native fixtures are
// addressable only by registry name.

struct LoadedProblem {
  ECMOProblem problem;
  std::optional<MTBLProblem> mtbl;
};

LoadedProblem load_problem_json(const std::string& text);
LoadedProblem load_problem_file(const std::string& path);

/// Serialize a monomial problem (CapabilityError when any function is
/// native — those export metadata only via fixture_metadata_json).
std::string problem_to_json(const ECMOProblem& problem);
std::string problem_to_json(const MTBLProblem& mtbl);

// --- run artifacts ----------------------------------------------------------

std::string trace_csv(const Trace& trace);
std::string front_csv(const ParetoFront& front);
ParetoFront parse_front_csv(const std::string& text);

/// Plot-ready variant mirroring 1/loss axes: the canonical columns plus
/// inv_F_1..S appended. Raw values stay canonical; this file is display-only.
std::string front_display_csv(const ParetoFront& front);

std::string solve_result_json(const SolveResult& result, const std::string& solver_name);

/// Just the replayable configuration block of solve_result_json.
std::string solve_config_json(const SolveResult& result, const std::string& solver_name);

struct Metrics {
  double hypervolume = 0.0;
  Vector ref_point;
  std::optional<double> epsilon;  // vs the named reference front, when known
  std::string reference_name;
};
std::string metrics_json(const Metrics& metrics);

struct RunRecord {
  int schema_version = kSchemaVersion;
  std::string timestamp;  // ISO 8601 UTC
  std::string command;    // reconstructable invocation
  std::string solver;
  std::string problem_ref;        // "fixture:NAME" or a path
  std::uint64_t problem_hash = 0;  // content hash of the canonical problem JSON
  std::string config_json;        // full echo, see solve_result_json
  std::string results_json;
  std::string environment;  // build note
};

std::string run_record_json(const RunRecord& record);
RunRecord parse_run_record(const std::string& text);

/// Re-execute the solve a run record describes (fixture-backed problems
/// only) and return the fresh result; replays reproduce avg_kkt_sq bitwise
/// for deterministic solvers and per-seed for stochastic ones.
SolveResult replay_run_record(const RunRecord& record);

/// Canonical problem reference string -> loaded problem. Accepts
/// "fixture:NAME" or a JSON file path.
LoadedProblem resolve_problem_ref(const std::string& ref);

/// Hash the canonical serialization (fixture name + notes for natives).
std::uint64_t problem_ref_hash(const std::string& ref);

/// Export a fixture: the full problem JSON when every function is a
/// monomial (bilevel fixtures keep their "mtbl" block), metadata only for
/// native fixtures.
std::string fixture_export_json(const Fixture& fixture);

std::string build_environment_note();

}  // namespace ecmo
