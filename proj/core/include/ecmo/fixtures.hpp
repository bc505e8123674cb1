#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ecmo/pareto.hpp"
#include "ecmo/problem.hpp"

namespace ecmo {

/// A registered benchmark problem: its (reduced) ECMO form, the bilevel
/// original when there is one, a default start point, and an independent
/// reference-front oracle where the feasible set has a bounded
/// parameterization. Oracle fronts come from dense parameter grids plus the
/// dominance filter, never from the solvers under test.
struct Fixture {
  std::string name;
  ECMOProblem problem;              // what the solvers run on
  std::optional<MTBLProblem> mtbl;  // present for bilevel fixtures
  Vector z0;
  BoundingBox bounding_box;
  std::string notes;
  int default_grid_density = 10000;
  // Null when no bounded parameterization exists.
  std::function<ParetoFront(int density)> reference_front_fn;

  bool has_reference_front() const { return static_cast<bool>(reference_front_fn); }
};

/// Names in registry order.
std::vector<std::string> fixture_names();

/// Throws InputError listing the available names when `name` is unknown.
Fixture get_fixture(const std::string& name);

/// Dense-grid oracle front at the given density (fixture default when
/// density <= 0). Throws CapabilityError("reference front unavailable")
/// for fixtures without a bounded parameterization.
ParetoFront reference_front(const Fixture& fixture, int grid_density = 0);

}  // namespace ecmo
