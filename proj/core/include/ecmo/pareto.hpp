#pragma once

#include <vector>

#include "ecmo/preference.hpp"

namespace ecmo {

/// Minimization convention throughout: a dominates b iff a <= b
/// componentwise and a != b.
bool dominates(const Vector& a, const Vector& b);

/// One candidate solution: decision point, objective vector, and the
/// preference that produced it. run_id is the index within its sweep
/// (-1 for oracle fronts).
struct FrontEntry {
  Vector z;
  Vector F;
  Vector lambda;
  int run_id = -1;
};

/// Mutually non-dominated set, in the stable order pareto_filter produced.
struct ParetoFront {
  std::vector<FrontEntry> entries;

  int size() const { return static_cast<int>(entries.size()); }
  bool empty() const { return entries.empty(); }
  std::vector<Vector> objective_vectors() const;
};

/// Keep exactly the entries not dominated by any other, preserving input
/// order; the first occurrence of an exact duplicate wins. Idempotent.
/// Bi-objective inputs go through an O(n log n) sweep, higher dimensions
/// through an incremental archive.
ParetoFront pareto_filter(const std::vector<FrontEntry>& points);

/// Lebesgue measure of the region dominated by `points` and bounded by
/// `ref`: vol( union_p [p, ref] ). Exact sweep for S = 2, recursive slicing
/// for 3 <= S <= 5. Every point must satisfy p <= ref componentwise.
double hypervolume(const std::vector<Vector>& points, const Vector& ref);
double hypervolume(const ParetoFront& front, const Vector& ref);

/// Additive epsilon indicator, "front covers reference": the smallest
/// eps >= 0 such that every reference point r has some front point p with
/// p_s <= r_s + eps for all s.
double epsilon_indicator(const ParetoFront& front, const ParetoFront& reference);

}  // namespace ecmo
