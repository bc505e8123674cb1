#include "ecmo/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace ecmo {

bool dominates(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw InputError("dominates: dimension mismatch");
  bool strict = false;
  for (int s = 0; s < a.size(); ++s) {
    if (a[s] > b[s]) return false;
    if (a[s] < b[s]) strict = true;
  }
  return strict;
}

std::vector<Vector> ParetoFront::objective_vectors() const {
  std::vector<Vector> out;
  out.reserve(entries.size());
  for (const FrontEntry& e : entries) out.push_back(e.F);
  return out;
}

namespace {

ParetoFront filter_biobjective(const std::vector<FrontEntry>& points) {
  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (points[a].F[0] != points[b].F[0]) return points[a].F[0] < points[b].F[0];
    if (points[a].F[1] != points[b].F[1]) return points[a].F[1] < points[b].F[1];
    return a < b;
  });
  std::vector<int> kept;
  double best_f2 = std::numeric_limits<double>::infinity();
  for (int idx : order) {
    if (points[idx].F[1] < best_f2) {
      kept.push_back(idx);
      best_f2 = points[idx].F[1];
    }
  }
  std::sort(kept.begin(), kept.end());
  ParetoFront front;
  front.entries.reserve(kept.size());
  for (int idx : kept) front.entries.push_back(points[idx]);
  return front;
}

ParetoFront filter_incremental(const std::vector<FrontEntry>& points) {
  std::vector<int> kept;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    const Vector& fi = points[i].F;
    bool drop = false;
    for (int j : kept) {
      const Vector& fj = points[j].F;
      if (dominates(fj, fi) || fj == fi) {
        drop = true;
        break;
      }
    }
    if (drop) continue;
    std::erase_if(kept, [&](int j) { return dominates(fi, points[j].F); });
    kept.push_back(i);
  }
  ParetoFront front;
  front.entries.reserve(kept.size());
  for (int idx : kept) front.entries.push_back(points[idx]);
  return front;
}

// Union-of-boxes volume by slicing the last coordinate; each slab reduces to
// an (S-1)-dimensional instance over the points below the slab.
double hv_recursive(std::vector<Vector> points, const Vector& ref) {
  const int S = static_cast<int>(ref.size());
  if (S == 1) {
    double lowest = ref[0];
    for (const Vector& p : points) lowest = std::min(lowest, p[0]);
    return ref[0] - lowest;
  }
  if (S == 2) {
    std::sort(points.begin(), points.end(), [](const Vector& a, const Vector& b) {
      return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
    });
    double hv = 0.0;
    double upper_f2 = ref[1];
    for (const Vector& p : points) {
      if (p[1] < upper_f2) {
        hv += (ref[0] - p[0]) * (upper_f2 - p[1]);
        upper_f2 = p[1];
      }
    }
    return hv;
  }
  std::vector<double> cuts;
  cuts.reserve(points.size() + 1);
  for (const Vector& p : points) cuts.push_back(p[S - 1]);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(ref[S - 1]);

  double hv = 0.0;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double lo = cuts[j];
    const double hi = cuts[j + 1];
    if (!(hi > lo)) continue;
    std::vector<Vector> slab;
    for (const Vector& p : points)
      if (p[S - 1] <= lo) slab.push_back(p.head(S - 1));
    if (slab.empty()) continue;
    hv += (hi - lo) * hv_recursive(std::move(slab), ref.head(S - 1));
  }
  return hv;
}

}  // namespace

ParetoFront pareto_filter(const std::vector<FrontEntry>& points) {
  if (points.empty()) return {};
  const int S = static_cast<int>(points[0].F.size());
  for (const FrontEntry& e : points)
    if (e.F.size() != S) throw InputError("pareto_filter: inconsistent objective count");
  if (S == 2) return filter_biobjective(points);
  return filter_incremental(points);
}

double hypervolume(const std::vector<Vector>& points, const Vector& ref) {
  if (points.empty()) return 0.0;
  const int S = static_cast<int>(ref.size());
  if (S < 1 || S > 5)
    throw InputError("hypervolume supports 1 <= S <= 5 objectives");
  std::ostringstream offenders;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != S) throw InputError("hypervolume: dimension mismatch");
    for (int s = 0; s < S; ++s) {
      if (points[i][s] > ref[s]) {
        offenders << " point " << i << " coordinate " << s << " (" << points[i][s] << " > "
                  << ref[s] << ")";
      }
    }
  }
  if (!offenders.str().empty())
    throw InputError("hypervolume: points exceed the reference point:" + offenders.str());
  return hv_recursive(points, ref);
}

double hypervolume(const ParetoFront& front, const Vector& ref) {
  return hypervolume(front.objective_vectors(), ref);
}

double epsilon_indicator(const ParetoFront& front, const ParetoFront& reference) {
  if (front.empty() || reference.empty())
    throw InputError("epsilon indicator needs non-empty fronts");
  const int S = static_cast<int>(front.entries[0].F.size());
  double eps = 0.0;
  for (const FrontEntry& r : reference.entries) {
    if (r.F.size() != S) throw InputError("epsilon indicator: dimension mismatch");
    double best = std::numeric_limits<double>::infinity();
    for (const FrontEntry& p : front.entries) {
      if (p.F.size() != S) throw InputError("epsilon indicator: dimension mismatch");
      double worst = -std::numeric_limits<double>::infinity();
      for (int s = 0; s < S; ++s) worst = std::max(worst, p.F[s] - r.F[s]);
      best = std::min(best, worst);
    }
    eps = std::max(eps, best);
  }
  return std::max(eps, 0.0);
}

}  // namespace ecmo
