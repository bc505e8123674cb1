#include <algorithm>
#include <cmath>
#include <doctest.h>
#include <Eigen/Dense>
#include <ecmo/fixtures.hpp>

#include "oracles.hpp"

using namespace ecmo;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<int>(values.size()));
  int i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

// directed Hausdorff distance between bi-objective fronts in objective
// space (L-inf). Sorts b by F_1 and expands from the insertion point, which
// is exact: any candidate whose F_1 gap already exceeds the best L-inf
// distance cannot improve it.
double front_distance(const ParetoFront& a, const ParetoFront& b) {
  std::vector<Vector> sorted;
  sorted.reserve(b.entries.size());
  for (const FrontEntry& e : b.entries) sorted.push_back(e.F);
  std::sort(sorted.begin(), sorted.end(),
            [](const Vector& x, const Vector& y) { return x[0] < y[0]; });
  double worst = 0.0;
  const int n = static_cast<int>(sorted.size());
  for (const FrontEntry& pa : a.entries) {
    const auto it = std::lower_bound(
        sorted.begin(), sorted.end(), pa.F[0],
        [](const Vector& q, double value) { return q[0] < value; });
    int r = static_cast<int>(it - sorted.begin());
    int l = r - 1;
    double best = std::numeric_limits<double>::infinity();
    while (r < n && sorted[r][0] - pa.F[0] < best) {
      best = std::min(best, (pa.F - sorted[r]).lpNorm<Eigen::Infinity>());
      ++r;
    }
    while (l >= 0 && pa.F[0] - sorted[l][0] < best) {
      best = std::min(best, (pa.F - sorted[l]).lpNorm<Eigen::Infinity>());
      --l;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_CASE("registry lists every fixture and rejects unknown names") {
  const std::vector<std::string> names = fixture_names();
  CHECK(names.size() == 8);
  for (const std::string& name : names) CHECK(get_fixture(name).name == name);
  try {
    get_fixture("nope");
    FAIL("expected an error");
  } catch (const InputError& e) {
    const std::string what = e.what();
    CHECK(what.find("gebken_circle") != std::string::npos);
    CHECK(what.find("quad_affine") != std::string::npos);
  }
}

TEST_CASE("registered definitions match their formulas") {
  const Fixture geb = get_fixture("gebken_circle");
  CHECK(geb.problem.num_objectives() == 2);
  CHECK(geb.problem.num_constraints() == 1);
  for (double z1 : {-0.8, 0.4}) {
    for (double z2 : {-0.3, 1.1}) {
      const Vector z = vec({z1, z2});
      const Vector F = geb.problem.eval_objectives(z);
      CHECK(F[0] == doctest::Approx((z1 - 2) * (z1 - 2) + (z2 - 1) * (z2 - 1)).epsilon(1e-14));
      CHECK(F[1] == doctest::Approx((z1 - 2) * (z1 - 2) + (z2 + 1) * (z2 + 1)).epsilon(1e-14));
      CHECK(geb.problem.eval_constraints(z)[0] ==
            doctest::Approx(-z1 * z1 - z2 * z2 + 1).epsilon(1e-14));
    }
  }

  const Fixture quad = get_fixture("quad_affine");
  const Vector zq = vec({0.7, -1.3});
  CHECK(quad.problem.eval_objectives(zq)[0] == doctest::Approx(0.49 + 4 * 1.69).epsilon(1e-14));
  CHECK(quad.problem.eval_objectives(zq)[1] ==
        doctest::Approx(4 * 1.69 + 10.89).epsilon(1e-14));
  CHECK(quad.problem.eval_constraints(zq)[0] == doctest::Approx(0.35 + 1.3 - 0.1).epsilon(1e-14));

  const Fixture ce2 = get_fixture("counterexample_2");
  const Vector zc = vec({0.0, 0.0, 1.0});
  CHECK(ce2.problem.eval_constraints(zc)[0] == 0.0);  // z1^2 + z3^2 - 1
  CHECK(ce2.problem.eval_constraints(zc)[1] == 0.0);  // z3 - 1
  CHECK(ce2.problem.eval_objectives(vec({0.5, -0.25, 1.0}))[0] == 0.25);
  CHECK(ce2.problem.eval_objectives(vec({0.5, -0.25, 1.0}))[1] == 0.75);
}

TEST_CASE("oracle fronts are non-dominated and stable under grid doubling") {
  for (const std::string& name :
       {"gebken_circle", "quad_affine", "forum_llgc", "toy_data_weighting", "unbounded_guard"}) {
    const Fixture fx = get_fixture(name);
    const ParetoFront coarse = reference_front(fx, fx.default_grid_density);
    const ParetoFront fine = reference_front(fx, 2 * fx.default_grid_density);
    // spot-check mutual non-domination on a stride; the filter property
    // tests cover the full guarantee
    const int stride = std::max(1, coarse.size() / 200);
    for (int i = 0; i < coarse.size(); i += stride)
      for (int j = 0; j < coarse.size(); j += stride)
        CHECK_FALSE(dominates(coarse.entries[i].F, coarse.entries[j].F));
    CHECK(front_distance(coarse, fine) <= 1e-3);
    CHECK(front_distance(fine, coarse) <= 1e-3);
  }
}

TEST_CASE("gebken oracle front ends at the tangency points") {
  const Fixture geb = get_fixture("gebken_circle");
  const ParetoFront front = reference_front(geb, 100000);
  // closed form: the centers (2, +/-1) project onto the circle at (2, +/-1)/sqrt(5)
  const double s5 = std::sqrt(5.0);
  const Vector end_a = geb.problem.eval_objectives(vec({2.0 / s5, 1.0 / s5}));
  const Vector end_b = geb.problem.eval_objectives(vec({2.0 / s5, -1.0 / s5}));
  double best_a = 1e300, best_b = 1e300;
  for (const FrontEntry& e : front.entries) {
    best_a = std::min(best_a, (e.F - end_a).lpNorm<Eigen::Infinity>());
    best_b = std::min(best_b, (e.F - end_b).lpNorm<Eigen::Infinity>());
  }
  CHECK(best_a <= 1e-4);
  CHECK(best_b <= 1e-4);
  // and the arc spans between them: theta in [-atan(1/2), +atan(1/2)]
  double lo = 1e300, hi = -1e300;
  for (const FrontEntry& e : front.entries) {
    lo = std::min(lo, std::atan2(e.z[1], e.z[0]));
    hi = std::max(hi, std::atan2(e.z[1], e.z[0]));
  }
  CHECK(lo == doctest::Approx(-std::atan(0.5)).epsilon(1e-3));
  CHECK(hi == doctest::Approx(std::atan(0.5)).epsilon(1e-3));
}

TEST_CASE("forum oracle front is the analytic curve over x in [1, 2]") {
  const Fixture forum = get_fixture("forum_llgc");
  const ParetoFront front = reference_front(forum, 10000);
  // grid oracles keep slivers within one grid step of the endpoints
  const double grid_step = 3.0 / 10000.0;
  for (const FrontEntry& e : front.entries) {
    const double x = e.z[0];
    CHECK(x >= 1.0 - 2.0 * grid_step);
    CHECK(x <= 2.0 + 2.0 * grid_step);
    CHECK(e.F[0] == doctest::Approx((x - 1) * (x - 1)).epsilon(1e-12));
    CHECK(e.F[1] == doctest::Approx((x - 2) * (x - 2)).epsilon(1e-12));
  }
  // endpoints (0, 1) and (1, 0)
  double to_01 = 1e300, to_10 = 1e300;
  for (const FrontEntry& e : front.entries) {
    to_01 = std::min(to_01, (e.F - vec({0.0, 1.0})).lpNorm<Eigen::Infinity>());
    to_10 = std::min(to_10, (e.F - vec({1.0, 0.0})).lpNorm<Eigen::Infinity>());
  }
  CHECK(to_01 <= 1e-3);
  CHECK(to_10 <= 1e-3);
}

TEST_CASE("quad_affine oracle front contains the equal-weight WC optimum") {
  const Fixture quad = get_fixture("quad_affine");
  const ParetoFront front = reference_front(quad, 20000);
  const oracle::QuadAffineWcOracle wc = oracle::quad_affine_wc_equal_weights();
  const Vector F_star = quad.problem.eval_objectives(wc.z);
  double best = 1e300;
  for (const FrontEntry& e : front.entries)
    best = std::min(best, (e.F - F_star).lpNorm<Eigen::Infinity>());
  CHECK(best <= 1e-3);
}

TEST_CASE("fixtures without a bounded parameterization refuse to build fronts") {
  CHECK_THROWS_WITH_AS(reference_front(get_fixture("llgc_cubic")), "reference front unavailable",
                       CapabilityError);
  CHECK_THROWS_AS(reference_front(get_fixture("counterexample_1")), CapabilityError);
}

TEST_CASE("llgc_cubic constraint gradient never vanishes") {
  const Fixture cubic = get_fixture("llgc_cubic");
  RandomStream rng(14, 0);
  for (std::uint64_t n = 0; n < 50; ++n) {
    const Vector z = vec({-2.0 + 4.0 * rng.uniform(RandomStream::key(n, 0)),
                          -2.0 + 4.0 * rng.uniform(RandomStream::key(n, 1))});
    const Matrix Jh = cubic.problem.constraint_jacobian(z);
    CHECK(Jh(0, 0) == 1.0);  // dh/dx = 1 keeps the row full rank for every y
  }
}

TEST_CASE("data-weighting constraints vanish at the weighted normal-equations solution") {
  const Fixture toy = get_fixture("toy_data_weighting");
  REQUIRE(toy.mtbl.has_value());
  const ECMOProblem reduced = toy.problem;

  // independent dense solve: for fixed x, y* solves
  //   (sum_n s_n A_n^T A_n) y = sum_n s_n A_n^T b_n
  // with s = softmax(x). Recover A_n^T A_n and A_n^T b_n from the fixture's
  // own constraint values at probe points (h is linear in y for fixed x):
  // h(x, y) = M(x) y - r(x), so M columns come from unit y probes.
  for (const Vector& x : {vec({0.3, -0.2}), vec({-1.0, 1.0}), vec({0.0, 0.0})}) {
    const int q = 3;
    Vector zero_z(5);
    zero_z << x[0], x[1], 0.0, 0.0, 0.0;
    const Vector r = -reduced.eval_constraints(zero_z);
    Matrix M(q, q);
    for (int j = 0; j < q; ++j) {
      Vector e_z = zero_z;
      e_z[2 + j] = 1.0;
      M.col(j) = reduced.eval_constraints(e_z) + r;
    }
    const Vector y_star = M.fullPivLu().solve(r);
    Vector z(5);
    z << x[0], x[1], y_star[0], y_star[1], y_star[2];
    CHECK(reduced.eval_constraints(z).norm() <= 1e-10);
  }
}

TEST_CASE("data-weighting front trades the two validation losses") {
  const Fixture toy = get_fixture("toy_data_weighting");
  const ParetoFront front = reference_front(toy, 2000);
  CHECK(front.size() >= 10);
  // both endpoints beat each other on one criterion
  const FrontEntry& first = front.entries.front();
  const FrontEntry& last = front.entries.back();
  CHECK(((first.F[0] < last.F[0] && first.F[1] > last.F[1]) ||
         (first.F[0] > last.F[0] && first.F[1] < last.F[1])));
}
