#include <cmath>
#include <doctest.h>
#include <ecmo/fixtures.hpp>
#include <ecmo/pareto.hpp>
#include <ecmo/problem.hpp>
#include <ecmo/stochastic.hpp>

#include "oracles.hpp"

using namespace ecmo;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<int>(values.size()));
  int i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("objective evaluation on the registered problems") {
  const ECMOProblem quad = get_fixture("quad_affine").problem;
  const Vector fq = quad.eval_objectives(vec({0.0, -0.1}));
  CHECK(fq[0] == doctest::Approx(0.04).epsilon(1e-12));
  CHECK(fq[1] == doctest::Approx(20.41).epsilon(1e-12));

  const ECMOProblem geb = get_fixture("gebken_circle").problem;
  const Vector fg = geb.eval_objectives(vec({1.0, 0.0}));
  CHECK(fg[0] == 2.0);
  CHECK(fg[1] == 2.0);

  // independent hand evaluation of the reduced bilevel objectives
  const ECMOProblem forum = get_fixture("forum_llgc").problem;
  const Vector z = vec({1.0, 1.0, 1.0, 0.0});
  auto hand_f1 = [](double x, double y1, double y2, double y3) {
    return (y1 - 1) * (y1 - 1) + (y2 - x) * (y2 - x) + y3 * y3;
  };
  auto hand_f2 = [](double x, double y1, double y2, double y3) {
    return (y1 - 2) * (y1 - 2) + (y2 - x) * (y2 - x) + y3 * y3;
  };
  const Vector ff = forum.eval_objectives(z);
  CHECK(ff[0] == hand_f1(1, 1, 1, 0));
  CHECK(ff[1] == hand_f2(1, 1, 1, 0));
  CHECK(ff[0] == 0.0);
  CHECK(ff[1] == 1.0);

  CHECK_THROWS_AS(forum.eval_objectives(vec({1.0, 1.0})), InputError);
}

TEST_CASE("objective jacobians") {
  const ECMOProblem geb = get_fixture("gebken_circle").problem;
  const Matrix J = geb.objective_jacobian(vec({1.0, 0.0}));
  CHECK(J(0, 0) == -2.0);
  CHECK(J(0, 1) == -2.0);
  CHECK(J(1, 0) == -2.0);
  CHECK(J(1, 1) == 2.0);

  // constant objective has a zero gradient row
  ECMOProblem constant("const", 2, {ScalarFunction(MonomialFunction::constant(2, 3.0))}, {});
  CHECK(constant.objective_jacobian(vec({0.7, -0.2})).isZero(0.0));
}

TEST_CASE("fixture jacobians match finite differences at random points") {
  RandomStream rng(11, 3);
  for (const std::string& name : {"gebken_circle", "quad_affine", "forum_llgc", "llgc_cubic"}) {
    const Fixture fx = get_fixture(name);
    for (std::uint64_t n = 0; n < 20; ++n) {
      Vector z(fx.problem.dimension());
      for (int i = 0; i < z.size(); ++i)
        z[i] = fx.bounding_box[i][0] +
               rng.uniform(RandomStream::key(n, i)) * (fx.bounding_box[i][1] - fx.bounding_box[i][0]);
      const Matrix JF = fx.problem.objective_jacobian(z);
      for (int s = 0; s < fx.problem.num_objectives(); ++s) {
        const Vector numeric = oracle::fd_gradient(
            [&](const Vector& x) { return fx.problem.objectives()[s].value(x); }, z);
        for (int i = 0; i < z.size(); ++i)
          CHECK(oracle::close_rel(JF(s, i), numeric[i], 1e-6, 1e-8));
      }
    }
  }
}

TEST_CASE("constraint evaluation") {
  const ECMOProblem geb = get_fixture("gebken_circle").problem;
  CHECK(geb.eval_constraints(vec({1.0, 0.0}))[0] == 0.0);
  const Matrix Jh = geb.constraint_jacobian(vec({1.0, 0.0}));
  CHECK(Jh(0, 0) == -2.0);
  CHECK(Jh(0, 1) == 0.0);

  const ECMOProblem quad = get_fixture("quad_affine").problem;
  CHECK(quad.eval_constraints(vec({0.0, -0.1}))[0] == 0.0);

  const ECMOProblem cubic = get_fixture("llgc_cubic").problem;
  CHECK(cubic.eval_constraints(vec({-1.0, 1.0}))[0] == 0.0);
  const Matrix Jc = cubic.constraint_jacobian(vec({-1.0, 1.0}));
  CHECK(Jc(0, 0) == 1.0);
  CHECK(Jc(0, 1) == 3.0);
}

TEST_CASE("mtbl reduction differentiates the lower objective") {
  // g = x y + y^4/4  ->  h = x + y^3
  const Fixture cubic = get_fixture("llgc_cubic");
  REQUIRE(cubic.mtbl.has_value());
  const ECMOProblem reduced = mtbl_to_ecmo(*cubic.mtbl);
  CHECK(reduced.num_constraints() == 1);
  for (double x : {-1.0, 0.5}) {
    for (double y : {-2.0, 0.0, 1.5}) {
      CHECK(reduced.eval_constraints(vec({x, y}))[0] == doctest::Approx(x + y * y * y).epsilon(1e-15));
    }
  }

  // forum: h = (y1 - x, y2 - x, y3^3), checked against finite differences of g
  const Fixture forum = get_fixture("forum_llgc");
  REQUIRE(forum.mtbl.has_value());
  const ECMOProblem fred = mtbl_to_ecmo(*forum.mtbl);
  RandomStream rng(5, 9);
  for (std::uint64_t n = 0; n < 20; ++n) {
    Vector z(4);
    for (int i = 0; i < 4; ++i) z[i] = -2.0 + 4.0 * rng.uniform(RandomStream::key(n, i));
    const Vector h = fred.eval_constraints(z);
    const Vector dg = oracle::fd_gradient(
        [&](const Vector& x) { return forum.mtbl->lower_objective().value(x); }, z);
    for (int i = 0; i < 3; ++i) CHECK(oracle::close_rel(h[i], dg[1 + i], 1e-6, 1e-8));
  }

  // g = ||y||^2 / 2 with p = 0 reduces to the identity constraint h(y) = y
  MonomialFunction half_norm(3, {{0.5, {2, 0, 0}}, {0.5, {0, 2, 0}}, {0.5, {0, 0, 2}}});
  MTBLProblem identity("identity", 0, 3, {ScalarFunction(MonomialFunction::constant(3, 1.0))},
                       ScalarFunction(half_norm));
  const ECMOProblem ired = mtbl_to_ecmo(identity);
  const Vector y = vec({0.3, -1.2, 2.0});
  const Vector hy = ired.eval_constraints(y);
  CHECK(hy == y);

  // a native lower objective without partials cannot be reduced
  ScalarFunction opaque = ScalarFunction::native(
      2, [](const Vector& z) { return z.squaredNorm(); },
      [](const Vector& z) { return Vector(2.0 * z); });
  MTBLProblem blocked("blocked", 1, 1, {opaque}, opaque);
  CHECK_THROWS_AS(mtbl_to_ecmo(blocked), CapabilityError);
}

TEST_CASE("shift_positive") {
  // f(z) = z with probes {-3, 0, 3} and margin 1 shifts by 4
  ECMOProblem line("line", 1, {ScalarFunction(MonomialFunction(1, {{1.0, {1}}}))}, {});
  const std::vector<Vector> probes = {vec({-3.0}), vec({0.0}), vec({3.0})};
  const ECMOProblem shifted = shift_positive(line, probes, 1.0);
  CHECK(shifted.objective_shifts()[0] == 4.0);
  CHECK(shifted.eval_objectives(vec({-3.0}))[0] == 1.0);

  // already positive with margin below the minimum: identity
  ECMOProblem pos("pos", 1, {ScalarFunction(MonomialFunction(1, {{1.0, {2}}, {2.0, {0}}}))}, {});
  const ECMOProblem same = shift_positive(pos, probes, 1.0);
  CHECK(same.objective_shifts()[0] == 0.0);

  // gebken objectives on the unit circle stay positive: zero shift, by a
  // grid minimum over 1e4 circle points
  const ECMOProblem geb = get_fixture("gebken_circle").problem;
  std::vector<Vector> circle;
  double lowest = 1e300;
  for (int i = 0; i < 10000; ++i) {
    const double theta = -M_PI + 2 * M_PI * i / 10000.0;
    circle.push_back(vec({std::cos(theta), std::sin(theta)}));
    lowest = std::min(lowest, geb.eval_objectives(circle.back()).minCoeff());
  }
  CHECK(lowest > 1.0);  // grid oracle: the minimum on the circle exceeds the margin
  const ECMOProblem gshift = shift_positive(geb, circle, 1.0);
  CHECK(gshift.objective_shifts().isZero(0.0));

  // shifting never changes Jacobians or the dominance structure on probes
  const ECMOProblem quad = get_fixture("quad_affine").problem;
  std::vector<Vector> pts;
  RandomStream rng(3, 1);
  for (std::uint64_t n = 0; n < 30; ++n)
    pts.push_back(vec({-2.0 + 4.0 * rng.uniform(RandomStream::key(n, 0)),
                       -2.0 + 4.0 * rng.uniform(RandomStream::key(n, 1))}));
  const ECMOProblem qshift = shift_positive(quad, pts, 25.0);
  CHECK(qshift.objective_shifts().minCoeff() > 0.0);
  for (const Vector& z : pts)
    CHECK(qshift.objective_jacobian(z) == quad.objective_jacobian(z));
  for (const Vector& a : pts)
    for (const Vector& b : pts)
      CHECK(dominates(quad.eval_objectives(a), quad.eval_objectives(b)) ==
            dominates(qshift.eval_objectives(a), qshift.eval_objectives(b)));

  CHECK_THROWS_AS(shift_positive(quad, {}, 1.0), InputError);
}

TEST_CASE("gradcheck") {
  // z1^2 z2 at (2, 3)
  ScalarFunction f(MonomialFunction(2, {{1.0, {2, 1}}}));
  const GradCheckReport r = gradcheck(f, vec({2.0, 3.0}), 1e-5);
  CHECK(r.max_rel_err <= 1e-6);
  CHECK(r.within());

  // central differences are exact for affine functions up to rounding
  ScalarFunction lin(MonomialFunction(2, {{3.0, {1, 0}}, {-2.0, {0, 1}}, {1.0, {0, 0}}}));
  CHECK(gradcheck(lin, vec({0.4, -1.7}), 1e-5).max_abs_err <= 1e-10);

  ScalarFunction con(MonomialFunction::constant(2, 5.0));
  const GradCheckReport rc = gradcheck(con, vec({1.0, 1.0}), 1e-5);
  CHECK(rc.max_abs_err == 0.0);
  CHECK(rc.per_coordinate[0].analytic == 0.0);

  // non-finite evaluations surface as NumericError naming the coordinate
  ScalarFunction bad = ScalarFunction::native(
      1, [](const Vector&) { return std::numeric_limits<double>::infinity(); },
      [](const Vector&) { return Vector::Zero(1); });
  CHECK_THROWS_WITH_AS(gradcheck(bad, vec({0.0}), 1e-5),
                       "gradcheck: non-finite evaluation at coordinate 0", NumericError);
  CHECK_THROWS_AS(gradcheck(f, vec({1.0, 1.0}), 0.0), InputError);
}

TEST_CASE("stochastic problem: zero noise is the deterministic problem") {
  const ECMOProblem geb = get_fixture("gebken_circle").problem;
  StochasticProblem quiet(geb, 0.0, 0.0);
  const Vector z = vec({0.3, 0.8});
  RandomStream rng(99, 0);
  const ProblemEval sampled = quiet.sample(z, 128, 128, rng, 17);
  const ProblemEval exact = eval_all(geb, z);
  CHECK(sampled.F == exact.F);
  CHECK(sampled.JF == exact.JF);
  CHECK(sampled.h == exact.h);
  CHECK(sampled.Jh == exact.Jh);
}

TEST_CASE("stochastic problem: identical seeds give identical sample streams") {
  const ECMOProblem geb = get_fixture("gebken_circle").problem;
  StochasticProblem noisy(geb, 0.2, 0.1);
  const Vector z = vec({0.3, 0.8});
  RandomStream a(123, 4), b(123, 4), c(124, 4);
  const ProblemEval ea = noisy.sample(z, 64, 64, a, 5);
  const ProblemEval eb = noisy.sample(z, 64, 64, b, 5);
  const ProblemEval ec = noisy.sample(z, 64, 64, c, 5);
  CHECK(ea.F == eb.F);
  CHECK(ea.JF == eb.JF);
  CHECK(ea.F != ec.F);

  // batch averaging shrinks the noise like 1/sqrt(B)
  double spread_small = 0.0, spread_big = 0.0;
  for (std::uint64_t n = 0; n < 200; ++n) {
    RandomStream r(7, n);
    spread_small += std::pow(noisy.sample(z, 1, 1, r, 0).F[0] - eval_all(geb, z).F[0], 2);
    spread_big += std::pow(noisy.sample(z, 100, 100, r, 0).F[0] - eval_all(geb, z).F[0], 2);
  }
  CHECK(spread_big < spread_small / 50.0);
}

TEST_CASE("default probes include z0 and stay in the box") {
  const Fixture geb = get_fixture("gebken_circle");
  const std::vector<Vector> probes = default_probes(geb.problem, geb.z0, 100, 3);
  CHECK(probes.size() == 101);
  CHECK(probes[0] == geb.z0);
  for (const Vector& z : probes)
    for (int i = 0; i < z.size(); ++i) {
      CHECK(z[i] >= geb.bounding_box[i][0]);
      CHECK(z[i] <= geb.bounding_box[i][1]);
    }
}
