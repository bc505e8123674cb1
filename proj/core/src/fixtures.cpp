#include "ecmo/fixtures.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <sstream>

#include "fixture_data.hpp"

namespace ecmo {

namespace {

using Term = MonomialFunction::Term;

MonomialFunction poly(int dim, std::vector<Term> terms) {
  return MonomialFunction(dim, std::move(terms));
}

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<int>(values.size()));
  int i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

ParetoFront front_from_samples(std::vector<FrontEntry> samples) {
  ParetoFront front = pareto_filter(samples);
  for (FrontEntry& e : front.entries) e.run_id = -1;
  return front;
}

Fixture make_gebken_circle() {
  const int k = 2;
  // f1 = (z1-2)^2 + (z2-1)^2, f2 = (z1-2)^2 + (z2+1)^2 on the unit circle.
  ScalarFunction f1 = poly(k, {{1, {2, 0}}, {-4, {1, 0}}, {1, {0, 2}}, {-2, {0, 1}}, {5, {0, 0}}});
  ScalarFunction f2 = poly(k, {{1, {2, 0}}, {-4, {1, 0}}, {1, {0, 2}}, {2, {0, 1}}, {5, {0, 0}}});
  ScalarFunction h = poly(k, {{-1, {2, 0}}, {-1, {0, 2}}, {1, {0, 0}}});
  ECMOProblem problem("gebken_circle", k, {f1, f2}, {h},
                      BoundingBox{{-1.5, 1.5}, {-1.5, 1.5}});
  Fixture fx{"gebken_circle", problem, std::nullopt, vec({0.5, 0.5}),
             *problem.bounding_box(),
             "bi-objective squared distances to (2, 1) and (2, -1) on the unit circle; "
             "the front is the arc between the tangency points (2, +/-1)/sqrt(5)",
             100000};
  ECMOProblem oracle_problem = problem;
  fx.reference_front_fn = [oracle_problem](int density) {
    std::vector<FrontEntry> samples;
    samples.reserve(density);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < density; ++i) {
      const double theta = -pi + 2.0 * pi * i / density;
      FrontEntry e;
      e.z = vec({std::cos(theta), std::sin(theta)});
      e.F = oracle_problem.eval_objectives(e.z);
      e.lambda = Vector::Zero(2);
      samples.push_back(std::move(e));
    }
    return front_from_samples(std::move(samples));
  };
  return fx;
}

Fixture make_quad_affine() {
  const int k = 2;
  // f1 = z1^2 + 4 z2^2, f2 = 4 (z1-2)^2 + (z2-2)^2, h = 0.5 z1 - z2 - 0.1.
  ScalarFunction f1 = poly(k, {{1, {2, 0}}, {4, {0, 2}}});
  ScalarFunction f2 = poly(k, {{4, {2, 0}}, {-16, {1, 0}}, {1, {0, 2}}, {-4, {0, 1}}, {20, {0, 0}}});
  ScalarFunction h = poly(k, {{0.5, {1, 0}}, {-1, {0, 1}}, {-0.1, {0, 0}}});
  ECMOProblem problem("quad_affine", k, {f1, f2}, {h}, BoundingBox{{-5, 5}, {-5, 5}});
  Fixture fx{"quad_affine", problem, std::nullopt, vec({1.4, 0.5}), *problem.bounding_box(),
             "convex quadratics with one affine constraint; LS and WC-Penalty both apply",
             200000};
  ECMOProblem oracle_problem = problem;
  fx.reference_front_fn = [oracle_problem](int density) {
    std::vector<FrontEntry> samples;
    samples.reserve(density);
    for (int i = 0; i <= density; ++i) {
      const double t = -5.0 + 10.0 * i / density;
      FrontEntry e;
      e.z = vec({t, 0.5 * t - 0.1});
      e.F = oracle_problem.eval_objectives(e.z);
      e.lambda = Vector::Zero(2);
      samples.push_back(std::move(e));
    }
    return front_from_samples(std::move(samples));
  };
  return fx;
}

Fixture make_forum_llgc() {
  const int k = 4;  // z = (x, y1, y2, y3)
  ScalarFunction f1 = poly(k, {{1, {0, 2, 0, 0}},
                               {-2, {0, 1, 0, 0}},
                               {1, {0, 0, 0, 0}},
                               {1, {0, 0, 2, 0}},
                               {-2, {1, 0, 1, 0}},
                               {1, {2, 0, 0, 0}},
                               {1, {0, 0, 0, 2}}});
  ScalarFunction f2 = poly(k, {{1, {0, 2, 0, 0}},
                               {-4, {0, 1, 0, 0}},
                               {4, {0, 0, 0, 0}},
                               {1, {0, 0, 2, 0}},
                               {-2, {1, 0, 1, 0}},
                               {1, {2, 0, 0, 0}},
                               {1, {0, 0, 0, 2}}});
  // g = 0.5 (y1-x)^2 + 0.5 (y2-x)^2 + 0.25 y3^4
  ScalarFunction g = poly(k, {{0.5, {0, 2, 0, 0}},
                              {-1, {1, 1, 0, 0}},
                              {1, {2, 0, 0, 0}},
                              {0.5, {0, 0, 2, 0}},
                              {-1, {1, 0, 1, 0}},
                              {0.25, {0, 0, 0, 4}}});
  BoundingBox box{{-1, 3}, {-1, 3}, {-1, 3}, {-1, 1}};
  MTBLProblem mtbl("forum_llgc", 1, 3, {f1, f2}, g, {}, box);
  ECMOProblem reduced = mtbl_to_ecmo(mtbl);
  Fixture fx{"forum_llgc", reduced, mtbl, vec({1.5, 1.5, 1.5, 0.25}), box,
             "bilevel with convex, not strongly convex, lower level; the lower solution is "
             "y = (x, x, 0), so the front is {((x-1)^2, (x-2)^2) : x in [1, 2]}",
             10000};
  ECMOProblem oracle_problem = reduced;
  fx.reference_front_fn = [oracle_problem](int density) {
    std::vector<FrontEntry> samples;
    samples.reserve(density);
    for (int i = 0; i <= density; ++i) {
      const double x = 0.0 + 3.0 * i / density;
      FrontEntry e;
      e.z = vec({x, x, x, 0.0});
      e.F = oracle_problem.eval_objectives(e.z);
      e.lambda = Vector::Zero(2);
      samples.push_back(std::move(e));
    }
    return front_from_samples(std::move(samples));
  };
  return fx;
}

Fixture make_llgc_cubic() {
  const int k = 2;  // z = (x, y)
  ScalarFunction f1 = poly(k, {{1, {0, 1}}});
  ScalarFunction f2 = poly(k, {{1, {0, 1}}, {1, {0, 0}}});
  ScalarFunction g = poly(k, {{1, {1, 1}}, {0.25, {0, 4}}});  // g = x y + y^4 / 4
  BoundingBox box{{-2, 2}, {-2, 2}};
  MTBLProblem mtbl("llgc_cubic", 1, 1, {f1, f2}, g, {}, box);
  ECMOProblem reduced = mtbl_to_ecmo(mtbl);  // h(x, y) = x + y^3
  return Fixture{"llgc_cubic", reduced, mtbl, vec({-1.0, 1.0}), box,
                 "objectives unbounded below; registered for constraint-Jacobian full-rank "
                 "demonstration only, no reference front and no front recovery",
                 0, nullptr};
}

Fixture make_counterexample_1() {
  const int k = 1;
  ScalarFunction f1 = poly(k, {{-0.5, {2}}});
  ScalarFunction f2 = poly(k, {{-1, {1}}});
  // Piecewise constraint: 0 inside [-1, 1], (|z|-1)^2 outside. C^1 but not C^2.
  ScalarFunction h = ScalarFunction::native(
      k,
      [](const Vector& z) {
        const double a = std::abs(z[0]);
        return a <= 1.0 ? 0.0 : (a - 1.0) * (a - 1.0);
      },
      [](const Vector& z) {
        Vector g(1);
        const double a = std::abs(z[0]);
        g[0] = a <= 1.0 ? 0.0 : 2.0 * (a - 1.0) * (z[0] > 0.0 ? 1.0 : -1.0);
        return g;
      });
  ECMOProblem problem("counterexample_1", k, {f1, f2}, {h}, BoundingBox{{-2, 2}});
  return Fixture{"counterexample_1", problem, std::nullopt, vec({1.0}),
                 *problem.bounding_box(),
                 "piecewise constraint, excluded from smoothness property tests; at z = 1 the "
                 "naive stationarity system equals -1 for every (alpha, v)",
                 0, nullptr};
}

Fixture make_counterexample_2() {
  const int k = 3;
  ScalarFunction f1 = poly(k, {{1, {1, 0, 0}}, {1, {0, 1, 0}}});
  ScalarFunction f2 = poly(k, {{1, {1, 0, 0}}, {-1, {0, 1, 0}}});
  ScalarFunction h1 = poly(k, {{1, {2, 0, 0}}, {1, {0, 0, 2}}, {-1, {0, 0, 0}}});
  ScalarFunction h2 = poly(k, {{1, {0, 0, 1}}, {-1, {0, 0, 0}}});
  ECMOProblem problem("counterexample_2", k, {f1, f2}, {h1, h2},
                      BoundingBox{{-2, 2}, {-2, 2}, {-2, 2}});
  return Fixture{"counterexample_2", problem, std::nullopt, vec({0.0, 0.0, 1.0}),
                 *problem.bounding_box(),
                 "feasible set {0} x R x {1}; at z = (0, 0, 1) the first coordinate of the "
                 "naive stationarity system equals 1 for every (alpha, v)",
                 0, nullptr};
}

// Shared data of the toy data-weighting fixture: two training sets with
// conflicting regression targets, two validation criteria. Lower level is
// the softmax(x)-weighted mean least-squares loss.
struct DataWeighting {
  Matrix train_design[2];
  Vector train_target[2];
  Matrix val_design[2];
  Vector val_target[2];

  static std::shared_ptr<const DataWeighting> instance() {
    static const std::shared_ptr<const DataWeighting> data = [] {
      auto d = std::make_shared<DataWeighting>();
      using namespace detail;
      auto fill = [](Matrix& M, const double (*rows)[kModelDim], int n) {
        M.resize(n, kModelDim);
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < kModelDim; ++c) M(r, c) = rows[r][c];
      };
      fill(d->train_design[0], kTrainDesign0, kTrainRows);
      fill(d->train_design[1], kTrainDesign1, kTrainRows);
      fill(d->val_design[0], kValDesign0, kValRows);
      fill(d->val_design[1], kValDesign1, kValRows);
      auto fillv = [](Vector& v, const double* data, int n) {
        v.resize(n);
        for (int i = 0; i < n; ++i) v[i] = data[i];
      };
      fillv(d->train_target[0], kTrainTarget0, kTrainRows);
      fillv(d->train_target[1], kTrainTarget1, kTrainRows);
      fillv(d->val_target[0], kValTarget0, kValRows);
      fillv(d->val_target[1], kValTarget1, kValRows);
      return d;
    }();
    return data;
  }

  // softmax over the two dataset weights x = (z0, z1)
  static Vector softmax(const Vector& x) {
    const double m = x.maxCoeff();
    const Vector e = (x.array() - m).exp().matrix();
    return e / e.sum();
  }

  Vector residual(int n, const Vector& y) const { return train_design[n] * y - train_target[n]; }

  // mean squared loss of training set n and its y-gradient
  double train_loss(int n, const Vector& y) const {
    return 0.5 * residual(n, y).squaredNorm() / detail::kTrainRows;
  }
  Vector train_loss_grad_y(int n, const Vector& y) const {
    return train_design[n].transpose() * residual(n, y) / detail::kTrainRows;
  }
};

Fixture make_toy_data_weighting() {
  const int p = detail::kNumTrainSets;   // dataset weights
  const int q = detail::kModelDim;       // linear model coefficients
  const int k = p + q;
  auto data = DataWeighting::instance();

  auto split = [p, q](const Vector& z) {
    return std::pair<Vector, Vector>(z.head(p), z.tail(q));
  };

  // Upper objectives: per-criterion mean validation loss (y-only).
  std::vector<ScalarFunction> upper;
  for (int m = 0; m < detail::kNumValSets; ++m) {
    upper.push_back(ScalarFunction::native(
        k,
        [data, split, m](const Vector& z) {
          const auto [x, y] = split(z);
          const Vector r = data->val_design[m] * y - data->val_target[m];
          return 0.5 * r.squaredNorm() / detail::kValRows;
        },
        [data, split, m, p, q](const Vector& z) {
          const auto [x, y] = split(z);
          const Vector r = data->val_design[m] * y - data->val_target[m];
          Vector g = Vector::Zero(p + q);
          g.tail(q) = data->val_design[m].transpose() * r / detail::kValRows;
          return g;
        }));
  }

  // Lower objective g(x, y) = sum_n softmax(x)_n * mean training loss_n(y).
  ScalarFunction g = ScalarFunction::native(
      k,
      [data, split](const Vector& z) {
        const auto [x, y] = split(z);
        const Vector s = DataWeighting::softmax(x);
        double total = 0.0;
        for (int n = 0; n < detail::kNumTrainSets; ++n) total += s[n] * data->train_loss(n, y);
        return total;
      },
      [data, split, p, q](const Vector& z) {
        const auto [x, y] = split(z);
        const Vector s = DataWeighting::softmax(x);
        Vector g = Vector::Zero(p + q);
        Vector losses(detail::kNumTrainSets);
        for (int n = 0; n < detail::kNumTrainSets; ++n) {
          losses[n] = data->train_loss(n, y);
          g.tail(q) += s[n] * data->train_loss_grad_y(n, y);
        }
        // d softmax_n / d x_j = s_n (delta_nj - s_j)
        for (int j = 0; j < p; ++j)
          for (int n = 0; n < detail::kNumTrainSets; ++n)
            g[j] += s[n] * ((n == j ? 1.0 : 0.0) - s[j]) * losses[n];
        return g;
      });

  // Constraints h_i = dg/dy_i with analytic gradients over both x and y.
  std::vector<ScalarFunction> partials;
  for (int i = 0; i < q; ++i) {
    partials.push_back(ScalarFunction::native(
        k,
        [data, split, i](const Vector& z) {
          const auto [x, y] = split(z);
          const Vector s = DataWeighting::softmax(x);
          double value = 0.0;
          for (int n = 0; n < detail::kNumTrainSets; ++n)
            value += s[n] * data->train_loss_grad_y(n, y)[i];
          return value;
        },
        [data, split, i, p, q](const Vector& z) {
          const auto [x, y] = split(z);
          const Vector s = DataWeighting::softmax(x);
          Vector grad = Vector::Zero(p + q);
          Vector partial_n(detail::kNumTrainSets);
          for (int n = 0; n < detail::kNumTrainSets; ++n) {
            partial_n[n] = data->train_loss_grad_y(n, y)[i];
            grad.tail(q) += s[n] *
                            (data->train_design[n].transpose() * data->train_design[n])
                                .row(i)
                                .transpose() /
                            detail::kTrainRows;
          }
          for (int j = 0; j < p; ++j)
            for (int n = 0; n < detail::kNumTrainSets; ++n)
              grad[j] += s[n] * ((n == j ? 1.0 : 0.0) - s[j]) * partial_n[n];
          return grad;
        }));
  }

  BoundingBox box{{-2, 2}, {-2, 2}, {-2, 2}, {-2, 2}, {-2, 2}};
  MTBLProblem mtbl("toy_data_weighting", p, q, upper, g, partials, box);
  ECMOProblem reduced = mtbl_to_ecmo(mtbl);
  Fixture fx{"toy_data_weighting", reduced, mtbl, Vector::Zero(k), box,
             "invented desk-scale data weighting: softmax(x)-weighted mean least-squares "
             "training losses, two conflicting validation criteria; data embedded as literals "
             "recorded from mt19937(20240817)",
             4000};
  // The softmax depends on x only through x1 - x2, so the feasible manifold
  // is one-dimensional: sweep the log-odds d, solve the weighted normal
  // equations for y, evaluate the validation losses.
  fx.reference_front_fn = [data](int density) {
    std::vector<FrontEntry> samples;
    samples.reserve(density + 1);
    for (int i = 0; i <= density; ++i) {
      const double d = -8.0 + 16.0 * i / density;
      Vector x(2);
      x << 0.5 * d, -0.5 * d;
      const Vector s = DataWeighting::softmax(x);
      Matrix gram = Matrix::Zero(detail::kModelDim, detail::kModelDim);
      Vector rhs = Vector::Zero(detail::kModelDim);
      for (int n = 0; n < detail::kNumTrainSets; ++n) {
        gram += s[n] * (data->train_design[n].transpose() * data->train_design[n]);
        rhs += s[n] * (data->train_design[n].transpose() * data->train_target[n]);
      }
      const Vector y = gram.llt().solve(rhs);
      FrontEntry e;
      e.z = Vector(5);
      e.z << x[0], x[1], y[0], y[1], y[2];
      e.F = Vector(2);
      for (int m = 0; m < detail::kNumValSets; ++m) {
        const Vector r = data->val_design[m] * y - data->val_target[m];
        e.F[m] = 0.5 * r.squaredNorm() / detail::kValRows;
      }
      e.lambda = Vector::Zero(2);
      samples.push_back(std::move(e));
    }
    return front_from_samples(std::move(samples));
  };
  return fx;
}

Fixture make_unbounded_guard() {
  const int k = 1;
  ScalarFunction f1 = poly(k, {{1, {4}}});
  ScalarFunction f2 = poly(k, {{1, {4}}, {-4, {3}}, {6, {2}}, {-4, {1}}, {1, {0}}});
  ECMOProblem problem("unbounded_guard", k, {f1, f2}, {}, BoundingBox{{-2, 2}});
  Fixture fx{"unbounded_guard", problem, std::nullopt, vec({0.3}), *problem.bounding_box(),
             "unconstrained quartics z^4 and (z-1)^4; overflows quickly under an oversized "
             "step, used to exercise divergence handling",
             10000};
  ECMOProblem oracle_problem = problem;
  fx.reference_front_fn = [oracle_problem](int density) {
    std::vector<FrontEntry> samples;
    samples.reserve(density + 1);
    for (int i = 0; i <= density; ++i) {
      const double t = -2.0 + 4.0 * i / density;
      FrontEntry e;
      e.z = vec({t});
      e.F = oracle_problem.eval_objectives(e.z);
      e.lambda = Vector::Zero(2);
      samples.push_back(std::move(e));
    }
    return front_from_samples(std::move(samples));
  };
  return fx;
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"gebken_circle",    "quad_affine",      "forum_llgc",      "llgc_cubic",
          "counterexample_1", "counterexample_2", "toy_data_weighting", "unbounded_guard"};
}

Fixture get_fixture(const std::string& name) {
  if (name == "gebken_circle") return make_gebken_circle();
  if (name == "quad_affine") return make_quad_affine();
  if (name == "forum_llgc") return make_forum_llgc();
  if (name == "llgc_cubic") return make_llgc_cubic();
  if (name == "counterexample_1") return make_counterexample_1();
  if (name == "counterexample_2") return make_counterexample_2();
  if (name == "toy_data_weighting") return make_toy_data_weighting();
  if (name == "unbounded_guard") return make_unbounded_guard();
  std::ostringstream msg;
  msg << "unknown fixture '" << name << "'; available:";
  for (const std::string& n : fixture_names()) msg << " " << n;
  throw InputError(msg.str());
}

ParetoFront reference_front(const Fixture& fixture, int grid_density) {
  if (!fixture.has_reference_front()) throw CapabilityError("reference front unavailable");
  const int density = grid_density > 0 ? grid_density : fixture.default_grid_density;
  return fixture.reference_front_fn(density);
}

}  // namespace ecmo
