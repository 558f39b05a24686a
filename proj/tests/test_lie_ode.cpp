#include <doctest.h>

#include <cmath>

#include "catransport/lie_ode.hpp"

using namespace catransport;

namespace {

AlgebraSampler constant_rhs(const GroupModel& m, const Eigen::VectorXd& coeffs,
                            int cells, double dt) {
  AlgebraSampler s;
  s.dt = dt;
  s.values.assign(cells, m.algebra(coeffs));
  return s;
}

Eigen::VectorXd pt2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

/// Synthetic bundle surface over R^2 with constant identity fibers.
SampledSurface synthetic_surface(const GroupModel& fiber_model, int s_cells,
                                 int t_cells) {
  std::vector<SampledPath> rows;
  for (int j = 0; j <= s_cells; ++j) {
    const double s = static_cast<double>(j) / s_cells;
    std::vector<Eigen::VectorXd> pts;
    std::vector<GroupElement> fib;
    for (int i = 0; i <= t_cells; ++i) {
      const double t = static_cast<double>(i) / t_cells;
      pts.push_back(pt2(t + 0.2 * s, s * std::sin(t) + 0.1 * t * t));
      fib.push_back(fiber_model.identity());
    }
    rows.emplace_back(1.0 / t_cells, std::move(pts), std::move(fib), 0);
  }
  return SampledSurface(1.0 / s_cells, std::move(rows), 0);
}

SampledSurface rows_slice(const SampledSurface& s, int lo, int hi) {
  std::vector<SampledPath> rows(s.rows().begin() + lo, s.rows().begin() + hi + 1);
  return SampledSurface(s.ds(), std::move(rows), 0);
}

}  // namespace

TEST_CASE("a vanishing right-hand side keeps the solution at the identity") {
  auto so3 = so3_model();
  AlgebraSampler rhs = constant_rhs(*so3, Eigen::Vector3d(0, 0, 0), 20, 0.05);
  for (const GroupElement& w : solve_left_ode(*so3, rhs))
    CHECK(so3->distance(w, so3->identity()) == 0.0);
}

TEST_CASE("a constant right-hand side telescopes to the closed-form exponential") {
  auto so3 = so3_model();
  Eigen::Vector3d x(0.3, -0.2, 0.5);
  const int cells = 16;
  const double L = 1.25;
  AlgebraSampler rhs = constant_rhs(*so3, x, cells, L / cells);
  GroupElement final = solve_left_ode(*so3, rhs).back();
  GroupElement closed = so3->exp(so3->algebra(Eigen::VectorXd(L * x)));
  CHECK(so3->distance(final, closed) < 1e-12);
}

TEST_CASE("commuting time-dependent coefficients integrate at second order") {
  auto so2 = so2_model();
  auto coeff = [](double t) { return 0.8 * std::sin(2.0 * t) + 0.3; };
  auto final_error = [&](int n) {
    AlgebraSampler rhs;
    rhs.dt = 1.0 / n;
    for (int k = 0; k < n; ++k) {
      const double mid = (k + 0.5) / n;
      rhs.values.push_back(so2->algebra(Eigen::VectorXd::Constant(1, coeff(mid))));
    }
    // quadrature oracle: exp of the exact integral of the coefficient
    const double integral = 0.3 + 0.4 * (1.0 - std::cos(2.0));
    GroupElement exact = so2->exp(so2->algebra(Eigen::VectorXd::Constant(1, integral)));
    return so2->distance(solve_left_ode(*so2, rhs).back(), exact);
  };
  const double e1 = final_error(50), e2 = final_error(100);
  CHECK(e1 / e2 > 4.0 * 0.85);
  CHECK(e1 / e2 < 4.0 * 1.15);
}

TEST_CASE("initial values left-translate the identity solution bitwise") {
  auto so3 = so3_model();
  Rng rng(3);
  AlgebraSampler rhs;
  rhs.dt = 0.04;
  for (int k = 0; k < 25; ++k) rhs.values.push_back(so3->random_algebra(rng));
  GroupElement init = so3->random_element(rng);
  std::vector<GroupElement> from_e = solve_left_ode(*so3, rhs);
  std::vector<GroupElement> from_init = solve_left_ode(*so3, rhs, init);
  for (size_t k = 0; k < from_e.size(); ++k)
    CHECK(so3->distance(from_init[k], so3->multiply(init, from_e[k])) == 0.0);
}

TEST_CASE("splitting a solve at a grid line reproduces it to round-off") {
  auto so3 = so3_model();
  Rng rng(4);
  AlgebraSampler rhs;
  rhs.dt = 0.05;
  for (int k = 0; k < 30; ++k) rhs.values.push_back(so3->random_algebra(rng));
  std::vector<GroupElement> whole = solve_left_ode(*so3, rhs);
  AlgebraSampler first{rhs.dt, {rhs.values.begin(), rhs.values.begin() + 13}};
  AlgebraSampler second{rhs.dt, {rhs.values.begin() + 13, rhs.values.end()}};
  GroupElement joined = so3->multiply(solve_left_ode(*so3, first).back(),
                                      solve_left_ode(*so3, second).back());
  CHECK(so3->distance(whole.back(), joined) < 1e-13);
  // the per-cell factors are bitwise identical
  std::vector<GroupElement> f_whole = ode_factors(*so3, rhs);
  std::vector<GroupElement> f_first = ode_factors(*so3, first);
  for (int k = 0; k < 13; ++k) CHECK(so3->distance(f_whole[k], f_first[k]) == 0.0);
}

TEST_CASE("the surface functional vanishes for a zero form") {
  auto so2 = so2_model();
  SampledSurface f = synthetic_surface(*so2, 10, 12);
  PlaquetteForm zero = [&](const Plaquette&) { return so2->zero_algebra(); };
  CHECK(so2->distance(w_C(*so2, f, zero).value(), so2->identity()) == 0.0);
}

TEST_CASE("surfaces constant in s have identity functional") {
  auto so2 = so2_model();
  SampledSurface f = synthetic_surface(*so2, 10, 12);
  std::vector<SampledPath> rows(11, f.row(0));
  SampledSurface constant(f.ds(), std::move(rows), 0);
  PlaquetteForm area = [&](const Plaquette& p) {
    return so2->algebra(Eigen::VectorXd::Constant(
        1, p.dt_x[0] * p.ds_x[1] - p.dt_x[1] * p.ds_x[0]));
  };
  CHECK(so2->distance(w_C(*so2, constant, area).value(), so2->identity()) == 0.0);
}

TEST_CASE("the surface functional is multiplicative under vertical composition") {
  auto so3 = so3_model();
  SampledSurface f = synthetic_surface(*so3, 12, 10);
  PlaquetteForm form = [&](const Plaquette& p) {
    const double a = p.dt_x[0] * p.ds_x[1] - p.dt_x[1] * p.ds_x[0];
    return so3->algebra(Eigen::Vector3d(0.4 * a, 0.2 * p.x[0] * a, 0.1 * p.x[1] * a));
  };
  SampledSurface lower = rows_slice(f, 0, 5);
  SampledSurface upper = rows_slice(f, 5, 12);
  GroupElement whole = w_C(*so3, f, form).value();
  GroupElement split = so3->multiply(w_C(*so3, lower, form).value(),
                                     w_C(*so3, upper, form).value());
  CHECK(so3->distance(whole, split) < 1e-13);
}

TEST_CASE("degenerate grids are rejected by the surface functional") {
  auto so2 = so2_model();
  SampledSurface thin = synthetic_surface(*so2, 1, 12);
  PlaquetteForm zero = [&](const Plaquette&) { return so2->zero_algebra(); };
  CHECK_THROWS_AS((void)w_C(*so2, thin, zero), GridError);
}

TEST_CASE("the boundary-corrected functional reduces to w_C for trivial w0") {
  auto so3 = so3_model();
  SampledSurface f = synthetic_surface(*so3, 8, 10);
  PlaquetteForm form = [&](const Plaquette& p) {
    const double a = p.dt_x[0] * p.ds_x[1] - p.dt_x[1] * p.ds_x[0];
    return so3->algebra(Eigen::Vector3d(0.5 * a, 0.1 * a, -0.2 * a));
  };
  auto trivial = [&](const SampledPath&) { return so3->identity(); };
  GroupElement a = w_C0(*so3, f, form, trivial);
  GroupElement b = w_C(*so3, f, form).value();
  CHECK(so3->distance(a, b) < 1e-15);
}

TEST_CASE("the boundary-corrected functional is multiplicative") {
  auto so3 = so3_model();
  SampledSurface f = synthetic_surface(*so3, 12, 10);
  PlaquetteForm form = [&](const Plaquette& p) {
    const double a = p.dt_x[0] * p.ds_x[1] - p.dt_x[1] * p.ds_x[0];
    return so3->algebra(Eigen::Vector3d(0.4 * a, 0.2 * p.x[0] * a, 0.1 * p.x[1] * a));
  };
  auto w0 = [&](const SampledPath& row) {
    // path-ordered transport of a 1-form along the row
    GroupElement w = so3->identity();
    for (int i = 0; i < row.cells(); ++i) {
      Eigen::VectorXd dx = row.point(i + 1) - row.point(i);
      Eigen::VectorXd mid = 0.5 * (row.point(i) + row.point(i + 1));
      w = so3->multiply(
          w, so3->exp(so3->algebra(
              Eigen::Vector3d(0.3 * dx[0], 0.2 * mid[0] * dx[1], 0.1 * dx[1]))));
    }
    return w;
  };
  SampledSurface lower = rows_slice(f, 0, 7);
  SampledSurface upper = rows_slice(f, 7, 12);
  GroupElement whole = w_C0(*so3, f, form, w0);
  GroupElement split =
      so3->multiply(w_C0(*so3, lower, form, w0), w_C0(*so3, upper, form, w0));
  CHECK(so3->distance(whole, split) < 1e-13);
  // a surface constant in s gives w0(row) w0(row)^-1 = e
  std::vector<SampledPath> rows(9, f.row(3));
  SampledSurface constant(f.ds(), std::move(rows), 0);
  CHECK(so3->distance(w_C0(*so3, constant, form, w0), so3->identity()) < 1e-13);
}
