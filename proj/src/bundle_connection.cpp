#include "catransport/bundle_connection.hpp"

#include <algorithm>
#include <cmath>

namespace catransport {

namespace {

const MatrixGroupModel& as_matrix(const GroupModel& m) {
  return static_cast<const MatrixGroupModel&>(m);
}

Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

/// Abar-vertical coordinate of a tangent vector (vx, vg) at (x, g).
AlgebraElement vertical_coordinate(const Scenario& sc, const Eigen::VectorXd& x,
                                   const GroupElement& g, const Eigen::VectorXd& vx,
                                   const Eigen::MatrixXd& vg) {
  const auto& G = as_matrix(sc.G());
  AlgebraElement base = twist_ad_inv(G, g.matrix(), sc.abar.eval(x, vx));
  AlgebraElement mc = G.project(G.inverse(g).matrix() * vg);
  return base + mc;
}

}  // namespace

AlgebraElement twist_ad_inv(const GroupModel& G, const Eigen::MatrixXd& g,
                            const AlgebraElement& x) {
  GroupElement ge(&G, g);
  return G.Ad(G.inverse(ge), x);
}

AlgebraElement twist_alpha_inv(const CrossedModule& cm, const Eigen::MatrixXd& g,
                               const AlgebraElement& z) {
  GroupElement ge(cm.G.get(), g);
  return cm.alpha_alg(cm.G->inverse(ge), z);
}

AlgebraElement twist_k_inv(const Scenario& sc, const Eigen::MatrixXd& g,
                           const AlgebraElement& z) {
  GroupElement ge(sc.cm.G.get(), g);
  GroupElement emb = sc.dbl->object_group.embed_g(ge);
  return sc.dbl->cm2.alpha_alg(sc.K().inverse(emb), z);
}

SampledPath horizontal_lift_path(const Scenario& sc, const SampledPath& gamma,
                                 const BundlePoint& u0, double tol) {
  const GroupModel& G = sc.G();
  const double gap = (u0.x - gamma.point(0)).cwiseAbs().maxCoeff();
  if (gap > tol)
    throw FiberError("initial bundle point sits over the wrong base point (distance " +
                     std::to_string(gap) + ")");
  std::vector<GroupElement> fiber;
  fiber.reserve(gamma.samples());
  GroupElement factor_product = G.identity();
  fiber.push_back(G.multiply(factor_product, u0.g));
  for (int k = 0; k < gamma.cells(); ++k) {
    const Eigen::VectorXd mid = 0.5 * (gamma.point(k) + gamma.point(k + 1));
    const Eigen::VectorXd dx = gamma.point(k + 1) - gamma.point(k);
    factor_product = G.multiply(G.exp(sc.abar.eval(mid, dx) * -1.0), factor_product);
    fiber.push_back(G.multiply(factor_product, u0.g));
  }
  return SampledPath(gamma.dt(), gamma.points(), std::move(fiber), gamma.margin());
}

double horizontality_residual(const Scenario& sc, const SampledPath& lift) {
  if (!lift.has_fiber()) throw FiberError("horizontality requires a bundle path");
  const GroupModel& G = sc.G();
  double r = 0;
  for (int k = 0; k < lift.cells(); ++k) {
    const Eigen::VectorXd mid = 0.5 * (lift.point(k) + lift.point(k + 1));
    const Eigen::VectorXd dx = lift.point(k + 1) - lift.point(k);
    GroupElement predicted =
        G.multiply(G.exp(sc.abar.eval(mid, dx) * -1.0), lift.fiber(k));
    r = std::max(r, G.distance(lift.fiber(k + 1), predicted) / lift.dt());
  }
  return r;
}

AlgebraElement curvature(const GroupModel& model, const OneForm& form,
                         const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                         const Eigen::VectorXd& w, double fd_step) {
  AlgebraElement davw = form.d
      ? form.d(x, v, w)
      : (form.eval(x + fd_step * v, w) - form.eval(x - fd_step * v, w)) * (0.5 / fd_step) -
        (form.eval(x + fd_step * w, v) - form.eval(x - fd_step * w, v)) * (0.5 / fd_step);
  return davw + model.bracket(form.eval(x, v), form.eval(x, w));
}

VariationField tangency_field(const Scenario& sc, const SampledPath& lift,
                              const std::vector<Eigen::VectorXd>& base_field,
                              const AlgebraElement& init_vertical) {
  if (static_cast<int>(base_field.size()) != lift.samples())
    throw GridError("field length differs from path length");
  const GroupModel& G = sc.G();
  VariationField out;
  out.base_variation = base_field;
  out.vertical_part.reserve(lift.samples());
  out.vertical_part.push_back(init_vertical);
  for (int k = 0; k < lift.cells(); ++k) {
    const Eigen::VectorXd mid = 0.5 * (lift.point(k) + lift.point(k + 1));
    const Eigen::VectorXd dx = lift.point(k + 1) - lift.point(k);
    const Eigen::VectorXd vbar = 0.5 * (base_field[k] + base_field[k + 1]);
    const Eigen::MatrixXd gbar = 0.5 * (lift.fiber(k).matrix() + lift.fiber(k + 1).matrix());
    AlgebraElement contrib =
        twist_ad_inv(G, gbar, curvature(G, sc.abar, mid, dx, vbar));
    out.vertical_part.push_back(out.vertical_part.back() + contrib);
  }
  return out;
}

VariationField variation_field(const Scenario& sc, const SampledSurface& lift,
                               int s_index) {
  const int M = lift.s_cells();
  if (s_index < 0 || s_index > M) throw GridError("row index out of range");
  const double ds = lift.ds();
  const SampledPath& row = lift.row(s_index);
  std::vector<Eigen::VectorXd> v(row.samples());
  std::vector<Eigen::MatrixXd> vg(row.samples());
  const bool one_sided = (s_index == 0 || s_index == M);
  const int lo = one_sided ? (s_index == 0 ? 0 : M - 1) : s_index - 1;
  const int hi = one_sided ? (s_index == 0 ? 1 : M) : s_index + 1;
  const double denom = (hi - lo) * ds;
  for (int i = 0; i < row.samples(); ++i) {
    v[i] = (lift.row(hi).point(i) - lift.row(lo).point(i)) / denom;
    vg[i] = (lift.row(hi).fiber(i).matrix() - lift.row(lo).fiber(i).matrix()) / denom;
  }
  AlgebraElement seed = vertical_coordinate(sc, row.point(0), row.fiber(0), v[0], vg[0]);
  VariationField out = tangency_field(sc, row, v, seed);
  out.one_sided = one_sided;
  return out;
}

double tangency_residual(const Scenario& sc, const SampledPath& lift,
                         const VariationField& v) {
  if (static_cast<int>(v.vertical_part.size()) != lift.samples())
    throw GridError("field length differs from path length");
  const GroupModel& G = sc.G();
  double r = 0;
  for (int i = 1; i < lift.cells(); ++i) {
    AlgebraElement dvert =
        (v.vertical_part[i + 1] - v.vertical_part[i - 1]) * (0.5 / lift.dt());
    Eigen::VectorXd gamma_dot = (lift.point(i + 1) - lift.point(i - 1)) / (2 * lift.dt());
    AlgebraElement f = twist_ad_inv(
        G, lift.fiber(i).matrix(),
        curvature(G, sc.abar, lift.point(i), gamma_dot, v.base_variation[i]));
    r = std::max(r, (dvert - f).norm());
  }
  return r;
}

AlgebraElement eval_omega_AB(const Scenario& sc, const SampledPath& lift,
                             const VariationField& v) {
  const GroupModel& G = sc.G();
  const GroupModel& H = sc.H();
  // point evaluation of A on the full initial vector
  AlgebraElement a0 = sc.a.eval(lift.point(0), v.base_variation[0]);
  AlgebraElement abar0 = sc.abar.eval(lift.point(0), v.base_variation[0]);
  AlgebraElement term1 =
      twist_ad_inv(G, lift.fiber(0).matrix(), a0 - abar0) + v.vertical_part[0];
  // first-order Chen integral of B along the lift
  AlgebraElement chen = H.zero_algebra();
  for (int k = 0; k < lift.cells(); ++k) {
    const Eigen::VectorXd mid = 0.5 * (lift.point(k) + lift.point(k + 1));
    const Eigen::VectorXd dx = lift.point(k + 1) - lift.point(k);
    const Eigen::VectorXd vbar = 0.5 * (v.base_variation[k] + v.base_variation[k + 1]);
    const Eigen::MatrixXd gbar = 0.5 * (lift.fiber(k).matrix() + lift.fiber(k + 1).matrix());
    chen = chen + twist_alpha_inv(sc.cm, gbar, sc.b.eval(mid, dx, vbar));
  }
  return term1 + sc.cm.tau_alg(chen);
}

VariationField reparametrize_field(const VariationField& v, const SampledPath& lift,
                                   const std::vector<double>& phi) {
  VariationField out;
  out.one_sided = v.one_sided;
  out.base_variation.reserve(phi.size());
  out.vertical_part.reserve(phi.size());
  for (double t : phi) {
    double u = std::clamp(t / lift.dt(), 0.0, static_cast<double>(lift.cells()));
    if (std::abs(u - std::round(u)) < 1e-9) u = std::round(u);
    const int i = std::min(static_cast<int>(u), lift.cells() - 1);
    const double w = u - i;
    if (w == 0.0) {
      out.base_variation.push_back(v.base_variation[i]);
      out.vertical_part.push_back(v.vertical_part[i]);
    } else {
      out.base_variation.push_back((1.0 - w) * v.base_variation[i] +
                                   w * v.base_variation[i + 1]);
      out.vertical_part.push_back(v.vertical_part[i] * (1.0 - w) +
                                  v.vertical_part[i + 1] * w);
    }
  }
  return out;
}

double check_reparam_invariance(const Scenario& sc, const SampledPath& lift,
                                const VariationField& v, const std::vector<double>& phi) {
  SampledPath lift_phi = reparametrize(lift, phi);
  VariationField v_phi = reparametrize_field(v, lift, phi);
  AlgebraElement om = eval_omega_AB(sc, lift, v);
  AlgebraElement om_phi = eval_omega_AB(sc, lift_phi, v_phi);
  return (om - om_phi).norm();
}

BacktrackInvarianceReport check_backtrack_invariance(
    const Scenario& sc, const SampledPath& gamma, const BacktrackWindow& w,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& psi,
    const AlgebraElement& init_vertical) {
  BacktrackInvarianceReport rep;
  BundlePoint u0{gamma.point(0), sc.G().identity()};
  SampledPath lift = horizontal_lift_path(sc, gamma, u0);
  std::vector<Eigen::VectorXd> field(gamma.samples());
  for (int i = 0; i < gamma.samples(); ++i) field[i] = psi(gamma.point(i));
  VariationField vf = tangency_field(sc, lift, field, init_vertical);

  SampledPath gamma0 = erase_backtrack(gamma, w);
  SampledPath lift_of_erased = horizontal_lift_path(sc, gamma0, u0);
  SampledPath erased_lift = erase_backtrack(lift, w);
  rep.lift_residual = lift_of_erased.distance(erased_lift);

  VariationField vf0;
  vf0.one_sided = vf.one_sided;
  const int lo = w.start, hi = w.start + 2 * w.half_cells;
  for (int i = 0; i < lift.samples(); ++i) {
    if (i > lo && i <= hi) continue;
    vf0.base_variation.push_back(vf.base_variation[i]);
    vf0.vertical_part.push_back(vf.vertical_part[i]);
  }
  AlgebraElement om = eval_omega_AB(sc, lift, vf);
  AlgebraElement om0 = eval_omega_AB(sc, erased_lift, vf0);
  rep.omega_residual = (om - om0).norm();
  return rep;
}

namespace {

/// Chen integral of B between two adjacent lifted rows (plaquette midpoint
/// rule; the differences carry dt and ds).
AlgebraElement row_pair_chen(const Scenario& sc, const SampledPath& a,
                             const SampledPath& b) {
  AlgebraElement z = sc.H().zero_algebra();
  for (int i = 0; i < a.cells(); ++i) {
    const Eigen::VectorXd x =
        0.25 * (a.point(i) + a.point(i + 1) + b.point(i) + b.point(i + 1));
    const Eigen::VectorXd dt_x =
        0.5 * ((a.point(i + 1) - a.point(i)) + (b.point(i + 1) - b.point(i)));
    const Eigen::VectorXd ds_x =
        0.5 * ((b.point(i) - a.point(i)) + (b.point(i + 1) - a.point(i + 1)));
    const Eigen::MatrixXd g = 0.25 * (a.fiber(i).matrix() + a.fiber(i + 1).matrix() +
                                      b.fiber(i).matrix() + b.fiber(i + 1).matrix());
    z = z + twist_alpha_inv(sc.cm, g, sc.b.eval(x, dt_x, ds_x));
  }
  return z;
}

}  // namespace

SampledSurface surface_horizontal_lift(const Scenario& sc, const SampledSurface& base,
                                       const SampledPath& gamma0_lift, double tol) {
  const GroupModel& G = sc.G();
  if (base.has_fiber()) throw GridError("expected a base surface");
  if (gamma0_lift.projected().distance(base.source_row()) > 1e-9)
    throw FiberError("initial lift does not project to the first row");
  if (horizontality_residual(sc, gamma0_lift) > tol)
    throw FiberError("initial row is not Abar-horizontal");

  std::vector<SampledPath> rows;
  rows.reserve(base.s_cells() + 1);
  GroupElement q = gamma0_lift.fiber(0);
  rows.push_back(horizontal_lift_path(
      sc, base.source_row(), BundlePoint{base.source_row().point(0), q}));
  for (int j = 0; j < base.s_cells(); ++j) {
    const SampledPath& next_base = base.row(j + 1);
    const Eigen::VectorXd x0a = base.row(j).point(0);
    const Eigen::VectorXd x0b = next_base.point(0);
    GroupElement u_factor =
        G.exp(sc.abar.eval(0.5 * (x0a + x0b), x0b - x0a) * -1.0);
    GroupElement p = G.multiply(u_factor, q);
    // predictor row ignores the Chen term, one corrector round restores
    // second order without breaking the per-cell recursion
    SampledPath row_pred =
        horizontal_lift_path(sc, next_base, BundlePoint{x0b, p});
    AlgebraElement z0 = row_pair_chen(sc, rows.back(), row_pred);
    GroupElement q1 = G.multiply(p, G.exp(sc.cm.tau_alg(z0) * -1.0));
    SampledPath row_corr =
        horizontal_lift_path(sc, next_base, BundlePoint{x0b, q1});
    AlgebraElement z1 = row_pair_chen(sc, rows.back(), row_corr);
    q = G.multiply(p, G.exp(sc.cm.tau_alg(z1) * -1.0));
    rows.push_back(horizontal_lift_path(sc, next_base, BundlePoint{x0b, q}));
  }
  return SampledSurface(base.ds(), std::move(rows), base.margin_s());
}

double surface_omega_residual(const Scenario& sc, const SampledSurface& lift) {
  double r = 0;
  for (int j = 1; j < lift.s_cells(); ++j) {
    VariationField v = variation_field(sc, lift, j);
    r = std::max(r, eval_omega_AB(sc, lift.row(j), v).norm());
  }
  return r;
}

ThinHomotopyReport check_thin_homotopy(const Scenario& sc, const SampledPath& gamma,
                                       const std::function<double(double, double)>& phi2,
                                       int s_cells) {
  const GroupModel& G = sc.G();
  const int N = gamma.cells();
  const int M = s_cells;
  for (int j = 0; j <= M; ++j) {
    const double u = static_cast<double>(j) / M;
    if (std::abs(phi2(u, 0.0)) > 1e-12 || std::abs(phi2(u, 1.0) - 1.0) > 1e-12)
      throw Error("thin-homotopy family must keep both endpoints fixed");
  }
  std::vector<SampledPath> rows;
  rows.reserve(M + 1);
  for (int j = 0; j <= M; ++j) {
    const double u = static_cast<double>(j) / M;
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(N + 1);
    for (int i = 0; i <= N; ++i) {
      const double v = static_cast<double>(i) / N;
      pts.push_back(gamma.eval(phi2(u, v) * gamma.duration()));
    }
    rows.emplace_back(gamma.dt(), std::move(pts), gamma.margin());
  }
  SampledSurface base(1.0 / M, std::move(rows), 0);

  BundlePoint u0{gamma.point(0), G.identity()};
  SampledPath lift0 = horizontal_lift_path(sc, gamma, u0);
  SampledSurface lifted = surface_horizontal_lift(sc, base, lift0);

  ThinHomotopyReport rep;
  for (int j = 0; j <= M; ++j) {
    rep.initial_drift = std::max(
        rep.initial_drift,
        std::max((lifted.row(j).point(0) - lifted.row(0).point(0)).cwiseAbs().maxCoeff(),
                 G.distance(lifted.row(j).fiber(0), lifted.row(0).fiber(0))));
    SampledPath fresh = horizontal_lift_path(
        sc, base.row(j), BundlePoint{base.row(j).point(0), lift0.fiber(0)});
    rep.row_residual = std::max(rep.row_residual, lifted.row(j).distance(fresh));
  }
  // Lifted partials as (projection, Abar-vertical coordinate) vectors. The
  // u-direction vertical part comes from the tangency integral; the rows
  // are Abar-horizontal by construction so the v-direction vertical part
  // vanishes (report (iii) covers that independently).
  const double dv = gamma.dt();
  const int dim = gamma.base_dim() + G.algebra_dim();
  for (int j = 1; j < M; ++j) {
    VariationField vu = variation_field(sc, lifted, j);
    const SampledPath& row = lifted.row(j);
    for (int i = 1; i < N; ++i) {
      Eigen::VectorXd pu(dim), pv(dim);
      Eigen::VectorXd dv_x = (row.point(i + 1) - row.point(i - 1)) / (2 * dv);
      pu << vu.base_variation[i], vu.vertical_part[i].coeffs();
      pv << dv_x, Eigen::VectorXd::Zero(G.algebra_dim());
      for (int pidx = 0; pidx < dim; ++pidx)
        for (int qidx = pidx + 1; qidx < dim; ++qidx)
          rep.max_minor = std::max(
              rep.max_minor, std::abs(pu[pidx] * pv[qidx] - pu[qidx] * pv[pidx]));
    }
  }
  return rep;
}

ConnectionPropertiesReport check_connection_properties(const Scenario& sc,
                                                       const SampledPath& lift,
                                                       const VariationField& v,
                                                       int samples, std::uint64_t seed) {
  const GroupModel& G = sc.G();
  Rng rng(seed);
  ConnectionPropertiesReport rep;
  AlgebraElement om = eval_omega_AB(sc, lift, v);
  for (int n = 0; n < samples; ++n) {
    GroupElement g = G.random_element(rng);
    SampledPath lift_g = lift.right_translated(g);
    VariationField vg;
    vg.one_sided = v.one_sided;
    vg.base_variation = v.base_variation;
    vg.vertical_part.reserve(v.vertical_part.size());
    GroupElement ginv = G.inverse(g);
    for (const auto& z : v.vertical_part) vg.vertical_part.push_back(G.Ad(ginv, z));
    AlgebraElement lhs = eval_omega_AB(sc, lift_g, vg);
    AlgebraElement rhs = G.Ad(ginv, om);
    rep.equivariance = std::max(rep.equivariance, (lhs - rhs).norm());

    AlgebraElement y = G.random_algebra(rng);
    VariationField vert;
    vert.base_variation.assign(lift.samples(),
                               Eigen::VectorXd::Zero(lift.base_dim()));
    vert.vertical_part.assign(lift.samples(), y);
    AlgebraElement omy = eval_omega_AB(sc, lift, vert);
    rep.vertical = std::max(rep.vertical, (omy - y).norm());
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Scenario catalog

namespace {

OneForm zero_one_form(const GroupModel* m) {
  OneForm f;
  f.eval = [m](const Eigen::VectorXd&, const Eigen::VectorXd&) { return m->zero_algebra(); };
  f.d = [m](const Eigen::VectorXd&, const Eigen::VectorXd&, const Eigen::VectorXd&) {
    return m->zero_algebra();
  };
  return f;
}

TwoForm zero_two_form(const GroupModel* m) {
  TwoForm f;
  f.eval = [m](const Eigen::VectorXd&, const Eigen::VectorXd&, const Eigen::VectorXd&) {
    return m->zero_algebra();
  };
  return f;
}

Scenario make_flat() {
  Scenario sc;
  sc.name = "flat";
  sc.cm = conjugation_module(so2_model());
  sc.bundle = TrivialBundle{2, sc.cm.G};
  sc.dbl = std::make_shared<DoubleModule>(double_module(sc.cm));
  const GroupModel* g = sc.cm.G.get();
  const GroupModel* h = sc.cm.H.get();
  const GroupModel* k = sc.dbl->object_group.model.get();
  sc.a = zero_one_form(g);
  sc.abar = zero_one_form(g);
  sc.b = zero_two_form(h);
  sc.c = zero_one_form(h);
  sc.phi = [h](const Eigen::VectorXd&) { return h->identity(); };
  sc.c1 = zero_one_form(k);
  sc.c2 = zero_two_form(k);
  return sc;
}

Scenario make_so2_area() {
  Scenario sc = make_flat();
  sc.name = "so2_area";
  const GroupModel* h = sc.cm.H.get();
  sc.b.eval = [h](const Eigen::VectorXd&, const Eigen::VectorXd& v,
                  const Eigen::VectorXd& w) {
    Eigen::VectorXd c(1);
    c << 0.8 * (v[0] * w[1] - v[1] * w[0]);
    return h->algebra(c);
  };
  sc.c.eval = [h](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    Eigen::VectorXd c(1);
    c << 0.3 * x[1] * v[0] + 0.2 * x[0] * v[1];
    return h->algebra(c);
  };
  sc.c.d = nullptr;
  sc.phi = [h](const Eigen::VectorXd& x) {
    Eigen::VectorXd c(1);
    c << 0.4 * x[0] + 0.3 * x[1];
    return h->exp(h->algebra(c));
  };
  return sc;
}

Scenario make_so2_assoc() {
  Scenario sc = make_so2_area();
  sc.name = "so2_assoc";
  const GroupModel* g = sc.cm.G.get();
  sc.abar.eval = [g](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    Eigen::VectorXd c(1);
    c << 0.5 * x[1] * v[0] - 0.4 * x[0] * v[1];
    return g->algebra(c);
  };
  sc.abar.d = [g](const Eigen::VectorXd&, const Eigen::VectorXd& v,
                  const Eigen::VectorXd& w) {
    Eigen::VectorXd c(1);
    c << -0.9 * (v[0] * w[1] - v[1] * w[0]);
    return g->algebra(c);
  };
  sc.a.eval = [g](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    Eigen::VectorXd c(1);
    c << 0.3 * x[0] * v[0] + 0.2 * x[1] * v[1];
    return g->algebra(c);
  };
  sc.a.d = [g](const Eigen::VectorXd&, const Eigen::VectorXd&, const Eigen::VectorXd&) {
    return g->zero_algebra();
  };
  sc.b.eval = [gh = sc.cm.H.get()](const Eigen::VectorXd&, const Eigen::VectorXd& v,
                                   const Eigen::VectorXd& w) {
    Eigen::VectorXd c(1);
    c << 0.3 * (v[0] * w[1] - v[1] * w[0]);
    return gh->algebra(c);
  };
  return sc;
}

Scenario make_so3_conj() {
  Scenario sc;
  sc.name = "so3_conj";
  sc.cm = conjugation_module(so3_model());
  sc.bundle = TrivialBundle{3, sc.cm.G};
  sc.dbl = std::make_shared<DoubleModule>(double_module(sc.cm));
  const GroupModel* g = sc.cm.G.get();
  const GroupModel* h = sc.cm.H.get();
  const GroupModel* k = sc.dbl->object_group.model.get();

  sc.abar.eval = [g](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    return g->algebra(vec3(0.3 * x[1] * v[0], 0.25 * x[2] * v[1], 0.2 * x[0] * v[2]));
  };
  sc.abar.d = [g](const Eigen::VectorXd&, const Eigen::VectorXd& v,
                  const Eigen::VectorXd& w) {
    return g->algebra(vec3(0.3 * (v[1] * w[0] - v[0] * w[1]),
                           0.25 * (v[2] * w[1] - v[1] * w[2]),
                           0.2 * (v[0] * w[2] - v[2] * w[0])));
  };
  sc.a.eval = [g](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    return g->algebra(vec3(0.2 * x[2] * v[1], 0.15 * x[1] * v[2], 0.1 * x[0] * v[0]));
  };
  sc.a.d = [g](const Eigen::VectorXd&, const Eigen::VectorXd& v,
               const Eigen::VectorXd& w) {
    return g->algebra(vec3(0.2 * (v[2] * w[1] - v[1] * w[2]),
                           0.15 * (v[1] * w[2] - v[2] * w[1]), 0.0));
  };
  sc.b.eval = [h](const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                  const Eigen::VectorXd& w) {
    return h->algebra(vec3(0.2 * (v[0] * w[1] - v[1] * w[0]),
                           0.15 * x[0] * (v[1] * w[2] - v[2] * w[1]),
                           0.1 * x[1] * (v[2] * w[0] - v[0] * w[2])));
  };
  sc.c.eval = [h](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    return h->algebra(vec3(0.2 * x[0] * v[2], 0.25 * x[1] * v[0], 0.15 * x[2] * v[1]));
  };
  sc.phi = [h](const Eigen::VectorXd& x) {
    return h->exp(h->algebra(vec3(0.3 * x[0], 0.2 * x[1] - 0.1 * x[2], 0.25 * x[2])));
  };
  sc.c1.eval = [k](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    Eigen::VectorXd c(6);
    c << 0.2 * x[1] * v[0], 0.1 * x[2] * v[1], 0.15 * x[0] * v[2], 0.12 * x[2] * v[0],
        0.08 * x[0] * v[1], 0.1 * x[1] * v[2];
    return k->algebra(c);
  };
  sc.c2.eval = [k](const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                   const Eigen::VectorXd& w) {
    const double p01 = v[0] * w[1] - v[1] * w[0];
    const double p12 = v[1] * w[2] - v[2] * w[1];
    const double p20 = v[2] * w[0] - v[0] * w[2];
    Eigen::VectorXd c(6);
    c << 0.15 * p01, 0.1 * x[0] * p12, 0.08 * p20, 0.12 * x[1] * p01, 0.1 * p12,
        0.06 * x[2] * p20;
    return k->algebra(c);
  };
  return sc;
}

Scenario make_so3_r3() {
  Scenario sc;
  sc.name = "so3_r3";
  sc.cm = abelian_module(so3_model(), 3);
  sc.bundle = TrivialBundle{3, sc.cm.G};
  sc.dbl = std::make_shared<DoubleModule>(double_module(sc.cm));
  const GroupModel* g = sc.cm.G.get();
  const GroupModel* h = sc.cm.H.get();
  const GroupModel* k = sc.dbl->object_group.model.get();

  sc.abar.eval = [g](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    return g->algebra(vec3(0.25 * x[2] * v[0], 0.2 * x[0] * v[1], 0.3 * x[1] * v[2]));
  };
  sc.abar.d = [g](const Eigen::VectorXd&, const Eigen::VectorXd& v,
                  const Eigen::VectorXd& w) {
    return g->algebra(vec3(0.25 * (v[2] * w[0] - v[0] * w[2]),
                           0.2 * (v[0] * w[1] - v[1] * w[0]),
                           0.3 * (v[1] * w[2] - v[2] * w[1])));
  };
  sc.a.eval = [g](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    return g->algebra(vec3(0.2 * x[1] * v[1], 0.1 * x[2] * v[2], 0.15 * x[0] * v[0]));
  };
  sc.a.d = [g](const Eigen::VectorXd&, const Eigen::VectorXd&, const Eigen::VectorXd&) {
    return g->zero_algebra();  // each coefficient depends only on its own dx
  };
  sc.b.eval = [h](const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                  const Eigen::VectorXd& w) {
    return h->algebra(vec3(0.2 * (v[0] * w[1] - v[1] * w[0]),
                           0.15 * x[0] * (v[1] * w[2] - v[2] * w[1]),
                           0.1 * (v[2] * w[0] - v[0] * w[2])));
  };
  sc.c.eval = [h](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    return h->algebra(vec3(0.2 * x[1] * v[0], 0.15 * x[2] * v[1], 0.1 * x[0] * v[2]));
  };
  sc.phi = [h](const Eigen::VectorXd& x) {
    return h->exp(h->algebra(vec3(0.3 * std::sin(x[0]), 0.2 * x[1], 0.25 * x[2])));
  };
  sc.c1.eval = [k](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    Eigen::VectorXd c(6);
    c << 0.15 * x[1] * v[0], 0.1 * x[0] * v[1], 0.12 * x[2] * v[2], 0.1 * x[0] * v[0],
        0.08 * x[1] * v[1], 0.06 * x[2] * v[0];
    return k->algebra(c);
  };
  sc.c2.eval = [k](const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                   const Eigen::VectorXd& w) {
    const double p01 = v[0] * w[1] - v[1] * w[0];
    const double p12 = v[1] * w[2] - v[2] * w[1];
    Eigen::VectorXd c(6);
    c << 0.12 * p01, 0.1 * x[1] * p12, 0.08 * p01, 0.06 * x[0] * p12, 0.1 * p01,
        0.05 * p12;
    return k->algebra(c);
  };
  return sc;
}

std::vector<Scenario> build_catalog() {
  std::vector<Scenario> cat;
  cat.push_back(make_flat());
  cat.push_back(make_so2_area());
  cat.push_back(make_so2_assoc());
  cat.push_back(make_so3_conj());
  cat.push_back(make_so3_r3());
  Scenario dbl = make_so3_conj();
  dbl.name = "double";
  cat.push_back(std::move(dbl));
  return cat;
}

const std::vector<Scenario>& catalog() {
  static const std::vector<Scenario> cat = build_catalog();
  return cat;
}

}  // namespace

const Scenario& scenario(const std::string& name) {
  for (const Scenario& sc : catalog())
    if (sc.name == name) return sc;
  throw ConfigError("unknown scenario '" + name + "'");
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (const Scenario& sc : catalog()) names.push_back(sc.name);
  return names;
}

}  // namespace catransport
