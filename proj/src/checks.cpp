#include "catransport/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "catransport/associated_bundle.hpp"
#include "catransport/decorated_transport.hpp"
#include "catransport/fixtures.hpp"

namespace catransport {

namespace {

ReportRow row(const Scenario& sc, int N, int M, const std::string& check, double residual,
              double tol) {
  return ReportRow{check, sc.name, N, M, residual, tol, residual <= tol};
}

/// Helpers shared by several checks.

struct LiftedFixture {
  SampledPath lift;
  VariationField field;
};

LiftedFixture lifted_fixture(const Scenario& sc, int N) {
  SampledPath gamma = fixtures::base_path(sc, N);
  BundlePoint u0{gamma.point(0), sc.G().identity()};
  SampledPath lift = horizontal_lift_path(sc, gamma, u0);
  auto psi = fixtures::field(sc);
  std::vector<Eigen::VectorXd> values(gamma.samples());
  for (int i = 0; i < gamma.samples(); ++i) values[i] = psi(gamma.point(i));
  VariationField vf = tangency_field(sc, lift, values, fixtures::vertical_seed(sc));
  return {std::move(lift), std::move(vf)};
}

double reparam_residual(const Scenario& sc, int N) {
  LiftedFixture fx = lifted_fixture(sc, N);
  return check_reparam_invariance(sc, fx.lift, fx.field,
                                  fixtures::smoothstep_phi(fx.lift, fx.lift.cells()));
}

double surface_lift_residual(const Scenario& sc, int N, int M) {
  SampledSurface base = fixtures::base_surface(sc, M, N);
  BundlePoint u0{base.source_row().point(0), sc.G().identity()};
  SampledPath lift0 = horizontal_lift_path(sc, base.source_row(), u0);
  SampledSurface lifted = surface_horizontal_lift(sc, base, lift0);
  return surface_omega_residual(sc, lifted);
}

double phi_agreement_residual(const Scenario& sc, int N) {
  SampledPath gamma = fixtures::base_path(sc, N);
  BundlePoint u0{gamma.point(0), sc.G().identity()};
  DecoratedMorphism closed_form = cat_connection_lift_phi(sc, gamma, u0);
  DecoratedMorphism via_ode = cat_connection_lift_phi_ode(sc, gamma, u0);
  return sc.H().distance(closed_form.h, via_ode.h);
}

/// Doubly decorated sample triple (k1, h1, g1) and its product with a
/// second one, taken in K x| (H x| G).
struct TripleSample {
  GroupElement k, h, g;
};

TripleSample random_triple(const Scenario& sc, Rng& rng) {
  return TripleSample{sc.K().random_element(rng), sc.H().random_element(rng),
                      sc.G().random_element(rng)};
}

TripleSample triple_product(const Scenario& sc, const TripleSample& a,
                            const TripleSample& b) {
  const SemidirectRealization& sr = sc.dbl->object_group;
  GroupElement ma = sr.model->multiply(sr.embed_h(a.h), sr.embed_g(a.g));
  GroupElement mb = sr.model->multiply(sr.embed_h(b.h), sr.embed_g(b.g));
  GroupElement mab = sr.model->multiply(ma, mb);
  GroupElement kab = sc.K().multiply(a.k, sc.dbl->cm2.alpha(ma, b.k));
  return TripleSample{kab, sr.split_h(mab), sr.split_g(mab)};
}

using CheckFn = std::vector<ReportRow> (*)(const Scenario&, int, int, std::uint64_t);

// --- individual checks ------------------------------------------------------

std::vector<ReportRow> check_group_axioms(const Scenario& sc, int N, int M,
                                          std::uint64_t seed) {
  std::vector<ReportRow> rows;
  auto add = [&](const std::string& label, const GroupModel& model) {
    GroupAxiomReport rep = group_axiom_report(model, 100, seed);
    rows.push_back(row(sc, N, M, "group_axioms_" + label, rep.max(), 1e-12));
  };
  add("G", sc.G());
  add("H", sc.H());
  add("K", sc.K());
  return rows;
}

std::vector<ReportRow> check_peiffer_row(const Scenario& sc, int N, int M,
                                         std::uint64_t seed) {
  return {row(sc, N, M, "peiffer", check_peiffer(sc.cm, 100, seed), 1e-10),
          row(sc, N, M, "peiffer_alg", check_alg_peiffer(sc.cm, 100, seed), 1e-10)};
}

std::vector<ReportRow> check_exchange_row(const Scenario& sc, int N, int M,
                                          std::uint64_t seed) {
  return {row(sc, N, M, "exchange", check_exchange_law(sc.cm, 100, seed), 1e-10),
          row(sc, N, M, "catgrp_maps", check_catgrp_maps(sc.cm, 100, seed), 1e-11)};
}

std::vector<ReportRow> check_compose_product_row(const Scenario& sc, int N, int M,
                                                 std::uint64_t seed) {
  return {row(sc, N, M, "compose_product", check_compose_via_product(sc.cm, 50, seed),
              1e-11)};
}

std::vector<ReportRow> check_lemma_alpha2_row(const Scenario& sc, int N, int M,
                                              std::uint64_t seed) {
  return {row(sc, N, M, "lemma_alpha2", check_lemma_alpha2(sc.cm, *sc.dbl, 50, seed),
              1e-11)};
}

std::vector<ReportRow> check_theta_row(const Scenario& sc, int N, int M,
                                       std::uint64_t seed) {
  return {row(sc, N, M, "theta_action", check_theta_action_consistency(sc.cm, 50, seed),
              1e-11)};
}

std::vector<ReportRow> check_reparam_row(const Scenario& sc, int N, int M,
                                         std::uint64_t seed) {
  (void)seed;
  const double tol = 1e-6 * (400.0 / N) * (400.0 / N);
  return {row(sc, N, M, "reparam", reparam_residual(sc, N), tol)};
}

std::vector<ReportRow> check_backtrack_row(const Scenario& sc, int N, int M,
                                           std::uint64_t seed) {
  (void)seed;
  SampledPath gamma = fixtures::base_path(sc, N);
  const int at = N / 2;
  SampledPath spur =
      fixtures::spur_path(sc, gamma.point(at), std::max(2, N / 8), gamma.dt());
  SampledPath with_spur = insert_backtrack(gamma, at, spur);
  BacktrackWindow w{at, spur.cells()};
  BacktrackInvarianceReport rep = check_backtrack_invariance(
      sc, with_spur, w, fixtures::field(sc), fixtures::vertical_seed(sc));
  return {row(sc, N, M, "backtrack_omega", rep.omega_residual, 1e-12),
          row(sc, N, M, "backtrack_lift", rep.lift_residual, 1e-12)};
}

std::vector<ReportRow> check_thin_row(const Scenario& sc, int N, int M,
                                      std::uint64_t seed) {
  (void)seed;
  SampledPath line = fixtures::thin_line_path(sc, N);
  ThinHomotopyReport rep = check_thin_homotopy(sc, line, fixtures::thin_wiggle(), M);
  std::vector<ReportRow> rows{row(sc, N, M, "thin_drift", rep.initial_drift, 1e-9),
                              row(sc, N, M, "thin_minors", rep.max_minor, 1e-7),
                              row(sc, N, M, "thin_rows", rep.row_residual, 1e-9)};
  // decorated holonomy along the thin family
  std::vector<SampledPath> family;
  for (int j = 0; j <= M; ++j) {
    const double u = static_cast<double>(j) / M;
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i <= N; ++i) {
      const double v = static_cast<double>(i) / N;
      pts.push_back(line.eval(fixtures::thin_wiggle()(u, v) * line.duration()));
    }
    family.emplace_back(line.dt(), std::move(pts), line.margin());
  }
  SampledSurface base(1.0 / M, std::move(family), 0);
  BundlePoint u0{line.point(0), sc.G().identity()};
  DecoratedMorphism start{&sc, horizontal_lift_path(sc, line, u0),
                          sc.H().identity()};
  DoublyDecoratedMorphism moved = transport_decorated_morphism(sc, base, start);
  const double holonomy = sc.K().distance(moved.k, sc.K().identity());
  rows.push_back(row(sc, N, M, "thin_holonomy", holonomy, 1e-9));
  return rows;
}

std::vector<ReportRow> check_connection_props_row(const Scenario& sc, int N, int M,
                                                  std::uint64_t seed) {
  LiftedFixture fx = lifted_fixture(sc, N);
  ConnectionPropertiesReport rep =
      check_connection_properties(sc, fx.lift, fx.field, 20, seed);
  return {row(sc, N, M, "omega_equivariance", rep.equivariance, 1e-9),
          row(sc, N, M, "omega_vertical", rep.vertical, 1e-9)};
}

std::vector<ReportRow> check_functorial_row(const Scenario& sc, int N, int M,
                                            std::uint64_t seed) {
  SampledPath g1 = fixtures::base_path(sc, N);
  SampledPath g2 = fixtures::second_path(sc, N);
  DecoratedLifter lifter = [&sc](const SampledPath& base, const BundlePoint& u) {
    return cat_connection_lift_C(sc, base, u);
  };
  HorliftAxiomReport rep = check_horlift_axioms(sc, lifter, g1, g2, 10, seed);
  return {row(sc, N, M, "functorial_compose", rep.functoriality, 1e-12),
          row(sc, N, M, "functorial_rigid", rep.rigid, 1e-11),
          row(sc, N, M, "functorial_projection", rep.projection, 1e-12)};
}

std::vector<ReportRow> check_phi_row(const Scenario& sc, int N, int M,
                                     std::uint64_t seed) {
  SampledPath g1 = fixtures::base_path(sc, N);
  SampledPath g2 = fixtures::second_path(sc, N);
  DecoratedLifter lifter = [&sc](const SampledPath& base, const BundlePoint& u) {
    return cat_connection_lift_phi(sc, base, u);
  };
  HorliftAxiomReport rep = check_horlift_axioms(sc, lifter, g1, g2, 10, seed);
  const double tol_agree = 1e-5 * (50.0 / N) * (50.0 / N);
  return {row(sc, N, M, "phi_functorial", rep.functoriality, 1e-9),
          row(sc, N, M, "phi_rigid", rep.rigid, 1e-9),
          row(sc, N, M, "phi_agreement", phi_agreement_residual(sc, N), tol_agree)};
}

std::vector<ReportRow> check_horlift_flat_row(const Scenario& sc, int N, int M,
                                              std::uint64_t seed) {
  SampledPath g1 = fixtures::base_path(sc, N);
  SampledPath g2 = fixtures::second_path(sc, N);
  DecoratedLifter lifter = [&sc](const SampledPath& base, const BundlePoint& u) {
    return cat_connection_lift_flat(sc, base, u);
  };
  HorliftAxiomReport rep = check_horlift_axioms(sc, lifter, g1, g2, 10, seed);
  const double residual = std::max({rep.functoriality, rep.rigid, rep.projection});
  return {row(sc, N, M, "horlift_flat", residual, 1e-11)};
}

std::vector<ReportRow> check_wc_row(const Scenario& sc, int N, int M,
                                    std::uint64_t seed) {
  (void)seed;
  SampledSurface base = fixtures::base_surface(sc, M, N);
  BundlePoint u0{base.source_row().point(0), sc.G().identity()};
  SampledPath lift0 = horizontal_lift_path(sc, base.source_row(), u0);
  SampledSurface lifted = surface_horizontal_lift(sc, base, lift0);
  const GroupModel& K = sc.K();
  PlaquetteForm form = [&sc](const Plaquette& p) {
    return twist_k_inv(sc, p.g, sc.c2.eval(p.x, p.dt_x, p.ds_x));
  };
  const int half = lifted.s_cells() / 2;
  SampledSurface lower = fixtures::slice_rows(lifted, 0, half);
  SampledSurface upper = fixtures::slice_rows(lifted, half, lifted.s_cells());
  GroupElement whole = w_C(K, lifted, form).value();
  GroupElement split =
      K.multiply(w_C(K, lower, form).value(), w_C(K, upper, form).value());
  double r_wc = K.distance(whole, split);

  auto w0 = [&sc](const SampledPath& p) { return kstar_boundary_w0(sc, p); };
  GroupElement whole0 = w_C0(K, lifted, form, w0);
  GroupElement split0 =
      K.multiply(w_C0(K, lower, form, w0), w_C0(K, upper, form, w0));
  double r_wc0 = K.distance(whole0, split0);
  return {row(sc, N, M, "wc_compose", r_wc, 1e-12),
          row(sc, N, M, "wc0_compose", r_wc0, 1e-12)};
}

std::vector<ReportRow> check_kstar_row(const Scenario& sc, int N, int M,
                                       std::uint64_t seed) {
  SampledSurface base = fixtures::base_surface(sc, M, N);
  BundlePoint u0{base.source_row().point(0), sc.G().identity()};
  SampledPath lift0 = horizontal_lift_path(sc, base.source_row(), u0);
  SampledSurface lifted = surface_horizontal_lift(sc, base, lift0);
  KStarConditionReport rep = check_kstar_conditions(
      sc, [&sc](const SampledSurface& s) { return kstar_from_forms(sc, s); }, lifted, 5,
      seed);
  return {row(sc, N, M, "kstar_equivariance", rep.equivariance, 1e-10),
          row(sc, N, M, "kstar_compose", rep.composition, 1e-12)};
}

std::vector<ReportRow> check_kappa_row(const Scenario& sc, int N, int M,
                                       std::uint64_t seed) {
  Rng rng(seed);
  SampledSurface base = fixtures::base_surface(sc, M, N);
  BundlePoint u0{base.source_row().point(0), sc.G().identity()};
  SampledPath lift0 = horizontal_lift_path(sc, base.source_row(), u0);
  SampledSurface lifted = surface_horizontal_lift(sc, base, lift0);
  const GroupModel& K = sc.K();
  const SemidirectRealization& sr = sc.dbl->object_group;
  KStarMap kmap = [&sc](const SampledSurface& s) { return kstar_from_forms(sc, s); };
  double first = 0;
  for (int n = 0; n < 5; ++n) {
    GroupElement h = sc.H().random_element(rng);
    GroupElement h1 = sc.H().random_element(rng);
    GroupElement g1 = sc.G().random_element(rng);
    // left side: kappa* of the acted pair
    GroupElement acted_h = sc.cm.alpha(
        sc.G().inverse(g1), sc.H().multiply(sc.H().inverse(h1), h));
    GroupElement lhs = kappa_star(sc, kmap, lifted.right_translated(g1), acted_h);
    // right side: alpha2((h1 g1)^-1) kappa*(surface, h)
    GroupElement h1g1 = sr.model->multiply(sr.embed_h(h1), sr.embed_g(g1));
    GroupElement rhs = sc.dbl->cm2.alpha(sr.model->inverse(h1g1),
                                         kappa_star(sc, kmap, lifted, h));
    first = std::max(first, K.distance(lhs, rhs));
  }
  const int half = lifted.s_cells() / 2;
  SampledSurface lower = fixtures::slice_rows(lifted, 0, half);
  SampledSurface upper = fixtures::slice_rows(lifted, half, lifted.s_cells());
  double second = 0;
  for (int n = 0; n < 5; ++n) {
    GroupElement h = sc.H().random_element(rng);
    GroupElement whole = kappa_star(sc, kmap, lifted, h);
    GroupElement split = K.multiply(kappa_star(sc, kmap, lower, h),
                                    kappa_star(sc, kmap, upper, h));
    second = std::max(second, K.distance(whole, split));
  }
  return {row(sc, N, M, "kappa_action", first, 1e-10),
          row(sc, N, M, "kappa_compose", second, 1e-10)};
}

std::vector<ReportRow> check_dec_actions_row(const Scenario& sc, int N, int M,
                                             std::uint64_t seed) {
  Rng rng(seed);
  SampledPath gamma = fixtures::base_path(sc, N);
  BundlePoint u0{gamma.point(0), sc.G().identity()};
  DecoratedMorphism m = cat_connection_lift_C(sc, gamma, u0);
  double action = 0, assoc = 0, target = 0;
  for (int n = 0; n < 50; ++n) {
    GroupElement h1 = sc.H().random_element(rng), g1 = sc.G().random_element(rng);
    GroupElement h2 = sc.H().random_element(rng), g2 = sc.G().random_element(rng);
    DecoratedMorphism twice = dec_right_action(dec_right_action(m, h1, g1), h2, g2);
    Morphism2 phi1{&sc.cm, h1, g1}, phi2{&sc.cm, h2, g2};
    Morphism2 prod = mor_product(phi1, phi2);
    DecoratedMorphism once = dec_right_action(m, prod.h, prod.a);
    action = std::max(action, dec_distance(twice, once));
  }
  // associativity of decorated composition plus the target identity
  SampledPath gamma2 = fixtures::second_path(sc, N);
  SampledPath gamma3 = fixtures::third_path(sc, N);
  for (int n = 0; n < 10; ++n) {
    DecoratedMorphism m1{&sc, m.lift, sc.H().random_element(rng)};
    DecoratedMorphism m2 = cat_connection_lift_C(sc, gamma2, dec_target(m1));
    m2.h = sc.H().random_element(rng);
    DecoratedMorphism m3 = cat_connection_lift_C(sc, gamma3, dec_target(m2));
    m3.h = sc.H().random_element(rng);
    DecoratedMorphism left = dec_compose(m3, dec_compose(m2, m1));
    DecoratedMorphism right = dec_compose(dec_compose(m3, m2), m1);
    assoc = std::max(assoc, dec_distance(left, right));
    BundlePoint t_comp = dec_target(dec_compose(m2, m1));
    BundlePoint t_m2 = dec_target(m2);
    target = std::max(target, bundle_point_distance(sc.G(), t_comp, t_m2));
  }
  return {row(sc, N, M, "dec_action", action, 1e-10),
          row(sc, N, M, "dec_assoc", assoc, 1e-10),
          row(sc, N, M, "dec_target", target, 1e-10)};
}

std::vector<ReportRow> check_doubly_actions_row(const Scenario& sc, int N, int M,
                                                std::uint64_t seed) {
  Rng rng(seed);
  SampledSurface base = fixtures::base_surface(sc, M, N);
  BundlePoint u0{base.source_row().point(0), sc.G().identity()};
  SampledPath lift0 = horizontal_lift_path(sc, base.source_row(), u0);
  DecoratedMorphism start{&sc, lift0, sc.H().identity()};
  DoublyDecoratedMorphism mor = transport_decorated_morphism(sc, base, start);
  double action = 0, st_compat = 0;
  for (int n = 0; n < 50; ++n) {
    TripleSample t1 = random_triple(sc, rng);
    TripleSample t2 = random_triple(sc, rng);
    DoublyDecoratedMorphism twice = doubly_dec_right_action(
        doubly_dec_right_action(mor, t1.k, t1.h, t1.g), t2.k, t2.h, t2.g);
    TripleSample prod = triple_product(sc, t1, t2);
    DoublyDecoratedMorphism once =
        doubly_dec_right_action(mor, prod.k, prod.h, prod.g);
    action = std::max(action, doubly_distance(twice, once));
    // functoriality of sources and targets under the action
    DoublyDecoratedMorphism acted = doubly_dec_right_action(mor, t1.k, t1.h, t1.g);
    DecoratedMorphism s_acted = doubly_source(acted);
    DecoratedMorphism s_expected = doubly_object_action(doubly_source(mor), t1.h, t1.g);
    st_compat = std::max(st_compat, dec_distance(s_acted, s_expected));
    const SemidirectRealization& sr = sc.dbl->object_group;
    GroupElement h1g1 = sr.model->multiply(sr.embed_h(t1.h), sr.embed_g(t1.g));
    GroupElement t_of_phi = sr.model->multiply(sc.dbl->cm2.tau(t1.k), h1g1);
    DecoratedMorphism t_acted = doubly_target(acted);
    DecoratedMorphism t_expected = doubly_object_action(
        doubly_target(mor), sr.split_h(t_of_phi), sr.split_g(t_of_phi));
    st_compat = std::max(st_compat, dec_distance(t_acted, t_expected));
  }
  // associativity over a stacked triple and the target identity
  SampledSurface base2 = fixtures::second_surface(sc, M, N);
  SampledSurface base3 = fixtures::third_surface(sc, M, N);
  DoublyDecoratedMorphism mor2 =
      transport_decorated_morphism(sc, base2, doubly_target(mor));
  DoublyDecoratedMorphism mor3 =
      transport_decorated_morphism(sc, base3, doubly_target(mor2));
  DoublyDecoratedMorphism left = doubly_dec_compose(mor3, doubly_dec_compose(mor2, mor));
  DoublyDecoratedMorphism right = doubly_dec_compose(doubly_dec_compose(mor3, mor2), mor);
  const double assoc = doubly_distance(left, right);
  const double target =
      dec_distance(doubly_target(doubly_dec_compose(mor2, mor)), doubly_target(mor2));
  return {row(sc, N, M, "doubly_action", action, 1e-10),
          row(sc, N, M, "doubly_st_functorial", st_compat, 1e-10),
          row(sc, N, M, "doubly_assoc", assoc, 1e-10),
          row(sc, N, M, "doubly_target", target, 1e-10)};
}

std::vector<ReportRow> check_transport_row(const Scenario& sc, int N, int M,
                                           std::uint64_t seed) {
  Rng rng(seed);
  SampledSurface base1 = fixtures::base_surface(sc, M, N);
  SampledSurface base2 = fixtures::second_surface(sc, M, N);
  SampledSurface glued = compose_surfaces(base1, base2);
  BundlePoint u0{base1.source_row().point(0), sc.G().identity()};
  SampledPath lift0 = horizontal_lift_path(sc, base1.source_row(), u0);
  DecoratedMorphism start{&sc, lift0, sc.H().random_element(rng)};
  DecoratedMorphism two_steps =
      transport_decorated_path(sc, base2, transport_decorated_path(sc, base1, start));
  DecoratedMorphism one_step = transport_decorated_path(sc, glued, start);
  return {row(sc, N, M, "transport_functorial", dec_distance(two_steps, one_step), 1e-9)};
}

std::vector<ReportRow> check_surface_lift_row(const Scenario& sc, int N, int M,
                                              std::uint64_t seed) {
  (void)seed;
  const double h = std::max(1.0 / N, 1.0 / M);
  const double tol = 1e-5 * (100.0 * h) * (100.0 * h);
  return {row(sc, N, M, "surface_lift", surface_lift_residual(sc, N, M), tol)};
}

std::vector<ReportRow> check_assoc_row(const Scenario& sc, int N, int M,
                                       std::uint64_t seed) {
  Rng rng(seed);
  Representation rep = natural_representation(sc.cm.G);
  DecoratedLifter lifter = [&sc](const SampledPath& base, const BundlePoint& u) {
    return cat_connection_lift_flat(sc, base, u);
  };
  SampledPath f = fixtures::base_path(sc, N);
  SampledPath g = fixtures::second_path(sc, N);
  Eigen::VectorXd v(rep.v_dim);
  for (int i = 0; i < rep.v_dim; ++i) v[i] = rng.uniform(-1.0, 1.0);
  TwistedClass cls{f.point(0), v};
  double well_defined = 0;
  for (int n = 0; n < 10; ++n) {
    GroupElement gg = sc.G().random_element(rng);
    // the same class through another representative (p gg, rho(gg^-1) v)
    BundlePoint p{f.point(0), gg};
    TwistedClass other = normalize_class(rep, p, rep.rho_obj(sc.G().inverse(gg), v));
    well_defined = std::max(well_defined, class_distance(cls, other));
    DecoratedMorphism lift_a = lifter(f, BundlePoint{f.point(0), sc.G().identity()});
    DecoratedMorphism lift_b = lifter(f, p);
    TwistedClass ta = normalize_class(rep, dec_target(lift_a), cls.v);
    TwistedClass tb =
        normalize_class(rep, dec_target(lift_b), rep.rho_obj(sc.G().inverse(gg), v));
    well_defined = std::max(well_defined, class_distance(ta, tb));
  }
  TwistedClass via_g = assoc_transport(sc, lifter, rep, g,
                                       assoc_transport(sc, lifter, rep, f, cls));
  TwistedClass via_fg = assoc_transport(sc, lifter, rep, compose_paths(f, g), cls);
  const double functorial = class_distance(via_g, via_fg);
  return {row(sc, N, M, "assoc_well_defined", well_defined, 1e-11),
          row(sc, N, M, "assoc_functorial", functorial, 1e-11)};
}

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> reg = {
      {"group_axioms", &check_group_axioms},
      {"peiffer", &check_peiffer_row},
      {"exchange", &check_exchange_row},
      {"compose_product", &check_compose_product_row},
      {"lemma_alpha2", &check_lemma_alpha2_row},
      {"theta_action", &check_theta_row},
      {"reparam", &check_reparam_row},
      {"backtrack", &check_backtrack_row},
      {"thin", &check_thin_row},
      {"connection_props", &check_connection_props_row},
      {"functorial", &check_functorial_row},
      {"phi_lift", &check_phi_row},
      {"horlift_flat", &check_horlift_flat_row},
      {"wc_compose", &check_wc_row},
      {"kstar", &check_kstar_row},
      {"kappa", &check_kappa_row},
      {"dec_actions", &check_dec_actions_row},
      {"doubly_actions", &check_doubly_actions_row},
      {"transport_functorial", &check_transport_row},
      {"surface_lift", &check_surface_lift_row},
      {"assoc", &check_assoc_row},
  };
  return reg;
}

}  // namespace

std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

std::vector<ReportRow> run_check(const std::string& name, const Scenario& sc, int N,
                                 int M, std::uint64_t seed) {
  for (const auto& [n, fn] : registry())
    if (n == name) return fn(sc, N, M, seed);
  throw ConfigError("unknown check '" + name + "'");
}

std::vector<ReportRow> run_checks(const std::vector<std::string>& names,
                                  const Scenario& sc, int N, int M, std::uint64_t seed) {
  std::vector<std::string> selected = names;
  if (selected.size() == 1 && selected[0] == "all") selected = check_names();
  std::vector<ReportRow> rows;
  for (const std::string& name : selected) {
    std::vector<ReportRow> r = run_check(name, sc, N, M, seed);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  sort_rows(rows);
  return rows;
}

void sort_rows(std::vector<ReportRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.check, a.scenario, a.N, a.M) <
           std::tie(b.check, b.scenario, b.N, b.M);
  });
}

std::string report_to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "check,scenario,N,M,residual,tolerance,pass\n";
  char buf[64];
  for (const ReportRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g", r.residual);
    out << r.check << ',' << r.scenario << ',' << r.N << ',' << r.M << ',' << buf;
    std::snprintf(buf, sizeof buf, "%.17g", r.tolerance);
    out << ',' << buf << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

void write_report_csv(const std::string& file, const std::vector<ReportRow>& rows) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot open " + file + " for writing");
  out << report_to_csv(rows);
}

std::vector<std::string> convergence_check_names() {
  return {"reparam", "surface_lift", "phi_agreement", "backtrack", "wc_compose"};
}

std::vector<ConvergenceRow> convergence_study(const std::string& name, const Scenario& sc,
                                              const std::vector<std::pair<int, int>>& grids,
                                              std::uint64_t seed) {
  if (grids.size() < 3) throw ConfigError("convergence needs a ladder of at least 3 grids");
  auto residual_of = [&](int N, int M) -> double {
    if (name == "reparam") return reparam_residual(sc, N);
    if (name == "surface_lift") return surface_lift_residual(sc, N, M);
    if (name == "phi_agreement") return phi_agreement_residual(sc, N);
    if (name == "backtrack" || name == "wc_compose") {
      std::vector<ReportRow> rows = run_check(name == "backtrack" ? "backtrack" : "wc_compose",
                                              sc, N, M, seed);
      double r = 0;
      for (const auto& x : rows) r = std::max(r, x.residual);
      return r;
    }
    throw ConfigError("check '" + name + "' has no convergence ladder");
  };
  const bool surface_check = (name == "surface_lift" || name == "wc_compose");
  std::vector<ConvergenceRow> rows;
  for (const auto& [N, M] : grids) {
    ConvergenceRow r;
    r.check = name;
    r.h = surface_check ? std::max(1.0 / N, 1.0 / M) : 1.0 / N;
    r.residual = residual_of(N, M);
    r.order = "-";
    rows.push_back(r);
  }
  bool all_exact = true;
  for (const auto& r : rows) all_exact = all_exact && r.residual <= 1e-12;
  for (size_t i = 1; i < rows.size(); ++i) {
    if (all_exact) {
      rows[i].order = "exact";
    } else if (rows[i].residual > 0 && rows[i - 1].residual > 0) {
      const double p = std::log(rows[i - 1].residual / rows[i].residual) /
                       std::log(rows[i - 1].h / rows[i].h);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2f", p);
      rows[i].order = buf;
    }
  }
  if (all_exact) rows[0].order = "exact";
  return rows;
}

std::string convergence_to_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  out << "check,h,residual,order\n";
  char buf[64];
  for (const ConvergenceRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g", r.h);
    out << r.check << ',' << buf;
    std::snprintf(buf, sizeof buf, "%.17g", r.residual);
    out << ',' << buf << ',' << r.order << '\n';
  }
  return out.str();
}

double fitted_order(const std::vector<ConvergenceRow>& rows) {
  // least-squares slope of log(residual) against log(h)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& r : rows) {
    if (r.residual <= 0) continue;
    const double x = std::log(r.h), y = std::log(r.residual);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return 0;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace catransport
