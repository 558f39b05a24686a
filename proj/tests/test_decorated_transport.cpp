#include <doctest.h>

#include <cmath>

#include "catransport/decorated_transport.hpp"
#include "catransport/fixtures.hpp"

using namespace catransport;

namespace {

DecoratedMorphism lift_fixture(const Scenario& sc, int cells, std::uint64_t seed) {
  SampledPath gamma = fixtures::base_path(sc, cells);
  Rng rng(seed);
  BundlePoint u{gamma.point(0), sc.G().random_element(rng)};
  DecoratedMorphism m = cat_connection_lift_C(sc, gamma, u);
  m.h = sc.H().random_element(rng);
  return m;
}

}  // namespace

TEST_CASE("decorated composition with trivial decorations is path composition") {
  const Scenario& sc = scenario("so3_conj");
  SampledPath g1 = fixtures::base_path(sc, 32);
  SampledPath g2 = fixtures::second_path(sc, 32);
  DecoratedMorphism m1{&sc,
                       horizontal_lift_path(sc, g1, {g1.point(0), sc.G().identity()}),
                       sc.H().identity()};
  DecoratedMorphism m2{
      &sc, horizontal_lift_path(sc, g2, dec_target(m1)), sc.H().identity()};
  DecoratedMorphism c = dec_compose(m2, m1);
  CHECK(sc.H().distance(c.h, sc.H().identity()) == 0.0);
  CHECK(c.lift.distance(compose_paths(m1.lift, m2.lift)) == 0.0);
}

TEST_CASE("decorated composition is associative and fixes the target") {
  const Scenario& sc = scenario("so3_conj");
  Rng rng(7);
  SampledPath g1 = fixtures::base_path(sc, 32);
  SampledPath g2 = fixtures::second_path(sc, 32);
  SampledPath g3 = fixtures::third_path(sc, 32);
  for (int n = 0; n < 10; ++n) {
    DecoratedMorphism m1{&sc,
                         horizontal_lift_path(sc, g1, {g1.point(0),
                                                       sc.G().random_element(rng)}),
                         sc.H().random_element(rng)};
    DecoratedMorphism m2{&sc, horizontal_lift_path(sc, g2, dec_target(m1)),
                         sc.H().random_element(rng)};
    DecoratedMorphism m3{&sc, horizontal_lift_path(sc, g3, dec_target(m2)),
                         sc.H().random_element(rng)};
    DecoratedMorphism left = dec_compose(m3, dec_compose(m2, m1));
    DecoratedMorphism right = dec_compose(dec_compose(m3, m2), m1);
    CHECK(dec_distance(left, right) < 1e-12);
    // target of the composite equals the target of the outer factor
    CHECK(bundle_point_distance(sc.G(), dec_target(dec_compose(m2, m1)),
                                dec_target(m2)) < 1e-12);
  }
}

TEST_CASE("mismatched endpoints raise a decorated composition error") {
  const Scenario& sc = scenario("so3_conj");
  DecoratedMorphism m1 = lift_fixture(sc, 24, 1);
  DecoratedMorphism m2 = lift_fixture(sc, 24, 2);
  CHECK_THROWS_AS((void)dec_compose(m2, m1), CompositionError);
}

TEST_CASE("the trivial structure morphism acts trivially") {
  const Scenario& sc = scenario("so3_conj");
  DecoratedMorphism m = lift_fixture(sc, 24, 3);
  DecoratedMorphism acted = dec_right_action(m, sc.H().identity(), sc.G().identity());
  CHECK(dec_distance(acted, m) < 1e-15);
}

TEST_CASE("the decorated action composes through the semidirect product") {
  const Scenario& sc = scenario("so3_conj");
  DecoratedMorphism m = lift_fixture(sc, 24, 4);
  Rng rng(5);
  double r = 0;
  for (int n = 0; n < 50; ++n) {
    GroupElement h1 = sc.H().random_element(rng), g1 = sc.G().random_element(rng);
    GroupElement h2 = sc.H().random_element(rng), g2 = sc.G().random_element(rng);
    DecoratedMorphism twice = dec_right_action(dec_right_action(m, h1, g1), h2, g2);
    Morphism2 prod = mor_product(Morphism2{&sc.cm, h1, g1}, Morphism2{&sc.cm, h2, g2});
    r = std::max(r, dec_distance(twice, dec_right_action(m, prod.h, prod.a)));
  }
  CHECK(r < 1e-12);
}

TEST_CASE("the decorated action is free on a fixture") {
  const Scenario& sc = scenario("so3_conj");
  DecoratedMorphism m = lift_fixture(sc, 24, 6);
  CHECK(dec_action_min_displacement(m, 40) > 1e-2);
}

TEST_CASE("the action is transitive on fibers with a recoverable connector") {
  const Scenario& sc = scenario("so3_conj");
  DecoratedMorphism m = lift_fixture(sc, 24, 7);
  Rng rng(8);
  for (int n = 0; n < 10; ++n) {
    GroupElement h1 = sc.H().random_element(rng);
    GroupElement g1 = sc.G().random_element(rng);
    DecoratedMorphism m0 = dec_right_action(m, h1, g1);
    auto [h1r, g1r] = dec_connecting(m, m0);
    CHECK(sc.G().distance(g1r, g1) < 1e-9);
    CHECK(sc.H().distance(h1r, h1) < 1e-9);
    CHECK(dec_distance(dec_right_action(m, h1r, g1r), m0) < 1e-9);
  }
}

TEST_CASE("the reduction embedding intertwines composition and the action") {
  const Scenario& sc = scenario("so3_conj");
  SampledPath g1 = fixtures::base_path(sc, 32);
  SampledPath g2 = fixtures::second_path(sc, 32);
  Rng rng(9);
  GroupElement g0 = sc.G().random_element(rng);
  SampledPath l1 = horizontal_lift_path(sc, g1, {g1.point(0), g0});
  SampledPath l2 = horizontal_lift_path(sc, g2, l1.bundle_point(l1.cells()));
  DecoratedMorphism e1{&sc, l1, sc.H().identity()};
  DecoratedMorphism e2{&sc, l2, sc.H().identity()};
  // embed after composing vs compose after embedding
  CHECK(dec_distance(dec_compose(e2, e1),
                     DecoratedMorphism{&sc, compose_paths(l1, l2), sc.H().identity()}) <
        1e-12);
  GroupElement g = sc.G().random_element(rng);
  CHECK(dec_distance(dec_right_action(e1, sc.H().identity(), g),
                     DecoratedMorphism{&sc, l1.right_translated(g), sc.H().identity()}) <
        1e-12);
}

TEST_CASE("the C-connection decorates trivially when C vanishes") {
  const Scenario& sc = scenario("flat");
  SampledPath gamma = fixtures::base_path(sc, 24);
  DecoratedMorphism m =
      cat_connection_lift_C(sc, gamma, {gamma.point(0), sc.G().identity()});
  CHECK(sc.H().distance(m.h, sc.H().identity()) == 0.0);
}

TEST_CASE("all three lifting rules satisfy the categorical connection axioms") {
  const Scenario& sc = scenario("so3_conj");
  SampledPath g1 = fixtures::base_path(sc, 48);
  SampledPath g2 = fixtures::second_path(sc, 48);
  DecoratedLifter flat = [&sc](const SampledPath& b, const BundlePoint& u) {
    return cat_connection_lift_flat(sc, b, u);
  };
  DecoratedLifter with_c = [&sc](const SampledPath& b, const BundlePoint& u) {
    return cat_connection_lift_C(sc, b, u);
  };
  DecoratedLifter with_phi = [&sc](const SampledPath& b, const BundlePoint& u) {
    return cat_connection_lift_phi(sc, b, u);
  };
  HorliftAxiomReport r_flat = check_horlift_axioms(sc, flat, g1, g2, 10);
  CHECK(r_flat.projection == 0.0);
  CHECK(r_flat.functoriality < 1e-11);
  CHECK(r_flat.rigid < 1e-11);
  HorliftAxiomReport r_c = check_horlift_axioms(sc, with_c, g1, g2, 10);
  CHECK(r_c.functoriality < 1e-12);
  CHECK(r_c.rigid < 1e-11);
  HorliftAxiomReport r_phi = check_horlift_axioms(sc, with_phi, g1, g2, 10);
  CHECK(r_phi.functoriality < 1e-9);
  CHECK(r_phi.rigid < 1e-9);
}

TEST_CASE("a constant Phi decorates trivially over a flat connection") {
  Scenario sc = scenario("flat");  // abar = 0 keeps the fiber fixed
  const GroupModel* h = sc.cm.H.get();
  GroupElement phi0 = rotation2(*h, 0.7);
  sc.phi = [h, phi0](const Eigen::VectorXd&) { return phi0; };
  SampledPath gamma = fixtures::base_path(sc, 24);
  DecoratedMorphism m =
      cat_connection_lift_phi(sc, gamma, {gamma.point(0), sc.G().identity()});
  CHECK(sc.H().distance(m.h, sc.H().identity()) < 1e-15);
}

TEST_CASE("the Phi decoration matches its own C-ODE at second order") {
  const Scenario& sc = scenario("so3_conj");
  auto residual_at = [&](int n) {
    SampledPath gamma = fixtures::base_path(sc, n);
    BundlePoint u{gamma.point(0), sc.G().identity()};
    return sc.H().distance(cat_connection_lift_phi(sc, gamma, u).h,
                           cat_connection_lift_phi_ode(sc, gamma, u).h);
  };
  const double r1 = residual_at(40), r2 = residual_at(80);
  CHECK(r1 / r2 > 3.4);
  CHECK(r1 / r2 < 4.6);
}

TEST_CASE("closed loops with a flat connection and trivial fiber decorate trivially") {
  Scenario sc = scenario("flat");
  const GroupModel* h = sc.cm.H.get();
  sc.phi = [h](const Eigen::VectorXd& x) {
    return rotation2(*h, 0.4 * x[0] + 0.3 * x[1] * x[1]);
  };
  const int n = 40;
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i <= n; ++i) {
    const double th = 2.0 * 3.14159265358979323846 * i / n;
    Eigen::VectorXd x(2);
    x << 0.3 * std::cos(th), 0.3 * std::sin(th);
    pts.push_back(x);
  }
  pts.back() = pts.front();
  SampledPath loop(1.0 / n, std::move(pts), 0);
  DecoratedMorphism m =
      cat_connection_lift_phi(sc, loop, {loop.point(0), sc.G().identity()});
  CHECK(sc.H().distance(m.h, sc.H().identity()) < 1e-12);
}

TEST_CASE("the theta-notation action agrees with the pair formula") {
  CHECK(check_theta_action_consistency(scenario("so3_conj").cm, 50) < 1e-12);
  CHECK(check_theta_action_consistency(scenario("so3_r3").cm, 50) < 1e-13);
}

TEST_CASE("the morphism group is the iterated semidirect product") {
  // (k1, m1)(k2, m2) = (k1 alpha2(m1) k2, m1 m2) with m in H x| G
  const Scenario& sc = scenario("double");
  const SemidirectRealization& sr = sc.dbl->object_group;
  Rng rng(20);
  double r = 0;
  for (int n = 0; n < 50; ++n) {
    GroupElement k1 = sc.K().random_element(rng), k2 = sc.K().random_element(rng);
    GroupElement k3 = sc.K().random_element(rng);
    GroupElement m1 = sr.embed(sc.H().random_element(rng), sc.G().random_element(rng));
    GroupElement m2 = sr.embed(sc.H().random_element(rng), sc.G().random_element(rng));
    GroupElement m3 = sr.embed(sc.H().random_element(rng), sc.G().random_element(rng));
    auto prod = [&](const std::pair<GroupElement, GroupElement>& a,
                    const std::pair<GroupElement, GroupElement>& b) {
      return std::pair<GroupElement, GroupElement>{
          sc.K().multiply(a.first, sc.dbl->cm2.alpha(a.second, b.first)),
          sr.model->multiply(a.second, b.second)};
    };
    auto left = prod(prod({k1, m1}, {k2, m2}), {k3, m3});
    auto right = prod({k1, m1}, prod({k2, m2}, {k3, m3}));
    r = std::max({r, sc.K().distance(left.first, right.first),
                  sr.model->distance(left.second, right.second)});
  }
  CHECK(r < 1e-11);
}

TEST_CASE("the validated constructor rejects non-horizontal surfaces") {
  const Scenario& sc = scenario("double");
  SampledSurface base = fixtures::base_surface(sc, 12, 16);
  SampledPath lift0 = horizontal_lift_path(
      sc, base.source_row(), {base.source_row().point(0), sc.G().identity()});
  SampledSurface lifted = surface_horizontal_lift(sc, base, lift0);
  DoublyDecoratedMorphism ok = make_doubly_decorated(
      sc, lifted, sc.H().identity(), sc.K().identity());
  CHECK(ok.surface.s_cells() == 12);
  // rows lifted independently from unrelated fibers are not omega-horizontal
  Rng rng(21);
  std::vector<SampledPath> rows;
  for (int j = 0; j <= base.s_cells(); ++j)
    rows.push_back(horizontal_lift_path(
        sc, base.row(j), {base.row(j).point(0), sc.G().random_element(rng)}));
  SampledSurface scrambled(base.ds(), std::move(rows), 0);
  CHECK_THROWS_AS((void)make_doubly_decorated(sc, scrambled, sc.H().identity(),
                                              sc.K().identity()),
                  FiberError);
}

TEST_CASE("user-supplied kstar maps can be validated against the conditions") {
  const Scenario& sc = scenario("double");
  SampledSurface base = fixtures::base_surface(sc, 12, 16);
  SampledPath lift0 = horizontal_lift_path(
      sc, base.source_row(), {base.source_row().point(0), sc.G().identity()});
  SampledSurface lifted = surface_horizontal_lift(sc, base, lift0);
  KStarConditionReport good = check_kstar_conditions(
      sc, [&sc](const SampledSurface& s) { return kstar_from_forms(sc, s); }, lifted, 5);
  CHECK(good.equivariance < 1e-10);
  CHECK(good.composition < 1e-12);
  // a constant non-identity map fails both conditions
  Rng rng(22);
  GroupElement bad_value = sc.K().random_element(rng);
  KStarConditionReport bad = check_kstar_conditions(
      sc, [&](const SampledSurface&) { return bad_value; }, lifted, 5);
  CHECK(bad.composition > 1e-3);
}

TEST_CASE("kstar is trivial when both forms vanish") {
  const Scenario& sc = scenario("flat");
  SampledSurface base = fixtures::base_surface(sc, 10, 16);
  SampledPath lift0 = horizontal_lift_path(
      sc, base.source_row(), {base.source_row().point(0), sc.G().identity()});
  SampledSurface lifted = surface_horizontal_lift(sc, base, lift0);
  CHECK(sc.K().distance(kstar_from_forms(sc, lifted), sc.K().identity()) == 0.0);
}

TEST_CASE("kappa star reduces to kstar at the identity decoration") {
  const Scenario& sc = scenario("double");
  SampledSurface base = fixtures::base_surface(sc, 12, 16);
  SampledPath lift0 = horizontal_lift_path(
      sc, base.source_row(), {base.source_row().point(0), sc.G().identity()});
  SampledSurface lifted = surface_horizontal_lift(sc, base, lift0);
  KStarMap kmap = [&sc](const SampledSurface& s) { return kstar_from_forms(sc, s); };
  GroupElement via_kappa = kappa_star(sc, kmap, lifted, sc.H().identity());
  CHECK(sc.K().distance(via_kappa, kstar_from_forms(sc, lifted)) < 1e-13);
}

TEST_CASE("doubly decorated composition concatenates surfaces for trivial k") {
  const Scenario& sc = scenario("double");
  SampledSurface b1 = fixtures::base_surface(sc, 10, 16);
  SampledSurface b2 = fixtures::second_surface(sc, 10, 16);
  SampledPath lift0 = horizontal_lift_path(
      sc, b1.source_row(), {b1.source_row().point(0), sc.G().identity()});
  SampledSurface s1 = surface_horizontal_lift(sc, b1, lift0);
  SampledSurface s2 = surface_horizontal_lift(sc, b2, s1.target_row());
  Rng rng(11);
  GroupElement h = sc.H().random_element(rng);
  GroupElement k = sc.K().random_element(rng);
  DoublyDecoratedMorphism m1{&sc, s1, h, sc.K().identity()};
  DoublyDecoratedMorphism m2{&sc, s2, h, k};
  DoublyDecoratedMorphism c = doubly_dec_compose(m2, m1);
  CHECK(surface_distance(c.surface, compose_surfaces(s1, s2)) < 1e-12);
  CHECK(sc.H().distance(c.h, h) == 0.0);
  CHECK(sc.K().distance(c.k, k) < 1e-15);
}

TEST_CASE("doubly decorated compositions with mismatched h are rejected") {
  const Scenario& sc = scenario("double");
  SampledSurface b1 = fixtures::base_surface(sc, 10, 16);
  SampledSurface b2 = fixtures::second_surface(sc, 10, 16);
  SampledPath lift0 = horizontal_lift_path(
      sc, b1.source_row(), {b1.source_row().point(0), sc.G().identity()});
  SampledSurface s1 = surface_horizontal_lift(sc, b1, lift0);
  SampledSurface s2 = surface_horizontal_lift(sc, b2, s1.target_row());
  Rng rng(12);
  DoublyDecoratedMorphism m1{&sc, s1, sc.H().random_element(rng), sc.K().identity()};
  DoublyDecoratedMorphism m2{&sc, s2, sc.H().random_element(rng), sc.K().identity()};
  CHECK_THROWS_AS((void)doubly_dec_compose(m2, m1), CompositionError);
}

TEST_CASE("transport along a family constant in s returns the start") {
  const Scenario& sc = scenario("double");
  SampledPath gamma = fixtures::base_path(sc, 20);
  std::vector<SampledPath> rows(11, gamma);
  SampledSurface base(0.1, std::move(rows), 0);
  Rng rng(13);
  DecoratedMorphism start{
      &sc, horizontal_lift_path(sc, gamma, {gamma.point(0), sc.G().identity()}),
      sc.H().random_element(rng)};
  DecoratedMorphism moved = transport_decorated_path(sc, base, start);
  CHECK(dec_distance(moved, start) < 1e-12);
}

TEST_CASE("transport along a thin family preserves the decoration") {
  const Scenario& sc = scenario("double");
  SampledPath line = fixtures::thin_line_path(sc, 60);
  const int m_cells = 20;
  std::vector<SampledPath> rows;
  for (int j = 0; j <= m_cells; ++j) {
    const double u = static_cast<double>(j) / m_cells;
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i <= 60; ++i) {
      const double v = static_cast<double>(i) / 60;
      pts.push_back(line.eval(fixtures::thin_wiggle()(u, v) * line.duration()));
    }
    rows.emplace_back(line.dt(), std::move(pts), line.margin());
  }
  SampledSurface base(1.0 / m_cells, std::move(rows), 0);
  Rng rng(14);
  DecoratedMorphism start{
      &sc, horizontal_lift_path(sc, line, {line.point(0), sc.G().identity()}),
      sc.H().random_element(rng)};
  DecoratedMorphism moved = transport_decorated_path(sc, base, start);
  CHECK(sc.H().distance(moved.h, start.h) < 1e-9);
  // the returned path is a (here trivial) reparametrization of the start
  CHECK(moved.lift.distance(start.lift) < 1e-9);
}

TEST_CASE("transport is functorial under vertical composition") {
  const Scenario& sc = scenario("double");
  SampledSurface b1 = fixtures::base_surface(sc, 12, 16);
  SampledSurface b2 = fixtures::second_surface(sc, 12, 16);
  Rng rng(15);
  DecoratedMorphism start{
      &sc,
      horizontal_lift_path(sc, b1.source_row(),
                           {b1.source_row().point(0), sc.G().random_element(rng)}),
      sc.H().random_element(rng)};
  DecoratedMorphism two = transport_decorated_path(
      sc, b2, transport_decorated_path(sc, b1, start));
  DecoratedMorphism one = transport_decorated_path(sc, compose_surfaces(b1, b2), start);
  CHECK(dec_distance(two, one) < 1e-9);
}

TEST_CASE("transport composes as doubly decorated morphisms") {
  const Scenario& sc = scenario("double");
  SampledSurface b1 = fixtures::base_surface(sc, 10, 16);
  SampledSurface b2 = fixtures::second_surface(sc, 10, 16);
  Rng rng(16);
  DecoratedMorphism start{
      &sc,
      horizontal_lift_path(sc, b1.source_row(),
                           {b1.source_row().point(0), sc.G().identity()}),
      sc.H().random_element(rng)};
  DoublyDecoratedMorphism m1 = transport_decorated_morphism(sc, b1, start);
  DoublyDecoratedMorphism m2 = transport_decorated_morphism(sc, b2, doubly_target(m1));
  DoublyDecoratedMorphism glued = doubly_dec_compose(m2, m1);
  // the composite's k equals kappa* of the glued surface by the kstar laws
  GroupElement k_direct = kappa_star(
      sc, [&sc](const SampledSurface& s) { return kstar_from_forms(sc, s); },
      glued.surface, start.h);
  CHECK(sc.K().distance(glued.k, k_direct) < 1e-10);
  CHECK(dec_distance(doubly_target(glued), doubly_target(m2)) < 1e-10);
}
