#include "catransport/decorated_transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace catransport {

BundlePoint dec_source(const DecoratedMorphism& m) { return m.lift.bundle_point(0); }

BundlePoint dec_target(const DecoratedMorphism& m) {
  const GroupModel& G = m.sc->G();
  BundlePoint end = m.lift.bundle_point(m.lift.cells());
  GroupElement shift = m.sc->cm.tau(m.sc->H().inverse(m.h));
  return BundlePoint{end.x, G.multiply(end.g, shift)};
}

double bundle_point_distance(const GroupModel& G, const BundlePoint& a,
                             const BundlePoint& b) {
  return std::max((a.x - b.x).cwiseAbs().maxCoeff(), G.distance(a.g, b.g));
}

double dec_distance(const DecoratedMorphism& a, const DecoratedMorphism& b) {
  return std::max(a.lift.distance(b.lift), a.sc->H().distance(a.h, b.h));
}

DecoratedMorphism dec_compose(const DecoratedMorphism& m2, const DecoratedMorphism& m1,
                              double tol) {
  const Scenario& sc = *m1.sc;
  const double gap = bundle_point_distance(sc.G(), dec_target(m1), dec_source(m2));
  if (gap > tol)
    throw CompositionError("decorated morphisms not composable, distance " +
                               std::to_string(gap),
                           gap);
  SampledPath translated = m2.lift.right_translated(sc.cm.tau(m1.h));
  SampledPath path = compose_paths(m1.lift, translated, tol);
  return DecoratedMorphism{&sc, std::move(path), sc.H().multiply(m2.h, m1.h)};
}

DecoratedMorphism dec_right_action(const DecoratedMorphism& m, const GroupElement& h1,
                                   const GroupElement& g1) {
  const Scenario& sc = *m.sc;
  GroupElement g1inv = sc.G().inverse(g1);
  GroupElement deco = sc.cm.alpha(g1inv, sc.H().multiply(sc.H().inverse(h1), m.h));
  return DecoratedMorphism{&sc, m.lift.right_translated(g1), std::move(deco)};
}

std::pair<GroupElement, GroupElement> dec_connecting(const DecoratedMorphism& m,
                                                     const DecoratedMorphism& m0) {
  const Scenario& sc = *m.sc;
  const GroupModel& G = sc.G();
  GroupElement g1 = G.multiply(G.inverse(m.lift.fiber(0)), m0.lift.fiber(0));
  GroupElement h1 =
      sc.H().multiply(m.h, sc.cm.alpha(g1, sc.H().inverse(m0.h)));
  return {h1, g1};
}

DecoratedMorphism cat_connection_lift_flat(const Scenario& sc, const SampledPath& gamma,
                                           const BundlePoint& u) {
  return DecoratedMorphism{&sc, horizontal_lift_path(sc, gamma, u), sc.H().identity()};
}

DecoratedMorphism cat_connection_lift_C(const Scenario& sc, const SampledPath& gamma,
                                        const BundlePoint& u) {
  const GroupModel& H = sc.H();
  SampledPath lift = horizontal_lift_path(sc, gamma, u);
  GroupElement h = H.identity();
  for (int k = 0; k < lift.cells(); ++k) {
    const Eigen::VectorXd mid = 0.5 * (lift.point(k) + lift.point(k + 1));
    const Eigen::VectorXd dx = lift.point(k + 1) - lift.point(k);
    const Eigen::MatrixXd gbar =
        0.5 * (lift.fiber(k).matrix() + lift.fiber(k + 1).matrix());
    AlgebraElement val = twist_alpha_inv(sc.cm, gbar, sc.c.eval(mid, dx));
    h = H.multiply(h, H.exp(val * -1.0));
  }
  return DecoratedMorphism{&sc, std::move(lift), std::move(h)};
}

DecoratedMorphism cat_connection_lift_phi(const Scenario& sc, const SampledPath& gamma,
                                          const BundlePoint& u) {
  const GroupModel& H = sc.H();
  SampledPath lift = horizontal_lift_path(sc, gamma, u);
  // equivariant extension Phi(x, g) = alpha(g^-1) Phi_base(x)
  auto phi_at = [&](int i) {
    GroupElement gi = lift.fiber(i);
    return sc.cm.alpha(sc.G().inverse(gi), sc.phi(lift.point(i)));
  };
  GroupElement deco = H.multiply(phi_at(0), H.inverse(phi_at(lift.cells())));
  return DecoratedMorphism{&sc, std::move(lift), std::move(deco)};
}

DecoratedMorphism cat_connection_lift_phi_ode(const Scenario& sc, const SampledPath& gamma,
                                              const BundlePoint& u) {
  const GroupModel& H = sc.H();
  SampledPath lift = horizontal_lift_path(sc, gamma, u);
  auto phi_at = [&](int i) {
    GroupElement gi = lift.fiber(i);
    return sc.cm.alpha(sc.G().inverse(gi), sc.phi(lift.point(i)));
  };
  GroupElement h = H.identity();
  GroupElement prev = phi_at(0);
  for (int k = 0; k < lift.cells(); ++k) {
    GroupElement next = phi_at(k + 1);
    AlgebraElement step = H.zero_algebra();
    if (H.kind() == GroupModel::Kind::additive_vector) {
      step = H.algebra(next.vector() - prev.vector());
    } else {
      const auto& Hm = static_cast<const MatrixGroupModel&>(H);
      Eigen::MatrixXd mid = 0.5 * (prev.matrix() + next.matrix());
      step = Hm.project((next.matrix() - prev.matrix()) * mid.inverse());
    }
    h = H.multiply(h, H.exp(step * -1.0));
    prev = next;
  }
  return DecoratedMorphism{&sc, std::move(lift), std::move(h)};
}

HorliftAxiomReport check_horlift_axioms(const Scenario& sc, const DecoratedLifter& lifter,
                                        const SampledPath& gamma1,
                                        const SampledPath& gamma2, int samples,
                                        std::uint64_t seed) {
  const GroupModel& G = sc.G();
  if ((gamma1.point(gamma1.cells()) - gamma2.point(0)).cwiseAbs().maxCoeff() > 1e-9)
    throw CompositionError("axiom fixture paths are not composable", 1.0);
  SampledPath composite = compose_paths(gamma1, gamma2);
  Rng rng(seed);
  HorliftAxiomReport rep;
  for (int n = 0; n < samples; ++n) {
    BundlePoint u{gamma1.point(0), G.random_element(rng)};
    DecoratedMorphism m1 = lifter(gamma1, u);
    rep.projection = std::max(rep.projection, m1.lift.projected().distance(gamma1));
    DecoratedMorphism m2 = lifter(gamma2, dec_target(m1));
    DecoratedMorphism whole = lifter(composite, u);
    rep.functoriality = std::max(rep.functoriality, dec_distance(dec_compose(m2, m1), whole));
    GroupElement g = G.random_element(rng);
    DecoratedMorphism translated = lifter(gamma1, BundlePoint{u.x, G.multiply(u.g, g)});
    DecoratedMorphism acted = dec_right_action(m1, sc.H().identity(), g);
    rep.rigid = std::max(rep.rigid, dec_distance(translated, acted));
  }
  return rep;
}

double dec_action_min_displacement(const DecoratedMorphism& m, int samples,
                                   std::uint64_t seed) {
  const Scenario& sc = *m.sc;
  Rng rng(seed);
  double min_disp = std::numeric_limits<double>::infinity();
  for (int n = 0; n < samples; ++n) {
    GroupElement h1 = sc.H().random_element(rng);
    GroupElement g1 = sc.G().random_element(rng);
    if (sc.H().distance(h1, sc.H().identity()) < 1e-6 &&
        sc.G().distance(g1, sc.G().identity()) < 1e-6)
      continue;
    min_disp = std::min(min_disp, dec_distance(dec_right_action(m, h1, g1), m));
  }
  return min_disp;
}

double check_theta_action_consistency(const CrossedModule& cm, int samples,
                                      std::uint64_t seed) {
  Rng rng(seed);
  double r = 0;
  for (int n = 0; n < samples; ++n) {
    GroupElement h = cm.random_h(rng);  // theta = (h, e) in ker s
    Morphism2 theta{&cm, h, cm.G->identity()};
    GroupElement h1 = cm.random_h(rng);
    GroupElement g1 = cm.random_g(rng);
    Morphism2 phi{&cm, h1, g1};
    // direct crossed-module formula
    GroupElement direct =
        cm.alpha(cm.G->inverse(g1), cm.H->multiply(cm.H->inverse(h1), h));
    // morphism-notation products: phi^-1 theta 1_{s(phi)}
    Morphism2 prod = mor_product(
        mor_product(mor_inverse(phi), theta), mor_identity(cm, mor_source(phi)));
    r = std::max(r, cm.H->distance(prod.h, direct));
    r = std::max(r, cm.G->distance(mor_source(prod), cm.G->identity()));
  }
  return r;
}

// ---------------------------------------------------------------------------
// doubly decorated layer

GroupElement kstar_boundary_w0(const Scenario& sc, const SampledPath& row) {
  const GroupModel& K = sc.K();
  GroupElement w = K.identity();
  for (int i = 0; i < row.cells(); ++i) {
    const Eigen::VectorXd mid = 0.5 * (row.point(i) + row.point(i + 1));
    const Eigen::VectorXd dx = row.point(i + 1) - row.point(i);
    const Eigen::MatrixXd gbar = 0.5 * (row.fiber(i).matrix() + row.fiber(i + 1).matrix());
    AlgebraElement val = twist_k_inv(sc, gbar, sc.c1.eval(mid, dx));
    w = K.multiply(w, K.exp(val * -1.0));
  }
  return w;
}

GroupElement kstar_from_forms(const Scenario& sc, const SampledSurface& surface) {
  const GroupModel& K = sc.K();
  PlaquetteForm form = [&sc](const Plaquette& p) {
    return twist_k_inv(sc, p.g, sc.c2.eval(p.x, p.dt_x, p.ds_x));
  };
  auto w0 = [&sc](const SampledPath& row) { return kstar_boundary_w0(sc, row); };
  return w_C0(K, surface, form, w0);
}

GroupElement kappa_star(const Scenario& sc, const KStarMap& kstar,
                        const SampledSurface& surface, const GroupElement& h) {
  GroupElement emb = sc.dbl->object_group.embed_h(h);
  return sc.dbl->cm2.alpha(emb, kstar(surface));
}

DoublyDecoratedMorphism make_doubly_decorated(const Scenario& sc, SampledSurface surface,
                                              GroupElement h, GroupElement k) {
  const double hmax = std::max(surface.ds(), surface.dt());
  const double bound = 10.0 * hmax * hmax;
  const double res = surface_omega_residual(sc, surface);
  if (res > bound)
    throw FiberError("surface is not omega-horizontal: residual " +
                     std::to_string(res) + " exceeds " + std::to_string(bound));
  return DoublyDecoratedMorphism{&sc, std::move(surface), std::move(h), std::move(k)};
}

KStarConditionReport check_kstar_conditions(const Scenario& sc, const KStarMap& kstar,
                                            const SampledSurface& lifted, int samples,
                                            std::uint64_t seed) {
  const GroupModel& K = sc.K();
  Rng rng(seed);
  KStarConditionReport rep;
  for (int n = 0; n < samples; ++n) {
    GroupElement g1 = sc.G().random_element(rng);
    GroupElement lhs = kstar(lifted.right_translated(g1));
    GroupElement emb = sc.dbl->object_group.embed_g(g1);
    GroupElement rhs = sc.dbl->cm2.alpha(K.inverse(emb), kstar(lifted));
    rep.equivariance = std::max(rep.equivariance, K.distance(lhs, rhs));
  }
  const int half = lifted.s_cells() / 2;
  std::vector<SampledPath> lower_rows(lifted.rows().begin(),
                                      lifted.rows().begin() + half + 1);
  std::vector<SampledPath> upper_rows(lifted.rows().begin() + half, lifted.rows().end());
  SampledSurface lower(lifted.ds(), std::move(lower_rows), 0);
  SampledSurface upper(lifted.ds(), std::move(upper_rows), 0);
  GroupElement whole = kstar(lifted);
  GroupElement split = K.multiply(kstar(lower), kstar(upper));
  rep.composition = K.distance(whole, split);
  return rep;
}

DecoratedMorphism doubly_source(const DoublyDecoratedMorphism& m) {
  return DecoratedMorphism{m.sc, m.surface.source_row(), m.h};
}

DecoratedMorphism doubly_object_action(const DecoratedMorphism& m, const GroupElement& h1,
                                       const GroupElement& g1) {
  return dec_right_action(m, h1, g1);
}

DecoratedMorphism doubly_target(const DoublyDecoratedMorphism& m) {
  const Scenario& sc = *m.sc;
  const SemidirectRealization& sr = sc.dbl->object_group;
  GroupElement shift = sc.dbl->cm2.tau(sc.K().inverse(m.k));
  DecoratedMorphism top{m.sc, m.surface.target_row(), m.h};
  return dec_right_action(top, sr.split_h(shift), sr.split_g(shift));
}

double doubly_distance(const DoublyDecoratedMorphism& a, const DoublyDecoratedMorphism& b) {
  return std::max({surface_distance(a.surface, b.surface), a.sc->H().distance(a.h, b.h),
                   a.sc->K().distance(a.k, b.k)});
}

DoublyDecoratedMorphism doubly_dec_compose(const DoublyDecoratedMorphism& m2,
                                           const DoublyDecoratedMorphism& m1,
                                           double tol) {
  const Scenario& sc = *m1.sc;
  const SemidirectRealization& sr = sc.dbl->object_group;
  GroupElement shift = sc.dbl->cm2.tau(m1.k);
  GroupElement h1 = sr.split_h(shift);
  GroupElement g1 = sr.split_g(shift);
  // act on (Delta, h) by 1_{tau2(k')}
  SampledSurface acted_surface = m2.surface.right_translated(g1);
  GroupElement acted_h =
      sc.cm.alpha(sc.G().inverse(g1), sc.H().multiply(sc.H().inverse(h1), m2.h));
  const double deco_gap = sc.H().distance(acted_h, m1.h);
  if (deco_gap > tol)
    throw CompositionError(
        "doubly decorated morphisms not composable (decoration mismatch " +
            std::to_string(deco_gap) + ")",
        deco_gap);
  SampledSurface glued = compose_surfaces(m1.surface, acted_surface, tol);
  return DoublyDecoratedMorphism{&sc, std::move(glued), m1.h,
                                 sc.K().multiply(m2.k, m1.k)};
}

DoublyDecoratedMorphism doubly_dec_right_action(const DoublyDecoratedMorphism& m,
                                                const GroupElement& k1,
                                                const GroupElement& h1,
                                                const GroupElement& g1) {
  const Scenario& sc = *m.sc;
  const SemidirectRealization& sr = sc.dbl->object_group;
  GroupElement new_h =
      sc.cm.alpha(sc.G().inverse(g1), sc.H().multiply(sc.H().inverse(h1), m.h));
  GroupElement h1g1 = sr.model->multiply(sr.embed_h(h1), sr.embed_g(g1));
  GroupElement new_k = sc.dbl->cm2.alpha(
      sr.model->inverse(h1g1), sc.K().multiply(sc.K().inverse(k1), m.k));
  return DoublyDecoratedMorphism{&sc, m.surface.right_translated(g1), std::move(new_h),
                                 std::move(new_k)};
}

DoublyDecoratedMorphism transport_decorated_morphism(const Scenario& sc,
                                                     const SampledSurface& base,
                                                     const DecoratedMorphism& start) {
  SampledSurface lifted = surface_horizontal_lift(sc, base, start.lift);
  GroupElement k = kappa_star(
      sc, [&sc](const SampledSurface& s) { return kstar_from_forms(sc, s); }, lifted,
      start.h);
  return DoublyDecoratedMorphism{&sc, std::move(lifted), start.h, std::move(k)};
}

DecoratedMorphism transport_decorated_path(const Scenario& sc, const SampledSurface& base,
                                           const DecoratedMorphism& start) {
  return doubly_target(transport_decorated_morphism(sc, base, start));
}

}  // namespace catransport
