#pragma once

#include <functional>
#include <string>

#include "catransport/group_models.hpp"

namespace catransport {

/// Crossed module (G, H, alpha, tau): tau: H -> G and alpha: G -> Aut(H)
/// satisfying the Peiffer identities. alpha_alg and tau_alg are the induced
/// Lie-algebra maps, supplied explicitly rather than differentiated
/// numerically.
struct CrossedModule {
  std::string name;
  GroupModelPtr G;
  GroupModelPtr H;
  std::function<GroupElement(const GroupElement& g, const GroupElement& h)> alpha;
  std::function<AlgebraElement(const GroupElement& g, const AlgebraElement& z)> alpha_alg;
  std::function<GroupElement(const GroupElement& h)> tau;
  std::function<AlgebraElement(const AlgebraElement& z)> tau_alg;

  GroupElement random_g(Rng& rng) const { return G->random_element(rng); }
  GroupElement random_h(Rng& rng) const { return H->random_element(rng); }
};

/// Morphism (h, a) of the categorical group built from a crossed module:
/// source a, target tau(h) a.
struct Morphism2 {
  const CrossedModule* cm;
  GroupElement h;
  GroupElement a;
};

Morphism2 mor_identity(const CrossedModule& cm, const GroupElement& a);
GroupElement mor_source(const Morphism2& m);
GroupElement mor_target(const Morphism2& m);

/// Composition (h2,b) o (h1,a) = (h2 h1, a); requires target(m1) = source(m2).
Morphism2 mor_compose(const Morphism2& m2, const Morphism2& m1, double tol = 1e-9);

/// Semidirect product on morphisms: (h,a)(k,c) = (h alpha(a)k, ac).
Morphism2 mor_product(const Morphism2& m1, const Morphism2& m2);

/// Inverse for the product: (alpha(a^-1)(h^-1), a^-1).
Morphism2 mor_inverse(const Morphism2& m);

/// Componentwise model distance between morphisms of the same module.
double mor_distance(const Morphism2& m1, const Morphism2& m2);

// --- sampled law checks (each returns the max residual observed) ----------

/// Peiffer identities plus alpha(e) = id.
double check_peiffer(const CrossedModule& cm, int samples, std::uint64_t seed = 1);

/// h o f = f 1_{b^-1} h = h 1_{b^-1} f on composable samples, plus the
/// special case hk = h o k = kh when t(k) = s(h) = e.
double check_compose_via_product(const CrossedModule& cm, int samples,
                                 std::uint64_t seed = 2);

/// Exchange law (f x g) o (f' x g') = (f o f') x (g o g').
double check_exchange_law(const CrossedModule& cm, int samples, std::uint64_t seed = 3);

/// s, t and a -> 1_a are homomorphisms for the product.
double check_catgrp_maps(const CrossedModule& cm, int samples, std::uint64_t seed = 4);

/// Lie-algebra form of the first Peiffer identity:
/// tau_alg(alpha_alg(g) Z) = Ad(g) tau_alg(Z).
double check_alg_peiffer(const CrossedModule& cm, int samples, std::uint64_t seed = 5);

// --- built-in modules ------------------------------------------------------

/// Conjugation module: H = G, tau = id, alpha(g)h = g h g^-1.
CrossedModule conjugation_module(GroupModelPtr g);

/// Abelian module: H = R^n additive, alpha = matrix action of G on R^n,
/// tau = e, tau_alg = 0. G must be a matrix model of size n.
CrossedModule abelian_module(GroupModelPtr g, int n);

/// Finite module Z2 acting trivially on Z4 with tau = reduction mod 2.
CrossedModule finite_z4_z2_module();

/// Matrix realization of the semidirect product H x| G of a built-in
/// crossed module, together with the embeddings of H and G and the
/// inverse splitting. Conjugation modules map (h,g) -> diag(hg, g);
/// abelian modules map (v,R) to homogeneous (n+1)-square matrices.
struct SemidirectRealization {
  GroupModelPtr model;                 // the object/morphism group H x| G
  std::function<GroupElement(const GroupElement& h, const GroupElement& g)> embed;
  std::function<GroupElement(const GroupElement& h)> embed_h;
  std::function<GroupElement(const GroupElement& g)> embed_g;
  std::function<GroupElement(const GroupElement& s)> split_h;  // H part
  std::function<GroupElement(const GroupElement& s)> split_g;  // G part
  std::function<AlgebraElement(const AlgebraElement& zh)> embed_alg_h;
};

SemidirectRealization semidirect_realization(const CrossedModule& cm);

/// Double module for the two-level transport: object group H x| G of `base`,
/// K = the same group, tau2 = id, alpha2 = conjugation.
struct DoubleModule {
  SemidirectRealization object_group;
  CrossedModule cm2;  // (H x| G, K, alpha2, tau2)
};

DoubleModule double_module(const CrossedModule& base);

/// Lemma relating the two levels:
/// alpha2(alpha1(g1^-1)(h1^-1 h))(alpha2(g1^-1) k) = alpha2(g1^-1 h1^-1 h)(k).
double check_lemma_alpha2(const CrossedModule& cm1, const DoubleModule& dm,
                          int samples, std::uint64_t seed = 6);

}  // namespace catransport
