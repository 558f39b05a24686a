#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "catransport/crossed_module.hpp"

namespace catransport {
namespace finite {

/// Small category with integer-indexed objects and morphisms and a full
/// composition table (-1 where undefined). Sizes stay at desk scale so
/// every law is checked by enumeration.
struct FiniteCategory {
  int n_obj = 0;
  std::vector<int> mor_src;
  std::vector<int> mor_dst;
  std::vector<int> identity;  // object -> identity morphism
  std::vector<int> compose;   // compose[g * n_mor + f] = g o f, or -1

  int n_mor() const { return static_cast<int>(mor_src.size()); }
  int compose_at(int g, int f) const { return compose[g * n_mor() + f]; }
  void set_compose(int g, int f, int gf) { compose[g * n_mor() + f] = gf; }

  /// Identity and associativity laws plus composability bookkeeping;
  /// returns a witness description on failure.
  std::optional<std::string> check_category() const;
};

FiniteCategory discrete_category(int n_obj);
FiniteCategory codiscrete_category(int n_obj);

/// Categorical group: a finite category whose objects and morphisms carry
/// group tables making s, t and the identity map homomorphisms.
struct FiniteCategoricalGroup {
  FiniteCategory cat;
  std::vector<std::vector<int>> obj_table;
  std::vector<std::vector<int>> mor_table;

  int obj_identity() const;
  int mor_identity() const;

  /// Category laws, group laws, homomorphism properties of s, t, 1_, and
  /// the exchange law, all exhaustive.
  std::optional<std::string> check_axioms() const;
};

/// Only identity morphisms (the discrete categorical group G_d).
FiniteCategoricalGroup discrete_catgroup(const std::vector<std::vector<int>>& table);

/// One morphism between every ordered pair (the codiscrete group K_0).
FiniteCategoricalGroup codiscrete_catgroup(const std::vector<std::vector<int>>& table);

/// Covering-group categorical group: objects hatK/Z, morphisms Z-orbits of
/// arrows hat_a -> hat_b, products from hatK. Z must be central.
FiniteCategoricalGroup build_cg2(const FiniteGroupModel& hatK,
                                 const std::vector<int>& Z);

/// Right action of a finite categorical group on a finite category.
struct CatAction {
  std::vector<std::vector<int>> obj;  // obj[p][z]
  std::vector<std::vector<int>> mor;  // mor[m][zeta]
};

/// Principal categorical bundle data: total category, structure group,
/// action, base category and the projection functor.
struct FiniteBundle {
  FiniteCategory total;
  FiniteCategoricalGroup group;
  CatAction action;
  FiniteCategory base;
  std::vector<int> proj_obj;
  std::vector<int> proj_mor;
};

/// Quotient of a free action: base objects are object orbits, base
/// morphisms are Mor(Z)-orbits, composition through orbit representatives.
FiniteBundle quotient_bundle(const FiniteCategory& total,
                             const FiniteCategoricalGroup& group,
                             const CatAction& action);

/// Surjectivity, freeness, fiber transitivity and functoriality of both the
/// projection and the action; nullopt when all axioms hold.
std::optional<std::string> check_principal_axioms(const FiniteBundle& bundle);

/// Functor data for a reduction P0 -> P along beta: G0 -> G.
struct ReductionData {
  std::shared_ptr<const FiniteBundle> sub;
  std::shared_ptr<const FiniteBundle> full;
  std::vector<int> f_obj;
  std::vector<int> f_mor;
  std::vector<int> beta_obj;
  std::vector<int> beta_mor;
};

/// Fiber preservation and f(p g) = f(p) beta(g) on objects and morphisms.
std::optional<std::string> check_reduction(const ReductionData& red);

// --- worked finite examples -------------------------------------------------

/// Discrete-category bundle of a finite free G-set with n_base fibers.
FiniteBundle example_p1_bundle(const std::vector<std::vector<int>>& g_table, int n_base);

/// Codiscrete structure group acting on pair morphisms over a codiscrete
/// base (the finite shadow of path morphisms).
FiniteBundle example_p2_bundle(const std::vector<std::vector<int>>& g_table, int n_base);

/// The covering construction as a bundle: codiscrete category on hatK
/// quotiented by the discrete categorical group on a subgroup Z (no
/// centrality needed).
FiniteBundle cg2_quotient_bundle(const FiniteGroupModel& hatK, const std::vector<int>& Z);

/// Bundle with a deliberately non-transitive fiber (two object orbits over
/// one base object); check_principal_axioms must return a witness.
FiniteBundle broken_fiber_bundle(const std::vector<std::vector<int>>& g_table);

/// Embedding of the discrete categorical group bundle into the categorical
/// group of a finite crossed module, over the one-point base.
ReductionData decorated_reduction_fixture(const CrossedModule& cm);
FiniteBundle catgroup_over_point(const FiniteCategoricalGroup& g);

// --- categorical group <-> crossed module round trip ------------------------

/// Categorical group of a finite crossed module: objects G, morphisms
/// (h, a) with source a and target tau(h) a.
FiniteCategoricalGroup catgroup_from_crossed_module(const CrossedModule& cm);

/// Round trip: categorical group -> crossed module -> categorical group,
/// followed by an exhaustive structural isomorphism check.
std::optional<std::string> check_catgrp_roundtrip(const CrossedModule& cm);

// --- freely reduced words (finite shadow of the loop group) -----------------

/// Letters are nonzero ints; -x is the formal inverse of x. Words are kept
/// freely reduced, so composition is concatenation plus cancellation --
/// backtrack erasure in symbolic form.
using Word = std::vector<int>;

Word word_reduce(const Word& w);
Word word_concat(const Word& a, const Word& b);
Word word_inverse(const Word& a);

/// Group laws on all words up to max_len over an alphabet; nullopt = pass.
std::optional<std::string> check_word_group(int alphabet, int max_len);

}  // namespace finite
}  // namespace catransport
