#pragma once

#include "catransport/decorated_transport.hpp"

namespace catransport {

/// Representation of the structure categorical group on a categorical
/// vector space. The object-level action is rho_obj; the morphism-level
/// action defaults to the pair action on (source vector, target vector).
struct Representation {
  int v_dim;
  std::function<Eigen::VectorXd(const GroupElement& g, const Eigen::VectorXd& v)> rho_obj;

  std::pair<Eigen::VectorXd, Eigen::VectorXd> rho_mor(
      const Morphism2& m, const std::pair<Eigen::VectorXd, Eigen::VectorXd>& vw) const {
    return {rho_obj(mor_source(m), vw.first), rho_obj(mor_target(m), vw.second)};
  }
};

/// Natural action of a matrix group on column vectors.
Representation natural_representation(const GroupModelPtr& g);

/// Equivalence class [p, v] stored in the canonical gauge: the fiber
/// component of p is the identity.
struct TwistedClass {
  Eigen::VectorXd x;
  Eigen::VectorXd v;
};

/// [p, v] -> ((x, e), rho(g) v) for p = (x, g).
TwistedClass normalize_class(const Representation& rep, const BundlePoint& p,
                             const Eigen::VectorXd& v);

double class_distance(const TwistedClass& a, const TwistedClass& b);

/// Parallel transport of [p, v] along f: lift f through p with the supplied
/// categorical connection and return the normalized class at the decorated
/// target.
TwistedClass assoc_transport(const Scenario& sc, const DecoratedLifter& lifter,
                             const Representation& rep, const SampledPath& f,
                             const TwistedClass& cls);

}  // namespace catransport
