#include "catransport/associated_bundle.hpp"

namespace catransport {

Representation natural_representation(const GroupModelPtr& g) {
  Representation rep;
  rep.v_dim = static_cast<const MatrixGroupModel&>(*g).matrix_size();
  rep.rho_obj = [m = g.get()](const GroupElement& a, const Eigen::VectorXd& v) {
    m->require_element(a);
    return Eigen::VectorXd(a.matrix() * v);
  };
  return rep;
}

TwistedClass normalize_class(const Representation& rep, const BundlePoint& p,
                             const Eigen::VectorXd& v) {
  return TwistedClass{p.x, rep.rho_obj(p.g, v)};
}

double class_distance(const TwistedClass& a, const TwistedClass& b) {
  return std::max((a.x - b.x).cwiseAbs().maxCoeff(), (a.v - b.v).cwiseAbs().maxCoeff());
}

TwistedClass assoc_transport(const Scenario& sc, const DecoratedLifter& lifter,
                             const Representation& rep, const SampledPath& f,
                             const TwistedClass& cls) {
  const double gap = (cls.x - f.point(0)).cwiseAbs().maxCoeff();
  if (gap > 1e-9)
    throw FiberError("class does not sit over the start of the path (distance " +
                     std::to_string(gap) + ")");
  BundlePoint p{cls.x, sc.G().identity()};
  DecoratedMorphism lift = lifter(f, p);
  return normalize_class(rep, dec_target(lift), cls.v);
}

}  // namespace catransport
