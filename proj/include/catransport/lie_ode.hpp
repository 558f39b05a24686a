#pragma once

#include <functional>
#include <vector>

#include "catransport/group_models.hpp"
#include "catransport/path_geometry.hpp"

namespace catransport {

/// Right-hand side samples for a left-invariant ODE, one algebra element
/// per grid cell (evaluated at the cell midpoint).
struct AlgebraSampler {
  double dt = 0;
  std::vector<AlgebraElement> values;
  int cells() const { return static_cast<int>(values.size()); }
};

/// Solve w^-1 w' = rhs by exponential midpoint stepping:
/// w_{k+1} = w_k exp(dt rhs_k). Returns all nodes w_0..w_N. The solution is
/// accumulated from the identity and left-multiplied by `init` at the end,
/// so left-translation covariance holds bitwise.
std::vector<GroupElement> solve_left_ode(const GroupModel& model,
                                         const AlgebraSampler& rhs);
std::vector<GroupElement> solve_left_ode(const GroupModel& model,
                                         const AlgebraSampler& rhs,
                                         const GroupElement& init);

/// The per-cell factors exp(dt rhs_k) themselves.
std::vector<GroupElement> ode_factors(const GroupModel& model, const AlgebraSampler& rhs);

/// Plaquette of a sampled surface: corner-averaged position and fiber plus
/// the symmetrized difference vectors in the two grid directions. The two
/// differences carry the dt and ds factors, so midpoint sums over
/// plaquettes need no further scaling and mirror-symmetric contributions
/// cancel exactly.
struct Plaquette {
  Eigen::VectorXd x;        // corner-averaged base point
  Eigen::MatrixXd g;        // corner-averaged fiber matrix (if any)
  bool has_fiber = false;
  Eigen::VectorXd dt_x;     // difference along t
  Eigen::VectorXd ds_x;     // difference along s
};

Plaquette plaquette(const SampledSurface& surface, int j_s, int i_t);

/// Evaluate an L(K)-valued 2-form on a plaquette; implementations receive
/// the corner-averaged point/fiber and both difference vectors.
using PlaquetteForm = std::function<AlgebraElement(const Plaquette&)>;

struct SurfaceSolution {
  std::vector<GroupElement> nodes;  // s-grid values, nodes[0] = identity
  GroupElement value() const { return nodes.back(); }
};

/// Surface composition functional: solve, along the s direction,
/// w^-1 w' = -integral_t C(plaquette) with w(s0) = e, the inner integral
/// being the midpoint sum of `form` over the row of plaquettes. Returns
/// w over all s nodes; w_C(f) is the final value.
SurfaceSolution w_C(const GroupModel& K, const SampledSurface& surface,
                    const PlaquetteForm& form);

/// Boundary-corrected functional w_{C,0}(f) = w0(s(f)) w_C(f) w0(t(f))^-1.
GroupElement w_C0(const GroupModel& K, const SampledSurface& surface,
                  const PlaquetteForm& form,
                  const std::function<GroupElement(const SampledPath&)>& w0);

}  // namespace catransport
