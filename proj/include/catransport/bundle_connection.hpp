#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "catransport/crossed_module.hpp"
#include "catransport/lie_ode.hpp"
#include "catransport/path_geometry.hpp"

namespace catransport {

/// Algebra-valued 1-form on the base, linear in the vector argument. An
/// analytic exterior derivative may be supplied; otherwise curvature falls
/// back to central finite differences.
struct OneForm {
  std::function<AlgebraElement(const Eigen::VectorXd& x, const Eigen::VectorXd& v)> eval;
  std::function<AlgebraElement(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                               const Eigen::VectorXd& w)>
      d;
};

/// Algebra-valued 2-form on the base, bilinear and antisymmetric.
struct TwoForm {
  std::function<AlgebraElement(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                               const Eigen::VectorXd& w)>
      eval;
};

/// Trivial principal bundle M x G; bundle points are (x, g).
struct TrivialBundle {
  int base_dim;
  GroupModelPtr G;
};

/// Named scenario: crossed module, base-space representatives of all the
/// forms, and the doubly-decorated layer built on the semidirect product.
/// Bundle-level forms are generated from these by the equivariant twist
/// alpha(g^-1) applied to the base value on projected vectors.
struct Scenario {
  std::string name;
  TrivialBundle bundle;
  CrossedModule cm;       // (G, H, alpha, tau)
  OneForm a;              // L(G)-valued connection form A
  OneForm abar;           // L(G)-valued connection form Abar (defines lifts)
  TwoForm b;              // L(H)-valued
  OneForm c;              // L(H)-valued, for categorical connections
  std::function<GroupElement(const Eigen::VectorXd&)> phi;  // H-valued on M
  std::shared_ptr<DoubleModule> dbl;                        // two-level layer
  OneForm c1;             // L(K)-valued
  TwoForm c2;             // L(K)-valued

  const GroupModel& G() const { return *cm.G; }
  const GroupModel& H() const { return *cm.H; }
  const GroupModel& K() const { return *dbl->object_group.model; }
};

/// Scenario catalog; names are stable identifiers used by the CLI.
const Scenario& scenario(const std::string& name);
std::vector<std::string> scenario_names();

/// Variation field along a lifted path: the projected motion v(t) plus the
/// Abar-vertical coordinate Abar(v~(t)).
struct VariationField {
  std::vector<Eigen::VectorXd> base_variation;
  std::vector<AlgebraElement> vertical_part;
  bool one_sided = false;
};

// --- connection machinery --------------------------------------------------

/// Unique Abar-horizontal lift of gamma through u0 (fiber ODE by
/// exponential midpoint factors; right-equivariant at the factor level).
SampledPath horizontal_lift_path(const Scenario& sc, const SampledPath& gamma,
                                 const BundlePoint& u0, double tol = 1e-9);

/// Max |Abar(lift'(t))| over cell midpoints; lifts produced here stay below
/// the O(h^2) level.
double horizontality_residual(const Scenario& sc, const SampledPath& lift);

/// Curvature F = dA(v, w) + [A(v), A(w)] of an algebra-valued 1-form; dA is
/// analytic when the form carries one, else central differences.
AlgebraElement curvature(const GroupModel& model, const OneForm& form,
                         const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                         const Eigen::VectorXd& w, double fd_step = 1e-5);

/// Variation field of a lifted surface in the s direction at a row;
/// boundary rows use one-sided differences (flagged).
VariationField variation_field(const Scenario& sc, const SampledSurface& lift,
                               int s_index);

/// Field along a lift whose vertical part is built from the tangency
/// integral of a prescribed projected motion, seeded with init_vertical.
VariationField tangency_field(const Scenario& sc, const SampledPath& lift,
                              const std::vector<Eigen::VectorXd>& base_field,
                              const AlgebraElement& init_vertical);

/// Max deviation |d/dt Abar(v~) - F(lift', v~)| over interior nodes.
double tangency_residual(const Scenario& sc, const SampledPath& lift,
                         const VariationField& v);

/// Pathspace connection form: A(v~(t0)) + tau[ Chen integral of B ].
AlgebraElement eval_omega_AB(const Scenario& sc, const SampledPath& lift,
                             const VariationField& v);

/// Field precomposition v -> v o phi matching reparametrize(lift, phi).
VariationField reparametrize_field(const VariationField& v, const SampledPath& lift,
                                   const std::vector<double>& phi);

/// |omega(v~) - omega(v~ o phi)|.
double check_reparam_invariance(const Scenario& sc, const SampledPath& lift,
                                const VariationField& v, const std::vector<double>& phi);

struct BacktrackInvarianceReport {
  double omega_residual = 0;   // |omega(v~) - omega(v~ restricted)|
  double lift_residual = 0;    // erased lift vs lift of erased path
};

/// gamma carries a mirror window; the field is psi(position) so it mirrors
/// with the path, with vertical seed init_vertical.
BacktrackInvarianceReport check_backtrack_invariance(
    const Scenario& sc, const SampledPath& gamma, const BacktrackWindow& w,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& psi,
    const AlgebraElement& init_vertical);

/// omega_(A,B)-horizontal lift of a path of paths: the initial-point motion
/// q(s) solves q' = -abar(ds Gamma(s,t0)) q - q tau_alg(Z(s)) and each row
/// is the Abar-horizontal lift from (Gamma(s,t0), q(s)). One predictor and
/// one corrector round per s cell keep the scheme second order while the
/// per-cell recursion makes vertical composition grid-exact.
SampledSurface surface_horizontal_lift(const Scenario& sc, const SampledSurface& base,
                                       const SampledPath& gamma0_lift, double tol = 1e-6);

/// Max |omega(ds row)| over interior rows of a lifted surface.
double surface_omega_residual(const Scenario& sc, const SampledSurface& lift);

struct ThinHomotopyReport {
  double initial_drift = 0;    // motion of the lifted initial points
  double max_minor = 0;        // 2x2 minors of projected+vertical partials
  double row_residual = 0;     // rows vs fresh lifts from the shared point
};

/// Gamma(u, v) = gamma(phi2(u, v)) with fixed endpoints; verifies that the
/// lift keeps the initial point, that lifted partials stay dependent, and
/// that rows are lifts from the shared initial point.
ThinHomotopyReport check_thin_homotopy(const Scenario& sc, const SampledPath& gamma,
                                       const std::function<double(double, double)>& phi2,
                                       int s_cells);

struct ConnectionPropertiesReport {
  double equivariance = 0;  // omega(v~ g) vs Ad(g^-1) omega(v~)
  double vertical = 0;      // omega(Y~) vs Y
};

ConnectionPropertiesReport check_connection_properties(const Scenario& sc,
                                                       const SampledPath& lift,
                                                       const VariationField& v,
                                                       int samples,
                                                       std::uint64_t seed = 11);

// --- equivariant twists (shared with the transport layer) ------------------

/// Ad(g^-1) x for a fiber matrix g (corner averages allowed).
AlgebraElement twist_ad_inv(const GroupModel& G, const Eigen::MatrixXd& g,
                            const AlgebraElement& x);

/// alpha(g^-1) z for an L(H) value.
AlgebraElement twist_alpha_inv(const CrossedModule& cm, const Eigen::MatrixXd& g,
                               const AlgebraElement& z);

/// alpha2(embed(g)^-1) z for an L(K) value.
AlgebraElement twist_k_inv(const Scenario& sc, const Eigen::MatrixXd& g,
                           const AlgebraElement& z);

}  // namespace catransport
