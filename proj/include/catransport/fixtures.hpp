#pragma once

#include "catransport/bundle_connection.hpp"

namespace catransport {
namespace fixtures {

/// Gentle analytic curve in the scenario's base dimension, margin cells/10.
SampledPath base_path(const Scenario& sc, int cells);

/// Continuation of base_path; the junction sample matches bitwise.
SampledPath second_path(const Scenario& sc, int cells);

/// Continuation of second_path.
SampledPath third_path(const Scenario& sc, int cells);

/// Straight spur starting at the given point, on the host path's grid step
/// (for backtrack insertion).
SampledPath spur_path(const Scenario& sc, const Eigen::VectorXd& at, int cells,
                      double dt);

/// Pointwise vector field x -> psi(x); mirrors wherever the path does.
std::function<Eigen::VectorXd(const Eigen::VectorXd&)> field(const Scenario& sc);

/// Small fixed algebra seed for vertical parts.
AlgebraElement vertical_seed(const Scenario& sc);

/// Sheet deforming base_path; its first row equals base_path bitwise.
SampledSurface base_surface(const Scenario& sc, int s_cells, int t_cells);

/// Sheet stacked above base_surface (its first row is the other's last).
SampledSurface second_surface(const Scenario& sc, int s_cells, int t_cells);

/// Sheet stacked above second_surface.
SampledSurface third_surface(const Scenario& sc, int s_cells, int t_cells);

/// Smoothstep-blended reparametrization values over the path's duration.
std::vector<double> smoothstep_phi(const SampledPath& p, int out_cells);

/// Geometrically straight segment with smoothly varying speed: the thin
/// homotopy fixture (every sampled point is collinear, so the discrete
/// Chen integrals of the wiggle family vanish identically).
SampledPath thin_line_path(const Scenario& sc, int cells);

/// phi(u, v) = v + amp 4u(1-u) w(v) with a window w vanishing near the
/// ends; closes up exactly at u = 1.
std::function<double(double, double)> thin_wiggle(double amp = 0.08);

/// Rows [lo, hi] of a surface as a new surface (margins dropped).
SampledSurface slice_rows(const SampledSurface& s, int lo, int hi);

}  // namespace fixtures
}  // namespace catransport
