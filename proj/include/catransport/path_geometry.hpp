#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "catransport/group_models.hpp"

namespace catransport {

/// Point of the trivial bundle M x G.
struct BundlePoint {
  Eigen::VectorXd x;
  GroupElement g;
};

/// Uniformly sampled path on the base (points only) or on the bundle
/// (points plus fiber elements). Domains are normalized to start at 0; the
/// time-translation class is represented by (dt, sample count). The first
/// and last `margin` grid cells carry constant samples, which keeps
/// composites smooth at junctions.
class SampledPath {
 public:
  SampledPath(double dt, std::vector<Eigen::VectorXd> base, int margin);
  SampledPath(double dt, std::vector<Eigen::VectorXd> base,
              std::vector<GroupElement> fiber, int margin);

  int cells() const { return static_cast<int>(base_.size()) - 1; }
  int samples() const { return static_cast<int>(base_.size()); }
  double dt() const { return dt_; }
  double duration() const { return dt_ * cells(); }
  int margin() const { return margin_; }
  bool has_fiber() const { return !fiber_.empty(); }
  int base_dim() const { return static_cast<int>(base_.front().size()); }

  const Eigen::VectorXd& point(int i) const { return base_[i]; }
  const GroupElement& fiber(int i) const { return fiber_[i]; }
  const std::vector<Eigen::VectorXd>& points() const { return base_; }
  const std::vector<GroupElement>& fibers() const { return fiber_; }

  BundlePoint bundle_point(int i) const { return BundlePoint{base_[i], fiber_[i]}; }

  /// Linear interpolation of the base samples at parameter t in [0, duration].
  Eigen::VectorXd eval(double t) const;

  /// Drop the fiber component (projection to the base).
  SampledPath projected() const;

  /// Right-translate every fiber sample by g.
  SampledPath right_translated(const GroupElement& g) const;

  /// Max distance to another path with the same grid (base and fiber).
  double distance(const SampledPath& other) const;

 private:
  double dt_;
  std::vector<Eigen::VectorXd> base_;
  std::vector<GroupElement> fiber_;
  int margin_;
};

/// Grid-aligned mirror window: the path satisfies
/// p(T + u) = p(T + 2 delta - u) on samples, with T = start * dt and
/// delta = half_cells * dt.
struct BacktrackWindow {
  int start;       // grid index of T
  int half_cells;  // delta in cells
  double T(double dt) const { return start * dt; }
  double delta(double dt) const { return half_cells * dt; }
};

/// f followed by g (the composite g o f); endpoints must agree and grid
/// steps must match. The shared junction sample is stored once.
SampledPath compose_paths(const SampledPath& f, const SampledPath& g, double tol = 1e-9);

SampledPath reverse_path(const SampledPath& d);

/// Resample p at the parameter values phi (increasing, into [0, duration]),
/// by linear interpolation; the result keeps p's duration on a uniform grid.
SampledPath reparametrize(const SampledPath& p, const std::vector<double>& phi);

/// Insert the backtracking excursion spur . spur^-1 at sample index `at`.
SampledPath insert_backtrack(const SampledPath& p, int at, const SampledPath& spur,
                             double tol = 1e-9);

/// Remove the mirror window from p; samples in (T, T+2delta] are dropped.
SampledPath erase_backtrack(const SampledPath& p, const BacktrackWindow& w,
                            double tol = 1e-9);

/// All maximal grid-aligned mirror windows (constant stretches excluded).
std::vector<BacktrackWindow> detect_backtracks(const SampledPath& p, double tol = 1e-9);

/// Constant paths collapse to the minimal margin-only representative;
/// otherwise leading/trailing constant runs are trimmed down to the margin.
SampledPath canonicalize_identity(const SampledPath& p);

bool is_constant_path(const SampledPath& p, double tol = 1e-12);

/// Path of paths: rows indexed by s, each row a SampledPath over the same
/// t-grid. The first and last margin_s rows are identical.
class SampledSurface {
 public:
  SampledSurface(double ds, std::vector<SampledPath> rows, int margin_s);

  int s_cells() const { return static_cast<int>(rows_.size()) - 1; }
  double ds() const { return ds_; }
  int t_cells() const { return rows_.front().cells(); }
  double dt() const { return rows_.front().dt(); }
  int margin_s() const { return margin_s_; }
  bool has_fiber() const { return rows_.front().has_fiber(); }

  const SampledPath& row(int j) const { return rows_[j]; }
  const std::vector<SampledPath>& rows() const { return rows_; }
  const SampledPath& source_row() const { return rows_.front(); }
  const SampledPath& target_row() const { return rows_.back(); }

  SampledSurface projected() const;
  SampledSurface right_translated(const GroupElement& g) const;

 private:
  double ds_;
  std::vector<SampledPath> rows_;
  int margin_s_;
};

/// Vertical composition: F followed by G (stacking in the s direction);
/// G's first row must equal F's last row and the t-grids must agree.
SampledSurface compose_surfaces(const SampledSurface& f, const SampledSurface& g,
                                double tol = 1e-9);

double surface_distance(const SampledSurface& a, const SampledSurface& b);

// --- fixture helpers -------------------------------------------------------

/// Clamped quintic smoothstep: 0 for x <= 0, 1 for x >= 1, C^2 in between.
double smoothstep(double x);

/// Warp [0,1] -> [0,1] that is exactly 0 on [0, m] and exactly 1 on
/// [1-m, 1]; used to give analytic fixtures exact margins.
double margin_warp(double u, double m);

/// Sample an analytic curve on a uniform N-cell grid over [0,1] with exact
/// margins of `margin` cells (the curve is evaluated through margin_warp).
SampledPath sample_base_path(const std::function<Eigen::VectorXd(double)>& curve,
                             int cells, int margin);

/// Sample an analytic sheet (s, t) -> R^n with exact margins in both
/// directions.
SampledSurface sample_base_surface(
    const std::function<Eigen::VectorXd(double, double)>& sheet, int s_cells,
    int t_cells, int margin_s, int margin_t);

// --- CSV fixture format ----------------------------------------------------

/// Header `t,x1,...,xn[,g11,...,gkk]`, one row per sample, LF endings.
void write_path_csv(const std::string& file, const SampledPath& p);
SampledPath read_path_csv(const std::string& file, const GroupModel* fiber_model = nullptr,
                          int margin = 0);

}  // namespace catransport
