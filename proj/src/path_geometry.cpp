#include "catransport/path_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace catransport {

namespace {

constexpr double kConstTol = 1e-12;

double sample_gap(const SampledPath& p, int i, int j) {
  double d = (p.point(i) - p.point(j)).cwiseAbs().maxCoeff();
  if (p.has_fiber())
    d = std::max(d, p.fiber(i).model().distance(p.fiber(i), p.fiber(j)));
  return d;
}

void validate_margin(const SampledPath& p) {
  if (p.margin() < 0) throw GridError("negative margin");
  if (2 * p.margin() > p.cells())
    throw GridError("margin exceeds half the path length");
  for (int i = 1; i <= p.margin(); ++i) {
    if (sample_gap(p, 0, i) > kConstTol)
      throw GridError("leading margin samples are not constant");
    if (sample_gap(p, p.cells(), p.cells() - i) > kConstTol)
      throw GridError("trailing margin samples are not constant");
  }
}

bool steps_match(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }

// parameter in grid cells; values within 1e-9 cells of a node snap onto it
double grid_coordinate(double t, double dt, int cells) {
  double u = std::clamp(t / dt, 0.0, static_cast<double>(cells));
  const double nearest = std::round(u);
  if (std::abs(u - nearest) < 1e-9) u = nearest;
  return u;
}

double junction_gap(const SampledPath& f, const SampledPath& g) {
  double d = (f.point(f.cells()) - g.point(0)).cwiseAbs().maxCoeff();
  if (f.has_fiber() && g.has_fiber())
    d = std::max(d, f.fiber(f.cells()).model().distance(f.fiber(f.cells()), g.fiber(0)));
  return d;
}

}  // namespace

SampledPath::SampledPath(double dt, std::vector<Eigen::VectorXd> base, int margin)
    : dt_(dt), base_(std::move(base)), margin_(margin) {
  if (base_.size() < 2) throw GridError("path needs at least two samples");
  if (dt_ <= 0) throw GridError("grid step must be positive");
  validate_margin(*this);
}

SampledPath::SampledPath(double dt, std::vector<Eigen::VectorXd> base,
                         std::vector<GroupElement> fiber, int margin)
    : dt_(dt), base_(std::move(base)), fiber_(std::move(fiber)), margin_(margin) {
  if (base_.size() < 2) throw GridError("path needs at least two samples");
  if (dt_ <= 0) throw GridError("grid step must be positive");
  if (!fiber_.empty() && fiber_.size() != base_.size())
    throw GridError("fiber sample count differs from base sample count");
  validate_margin(*this);
}

Eigen::VectorXd SampledPath::eval(double t) const {
  const double u = grid_coordinate(t, dt_, cells());
  const int i = std::min(static_cast<int>(u), cells() - 1);
  const double w = u - i;
  if (w == 0.0) return base_[i];
  return (1.0 - w) * base_[i] + w * base_[i + 1];
}

SampledPath SampledPath::projected() const { return SampledPath(dt_, base_, margin_); }

SampledPath SampledPath::right_translated(const GroupElement& g) const {
  if (!has_fiber()) throw FiberError("cannot right-translate a base path");
  std::vector<GroupElement> fib;
  fib.reserve(fiber_.size());
  for (const auto& f : fiber_) fib.push_back(f.model().multiply(f, g));
  return SampledPath(dt_, base_, std::move(fib), margin_);
}

double SampledPath::distance(const SampledPath& other) const {
  if (samples() != other.samples()) throw GridError("sample count mismatch");
  double d = 0;
  for (int i = 0; i < samples(); ++i) {
    d = std::max(d, (base_[i] - other.base_[i]).cwiseAbs().maxCoeff());
    if (has_fiber() && other.has_fiber())
      d = std::max(d, fiber_[i].model().distance(fiber_[i], other.fiber_[i]));
  }
  return d;
}

SampledPath compose_paths(const SampledPath& f, const SampledPath& g, double tol) {
  if (!steps_match(f.dt(), g.dt()))
    throw GridError("grid steps differ: " + std::to_string(f.dt()) + " vs " +
                    std::to_string(g.dt()));
  if (f.has_fiber() != g.has_fiber())
    throw GridError("cannot compose a base path with a bundle path");
  const double gap = junction_gap(f, g);
  if (gap > tol)
    throw CompositionError("path endpoints do not match, distance " +
                               std::to_string(gap),
                           gap);
  std::vector<Eigen::VectorXd> base = f.points();
  base.insert(base.end(), g.points().begin() + 1, g.points().end());
  const int margin = std::min(f.margin(), g.margin());
  if (!f.has_fiber()) return SampledPath(f.dt(), std::move(base), margin);
  std::vector<GroupElement> fiber = f.fibers();
  fiber.insert(fiber.end(), g.fibers().begin() + 1, g.fibers().end());
  return SampledPath(f.dt(), std::move(base), std::move(fiber), margin);
}

SampledPath reverse_path(const SampledPath& d) {
  std::vector<Eigen::VectorXd> base(d.points().rbegin(), d.points().rend());
  if (!d.has_fiber()) return SampledPath(d.dt(), std::move(base), d.margin());
  std::vector<GroupElement> fiber(d.fibers().rbegin(), d.fibers().rend());
  return SampledPath(d.dt(), std::move(base), std::move(fiber), d.margin());
}

SampledPath reparametrize(const SampledPath& p, const std::vector<double>& phi) {
  if (phi.size() < 2) throw GridError("reparametrization needs at least two samples");
  for (size_t i = 1; i < phi.size(); ++i)
    if (phi[i] <= phi[i - 1])
      throw Error("reparametrization function is not strictly increasing");
  if (std::abs(phi.front()) > 1e-12 || std::abs(phi.back() - p.duration()) > 1e-9)
    throw Error("reparametrization must preserve the endpoints");
  const int n = static_cast<int>(phi.size()) - 1;
  std::vector<Eigen::VectorXd> base;
  base.reserve(phi.size());
  std::vector<GroupElement> fiber;
  for (double t : phi) {
    const double u = grid_coordinate(t, p.dt(), p.cells());
    const int i = std::min(static_cast<int>(u), p.cells() - 1);
    const double w = u - i;
    base.push_back(w == 0.0 ? p.point(i)
                            : Eigen::VectorXd((1.0 - w) * p.point(i) + w * p.point(i + 1)));
    if (p.has_fiber()) {
      if (w == 0.0) {
        fiber.push_back(p.fiber(i));
      } else {
        const GroupElement& a = p.fiber(i);
        const GroupElement& b = p.fiber(i + 1);
        if (a.model().kind() == GroupModel::Kind::matrix)
          fiber.push_back(GroupElement(
              &a.model(), Eigen::MatrixXd((1.0 - w) * a.matrix() + w * b.matrix())));
        else
          fiber.push_back(GroupElement(
              &a.model(), Eigen::VectorXd((1.0 - w) * a.vector() + w * b.vector())));
      }
    }
  }
  // margins are recomputed from the actual samples
  int lead = 0;
  while (lead + 1 < static_cast<int>(base.size()) &&
         (base[lead + 1] - base[0]).cwiseAbs().maxCoeff() <= kConstTol)
    ++lead;
  int trail = 0;
  while (trail + 1 < static_cast<int>(base.size()) &&
         (base[base.size() - 2 - trail] - base.back()).cwiseAbs().maxCoeff() <= kConstTol)
    ++trail;
  int margin = std::min({lead, trail, n / 2});
  const double dt = p.duration() / n;
  if (p.has_fiber()) return SampledPath(dt, std::move(base), std::move(fiber), margin);
  return SampledPath(dt, std::move(base), margin);
}

SampledPath insert_backtrack(const SampledPath& p, int at, const SampledPath& spur,
                             double tol) {
  if (at < 0 || at > p.cells()) throw GridError("insertion index out of range");
  if (!steps_match(p.dt(), spur.dt())) throw GridError("spur grid step differs");
  if (p.has_fiber() != spur.has_fiber())
    throw GridError("spur and path must both be base or both be bundle paths");
  double gap = (p.point(at) - spur.point(0)).cwiseAbs().maxCoeff();
  if (p.has_fiber())
    gap = std::max(gap, p.fiber(at).model().distance(p.fiber(at), spur.fiber(0)));
  if (gap > tol)
    throw CompositionError("spur does not start at the insertion point, distance " +
                               std::to_string(gap),
                           gap);
  std::vector<Eigen::VectorXd> base(p.points().begin(), p.points().begin() + at + 1);
  for (int i = 1; i <= spur.cells(); ++i) base.push_back(spur.point(i));
  for (int i = spur.cells() - 1; i >= 0; --i) base.push_back(spur.point(i));
  base.insert(base.end(), p.points().begin() + at + 1, p.points().end());
  const int margin = std::min({p.margin(), at, p.cells() - at});
  if (!p.has_fiber()) return SampledPath(p.dt(), std::move(base), margin);
  std::vector<GroupElement> fiber(p.fibers().begin(), p.fibers().begin() + at + 1);
  for (int i = 1; i <= spur.cells(); ++i) fiber.push_back(spur.fiber(i));
  for (int i = spur.cells() - 1; i >= 0; --i) fiber.push_back(spur.fiber(i));
  fiber.insert(fiber.end(), p.fibers().begin() + at + 1, p.fibers().end());
  return SampledPath(p.dt(), std::move(base), std::move(fiber), margin);
}

SampledPath erase_backtrack(const SampledPath& p, const BacktrackWindow& w, double tol) {
  const int lo = w.start, c = w.start + w.half_cells, hi = w.start + 2 * w.half_cells;
  if (lo < 0 || hi > p.cells() || w.half_cells <= 0)
    throw GridError("backtrack window out of range");
  for (int j = 1; j <= w.half_cells; ++j)
    if (sample_gap(p, c - j, c + j) > tol)
      throw BacktrackError("mirror condition violated at offset " + std::to_string(j));
  std::vector<Eigen::VectorXd> base(p.points().begin(), p.points().begin() + lo + 1);
  base.insert(base.end(), p.points().begin() + hi + 1, p.points().end());
  std::vector<GroupElement> fiber;
  if (p.has_fiber()) {
    fiber.assign(p.fibers().begin(), p.fibers().begin() + lo + 1);
    fiber.insert(fiber.end(), p.fibers().begin() + hi + 1, p.fibers().end());
  }
  if (base.size() < 2) {
    // total cancellation: keep a minimal constant representative
    base.push_back(base.front());
    if (p.has_fiber()) fiber.push_back(fiber.front());
  }
  const int margin = std::min(p.margin(), (static_cast<int>(base.size()) - 1) / 2);
  if (!p.has_fiber()) return SampledPath(p.dt(), std::move(base), margin);
  return SampledPath(p.dt(), std::move(base), std::move(fiber), margin);
}

std::vector<BacktrackWindow> detect_backtracks(const SampledPath& p, double tol) {
  std::vector<BacktrackWindow> out;
  for (int c = 1; c < p.cells(); ++c) {
    int k = 0;
    while (c - (k + 1) >= 0 && c + (k + 1) <= p.cells() &&
           sample_gap(p, c - (k + 1), c + (k + 1)) <= tol)
      ++k;
    if (k == 0) continue;
    bool varies = false;
    for (int j = 1; j <= k && !varies; ++j)
      varies = sample_gap(p, c - j, c) > kConstTol;
    if (varies) out.push_back(BacktrackWindow{c - k, k});
  }
  return out;
}

bool is_constant_path(const SampledPath& p, double tol) {
  for (int i = 1; i <= p.cells(); ++i)
    if (sample_gap(p, 0, i) > tol) return false;
  return true;
}

SampledPath canonicalize_identity(const SampledPath& p) {
  auto slice = [&](int lo, int hi) {
    std::vector<Eigen::VectorXd> base(p.points().begin() + lo, p.points().begin() + hi + 1);
    if (!p.has_fiber()) return SampledPath(p.dt(), std::move(base), p.margin());
    std::vector<GroupElement> fiber(p.fibers().begin() + lo, p.fibers().begin() + hi + 1);
    return SampledPath(p.dt(), std::move(base), std::move(fiber), p.margin());
  };
  if (is_constant_path(p)) {
    // minimal representative of the identity class at this point
    const int n = std::max(2 * p.margin(), 1);
    std::vector<Eigen::VectorXd> base(n + 1, p.point(0));
    if (!p.has_fiber()) return SampledPath(p.dt(), std::move(base), p.margin());
    std::vector<GroupElement> fiber(n + 1, p.fiber(0));
    return SampledPath(p.dt(), std::move(base), std::move(fiber), p.margin());
  }
  int lead = 0;
  while (sample_gap(p, 0, lead + 1) <= kConstTol) ++lead;
  int trail = 0;
  while (sample_gap(p, p.cells(), p.cells() - trail - 1) <= kConstTol) ++trail;
  const int lo = std::max(0, lead - p.margin());
  const int hi = p.cells() - std::max(0, trail - p.margin());
  if (lo == 0 && hi == p.cells()) return p;
  return slice(lo, hi);
}

// ---------------------------------------------------------------------------
// SampledSurface

SampledSurface::SampledSurface(double ds, std::vector<SampledPath> rows, int margin_s)
    : ds_(ds), rows_(std::move(rows)), margin_s_(margin_s) {
  if (rows_.size() < 2) throw GridError("surface needs at least two rows");
  if (ds_ <= 0) throw GridError("grid step must be positive");
  for (const auto& r : rows_)
    if (r.samples() != rows_.front().samples() || !steps_match(r.dt(), rows_.front().dt()))
      throw GridError("surface rows disagree on the t-grid");
  if (2 * margin_s_ > s_cells()) throw GridError("s-margin exceeds half the surface");
  for (int i = 1; i <= margin_s_; ++i) {
    if (rows_[0].distance(rows_[i]) > kConstTol ||
        rows_[s_cells()].distance(rows_[s_cells() - i]) > kConstTol)
      throw GridError("margin rows are not constant in s");
  }
}

SampledSurface SampledSurface::projected() const {
  std::vector<SampledPath> rows;
  rows.reserve(rows_.size());
  for (const auto& r : rows_) rows.push_back(r.projected());
  return SampledSurface(ds_, std::move(rows), margin_s_);
}

SampledSurface SampledSurface::right_translated(const GroupElement& g) const {
  std::vector<SampledPath> rows;
  rows.reserve(rows_.size());
  for (const auto& r : rows_) rows.push_back(r.right_translated(g));
  return SampledSurface(ds_, std::move(rows), margin_s_);
}

SampledSurface compose_surfaces(const SampledSurface& f, const SampledSurface& g,
                                double tol) {
  if (!steps_match(f.ds(), g.ds()) || !steps_match(f.dt(), g.dt()) ||
      f.t_cells() != g.t_cells())
    throw GridError("surface grids are not compatible");
  const double gap = f.target_row().distance(g.source_row());
  if (gap > tol)
    throw CompositionError("surface junction rows do not match, distance " +
                               std::to_string(gap),
                           gap);
  std::vector<SampledPath> rows = f.rows();
  rows.insert(rows.end(), g.rows().begin() + 1, g.rows().end());
  return SampledSurface(f.ds(), std::move(rows), std::min(f.margin_s(), g.margin_s()));
}

double surface_distance(const SampledSurface& a, const SampledSurface& b) {
  if (a.s_cells() != b.s_cells()) throw GridError("row count mismatch");
  double d = 0;
  for (int j = 0; j <= a.s_cells(); ++j) d = std::max(d, a.row(j).distance(b.row(j)));
  return d;
}

// ---------------------------------------------------------------------------
// fixtures

double smoothstep(double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  return x * x * x * (10 + x * (-15 + 6 * x));
}

double margin_warp(double u, double m) {
  if (m <= 0) return u;
  return smoothstep((u - m) / (1 - 2 * m));
}

SampledPath sample_base_path(const std::function<Eigen::VectorXd(double)>& curve,
                             int cells, int margin) {
  if (cells < 2) throw GridError("need at least two cells");
  const double m = static_cast<double>(margin) / cells;
  std::vector<Eigen::VectorXd> base;
  base.reserve(cells + 1);
  for (int i = 0; i <= cells; ++i)
    base.push_back(curve(margin_warp(static_cast<double>(i) / cells, m)));
  return SampledPath(1.0 / cells, std::move(base), margin);
}

SampledSurface sample_base_surface(
    const std::function<Eigen::VectorXd(double, double)>& sheet, int s_cells,
    int t_cells, int margin_s, int margin_t) {
  const double ms = static_cast<double>(margin_s) / s_cells;
  const double mt = static_cast<double>(margin_t) / t_cells;
  std::vector<SampledPath> rows;
  rows.reserve(s_cells + 1);
  for (int j = 0; j <= s_cells; ++j) {
    const double s = margin_warp(static_cast<double>(j) / s_cells, ms);
    std::vector<Eigen::VectorXd> base;
    base.reserve(t_cells + 1);
    for (int i = 0; i <= t_cells; ++i)
      base.push_back(sheet(s, margin_warp(static_cast<double>(i) / t_cells, mt)));
    rows.emplace_back(1.0 / t_cells, std::move(base), margin_t);
  }
  return SampledSurface(1.0 / s_cells, std::move(rows), margin_s);
}

// ---------------------------------------------------------------------------
// CSV

void write_path_csv(const std::string& file, const SampledPath& p) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot open " + file + " for writing");
  out << "t";
  for (int k = 0; k < p.base_dim(); ++k) out << ",x" << (k + 1);
  int fdim = 0;
  if (p.has_fiber()) {
    fdim = static_cast<int>(p.fiber(0).matrix().rows());
    for (int r = 0; r < fdim; ++r)
      for (int c = 0; c < fdim; ++c) out << ",g" << (r + 1) << (c + 1);
  }
  out << "\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << ',' << buf;
  };
  for (int i = 0; i <= p.cells(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", i * p.dt());
    out << buf;
    for (int k = 0; k < p.base_dim(); ++k) put(p.point(i)[k]);
    if (p.has_fiber()) {
      const Eigen::MatrixXd& g = p.fiber(i).matrix();
      for (int r = 0; r < fdim; ++r)
        for (int c = 0; c < fdim; ++c) put(g(r, c));
    }
    out << "\n";
  }
}

SampledPath read_path_csv(const std::string& file, const GroupModel* fiber_model,
                          int margin) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open " + file);
  std::string line;
  if (!std::getline(in, line)) throw Error("empty path file " + file);
  int n_cols = 1;
  for (char ch : line)
    if (ch == ',') ++n_cols;
  int fdim = 0;
  if (fiber_model) {
    fdim = static_cast<const MatrixGroupModel*>(fiber_model)->matrix_size();
    if (n_cols < 1 + fdim * fdim) throw Error("path file lacks fiber columns");
  }
  const int xdim = n_cols - 1 - fdim * fdim;
  std::vector<Eigen::VectorXd> base;
  std::vector<GroupElement> fiber;
  std::vector<double> times;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    if (static_cast<int>(vals.size()) != n_cols) throw Error("ragged row in " + file);
    times.push_back(vals[0]);
    Eigen::VectorXd x(xdim);
    for (int k = 0; k < xdim; ++k) x[k] = vals[1 + k];
    base.push_back(std::move(x));
    if (fiber_model) {
      Eigen::MatrixXd g(fdim, fdim);
      for (int r = 0; r < fdim; ++r)
        for (int c = 0; c < fdim; ++c) g(r, c) = vals[1 + xdim + r * fdim + c];
      fiber.push_back(GroupElement(fiber_model, std::move(g)));
    }
  }
  if (times.size() < 2) throw Error("path file has fewer than two samples");
  const double dt = (times.back() - times.front()) / (times.size() - 1);
  if (fiber_model) return SampledPath(dt, std::move(base), std::move(fiber), margin);
  return SampledPath(dt, std::move(base), margin);
}

}  // namespace catransport
