#include "catransport/fixtures.hpp"

#include <cmath>

namespace catransport {
namespace fixtures {

namespace {

constexpr double kPi = 3.14159265358979323846;

int default_margin(int cells) { return std::max(2, cells / 10); }

Eigen::VectorXd curve_at(int dim, double u) {
  if (dim == 2) {
    Eigen::VectorXd x(2);
    x << 0.8 * std::cos(1.2 * u) - 0.8, 0.7 * std::sin(1.0 * u);
    return x;
  }
  Eigen::VectorXd x(3);
  x << 0.8 * std::cos(1.1 * u) - 0.8, 0.7 * std::sin(0.9 * u), 0.4 * u;
  return x;
}

Eigen::VectorXd bump_at(int dim, double t) {
  if (dim == 2) {
    Eigen::VectorXd x(2);
    x << 0.3 * std::sin(kPi * t), 0.25 * t * (1.0 - t);
    return x;
  }
  Eigen::VectorXd x(3);
  x << 0.3 * std::sin(kPi * t), 0.25 * t * (1.0 - t), 0.2 * std::sin(2.0 * kPi * t);
  return x;
}

Eigen::VectorXd bump2_at(int dim, double t) {
  if (dim == 2) {
    Eigen::VectorXd x(2);
    x << 0.2 * std::sin(2.0 * kPi * t), 0.2 * std::sin(kPi * t);
    return x;
  }
  Eigen::VectorXd x(3);
  x << 0.2 * std::sin(2.0 * kPi * t), 0.2 * std::sin(kPi * t), 0.15 * t * (1.0 - t);
  return x;
}

Eigen::VectorXd bump3_at(int dim, double t) {
  if (dim == 2) {
    Eigen::VectorXd x(2);
    x << 0.15 * t * (1.0 - t), 0.12 * std::sin(2.0 * kPi * t);
    return x;
  }
  Eigen::VectorXd x(3);
  x << 0.15 * t * (1.0 - t), 0.12 * std::sin(2.0 * kPi * t), 0.1 * std::sin(kPi * t);
  return x;
}

}  // namespace

SampledPath base_path(const Scenario& sc, int cells) {
  const int dim = sc.bundle.base_dim;
  return sample_base_path([dim](double u) { return curve_at(dim, u); }, cells,
                          default_margin(cells));
}

SampledPath second_path(const Scenario& sc, int cells) {
  const int dim = sc.bundle.base_dim;
  return sample_base_path([dim](double u) { return curve_at(dim, 1.0 + 0.7 * u); },
                          cells, default_margin(cells));
}

SampledPath third_path(const Scenario& sc, int cells) {
  const int dim = sc.bundle.base_dim;
  return sample_base_path([dim](double u) { return curve_at(dim, 1.7 + 0.5 * u); },
                          cells, default_margin(cells));
}

SampledPath spur_path(const Scenario& sc, const Eigen::VectorXd& at, int cells,
                      double dt) {
  const int dim = sc.bundle.base_dim;
  Eigen::VectorXd dir(dim);
  if (dim == 2)
    dir << 0.25, 0.15;
  else
    dir << 0.25, 0.15, 0.1;
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(cells + 1);
  for (int i = 0; i <= cells; ++i)
    pts.push_back(at + (static_cast<double>(i) / cells) * dir);
  return SampledPath(dt, std::move(pts), 0);
}

std::function<Eigen::VectorXd(const Eigen::VectorXd&)> field(const Scenario& sc) {
  const int dim = sc.bundle.base_dim;
  return [dim](const Eigen::VectorXd& x) {
    Eigen::VectorXd v(dim);
    if (dim == 2)
      v << 0.3 * std::sin(x[1] + 0.4), 0.25 * (x[0] - 0.2);
    else
      v << 0.3 * std::sin(x[1] + 0.4), 0.25 * (x[0] - x[2]), 0.2 * std::cos(x[0]);
    return v;
  };
}

AlgebraElement vertical_seed(const Scenario& sc) {
  Eigen::VectorXd c(sc.G().algebra_dim());
  for (int i = 0; i < c.size(); ++i) c[i] = 0.1 * (i % 2 ? -0.5 : 1.0) / (1.0 + i);
  return sc.G().algebra(c);
}

SampledSurface base_surface(const Scenario& sc, int s_cells, int t_cells) {
  const int dim = sc.bundle.base_dim;
  return sample_base_surface(
      [dim](double s, double t) {
        return Eigen::VectorXd(curve_at(dim, t) + s * bump_at(dim, t));
      },
      s_cells, t_cells, std::max(1, s_cells / 10), default_margin(t_cells));
}

SampledSurface second_surface(const Scenario& sc, int s_cells, int t_cells) {
  const int dim = sc.bundle.base_dim;
  return sample_base_surface(
      [dim](double s, double t) {
        return Eigen::VectorXd(curve_at(dim, t) + 1.0 * bump_at(dim, t) +
                               s * bump2_at(dim, t));
      },
      s_cells, t_cells, std::max(1, s_cells / 10), default_margin(t_cells));
}

SampledSurface third_surface(const Scenario& sc, int s_cells, int t_cells) {
  const int dim = sc.bundle.base_dim;
  return sample_base_surface(
      [dim](double s, double t) {
        return Eigen::VectorXd(curve_at(dim, t) + 1.0 * bump_at(dim, t) +
                               1.0 * bump2_at(dim, t) + s * bump3_at(dim, t));
      },
      s_cells, t_cells, std::max(1, s_cells / 10), default_margin(t_cells));
}

std::vector<double> smoothstep_phi(const SampledPath& p, int out_cells) {
  std::vector<double> phi;
  phi.reserve(out_cells + 1);
  const double L = p.duration();
  for (int i = 0; i <= out_cells; ++i) {
    const double u = static_cast<double>(i) / out_cells;
    phi.push_back(L * (0.7 * u + 0.3 * smoothstep(u)));
  }
  phi.back() = L;
  return phi;
}

SampledPath thin_line_path(const Scenario& sc, int cells) {
  const int dim = sc.bundle.base_dim;
  Eigen::VectorXd p0(dim), dir(dim);
  if (dim == 2) {
    p0 << 0.1, -0.2;
    dir << 0.6, 0.45;
  } else {
    p0 << 0.1, -0.2, 0.05;
    dir << 0.6, 0.45, 0.35;
  }
  return sample_base_path([p0, dir](double u) { return Eigen::VectorXd(p0 + u * dir); },
                          cells, default_margin(cells));
}

std::function<double(double, double)> thin_wiggle(double amp) {
  return [amp](double u, double v) {
    const double window =
        smoothstep((v - 0.15) / 0.2) * smoothstep((0.85 - v) / 0.2);
    return v + amp * 4.0 * u * (1.0 - u) * window;
  };
}

SampledSurface slice_rows(const SampledSurface& s, int lo, int hi) {
  if (lo < 0 || hi > s.s_cells() || hi - lo < 1) throw GridError("bad row slice");
  std::vector<SampledPath> rows(s.rows().begin() + lo, s.rows().begin() + hi + 1);
  return SampledSurface(s.ds(), std::move(rows), 0);
}

}  // namespace fixtures
}  // namespace catransport
