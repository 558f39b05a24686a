#include "catransport/lie_ode.hpp"

namespace catransport {

std::vector<GroupElement> ode_factors(const GroupModel& model, const AlgebraSampler& rhs) {
  std::vector<GroupElement> factors;
  factors.reserve(rhs.cells());
  for (const AlgebraElement& v : rhs.values) factors.push_back(model.exp(v * rhs.dt));
  return factors;
}

std::vector<GroupElement> solve_left_ode(const GroupModel& model,
                                         const AlgebraSampler& rhs) {
  std::vector<GroupElement> w;
  w.reserve(rhs.cells() + 1);
  w.push_back(model.identity());
  for (const AlgebraElement& v : rhs.values)
    w.push_back(model.multiply(w.back(), model.exp(v * rhs.dt)));
  return w;
}

std::vector<GroupElement> solve_left_ode(const GroupModel& model,
                                         const AlgebraSampler& rhs,
                                         const GroupElement& init) {
  std::vector<GroupElement> w = solve_left_ode(model, rhs);
  for (auto& g : w) g = model.multiply(init, g);
  return w;
}

Plaquette plaquette(const SampledSurface& surface, int j_s, int i_t) {
  const SampledPath& r0 = surface.row(j_s);
  const SampledPath& r1 = surface.row(j_s + 1);
  Plaquette p;
  p.x = 0.25 * (r0.point(i_t) + r0.point(i_t + 1) + r1.point(i_t) + r1.point(i_t + 1));
  p.dt_x = 0.5 * ((r0.point(i_t + 1) - r0.point(i_t)) + (r1.point(i_t + 1) - r1.point(i_t)));
  p.ds_x = 0.5 * ((r1.point(i_t) - r0.point(i_t)) + (r1.point(i_t + 1) - r0.point(i_t + 1)));
  if (surface.has_fiber()) {
    p.has_fiber = true;
    p.g = 0.25 * (r0.fiber(i_t).matrix() + r0.fiber(i_t + 1).matrix() +
                  r1.fiber(i_t).matrix() + r1.fiber(i_t + 1).matrix());
  }
  return p;
}

SurfaceSolution w_C(const GroupModel& K, const SampledSurface& surface,
                    const PlaquetteForm& form) {
  if (surface.s_cells() < 2 || surface.t_cells() < 2)
    throw GridError("surface grid is degenerate for w_C");
  SurfaceSolution sol;
  sol.nodes.reserve(surface.s_cells() + 1);
  sol.nodes.push_back(K.identity());
  for (int j = 0; j < surface.s_cells(); ++j) {
    AlgebraElement acc = K.zero_algebra();
    for (int i = 0; i < surface.t_cells(); ++i)
      acc = acc + form(plaquette(surface, j, i));
    // the plaquette differences already carry dt and ds
    sol.nodes.push_back(K.multiply(sol.nodes.back(), K.exp(acc * -1.0)));
  }
  return sol;
}

GroupElement w_C0(const GroupModel& K, const SampledSurface& surface,
                  const PlaquetteForm& form,
                  const std::function<GroupElement(const SampledPath&)>& w0) {
  GroupElement mid = w_C(K, surface, form).value();
  GroupElement a = w0(surface.source_row());
  GroupElement b = w0(surface.target_row());
  return K.multiply(K.multiply(a, mid), K.inverse(b));
}

}  // namespace catransport
