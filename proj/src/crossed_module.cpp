#include "catransport/crossed_module.hpp"

#include <algorithm>
#include <cmath>

namespace catransport {

Morphism2 mor_identity(const CrossedModule& cm, const GroupElement& a) {
  cm.G->require_element(a);
  return Morphism2{&cm, cm.H->identity(), a};
}

GroupElement mor_source(const Morphism2& m) { return m.a; }

GroupElement mor_target(const Morphism2& m) {
  return m.cm->G->multiply(m.cm->tau(m.h), m.a);
}

Morphism2 mor_compose(const Morphism2& m2, const Morphism2& m1, double tol) {
  if (m1.cm != m2.cm) throw ModelMismatchError("morphisms from different crossed modules");
  const double gap = m1.cm->G->distance(mor_target(m1), mor_source(m2));
  if (gap > tol)
    throw CompositionError("morphisms not composable, endpoint distance " +
                               std::to_string(gap),
                           gap);
  return Morphism2{m1.cm, m1.cm->H->multiply(m2.h, m1.h), m1.a};
}

Morphism2 mor_product(const Morphism2& m1, const Morphism2& m2) {
  if (m1.cm != m2.cm) throw ModelMismatchError("morphisms from different crossed modules");
  const CrossedModule& cm = *m1.cm;
  return Morphism2{&cm, cm.H->multiply(m1.h, cm.alpha(m1.a, m2.h)),
                   cm.G->multiply(m1.a, m2.a)};
}

Morphism2 mor_inverse(const Morphism2& m) {
  const CrossedModule& cm = *m.cm;
  GroupElement ainv = cm.G->inverse(m.a);
  return Morphism2{&cm, cm.alpha(ainv, cm.H->inverse(m.h)), ainv};
}

double mor_distance(const Morphism2& m1, const Morphism2& m2) {
  if (m1.cm != m2.cm) throw ModelMismatchError("morphisms from different crossed modules");
  return std::max(m1.cm->H->distance(m1.h, m2.h), m1.cm->G->distance(m1.a, m2.a));
}

namespace {

Morphism2 random_morphism(const CrossedModule& cm, Rng& rng) {
  return Morphism2{&cm, cm.random_h(rng), cm.random_g(rng)};
}

/// Morphism with a prescribed source (so that pairs compose).
Morphism2 random_morphism_from(const CrossedModule& cm, Rng& rng, const GroupElement& src) {
  return Morphism2{&cm, cm.random_h(rng), src};
}

}  // namespace

double check_peiffer(const CrossedModule& cm, int samples, std::uint64_t seed) {
  Rng rng(seed);
  double r = 0;
  for (int i = 0; i < samples; ++i) {
    GroupElement g = cm.random_g(rng);
    GroupElement h = cm.random_h(rng);
    GroupElement h2 = cm.random_h(rng);
    // tau(alpha(g)h) = g tau(h) g^-1
    GroupElement lhs1 = cm.tau(cm.alpha(g, h));
    GroupElement rhs1 = cm.G->multiply(cm.G->multiply(g, cm.tau(h)), cm.G->inverse(g));
    r = std::max(r, cm.G->distance(lhs1, rhs1));
    // alpha(tau(h))(h') = h h' h^-1
    GroupElement lhs2 = cm.alpha(cm.tau(h), h2);
    GroupElement rhs2 = cm.H->multiply(cm.H->multiply(h, h2), cm.H->inverse(h));
    r = std::max(r, cm.H->distance(lhs2, rhs2));
    // alpha(e) acts as the identity
    r = std::max(r, cm.H->distance(cm.alpha(cm.G->identity(), h), h));
  }
  return r;
}

double check_compose_via_product(const CrossedModule& cm, int samples, std::uint64_t seed) {
  Rng rng(seed);
  double r = 0;
  for (int i = 0; i < samples; ++i) {
    Morphism2 f = random_morphism(cm, rng);
    Morphism2 h = random_morphism_from(cm, rng, mor_target(f));
    GroupElement b = mor_target(f);
    Morphism2 one_binv = mor_identity(cm, cm.G->inverse(b));
    Morphism2 comp = mor_compose(h, f);
    Morphism2 via1 = mor_product(mor_product(f, one_binv), h);
    Morphism2 via2 = mor_product(mor_product(h, one_binv), f);
    r = std::max({r, mor_distance(comp, via1), mor_distance(comp, via2)});
    // hk = h o k = kh when t(k) = s(h) = e
    GroupElement hk = cm.random_h(rng);
    Morphism2 ke{&cm, hk, cm.G->inverse(cm.tau(hk))};       // target e
    Morphism2 he{&cm, cm.random_h(rng), cm.G->identity()};  // source e
    Morphism2 prod1 = mor_product(he, ke);
    Morphism2 prod2 = mor_product(ke, he);
    Morphism2 comp2 = mor_compose(he, ke);
    r = std::max({r, mor_distance(prod1, comp2), mor_distance(prod2, comp2)});
  }
  return r;
}

double check_exchange_law(const CrossedModule& cm, int samples, std::uint64_t seed) {
  Rng rng(seed);
  double r = 0;
  for (int i = 0; i < samples; ++i) {
    Morphism2 fp = random_morphism(cm, rng);
    Morphism2 f = random_morphism_from(cm, rng, mor_target(fp));
    Morphism2 gp = random_morphism(cm, rng);
    Morphism2 g = random_morphism_from(cm, rng, mor_target(gp));
    Morphism2 lhs = mor_compose(mor_product(f, g), mor_product(fp, gp));
    Morphism2 rhs = mor_product(mor_compose(f, fp), mor_compose(g, gp));
    r = std::max(r, mor_distance(lhs, rhs));
  }
  return r;
}

double check_catgrp_maps(const CrossedModule& cm, int samples, std::uint64_t seed) {
  Rng rng(seed);
  double r = 0;
  for (int i = 0; i < samples; ++i) {
    Morphism2 m1 = random_morphism(cm, rng);
    Morphism2 m2 = random_morphism(cm, rng);
    Morphism2 p = mor_product(m1, m2);
    r = std::max(r, cm.G->distance(mor_source(p),
                                   cm.G->multiply(mor_source(m1), mor_source(m2))));
    r = std::max(r, cm.G->distance(mor_target(p),
                                   cm.G->multiply(mor_target(m1), mor_target(m2))));
    GroupElement a = cm.random_g(rng);
    GroupElement b = cm.random_g(rng);
    Morphism2 ia = mor_identity(cm, a);
    Morphism2 ib = mor_identity(cm, b);
    r = std::max(r, mor_distance(mor_product(ia, ib),
                                 mor_identity(cm, cm.G->multiply(a, b))));
  }
  return r;
}

double check_alg_peiffer(const CrossedModule& cm, int samples, std::uint64_t seed) {
  Rng rng(seed);
  double r = 0;
  for (int i = 0; i < samples; ++i) {
    GroupElement g = cm.random_g(rng);
    AlgebraElement z = cm.H->random_algebra(rng);
    AlgebraElement lhs = cm.tau_alg(cm.alpha_alg(g, z));
    AlgebraElement rhs = cm.G->Ad(g, cm.tau_alg(z));
    r = std::max(r, (lhs - rhs).norm());
  }
  return r;
}

CrossedModule conjugation_module(GroupModelPtr g) {
  CrossedModule cm;
  cm.name = "conj(" + g->name() + ")";
  cm.G = g;
  cm.H = g;
  const GroupModel* gm = g.get();
  cm.alpha = [gm](const GroupElement& a, const GroupElement& h) {
    return gm->multiply(gm->multiply(a, h), gm->inverse(a));
  };
  cm.alpha_alg = [gm](const GroupElement& a, const AlgebraElement& z) {
    return gm->Ad(a, z);
  };
  cm.tau = [](const GroupElement& h) { return h; };
  cm.tau_alg = [](const AlgebraElement& z) { return z; };
  return cm;
}

CrossedModule abelian_module(GroupModelPtr g, int n) {
  CrossedModule cm;
  cm.name = "abelian(" + g->name() + ",R^" + std::to_string(n) + ")";
  cm.G = g;
  cm.H = additive_model(n);
  const GroupModel* gm = cm.G.get();
  const GroupModel* hm = cm.H.get();
  cm.alpha = [gm, hm](const GroupElement& a, const GroupElement& h) {
    gm->require_element(a);
    return GroupElement(hm, Eigen::VectorXd(a.matrix() * h.vector()));
  };
  cm.alpha_alg = [gm, hm](const GroupElement& a, const AlgebraElement& z) {
    gm->require_element(a);
    return AlgebraElement(hm, Eigen::VectorXd(a.matrix() * z.coeffs()));
  };
  cm.tau = [gm](const GroupElement&) { return gm->identity(); };
  cm.tau_alg = [gm](const AlgebraElement&) { return gm->zero_algebra(); };
  return cm;
}

CrossedModule finite_z4_z2_module() {
  CrossedModule cm;
  cm.name = "Z4->Z2";
  cm.G = cyclic_model(2);
  cm.H = cyclic_model(4);
  const GroupModel* gm = cm.G.get();
  cm.alpha = [](const GroupElement&, const GroupElement& h) { return h; };
  cm.alpha_alg = [](const GroupElement&, const AlgebraElement& z) { return z; };
  cm.tau = [gm](const GroupElement& h) { return GroupElement(gm, h.index() % 2); };
  cm.tau_alg = [gm](const AlgebraElement&) { return gm->zero_algebra(); };
  return cm;
}

SemidirectRealization semidirect_realization(const CrossedModule& cm) {
  SemidirectRealization sr;
  if (cm.H.get() == cm.G.get() && cm.G->kind() == GroupModel::Kind::matrix) {
    // Conjugation module: (h,g) -> diag(hg, g) identifies H x| G with G x G.
    const auto& base = static_cast<const MatrixGroupModel&>(*cm.G);
    const int n = base.matrix_size();
    std::vector<Eigen::MatrixXd> basis;
    for (int block = 0; block < 2; ++block)
      for (const auto& b : base.basis()) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
        m.block(block * n, block * n, n, n) = b;
        basis.push_back(m);
      }
    auto model = std::make_shared<MatrixGroupModel>(
        cm.G->name() + "x|" + cm.G->name(), 2 * n, std::move(basis), base.orthogonal());
    const MatrixGroupModel* mp = model.get();
    auto pack = [mp, n](const Eigen::MatrixXd& top, const Eigen::MatrixXd& bottom) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
      m.block(0, 0, n, n) = top;
      m.block(n, n, n, n) = bottom;
      return GroupElement(mp, std::move(m));
    };
    sr.model = model;
    sr.embed = [pack](const GroupElement& h, const GroupElement& g) {
      return pack(h.matrix() * g.matrix(), g.matrix());
    };
    sr.embed_h = [pack, n](const GroupElement& h) {
      return pack(h.matrix(), Eigen::MatrixXd::Identity(n, n));
    };
    sr.embed_g = [pack](const GroupElement& g) { return pack(g.matrix(), g.matrix()); };
    const GroupModel* hm = cm.H.get();
    sr.split_g = [hm, n](const GroupElement& s) {
      return GroupElement(hm, Eigen::MatrixXd(s.matrix().block(n, n, n, n)));
    };
    sr.split_h = [hm, n](const GroupElement& s) {
      Eigen::MatrixXd g = s.matrix().block(n, n, n, n);
      Eigen::MatrixXd hg = s.matrix().block(0, 0, n, n);
      return GroupElement(hm, Eigen::MatrixXd(hg * g.inverse()));
    };
    const auto& hbase = static_cast<const MatrixGroupModel&>(*cm.H);
    sr.embed_alg_h = [mp, &hbase, n](const AlgebraElement& zh) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
      m.block(0, 0, n, n) = hbase.algebra_matrix(zh);
      return mp->project(m);
    };
    return sr;
  }
  if (cm.H->kind() == GroupModel::Kind::additive_vector &&
      cm.G->kind() == GroupModel::Kind::matrix) {
    // Abelian module: (v, R) -> [[R, v], [0, 1]] homogeneous matrices.
    const auto& base = static_cast<const MatrixGroupModel&>(*cm.G);
    const int n = base.matrix_size();
    std::vector<Eigen::MatrixXd> basis;
    for (int i = 0; i < n; ++i) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
      m(i, n) = 1;
      basis.push_back(m);
    }
    for (const auto& b : base.basis()) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
      m.block(0, 0, n, n) = b;
      basis.push_back(m);
    }
    auto model = std::make_shared<MatrixGroupModel>(
        cm.H->name() + "x|" + cm.G->name(), n + 1, std::move(basis), false);
    const MatrixGroupModel* mp = model.get();
    auto pack = [mp, n](const Eigen::VectorXd& v, const Eigen::MatrixXd& r) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n + 1, n + 1);
      m.block(0, 0, n, n) = r;
      m.block(0, n, n, 1) = v;
      return GroupElement(mp, std::move(m));
    };
    sr.model = model;
    sr.embed = [pack](const GroupElement& h, const GroupElement& g) {
      return pack(h.vector(), g.matrix());
    };
    sr.embed_h = [pack, n](const GroupElement& h) {
      return pack(h.vector(), Eigen::MatrixXd::Identity(n, n));
    };
    sr.embed_g = [pack, n](const GroupElement& g) {
      return pack(Eigen::VectorXd::Zero(n), g.matrix());
    };
    const GroupModel* hm = cm.H.get();
    const GroupModel* gm = cm.G.get();
    sr.split_h = [hm, n](const GroupElement& s) {
      return GroupElement(hm, Eigen::VectorXd(s.matrix().block(0, n, n, 1)));
    };
    sr.split_g = [gm, n](const GroupElement& s) {
      return GroupElement(gm, Eigen::MatrixXd(s.matrix().block(0, 0, n, n)));
    };
    sr.embed_alg_h = [mp, n](const AlgebraElement& zh) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
      m.block(0, n, n, 1) = zh.coeffs();
      return mp->project(m);
    };
    return sr;
  }
  throw UnsupportedOperationError(
      "no semidirect matrix realization for crossed module " + cm.name);
}

DoubleModule double_module(const CrossedModule& base) {
  DoubleModule dm;
  dm.object_group = semidirect_realization(base);
  CrossedModule cm2;
  cm2.name = "double(" + base.name + ")";
  cm2.G = dm.object_group.model;
  cm2.H = dm.object_group.model;
  const GroupModel* km = cm2.H.get();
  cm2.alpha = [km](const GroupElement& a, const GroupElement& k) {
    return km->multiply(km->multiply(a, k), km->inverse(a));
  };
  cm2.alpha_alg = [km](const GroupElement& a, const AlgebraElement& z) {
    return km->Ad(a, z);
  };
  cm2.tau = [](const GroupElement& k) { return k; };
  cm2.tau_alg = [](const AlgebraElement& z) { return z; };
  dm.cm2 = cm2;
  return dm;
}

double check_lemma_alpha2(const CrossedModule& cm1, const DoubleModule& dm,
                          int samples, std::uint64_t seed) {
  Rng rng(seed);
  const CrossedModule& cm2 = dm.cm2;
  const SemidirectRealization& sr = dm.object_group;
  double r = 0;
  for (int i = 0; i < samples; ++i) {
    GroupElement g1 = cm1.random_g(rng);
    GroupElement h1 = cm1.random_h(rng);
    GroupElement h = cm1.random_h(rng);
    GroupElement k = sr.model->random_element(rng);
    GroupElement g1inv = cm1.G->inverse(g1);
    // left side: alpha2(alpha1(g1^-1)(h1^-1 h)) applied to alpha2(g1^-1)(k)
    GroupElement hh = cm1.H->multiply(cm1.H->inverse(h1), h);
    GroupElement inner = sr.embed_h(cm1.alpha(g1inv, hh));
    GroupElement lhs = cm2.alpha(inner, cm2.alpha(sr.embed_g(g1inv), k));
    // right side: alpha2(g1^-1 h1^-1 h)(k), product taken in H x| G
    GroupElement word = sr.model->multiply(
        sr.embed_g(g1inv),
        sr.model->multiply(sr.embed_h(cm1.H->inverse(h1)), sr.embed_h(h)));
    GroupElement rhs = cm2.alpha(word, k);
    r = std::max(r, sr.model->distance(lhs, rhs));
  }
  return r;
}

}  // namespace catransport
