#include <doctest.h>

#include <cmath>

#include "catransport/group_models.hpp"

using namespace catransport;

namespace {

// Independent oracle: Rodrigues rotation formula for so(3).
Eigen::Matrix3d rodrigues(const Eigen::Vector3d& w) {
  const double theta = w.norm();
  Eigen::Matrix3d k = Eigen::Matrix3d::Zero();
  if (theta < 1e-300) return Eigen::Matrix3d::Identity();
  Eigen::Vector3d a = w / theta;
  k << 0, -a[2], a[1], a[2], 0, -a[0], -a[1], a[0], 0;
  return Eigen::Matrix3d::Identity() + std::sin(theta) * k +
         (1 - std::cos(theta)) * k * k;
}

}  // namespace

TEST_CASE("exponential of the zero element is the identity") {
  auto so3 = so3_model();
  GroupElement e = so3->exp(so3->zero_algebra());
  CHECK(so3->distance(e, so3->identity()) == 0.0);
}

TEST_CASE("so(2) exponential matches the cosine-sine rotation") {
  auto so2 = so2_model();
  const double theta = 3.14159265358979323846 / 2;
  GroupElement g = so2->exp(so2->algebra(Eigen::VectorXd::Constant(1, theta)));
  Eigen::MatrixXd expected(2, 2);
  expected << 0, -1, 1, 0;
  CHECK((g.matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("so(3) exponential matches the Rodrigues formula") {
  auto so3 = so3_model();
  Rng rng(77);
  for (int i = 0; i < 25; ++i) {
    Eigen::Vector3d w(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
    GroupElement g = so3->exp(so3->algebra(w));
    CHECK((g.matrix() - rodrigues(w)).cwiseAbs().maxCoeff() < 1e-12);
  }
  Eigen::Vector3d wz(0, 0, 0.7);
  CHECK((so3->exp(so3->algebra(wz)).matrix() - rodrigues(wz)).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("Ad by the identity fixes every algebra element") {
  auto so3 = so3_model();
  Rng rng(5);
  AlgebraElement x = so3->random_algebra(rng);
  CHECK((so3->Ad(so3->identity(), x) - x).norm() == 0.0);
}

TEST_CASE("Ad agrees with direct matrix conjugation") {
  auto so3_ptr = so3_model();
  const auto& so3 = static_cast<const MatrixGroupModel&>(*so3_ptr);
  Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    GroupElement g = so3.random_element(rng);
    AlgebraElement x = so3.random_algebra(rng);
    Eigen::MatrixXd direct = g.matrix() * so3.algebra_matrix(x) * g.matrix().inverse();
    CHECK((so3.algebra_matrix(so3.Ad(g, x)) - direct).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("Ad is a homomorphism in the group argument") {
  auto so3 = so3_model();
  Rng rng(7);
  double r = 0;
  for (int i = 0; i < 100; ++i) {
    GroupElement g1 = so3->random_element(rng);
    GroupElement g2 = so3->random_element(rng);
    AlgebraElement x = so3->random_algebra(rng);
    r = std::max(r, (so3->Ad(so3->multiply(g1, g2), x) -
                     so3->Ad(g1, so3->Ad(g2, x))).norm());
  }
  CHECK(r < 1e-11);
}

TEST_CASE("Ad preserves the bracket") {
  auto so3 = so3_model();
  Rng rng(8);
  double r = 0;
  for (int i = 0; i < 50; ++i) {
    GroupElement g = so3->random_element(rng);
    AlgebraElement x = so3->random_algebra(rng);
    AlgebraElement y = so3->random_algebra(rng);
    r = std::max(r, (so3->Ad(g, so3->bracket(x, y)) -
                     so3->bracket(so3->Ad(g, x), so3->Ad(g, y))).norm());
  }
  CHECK(r < 1e-10);
}

TEST_CASE("bracket is antisymmetric") {
  auto so3 = so3_model();
  Rng rng(9);
  AlgebraElement x = so3->random_algebra(rng);
  AlgebraElement y = so3->random_algebra(rng);
  CHECK((so3->bracket(x, y) + so3->bracket(y, x)).norm() < 1e-12);
}

TEST_CASE("group axiom report is exact on the Z4 table") {
  auto z4 = cyclic_model(4);
  GroupAxiomReport rep = group_axiom_report(*z4, 1);
  CHECK(rep.exhaustive);
  CHECK(rep.max() == 0.0);
}

TEST_CASE("group axiom report on SO(3) stays at round-off") {
  GroupAxiomReport rep = group_axiom_report(*so3_model(), 100);
  CHECK(rep.max() < 1e-12);
  CHECK(rep.seed != 0);
}

TEST_CASE("group axiom report is exact on the additive model") {
  GroupAxiomReport rep = group_axiom_report(*additive_model(3), 100);
  CHECK(rep.max() == 0.0);
}

TEST_CASE("log recovers small algebra elements") {
  auto so3 = so3_model();
  Rng rng(10);
  double r = 0;
  for (int i = 0; i < 50; ++i) {
    AlgebraElement x = so3->random_algebra(rng, 0.45);
    if (x.norm() >= 0.5) continue;
    r = std::max(r, (so3->log_near_identity(so3->exp(x)) - x).norm());
  }
  CHECK(r < 1e-9);
}

TEST_CASE("inverse multiplies to the identity and rotations stay orthogonal") {
  auto so3 = so3_model();
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    GroupElement g = so3->random_element(rng);
    CHECK(so3->distance(so3->multiply(g, so3->inverse(g)), so3->identity()) < 1e-12);
    Eigen::MatrixXd gtg = g.matrix().transpose() * g.matrix();
    CHECK((gtg - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("finite models reject smooth operations") {
  auto z4 = cyclic_model(4);
  auto so3 = so3_model();
  CHECK_THROWS_AS((void)z4->exp(so3->zero_algebra()), UnsupportedOperationError);
  CHECK_THROWS_AS((void)so3->exp(additive_model(3)->zero_algebra()),
                  ModelMismatchError);
  const auto& fin = static_cast<const FiniteGroupModel&>(*z4);
  CHECK_THROWS_AS((void)fin.log_near_identity(fin.element(1)),
                  UnsupportedOperationError);
}

TEST_CASE("operations reject elements from another model instance") {
  auto a = so3_model();
  auto b = so3_model();
  Rng rng(13);
  CHECK_THROWS_AS((void)a->multiply(a->random_element(rng), b->random_element(rng)),
                  ModelMismatchError);
}

TEST_CASE("distance is symmetric and stable under left translation") {
  auto so3 = so3_model();
  Rng rng(14);
  GroupElement a = so3->random_element(rng);
  GroupElement x = so3->random_element(rng);
  GroupElement y = so3->random_element(rng);
  CHECK(so3->distance(x, x) == 0.0);
  CHECK(so3->distance(x, y) == so3->distance(y, x));
  const double before = so3->distance(x, y);
  const double after = so3->distance(so3->multiply(a, x), so3->multiply(a, y));
  CHECK(after <= 3.0 * before + 1e-15);  // max-norm moves by at most the dimension
  CHECK(before <= 3.0 * after + 1e-15);
}

TEST_CASE("q8 table is the quaternion group") {
  auto q8p = q8_model();
  const auto& q8 = static_cast<const FiniteGroupModel&>(*q8p);
  CHECK(q8.order() == 8);
  CHECK(group_axiom_report(q8, 1).max() == 0.0);
  const int i = 2, j = 4, k = 6, minus_k = 7;
  CHECK(q8.multiply_index(i, j) == k);
  CHECK(q8.multiply_index(j, i) == minus_k);
}
