#include "catransport/group_models.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <array>
#include <cmath>

namespace catransport {

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  model_->require_same(o.model());
  return AlgebraElement(model_, coeffs_ + o.coeffs_);
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  model_->require_same(o.model());
  return AlgebraElement(model_, coeffs_ - o.coeffs_);
}

AlgebraElement AlgebraElement::operator*(double s) const {
  return AlgebraElement(model_, coeffs_ * s);
}

double GroupAxiomReport::max() const {
  return std::max({associativity, identity, inverse});
}

AlgebraElement GroupModel::algebra(Eigen::VectorXd coeffs) const {
  if (coeffs.size() != algebra_dim_)
    throw ModelMismatchError("algebra coefficient vector has length " +
                             std::to_string(coeffs.size()) + ", model " + name_ +
                             " expects " + std::to_string(algebra_dim_));
  return AlgebraElement(this, std::move(coeffs));
}

AlgebraElement GroupModel::zero_algebra() const {
  return AlgebraElement(this, Eigen::VectorXd::Zero(algebra_dim_));
}

AlgebraElement GroupModel::random_algebra(Rng& rng, double scale) const {
  Eigen::VectorXd c(algebra_dim_);
  for (int i = 0; i < algebra_dim_; ++i) c[i] = rng.uniform(-scale, scale);
  return AlgebraElement(this, std::move(c));
}

void GroupModel::require_same(const GroupModel& other) const {
  if (this != &other)
    throw ModelMismatchError("model mismatch: " + name_ + " vs " + other.name_);
}

void GroupModel::require_element(const GroupElement& g) const { require_same(g.model()); }
void GroupModel::require_element(const AlgebraElement& x) const { require_same(x.model()); }

// ---------------------------------------------------------------------------
// MatrixGroupModel

MatrixGroupModel::MatrixGroupModel(std::string name, int n,
                                   std::vector<Eigen::MatrixXd> basis,
                                   bool orthogonal)
    : GroupModel(Kind::matrix, std::move(name), static_cast<int>(basis.size())),
      n_(n),
      basis_(std::move(basis)),
      orthogonal_(orthogonal) {
  const int d = algebra_dim();
  Eigen::MatrixXd stacked(n_ * n_, d);
  for (int k = 0; k < d; ++k)
    stacked.col(k) = Eigen::Map<const Eigen::VectorXd>(basis_[k].data(), n_ * n_);
  basis_pinv_ = (stacked.transpose() * stacked).ldlt().solve(stacked.transpose());
}

Eigen::MatrixXd MatrixGroupModel::algebra_matrix(const AlgebraElement& x) const {
  require_element(x);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
  for (int k = 0; k < algebra_dim(); ++k) m += x.coeffs()[k] * basis_[k];
  return m;
}

AlgebraElement MatrixGroupModel::project(const Eigen::MatrixXd& m) const {
  Eigen::VectorXd v = basis_pinv_ * Eigen::Map<const Eigen::VectorXd>(m.data(), n_ * n_);
  return AlgebraElement(this, std::move(v));
}

GroupElement MatrixGroupModel::identity() const {
  return GroupElement(this, Eigen::MatrixXd(Eigen::MatrixXd::Identity(n_, n_)));
}

GroupElement MatrixGroupModel::multiply(const GroupElement& a, const GroupElement& b) const {
  require_element(a);
  require_element(b);
  return GroupElement(this, Eigen::MatrixXd(a.matrix() * b.matrix()));
}

GroupElement MatrixGroupModel::inverse(const GroupElement& g) const {
  require_element(g);
  if (orthogonal_) return GroupElement(this, Eigen::MatrixXd(g.matrix().transpose()));
  return GroupElement(this, Eigen::MatrixXd(g.matrix().inverse()));
}

GroupElement MatrixGroupModel::exp(const AlgebraElement& x) const {
  require_element(x);
  if (x.norm() == 0.0) return identity();
  return GroupElement(this, Eigen::MatrixXd(algebra_matrix(x).exp()));
}

AlgebraElement MatrixGroupModel::log_near_identity(const GroupElement& g) const {
  require_element(g);
  Eigen::MatrixXd l = g.matrix().log();
  return project(l);
}

AlgebraElement MatrixGroupModel::Ad(const GroupElement& g, const AlgebraElement& x) const {
  require_element(g);
  Eigen::MatrixXd gx = g.matrix() * algebra_matrix(x);
  if (orthogonal_) return project(gx * g.matrix().transpose());
  return project(gx * g.matrix().inverse());
}

AlgebraElement MatrixGroupModel::bracket(const AlgebraElement& x, const AlgebraElement& y) const {
  Eigen::MatrixXd mx = algebra_matrix(x), my = algebra_matrix(y);
  return project(mx * my - my * mx);
}

double MatrixGroupModel::distance(const GroupElement& a, const GroupElement& b) const {
  require_element(a);
  require_element(b);
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

GroupElement MatrixGroupModel::random_element(Rng& rng) const {
  return exp(random_algebra(rng));
}

// ---------------------------------------------------------------------------
// AdditiveGroupModel

AdditiveGroupModel::AdditiveGroupModel(std::string name, int n)
    : GroupModel(Kind::additive_vector, std::move(name), n) {}

GroupElement AdditiveGroupModel::identity() const {
  return GroupElement(this, Eigen::VectorXd(Eigen::VectorXd::Zero(algebra_dim())));
}

GroupElement AdditiveGroupModel::multiply(const GroupElement& a, const GroupElement& b) const {
  require_element(a);
  require_element(b);
  return GroupElement(this, Eigen::VectorXd(a.vector() + b.vector()));
}

GroupElement AdditiveGroupModel::inverse(const GroupElement& g) const {
  require_element(g);
  return GroupElement(this, Eigen::VectorXd(-g.vector()));
}

GroupElement AdditiveGroupModel::exp(const AlgebraElement& x) const {
  require_element(x);
  return GroupElement(this, Eigen::VectorXd(x.coeffs()));
}

AlgebraElement AdditiveGroupModel::log_near_identity(const GroupElement& g) const {
  require_element(g);
  return AlgebraElement(this, g.vector());
}

AlgebraElement AdditiveGroupModel::Ad(const GroupElement& g, const AlgebraElement& x) const {
  require_element(g);
  require_element(x);
  return x;  // abelian
}

AlgebraElement AdditiveGroupModel::bracket(const AlgebraElement& x, const AlgebraElement& y) const {
  require_element(x);
  require_element(y);
  return zero_algebra();
}

double AdditiveGroupModel::distance(const GroupElement& a, const GroupElement& b) const {
  require_element(a);
  require_element(b);
  Eigen::VectorXd d = a.vector() - b.vector();
  return d.size() ? d.cwiseAbs().maxCoeff() : 0.0;
}

GroupElement AdditiveGroupModel::random_element(Rng& rng) const {
  return exp(random_algebra(rng));
}

// ---------------------------------------------------------------------------
// FiniteGroupModel

FiniteGroupModel::FiniteGroupModel(std::string name, std::vector<std::vector<int>> table)
    : GroupModel(Kind::finite_table, std::move(name), 0), table_(std::move(table)) {
  const int n = static_cast<int>(table_.size());
  for (const auto& row : table_)
    if (static_cast<int>(row.size()) != n)
      throw StructureError("Cayley table is not square");
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
    if (ok) {
      identity_ = e;
      break;
    }
  }
  if (identity_ < 0) throw StructureError("Cayley table has no identity element");
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == identity_ && table_[b][a] == identity_) {
        inverse_[a] = b;
        break;
      }
    if (inverse_[a] < 0)
      throw StructureError("element " + std::to_string(a) + " has no inverse");
  }
}

GroupElement FiniteGroupModel::identity() const { return GroupElement(this, identity_); }

GroupElement FiniteGroupModel::multiply(const GroupElement& a, const GroupElement& b) const {
  require_element(a);
  require_element(b);
  return GroupElement(this, table_[a.index()][b.index()]);
}

GroupElement FiniteGroupModel::inverse(const GroupElement& g) const {
  require_element(g);
  return GroupElement(this, inverse_[g.index()]);
}

GroupElement FiniteGroupModel::exp(const AlgebraElement&) const {
  throw UnsupportedOperationError("exp is not defined on finite model " + name());
}

AlgebraElement FiniteGroupModel::log_near_identity(const GroupElement&) const {
  throw UnsupportedOperationError("log is not defined on finite model " + name());
}

AlgebraElement FiniteGroupModel::Ad(const GroupElement&, const AlgebraElement&) const {
  throw UnsupportedOperationError("Ad is not defined on finite model " + name());
}

AlgebraElement FiniteGroupModel::bracket(const AlgebraElement&, const AlgebraElement&) const {
  throw UnsupportedOperationError("bracket is not defined on finite model " + name());
}

double FiniteGroupModel::distance(const GroupElement& a, const GroupElement& b) const {
  require_element(a);
  require_element(b);
  return a.index() == b.index() ? 0.0 : 1.0;
}

GroupElement FiniteGroupModel::random_element(Rng& rng) const {
  return GroupElement(this, static_cast<int>(rng.index(table_.size())));
}

// ---------------------------------------------------------------------------
// Factories

GroupModelPtr so2_model() {
  Eigen::MatrixXd j(2, 2);
  j << 0, -1, 1, 0;
  return std::make_shared<MatrixGroupModel>("SO(2)", 2,
                                            std::vector<Eigen::MatrixXd>{j}, true);
}

GroupModelPtr so3_model() {
  Eigen::MatrixXd j1 = Eigen::MatrixXd::Zero(3, 3);
  Eigen::MatrixXd j2 = Eigen::MatrixXd::Zero(3, 3);
  Eigen::MatrixXd j3 = Eigen::MatrixXd::Zero(3, 3);
  j1(1, 2) = -1; j1(2, 1) = 1;
  j2(0, 2) = 1;  j2(2, 0) = -1;
  j3(0, 1) = -1; j3(1, 0) = 1;
  return std::make_shared<MatrixGroupModel>(
      "SO(3)", 3, std::vector<Eigen::MatrixXd>{j1, j2, j3}, true);
}

GroupModelPtr additive_model(int n) {
  return std::make_shared<AdditiveGroupModel>("R^" + std::to_string(n), n);
}

GroupModelPtr finite_model(std::string name, std::vector<std::vector<int>> table) {
  return std::make_shared<FiniteGroupModel>(std::move(name), std::move(table));
}

GroupModelPtr cyclic_model(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return finite_model("Z" + std::to_string(n), std::move(t));
}

namespace {

std::vector<std::array<int, 3>> s3_permutations() {
  return {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
}

}  // namespace

GroupModelPtr s3_model() {
  auto perms = s3_permutations();
  const int n = static_cast<int>(perms.size());
  auto find = [&](const std::array<int, 3>& p) {
    for (int i = 0; i < n; ++i)
      if (perms[i] == p) return i;
    return -1;
  };
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];  // a after b
      t[a][b] = find(c);
    }
  return finite_model("S3", std::move(t));
}

GroupModelPtr q8_model() {
  // Elements encoded as unit * 2 + sign, units e,i,j,k; sign 0 -> +, 1 -> -.
  // Quaternion basis products with signs.
  auto mul = [](int a, int b) {
    const int ua = a / 2, ub = b / 2;
    int sign = (a % 2) ^ (b % 2);
    static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int neg[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    sign ^= neg[ua][ub];
    return unit[ua][ub] * 2 + sign;
  };
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) t[a][b] = mul(a, b);
  return finite_model("Q8", std::move(t));
}

GroupElement rotation2(const GroupModel& so2, double theta) {
  Eigen::MatrixXd r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return GroupElement(&so2, std::move(r));
}

GroupElement rotation3(const GroupModel& so3, const Eigen::Vector3d& w) {
  return so3.exp(so3.algebra(w));
}

GroupAxiomReport group_axiom_report(const GroupModel& model, int samples,
                                    std::uint64_t seed) {
  GroupAxiomReport rep;
  rep.seed = seed;
  auto check_triple = [&](const GroupElement& a, const GroupElement& b,
                          const GroupElement& c) {
    rep.associativity =
        std::max(rep.associativity,
                 model.distance(model.multiply(model.multiply(a, b), c),
                                model.multiply(a, model.multiply(b, c))));
  };
  auto check_single = [&](const GroupElement& a) {
    const GroupElement e = model.identity();
    rep.identity = std::max({rep.identity, model.distance(model.multiply(a, e), a),
                             model.distance(model.multiply(e, a), a)});
    rep.inverse = std::max({rep.inverse,
                            model.distance(model.multiply(a, model.inverse(a)), e),
                            model.distance(model.multiply(model.inverse(a), a), e)});
  };
  if (model.kind() == GroupModel::Kind::finite_table) {
    const auto& fin = static_cast<const FiniteGroupModel&>(model);
    rep.exhaustive = true;
    rep.samples = fin.order();
    for (int a = 0; a < fin.order(); ++a) {
      check_single(fin.element(a));
      for (int b = 0; b < fin.order(); ++b)
        for (int c = 0; c < fin.order(); ++c)
          check_triple(fin.element(a), fin.element(b), fin.element(c));
    }
    return rep;
  }
  Rng rng(seed);
  rep.samples = samples;
  for (int i = 0; i < samples; ++i) {
    GroupElement a = model.random_element(rng);
    GroupElement b = model.random_element(rng);
    GroupElement c = model.random_element(rng);
    check_triple(a, b, c);
    check_single(a);
  }
  return rep;
}

}  // namespace catransport
