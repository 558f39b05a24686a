#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "catransport/errors.hpp"
#include "catransport/rng.hpp"

namespace catransport {

class GroupModel;

/// Element of a Lie algebra, stored as coefficients in the owning model's
/// fixed basis. Immutable after construction.
class AlgebraElement {
 public:
  AlgebraElement(const GroupModel* model, Eigen::VectorXd coeffs)
      : model_(model), coeffs_(std::move(coeffs)) {}

  const GroupModel& model() const { return *model_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  double norm() const { return coeffs_.size() ? coeffs_.cwiseAbs().maxCoeff() : 0.0; }

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(double s) const;

 private:
  const GroupModel* model_;
  Eigen::VectorXd coeffs_;
};

inline AlgebraElement operator*(double s, const AlgebraElement& x) { return x * s; }

/// Element of a group. The payload depends on the model kind: a square
/// matrix (matrix models), a coefficient vector (additive models) or a
/// table index (finite models).
class GroupElement {
 public:
  GroupElement(const GroupModel* model, Eigen::MatrixXd matrix)
      : model_(model), payload_(std::move(matrix)) {}
  GroupElement(const GroupModel* model, Eigen::VectorXd vector)
      : model_(model), payload_(std::move(vector)) {}
  GroupElement(const GroupModel* model, int index)
      : model_(model), payload_(index) {}

  const GroupModel& model() const { return *model_; }

  const Eigen::MatrixXd& matrix() const { return std::get<Eigen::MatrixXd>(payload_); }
  const Eigen::VectorXd& vector() const { return std::get<Eigen::VectorXd>(payload_); }
  int index() const { return std::get<int>(payload_); }

 private:
  const GroupModel* model_;
  std::variant<Eigen::MatrixXd, Eigen::VectorXd, int> payload_;
};

/// Residuals of the group axioms over a sampled (or exhaustive) set.
struct GroupAxiomReport {
  std::uint64_t seed = 0;
  int samples = 0;
  bool exhaustive = false;
  double associativity = 0.0;
  double identity = 0.0;
  double inverse = 0.0;
  double max() const;
};

/// Numeric carrier for a group together with its Lie algebra. All
/// operations are pure; instances are immutable and shared by pointer.
class GroupModel {
 public:
  enum class Kind { matrix, additive_vector, finite_table };

  GroupModel(Kind kind, std::string name, int algebra_dim)
      : kind_(kind), name_(std::move(name)), algebra_dim_(algebra_dim) {}
  virtual ~GroupModel() = default;

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  int algebra_dim() const { return algebra_dim_; }

  virtual GroupElement identity() const = 0;
  virtual GroupElement multiply(const GroupElement& a, const GroupElement& b) const = 0;
  virtual GroupElement inverse(const GroupElement& g) const = 0;
  virtual GroupElement exp(const AlgebraElement& x) const = 0;
  virtual AlgebraElement log_near_identity(const GroupElement& g) const = 0;
  virtual AlgebraElement Ad(const GroupElement& g, const AlgebraElement& x) const = 0;
  virtual AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const = 0;
  virtual double distance(const GroupElement& a, const GroupElement& b) const = 0;
  virtual GroupElement random_element(Rng& rng) const = 0;

  AlgebraElement algebra(Eigen::VectorXd coeffs) const;
  AlgebraElement zero_algebra() const;
  AlgebraElement random_algebra(Rng& rng, double scale = 1.0) const;

  void require_same(const GroupModel& other) const;
  void require_element(const GroupElement& g) const;
  void require_element(const AlgebraElement& x) const;

 private:
  Kind kind_;
  std::string name_;
  int algebra_dim_;
};

using GroupModelPtr = std::shared_ptr<const GroupModel>;

/// Matrix Lie group: elements are invertible n x n matrices, the algebra is
/// spanned by a fixed list of basis matrices. exp/log use dense matrix
/// functions (scaling-and-squaring / inverse scaling-and-squaring).
class MatrixGroupModel : public GroupModel {
 public:
  MatrixGroupModel(std::string name, int n, std::vector<Eigen::MatrixXd> basis,
                   bool orthogonal);

  int matrix_size() const { return n_; }
  bool orthogonal() const { return orthogonal_; }
  const std::vector<Eigen::MatrixXd>& basis() const { return basis_; }

  /// coefficients -> matrix in the algebra.
  Eigen::MatrixXd algebra_matrix(const AlgebraElement& x) const;
  /// least-squares projection of a matrix onto the algebra basis.
  AlgebraElement project(const Eigen::MatrixXd& m) const;

  GroupElement identity() const override;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override;
  GroupElement inverse(const GroupElement& g) const override;
  GroupElement exp(const AlgebraElement& x) const override;
  AlgebraElement log_near_identity(const GroupElement& g) const override;
  AlgebraElement Ad(const GroupElement& g, const AlgebraElement& x) const override;
  AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const override;
  double distance(const GroupElement& a, const GroupElement& b) const override;
  GroupElement random_element(Rng& rng) const override;

 private:
  int n_;
  std::vector<Eigen::MatrixXd> basis_;
  Eigen::MatrixXd basis_pinv_;  // (d x n^2), maps vec(M) to coefficients
  bool orthogonal_;
};

/// Abelian vector group (R^n, +). exp is the identity map and the bracket
/// vanishes; this carries the abelian H of tau-trivial crossed modules.
class AdditiveGroupModel : public GroupModel {
 public:
  AdditiveGroupModel(std::string name, int n);

  GroupElement identity() const override;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override;
  GroupElement inverse(const GroupElement& g) const override;
  GroupElement exp(const AlgebraElement& x) const override;
  AlgebraElement log_near_identity(const GroupElement& g) const override;
  AlgebraElement Ad(const GroupElement& g, const AlgebraElement& x) const override;
  AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const override;
  double distance(const GroupElement& a, const GroupElement& b) const override;
  GroupElement random_element(Rng& rng) const override;
};

/// Finite group given by a Cayley table; used for exhaustive checks.
class FiniteGroupModel : public GroupModel {
 public:
  FiniteGroupModel(std::string name, std::vector<std::vector<int>> table);

  int order() const { return static_cast<int>(table_.size()); }
  const std::vector<std::vector<int>>& table() const { return table_; }
  int identity_index() const { return identity_; }
  int multiply_index(int a, int b) const { return table_[a][b]; }
  int inverse_index(int a) const { return inverse_[a]; }

  GroupElement element(int i) const { return GroupElement(this, i); }

  GroupElement identity() const override;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override;
  GroupElement inverse(const GroupElement& g) const override;
  GroupElement exp(const AlgebraElement& x) const override;
  AlgebraElement log_near_identity(const GroupElement& g) const override;
  AlgebraElement Ad(const GroupElement& g, const AlgebraElement& x) const override;
  AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const override;
  double distance(const GroupElement& a, const GroupElement& b) const override;
  GroupElement random_element(Rng& rng) const override;

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = -1;
};

// Built-in model factories.
GroupModelPtr so2_model();
GroupModelPtr so3_model();
GroupModelPtr additive_model(int n);
GroupModelPtr finite_model(std::string name, std::vector<std::vector<int>> table);
GroupModelPtr cyclic_model(int n);
GroupModelPtr s3_model();
GroupModelPtr q8_model();

/// 2x2 rotation by angle theta (convenience for SO(2) fixtures).
GroupElement rotation2(const GroupModel& so2, double theta);

/// Axis-angle rotation exp(w . J) for SO(3) fixtures.
GroupElement rotation3(const GroupModel& so3, const Eigen::Vector3d& w);

/// Max residuals for associativity / identity / inverse. Finite models are
/// checked exhaustively; others over `samples` seeded draws.
GroupAxiomReport group_axiom_report(const GroupModel& model, int samples,
                                    std::uint64_t seed = 20260810);

}  // namespace catransport
