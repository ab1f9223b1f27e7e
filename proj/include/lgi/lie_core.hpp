#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

namespace lgi {

enum class AlgebraKind { SO, SL, GL, Quadratic, Affine };

/// Identifies a matrix Lie algebra and fixes how its elements are stored.
///
/// Matrix algebras store n×n matrices. The affine algebra gl(n_d) ⋉ ℝ^{n_d}
/// stores (ξ, c) as the (n_d+1)×(n_d+1) block matrix [[ξ, c], [0, 0]], and
/// its group stores (A, b) as [[A, b], [0, 1]]; products, brackets and
/// conjugation of the blocks reproduce the semidirect-product structure.
class AlgebraDescriptor {
 public:
  static AlgebraDescriptor so(int n);
  static AlgebraDescriptor sl(int n);
  static AlgebraDescriptor gl(int n);
  /// {a : aᵀJ + Ja = 0}; J must be invertible.
  static AlgebraDescriptor quadratic(const Eigen::MatrixXd& J);
  static AlgebraDescriptor affine(int nd);

  AlgebraKind kind() const { return kind_; }
  /// The n of the descriptor (n_d for the affine algebra).
  int n() const { return n_; }
  /// Side length of the stored square matrices.
  int rep_size() const { return kind_ == AlgebraKind::Affine ? n_ + 1 : n_; }
  /// Dimension of the algebra as a real vector space.
  int dimension() const;
  const Eigen::MatrixXd& J() const;
  bool is_so3() const { return kind_ == AlgebraKind::SO && n_ == 3; }
  std::string name() const;

  friend bool operator==(const AlgebraDescriptor& a, const AlgebraDescriptor& b);
  friend bool operator!=(const AlgebraDescriptor& a, const AlgebraDescriptor& b) { return !(a == b); }

 private:
  AlgebraDescriptor(AlgebraKind kind, int n, std::shared_ptr<const Eigen::MatrixXd> J)
      : kind_(kind), n_(n), J_(std::move(J)) {}
  AlgebraKind kind_;
  int n_;
  std::shared_ptr<const Eigen::MatrixXd> J_;
};

/// Construction tag: the caller guarantees the matrix lies in the algebra.
struct Trusted {};

class AlgebraElement {
 public:
  /// Validates the defining relation of the algebra (1e-13, relative to the
  /// magnitude of the entries) and throws DomainError when it fails.
  AlgebraElement(AlgebraDescriptor desc, Eigen::MatrixXd value);
  AlgebraElement(AlgebraDescriptor desc, Eigen::MatrixXd value, Trusted)
      : desc_(std::move(desc)), value_(std::move(value)) {}

  static AlgebraElement zero(const AlgebraDescriptor& desc);
  /// so(3) element from its axis vector, hat(a)x = a × x.
  static AlgebraElement so3(const Eigen::Vector3d& a);
  static AlgebraElement affine(const Eigen::MatrixXd& xi, const Eigen::VectorXd& c);

  const AlgebraDescriptor& descriptor() const { return desc_; }
  const Eigen::MatrixXd& value() const { return value_; }
  /// Axis vector of an so(3) element.
  Eigen::Vector3d vec() const;
  /// Blocks of an affine element.
  Eigen::MatrixXd xi() const;
  Eigen::VectorXd c() const;
  double norm() const { return value_.norm(); }

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator-() const { return {desc_, -value_, Trusted{}}; }
  AlgebraElement& operator+=(const AlgebraElement& o);
  friend AlgebraElement operator*(double s, const AlgebraElement& a) {
    return {a.desc_, s * a.value_, Trusted{}};
  }

 private:
  AlgebraDescriptor desc_;
  Eigen::MatrixXd value_;
};

class GroupElement {
 public:
  GroupElement(AlgebraDescriptor desc, Eigen::MatrixXd value);

  static GroupElement identity(const AlgebraDescriptor& desc);
  static GroupElement affine(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

  const AlgebraDescriptor& descriptor() const { return desc_; }
  const Eigen::MatrixXd& value() const { return value_; }
  Eigen::MatrixXd A() const;
  Eigen::VectorXd b() const;

  GroupElement operator*(const GroupElement& o) const;
  /// Throws NumericError for a singular matrix.
  GroupElement inverse() const;
  /// For quadratic groups, ‖gᵀJg − J‖∞ ≤ tol; for SO(n), gᵀg = I and
  /// det g > 0; for SL(n), det g = 1. Always true for GL and affine.
  bool satisfies_group_relation(double tol = 1e-10) const;

 private:
  AlgebraDescriptor desc_;
  Eigen::MatrixXd value_;
};

/// Element of the dual 𝔤*, stored by its Riesz representative in 𝔤.
///
/// The pairing is the Frobenius pairing trace(μᵀξ), except on so(3) where it
/// is the dot product of axis vectors (half the Frobenius value).
class CoAlgebraElement {
 public:
  CoAlgebraElement(AlgebraDescriptor desc, Eigen::MatrixXd value);
  CoAlgebraElement(AlgebraDescriptor desc, Eigen::MatrixXd value, Trusted)
      : desc_(std::move(desc)), value_(std::move(value)) {}

  static CoAlgebraElement zero(const AlgebraDescriptor& desc);
  static CoAlgebraElement so3(const Eigen::Vector3d& mu);

  const AlgebraDescriptor& descriptor() const { return desc_; }
  const Eigen::MatrixXd& value() const { return value_; }
  Eigen::Vector3d vec() const;

  CoAlgebraElement operator+(const CoAlgebraElement& o) const;
  CoAlgebraElement operator-(const CoAlgebraElement& o) const;
  CoAlgebraElement operator-() const { return {desc_, -value_, Trusted{}}; }
  friend CoAlgebraElement operator*(double s, const CoAlgebraElement& a) {
    return {a.desc_, s * a.value_, Trusted{}};
  }

 private:
  AlgebraDescriptor desc_;
  Eigen::MatrixXd value_;
};

// so(3) ↔ ℝ³
Eigen::Matrix3d hat(const Eigen::Vector3d& a);
Eigen::Vector3d vee(const Eigen::Matrix3d& A);

/// Frobenius-orthogonal projection of a rep_size×rep_size matrix onto 𝔤.
Eigen::MatrixXd project_to_algebra(const AlgebraDescriptor& desc, const Eigen::MatrixXd& M);

/// A basis of 𝔤 (fixed order; so(3) uses hat(e_x), hat(e_y), hat(e_z)).
std::vector<Eigen::MatrixXd> algebra_basis(const AlgebraDescriptor& desc);
/// Coordinates of ξ in algebra_basis.
Eigen::VectorXd coordinates(const AlgebraElement& xi);
AlgebraElement from_coordinates(const AlgebraDescriptor& desc, const Eigen::VectorXd& c);
/// Coordinates of μ with respect to the basis dual to algebra_basis under
/// the pairing: entry i is ⟨μ, e_i⟩.
Eigen::VectorXd dual_coordinates(const CoAlgebraElement& mu);
CoAlgebraElement from_dual_coordinates(const AlgebraDescriptor& desc, const Eigen::VectorXd& c);

double pairing(const CoAlgebraElement& mu, const AlgebraElement& xi);
/// Inner product on 𝔤 matching the pairing (so(3): dot product of axes).
double inner(const AlgebraElement& a, const AlgebraElement& b);
/// Index lowering for `inner`: ⟨flat(η), ζ⟩ = (η, ζ).
CoAlgebraElement flat(const AlgebraElement& eta);
/// Index raising, inverse of `flat`.
AlgebraElement sharp(const CoAlgebraElement& mu);

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b);
GroupElement group_exp(const AlgebraElement& a);
/// Principal logarithm. so(3) uses the closed form and rejects rotation
/// angles ≥ π − 0.1; other algebras use `logm`. Throws ChartError.
AlgebraElement group_log(const GroupElement& g);

/// g v g⁻¹.
AlgebraElement Ad(const GroupElement& g, const AlgebraElement& v);
/// Pairing adjoint of Ad: ⟨coAd(g, μ), ξ⟩ = ⟨μ, Ad(g, ξ)⟩.
CoAlgebraElement coAd(const GroupElement& g, const CoAlgebraElement& mu);
/// ⟨ad_star(ξ, μ), η⟩ = ⟨μ, [ξ, η]⟩.
CoAlgebraElement ad_star(const AlgebraElement& xi, const CoAlgebraElement& mu);

/// Truncated dexp⁻¹: w − ½[u,w] + Σ_{k≤m} B_{2k}/(2k)! ad_u^{2k}(w), m ≤ 5.
AlgebraElement dexpinv(const AlgebraElement& u, const AlgebraElement& w, int m);
/// Partial sum Σ_{k=0}^{terms} ad_u^k(v)/(k+1)!.
AlgebraElement dexp(const AlgebraElement& u, const AlgebraElement& v, int terms);
/// Smallest m with p ≤ 2m+1.
int dexpinv_truncation_for_order(int p);
/// Bernoulli number B_{2k} as an exact fraction (k = 1..5).
std::pair<long, long> bernoulli_even(int k);

/// Closed-form so(3) dexp and dexp⁻¹ as 3×3 operators on axis vectors.
Eigen::Matrix3d dexp_so3_matrix(const Eigen::Vector3d& u);
Eigen::Matrix3d dexpinv_so3_matrix(const Eigen::Vector3d& u);

/// (I − a/2)⁻¹(I + a/2); throws NumericError if I − a/2 is singular.
GroupElement cayley(const AlgebraElement& a);
/// Right-trivialised inverse differential (I − y/2) v (I + y/2).
AlgebraElement dcay_inv(const AlgebraElement& y, const AlgebraElement& v);
/// Right-trivialised differential (I − y/2)⁻¹ u (I + y/2)⁻¹.
AlgebraElement dcay(const AlgebraElement& y, const AlgebraElement& u);
/// Inverse Cayley map 2(g − I)(g + I)⁻¹.
AlgebraElement cayley_inv(const GroupElement& g);

/// Throws DomainError unless both descriptors match.
void require_same(const AlgebraDescriptor& a, const AlgebraDescriptor& b, const char* what);

}  // namespace lgi
