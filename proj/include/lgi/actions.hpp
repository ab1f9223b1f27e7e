#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <variant>

#include "lgi/lie_core.hpp"
#include "lgi/matfun.hpp"

namespace lgi {

struct GroupPoint {
  GroupElement g;
};

/// Unit vector on S^{n-1}; the constructor checks ‖x‖ = 1 to 1e-12.
class SpherePoint {
 public:
  explicit SpherePoint(Eigen::VectorXd x);
  /// x/‖x‖; throws DomainError for a zero vector.
  static SpherePoint normalized(const Eigen::VectorXd& x);
  const Eigen::VectorXd& x() const { return x_; }

 private:
  struct Raw {};
  SpherePoint(Eigen::VectorXd x, Raw) : x_(std::move(x)) {}
  Eigen::VectorXd x_;
};

struct MomentumPoint {
  CoAlgebraElement mu;
};

/// Symmetric matrix; the constructor checks X = Xᵀ to 1e-13 (relative).
class SymmetricPoint {
 public:
  explicit SymmetricPoint(Eigen::MatrixXd X);
  /// (M + Mᵀ)/2.
  static SymmetricPoint symmetrized(const Eigen::MatrixXd& M);
  const Eigen::MatrixXd& X() const { return X_; }

 private:
  struct Raw {};
  SymmetricPoint(Eigen::MatrixXd X, Raw) : X_(std::move(X)) {}
  Eigen::MatrixXd X_;
};

struct FlatPoint {
  Eigen::VectorXd u;
};

using ManifoldPoint = std::variant<GroupPoint, SpherePoint, MomentumPoint, SymmetricPoint, FlatPoint>;

/// Tangent vectors live in the ambient space: n×1 for vector points,
/// the stored matrix shape otherwise.
using Tangent = Eigen::MatrixXd;

/// Ambient representation of a point (vectors as n×1 matrices).
Eigen::MatrixXd ambient(const ManifoldPoint& x);
/// Euclidean/Frobenius distance between ambient representations.
double ambient_distance(const ManifoldPoint& a, const ManifoldPoint& b);
std::string variant_name(const ManifoldPoint& x);
/// Residual of the variant's defining constraint (0 for flat points).
double constraint_defect(const ManifoldPoint& x);

enum class ActionType { LeftMultiplication, RightMultiplication, SphereSO3, Affine, Coadjoint, IsospectralConjugation };

/// A group action together with its parameters.
struct ActionKind {
  ActionType type;
  /// Isotropy field α on S² (SphereSO3 only); empty means α ≡ 0.
  std::function<double(const Eigen::Vector3d&)> isotropy;
  /// Linear part L of the affine presentation (Affine only).
  Eigen::MatrixXd L;

  static ActionKind left() { return {ActionType::LeftMultiplication, {}, {}}; }
  static ActionKind right() { return {ActionType::RightMultiplication, {}, {}}; }
  static ActionKind sphere(std::function<double(const Eigen::Vector3d&)> alpha = {}) {
    return {ActionType::SphereSO3, std::move(alpha), {}};
  }
  static ActionKind affine(Eigen::MatrixXd L) { return {ActionType::Affine, {}, std::move(L)}; }
  static ActionKind coadjoint() { return {ActionType::Coadjoint, {}, {}}; }
  static ActionKind isospectral() { return {ActionType::IsospectralConjugation, {}, {}}; }
};

std::string action_name(ActionType t);

/// Λ(g, x). Sphere outputs are renormalised and isospectral outputs
/// symmetrised. Throws DomainError on variant or descriptor mismatch.
ManifoldPoint act(const ActionKind& a, const GroupElement& g, const ManifoldPoint& x);

/// ρ(ξ)|_x = d/dt exp(tξ)·x at t = 0.
Tangent infinitesimal(const ActionKind& a, const AlgebraElement& xi, const ManifoldPoint& x);

/// Vector field F = ρ∘f on M given by a map f: M → 𝔤.
struct FieldPresentation {
  ActionKind action;
  AlgebraDescriptor desc;
  std::function<AlgebraElement(const ManifoldPoint&)> f;

  /// f(x), plus α(y)·hat(y) when the sphere action carries an isotropy field.
  AlgebraElement operator()(const ManifoldPoint& x) const;
  /// F(x) = ρ(f(x))|_x.
  Tangent field(const ManifoldPoint& x) const { return infinitesimal(action, (*this)(x), x); }
};

/// Lie–Euler step on S² written out with the Rodrigues formula:
/// y₁ = y + h (sinθ/θ) f×y + h² ((1 − cosθ)/θ²)(α f − ‖f‖² y),
/// θ = h √(‖f‖² + α²). Requires (f, y) = 0 (DomainError otherwise).
SpherePoint sphere_lie_euler_closed_form(const Eigen::Vector3d& f_val, double alpha_val, const SpherePoint& y, double h);

}  // namespace lgi
