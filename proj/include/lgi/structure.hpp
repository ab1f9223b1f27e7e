#pragma once

#include <functional>

#include "lgi/coords.hpp"
#include "lgi/integrators.hpp"
#include "lgi/lie_core.hpp"

namespace lgi {

// ================================================================ cotangent bundle

/// Point (g, μ) of G ⋉ 𝔤*, μ the right-trivialised momentum.
struct TrivializedCotangentPoint {
  GroupElement g;
  CoAlgebraElement mu;

  /// Throws DomainError for mismatched descriptors.
  TrivializedCotangentPoint(GroupElement g_, CoAlgebraElement mu_);
  const AlgebraDescriptor& descriptor() const { return g.descriptor(); }
};

/// H(g, μ) with its partials; dH_g is right-trivialised (R_g*∂H/∂g ∈ 𝔤*).
struct TrivializedHamiltonian {
  std::function<double(const GroupElement&, const CoAlgebraElement&)> H;
  std::function<CoAlgebraElement(const GroupElement&, const CoAlgebraElement&)> dH_g;
  std::function<AlgebraElement(const GroupElement&, const CoAlgebraElement&)> dH_mu;
};

/// ℓ(g, ξ) with partials and the inverse Legendre map ι(g, μ) = ξ.
struct TrivializedLagrangian {
  std::function<double(const GroupElement&, const AlgebraElement&)> ell;
  std::function<CoAlgebraElement(const GroupElement&, const AlgebraElement&)> dl_g;
  std::function<CoAlgebraElement(const GroupElement&, const AlgebraElement&)> dl_xi;
  std::function<AlgebraElement(const GroupElement&, const CoAlgebraElement&)> legendre_inverse;
};

/// The map f = (f₁, f₂): G ⋉ 𝔤* → 𝔤 × 𝔤* presenting a cotangent vector field.
struct CotangentField {
  std::function<AlgebraElement(const GroupElement&, const CoAlgebraElement&)> f1;
  std::function<CoAlgebraElement(const GroupElement&, const CoAlgebraElement&)> f2;

  /// f₁ = ∂H/∂μ, f₂ = −R_g*∂H/∂g.
  static CotangentField from_hamiltonian(const TrivializedHamiltonian& H);
  /// f₁ = ι(g, μ), f₂ = R_g*∂ℓ/∂g(g, ι(g, μ)).
  static CotangentField from_lagrangian(const TrivializedLagrangian& L);
};

/// ω((ξ₁,δν₁),(ξ₂,δν₂)) = ⟨δν₂,ξ₁⟩ − ⟨δν₁,ξ₂⟩ − ⟨μ,[ξ₁,ξ₂]⟩.
double symplectic_form(const TrivializedCotangentPoint& z, const AlgebraElement& xi1, const CoAlgebraElement& dnu1,
                       const AlgebraElement& xi2, const CoAlgebraElement& dnu2);
/// Matrix of ω at μ in (algebra coordinates, dual coordinates).
Eigen::MatrixXd symplectic_form_matrix(const CoAlgebraElement& mu);

struct VariationalConfig {
  /// Exp or Cayley.
  ChartKind tau = ChartKind::Exp;
  double tol = 1e-13;
  int max_iterations = 100;
  /// Truncation of the dexp⁻¹ series away from so(3).
  int dexpinv_terms = 3;
};

/// One step of the variational scheme
///   u = h f₁(g, μ̄), Δ = τ(u), g₁ = Δ g,
///   μ₀ = −h f₂(g, μ̄) + Ad*_Δ (dτ_u⁻¹)* μ̄,   μ₁ = (dτ_u⁻¹)* μ̄,
/// solved for μ̄ by fixed-point iteration. Throws SolverError.
TrivializedCotangentPoint variational_step(const CotangentField& f, const TrivializedCotangentPoint& z, double h,
                                           const VariationalConfig& cfg = {}, StepInfo* info = nullptr);

/// Explicit control: Δ = exp(h f₁(g, μ)), g₁ = Δ g, μ₁ = Ad*_{Δ⁻¹}(μ + h f₂(g, μ)).
TrivializedCotangentPoint cotangent_lie_euler_step(const CotangentField& f, const TrivializedCotangentPoint& z,
                                                   double h);

using CotangentStepper = std::function<TrivializedCotangentPoint(const TrivializedCotangentPoint&, double)>;

/// ‖JᵀΩ(z₁)J − Ω(z₀)‖ (largest entry), with J the central-difference Jacobian
/// of the one-step map in right-trivialised coordinates. Throws NumericError
/// on non-finite differences.
double symplecticity_check(const CotangentStepper& stepper, const TrivializedCotangentPoint& z, double h,
                           double fd_step = 1e-5);

// ================================================================ discrete gradients

enum class DiscreteGradientKind { GonzalezMidpoint, AVFQuadrature };

/// Gonzalez uses the Lie algebra inner product `inner` and the midpoint
/// c = exp(η/2)·u (c = (x+y)/‖x+y‖ on the sphere).
struct DiscreteGradientConfig {
  DiscreteGradientKind kind = DiscreteGradientKind::GonzalezMidpoint;
  int nodes = 3;
  double tol = 1e-13;
  int max_iterations = 100;

  /// Throws DomainError unless tol > 0, nodes ≥ 1, max_iterations ≥ 1.
  void validate() const;
  std::string name() const;
};

/// Gauss–Legendre nodes and weights on [0, 1].
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n);

/// Scalar function on a matrix group with right-trivialised differential.
struct GroupFunction {
  std::function<double(const GroupElement&)> H;
  std::function<CoAlgebraElement(const GroupElement&)> dH;
};

/// Trivialised discrete differential d̄H(u, v) ∈ 𝔤*. Throws ChartError when
/// v·u⁻¹ leaves the logarithm's principal domain.
CoAlgebraElement discrete_differential(const DiscreteGradientConfig& cfg, const GroupFunction& H,
                                       const GroupElement& u, const GroupElement& v);

/// α ↦ α ⌟ ω̄(u, v) ∈ 𝔤.
using GroupBivector =
    std::function<AlgebraElement(const GroupElement& u, const GroupElement& v, const CoAlgebraElement& alpha)>;

/// ω̄(u, v) = (grad H ∧ F)/‖grad H‖² at c = exp(η/2)·u, where F is the
/// right-trivialised vector field (ġ = F(g)·g). Throws DegeneracyError when
/// ‖grad H(c)‖ < 1e-10.
GroupBivector bivector_from_gradient(std::function<AlgebraElement(const GroupElement&)> F, GroupFunction H);

/// g₁ = exp(h ζ(g, g₁))·g with ζ = d̄H(g, g₁) ⌟ ω̄(g, g₁). Throws SolverError.
GroupElement dg_step_group(const DiscreteGradientConfig& cfg, const GroupFunction& H, const GroupBivector& omega,
                           const GroupElement& g, double h, StepInfo* info = nullptr);

/// Function on the unit sphere given through its ambient extension.
struct SphereFunction {
  std::function<double(const Eigen::VectorXd&)> H;
  /// Euclidean gradient of the extension.
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad;
};

/// α ↦ α ⌟ ω̄(x, y), tangent at c(x, y).
using SphereBivector =
    std::function<Eigen::VectorXd(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& alpha)>;

/// ω̄(x, y)(α, β) = ((x + y)/2, α × β), so α ⌟ ω̄ = m × α (S² only).
SphereBivector sphere_midpoint_bivector();
/// (grad H ∧ F)/‖grad H‖² at c(x, y), grad projected onto T_cS.
/// Throws DegeneracyError when ‖grad H(c)‖ < 1e-10.
SphereBivector bivector_from_gradient(std::function<Eigen::VectorXd(const Eigen::VectorXd&)> F, SphereFunction H);

/// c(x, y) = (x + y)/‖x + y‖. Throws ChartError for antipodal points.
SpherePoint sphere_center(const SpherePoint& x, const SpherePoint& y);

/// Discrete differential at c(x, y) as an ambient covector, for either
/// retraction family.
Eigen::VectorXd discrete_differential(const DiscreteGradientConfig& cfg, RetractionKind kind, const SphereFunction& H,
                                      const SpherePoint& x, const SpherePoint& y);

/// y₁ = φ_c(W), W = φ_c⁻¹(y) + h d̄H(y, y₁) ⌟ ω̄(y, y₁), c = c(y, y₁).
/// Throws ChartError or SolverError.
SpherePoint dg_step_retraction(const DiscreteGradientConfig& cfg, RetractionKind kind, const SphereFunction& H,
                               const SphereBivector& omega, const SpherePoint& y, double h, StepInfo* info = nullptr);

}  // namespace lgi
