#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgi/integrators.hpp"
#include "lgi/structure.hpp"

namespace lgi {

struct ProblemOptions {
  /// Constant isotropy value α for isotropy_demo.
  double alpha = 0.0;
};

struct ProblemDefinition {
  std::string name;
  std::string description;
  FieldPresentation presentation;
  ManifoldPoint y0;
  /// Quantities conserved by the exact flow.
  std::vector<Observer> invariants;
  /// Sphere problems with an energy: H and the bivector used by the
  /// discrete-gradient methods.
  std::optional<SphereFunction> sphere_energy;
  std::optional<SphereBivector> sphere_bivector;
  /// Coadjoint problems with a Lagrangian: f for the variational scheme.
  /// The scheme is right-trivialised, so it reproduces the body-frame flow
  /// when run with step −h.
  std::optional<CotangentField> cotangent_field;
};

/// Principal moments of the rigid-body problems.
Eigen::Vector3d rigid_body_inertia();
/// Normalised (1, 1, 1).
Eigen::Vector3d rigid_body_initial();
/// ½(x, 𝕀⁻¹x) and its gradient.
SphereFunction rigid_body_energy();
/// ℓ(g, ξ) = ½(𝕀ξ, ξ) on SO(3).
TrivializedLagrangian rigid_body_lagrangian();
TrivializedHamiltonian rigid_body_hamiltonian();

/// Symmetric tridiagonal 5×5 matrix with unit off-diagonal and diagonal i − 3.
Eigen::MatrixXd toda_initial();
/// B(X) = strictly upper part of X minus strictly lower part.
Eigen::MatrixXd toda_skew(const Eigen::MatrixXd& X);

/// Dirichlet Laplacian (n+1)²·tridiag(1, −2, 1) on n interior points.
Eigen::MatrixXd heat_laplacian(int n);
Eigen::VectorXd heat_initial(int n);
Eigen::VectorXd heat_nonlinearity(const Eigen::VectorXd& u);

/// rigid_body_sphere, rigid_body_liepoisson, toda_isospectral,
/// heat_semilinear, isotropy_demo.
std::vector<std::string> problem_names();
/// Throws LookupError for an unknown name.
ProblemDefinition make_problem(const std::string& name, const ProblemOptions& opts = {});

}  // namespace lgi
