#include "lgi/problems.hpp"

#include <cmath>

#include "lgi/errors.hpp"

namespace lgi {

namespace {

constexpr int kHeatPoints = 32;

Eigen::Vector3d vector3(const ManifoldPoint& y) {
  const Eigen::MatrixXd a = ambient(y);
  if (a.size() != 3) throw DomainError("expected a point in ℝ³");
  return Eigen::Vector3d(a(0), a(1), a(2));
}

Eigen::Vector3d body_rate(const Eigen::Vector3d& x) { return x.cwiseQuotient(rigid_body_inertia()); }

double rigid_energy(const Eigen::Vector3d& x) { return 0.5 * x.dot(body_rate(x)); }

double trace_power(const ManifoldPoint& y, int k) {
  const Eigen::MatrixXd X = ambient(y);
  Eigen::MatrixXd P = X;
  for (int i = 1; i < k; ++i) P = P * X;
  return P.trace();
}

ProblemDefinition rigid_body_sphere() {
  ProblemDefinition p{"rigid_body_sphere",
                      "free rigid body on S², dx/dt = x × 𝕀⁻¹x",
                      {ActionKind::sphere(), AlgebraDescriptor::so(3),
                       [](const ManifoldPoint& y) { return AlgebraElement::so3(-body_rate(vector3(y))); }},
                      SpherePoint(rigid_body_initial()),
                      {{"H", [](const ManifoldPoint& y) { return rigid_energy(vector3(y)); }},
                       {"norm", [](const ManifoldPoint& y) { return vector3(y).norm(); }}},
                      rigid_body_energy(),
                      sphere_midpoint_bivector(),
                      std::nullopt};
  return p;
}

ProblemDefinition rigid_body_liepoisson() {
  ProblemDefinition p{"rigid_body_liepoisson",
                      "free rigid body on so(3)*, dμ/dt = μ × 𝕀⁻¹μ",
                      {ActionKind::coadjoint(), AlgebraDescriptor::so(3),
                       [](const ManifoldPoint& y) { return AlgebraElement::so3(-body_rate(vector3(y))); }},
                      MomentumPoint{CoAlgebraElement::so3(rigid_body_initial())},
                      {{"H", [](const ManifoldPoint& y) { return rigid_energy(vector3(y)); }},
                       {"casimir", [](const ManifoldPoint& y) { return vector3(y).norm(); }}},
                      std::nullopt,
                      std::nullopt,
                      CotangentField::from_lagrangian(rigid_body_lagrangian())};
  return p;
}

ProblemDefinition toda_isospectral() {
  ProblemDefinition p{"toda_isospectral",
                      "5×5 Toda lattice dX/dt = [B(X), X]",
                      {ActionKind::isospectral(), AlgebraDescriptor::so(5),
                       [](const ManifoldPoint& y) {
                         return AlgebraElement(AlgebraDescriptor::so(5), toda_skew(ambient(y)), Trusted{});
                       }},
                      SymmetricPoint(toda_initial()),
                      {{"trace1", [](const ManifoldPoint& y) { return trace_power(y, 1); }},
                       {"trace2", [](const ManifoldPoint& y) { return trace_power(y, 2); }},
                       {"trace3", [](const ManifoldPoint& y) { return trace_power(y, 3); }}},
                      std::nullopt,
                      std::nullopt,
                      std::nullopt};
  return p;
}

ProblemDefinition heat_semilinear() {
  const Eigen::MatrixXd L = heat_laplacian(kHeatPoints);
  ProblemDefinition p{"heat_semilinear",
                      "semilinear heat equation u_t = Lu + u³ on 32 interior points",
                      {ActionKind::affine(L), AlgebraDescriptor::affine(kHeatPoints),
                       [L](const ManifoldPoint& y) {
                         return AlgebraElement::affine(L, heat_nonlinearity(std::get<FlatPoint>(y).u));
                       }},
                      FlatPoint{heat_initial(kHeatPoints)},
                      {},
                      std::nullopt,
                      std::nullopt,
                      std::nullopt};
  return p;
}

ProblemDefinition isotropy_demo(double alpha) {
  const Eigen::Vector3d w0 = Eigen::Vector3d::UnitZ();
  std::function<double(const Eigen::Vector3d&)> iso;
  if (alpha != 0.0) iso = [alpha](const Eigen::Vector3d&) { return alpha; };
  ProblemDefinition p{"isotropy_demo",
                      "rotation about e_z on S², f(y) = ω₀ − (ω₀·y)y plus isotropy α",
                      {ActionKind::sphere(iso), AlgebraDescriptor::so(3),
                       [w0](const ManifoldPoint& y) {
                         const Eigen::Vector3d v = vector3(y);
                         return AlgebraElement::so3(w0 - w0.dot(v) * v);
                       }},
                      SpherePoint::normalized(Eigen::Vector3d(1.0, 0.0, 1.0)),
                      {{"z", [](const ManifoldPoint& y) { return vector3(y)(2); }},
                       {"norm", [](const ManifoldPoint& y) { return vector3(y).norm(); }}},
                      std::nullopt,
                      std::nullopt,
                      std::nullopt};
  return p;
}

}  // namespace

Eigen::Vector3d rigid_body_inertia() { return {1.0, 2.0, 4.0}; }

Eigen::Vector3d rigid_body_initial() { return Eigen::Vector3d(1.0, 1.0, 1.0).normalized(); }

SphereFunction rigid_body_energy() {
  return {[](const Eigen::VectorXd& x) { return rigid_energy(Eigen::Vector3d(x)); },
          [](const Eigen::VectorXd& x) -> Eigen::VectorXd { return body_rate(Eigen::Vector3d(x)); }};
}

TrivializedLagrangian rigid_body_lagrangian() {
  TrivializedLagrangian L;
  L.ell = [](const GroupElement&, const AlgebraElement& xi) {
    const Eigen::Vector3d w = xi.vec();
    return 0.5 * w.dot(rigid_body_inertia().cwiseProduct(w));
  };
  L.dl_g = [](const GroupElement& g, const AlgebraElement&) { return CoAlgebraElement::zero(g.descriptor()); };
  L.dl_xi = [](const GroupElement&, const AlgebraElement& xi) {
    return CoAlgebraElement::so3(rigid_body_inertia().cwiseProduct(xi.vec()));
  };
  L.legendre_inverse = [](const GroupElement&, const CoAlgebraElement& mu) {
    return AlgebraElement::so3(body_rate(mu.vec()));
  };
  return L;
}

TrivializedHamiltonian rigid_body_hamiltonian() {
  TrivializedHamiltonian H;
  H.H = [](const GroupElement&, const CoAlgebraElement& mu) { return rigid_energy(mu.vec()); };
  H.dH_g = [](const GroupElement& g, const CoAlgebraElement&) { return CoAlgebraElement::zero(g.descriptor()); };
  H.dH_mu = [](const GroupElement&, const CoAlgebraElement& mu) { return AlgebraElement::so3(body_rate(mu.vec())); };
  return H;
}

Eigen::MatrixXd toda_initial() {
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(5, 5);
  for (int i = 0; i < 5; ++i) {
    X(i, i) = (i + 1) - 3.0;
    if (i + 1 < 5) X(i, i + 1) = X(i + 1, i) = 1.0;
  }
  return X;
}

Eigen::MatrixXd toda_skew(const Eigen::MatrixXd& X) {
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(X.rows(), X.cols());
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      if (j > i) B(i, j) = X(i, j);
      if (j < i) B(i, j) = -X(i, j);
    }
  return B;
}

Eigen::MatrixXd heat_laplacian(int n) {
  if (n < 1) throw DomainError("heat_laplacian: need at least one point");
  const double s = static_cast<double>(n + 1) * (n + 1);
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    L(i, i) = -2.0 * s;
    if (i + 1 < n) L(i, i + 1) = L(i + 1, i) = s;
  }
  return L;
}

Eigen::VectorXd heat_initial(int n) {
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u(i) = std::sin(M_PI * (i + 1) / static_cast<double>(n + 1));
  return u;
}

Eigen::VectorXd heat_nonlinearity(const Eigen::VectorXd& u) { return u.array().cube(); }

std::vector<std::string> problem_names() {
  return {"rigid_body_sphere", "rigid_body_liepoisson", "toda_isospectral", "heat_semilinear", "isotropy_demo"};
}

ProblemDefinition make_problem(const std::string& name, const ProblemOptions& opts) {
  if (name == "rigid_body_sphere") return rigid_body_sphere();
  if (name == "rigid_body_liepoisson") return rigid_body_liepoisson();
  if (name == "toda_isospectral") return toda_isospectral();
  if (name == "heat_semilinear") return heat_semilinear();
  if (name == "isotropy_demo") return isotropy_demo(opts.alpha);
  throw LookupError("unknown problem '" + name + "'");
}

}  // namespace lgi
