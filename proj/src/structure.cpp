#include "lgi/structure.hpp"

#include <cmath>

#include "lgi/errors.hpp"

namespace lgi {

namespace {

bool finite(double v) { return std::isfinite(v); }

double max_abs(const Eigen::MatrixXd& M) { return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff(); }

// Matrix (in dual coordinates) of μ̄ ↦ Ad*_Δ (dτ_u⁻¹)* μ̄ and of μ̄ ↦ (dτ_u⁻¹)* μ̄.
struct MomentumMaps {
  Eigen::MatrixXd forward;  // Ad*_Δ ∘ (dτ_u⁻¹)*
  Eigen::MatrixXd update;   // (dτ_u⁻¹)*
};

MomentumMaps momentum_maps(const CoordinateMap& chart, const AlgebraElement& u, const GroupElement& delta) {
  const AlgebraDescriptor& desc = u.descriptor();
  const auto basis = algebra_basis(desc);
  const int d = static_cast<int>(basis.size());
  Eigen::MatrixXd D(d, d);
  for (int j = 0; j < d; ++j)
    D.col(j) = coordinates(dpsi_inv(chart, u, AlgebraElement(desc, basis[static_cast<std::size_t>(j)], Trusted{})));
  MomentumMaps out;
  out.update = D.transpose();
  out.forward.resize(d, d);
  for (int j = 0; j < d; ++j) {
    const CoAlgebraElement col = from_dual_coordinates(desc, out.update.col(j));
    out.forward.col(j) = dual_coordinates(coAd(delta, col));
  }
  return out;
}

CoordinateMap variational_chart(const AlgebraDescriptor& desc, const VariationalConfig& cfg) {
  switch (cfg.tau) {
    case ChartKind::Exp:
      return CoordinateMap::exp(desc, desc.is_so3() ? -1 : cfg.dexpinv_terms);
    case ChartKind::Cayley:
      return CoordinateMap::cayley(desc);
    case ChartKind::CC2K:
      break;
  }
  throw UnsupportedError("variational_step: τ must be exp or Cayley");
}

// Relative distance between two group elements.
double group_gap(const GroupElement& a, const GroupElement& b) {
  return (a.value() - b.value()).cwiseAbs().maxCoeff() / std::max(1.0, a.value().cwiseAbs().maxCoeff());
}

}  // namespace

// ---------------------------------------------------------------- cotangent bundle

TrivializedCotangentPoint::TrivializedCotangentPoint(GroupElement g_, CoAlgebraElement mu_)
    : g(std::move(g_)), mu(std::move(mu_)) {
  require_same(g.descriptor(), mu.descriptor(), "TrivializedCotangentPoint");
}

CotangentField CotangentField::from_hamiltonian(const TrivializedHamiltonian& H) {
  CotangentField f;
  f.f1 = H.dH_mu;
  f.f2 = [dg = H.dH_g](const GroupElement& g, const CoAlgebraElement& mu) { return -dg(g, mu); };
  return f;
}

CotangentField CotangentField::from_lagrangian(const TrivializedLagrangian& L) {
  CotangentField f;
  f.f1 = L.legendre_inverse;
  f.f2 = [L](const GroupElement& g, const CoAlgebraElement& mu) { return L.dl_g(g, L.legendre_inverse(g, mu)); };
  return f;
}

double symplectic_form(const TrivializedCotangentPoint& z, const AlgebraElement& xi1, const CoAlgebraElement& dnu1,
                       const AlgebraElement& xi2, const CoAlgebraElement& dnu2) {
  const auto& d = z.descriptor();
  require_same(d, xi1.descriptor(), "symplectic_form");
  require_same(d, xi2.descriptor(), "symplectic_form");
  require_same(d, dnu1.descriptor(), "symplectic_form");
  require_same(d, dnu2.descriptor(), "symplectic_form");
  return pairing(dnu2, xi1) - pairing(dnu1, xi2) - pairing(z.mu, bracket(xi1, xi2));
}

Eigen::MatrixXd symplectic_form_matrix(const CoAlgebraElement& mu) {
  const auto& desc = mu.descriptor();
  const auto basis = algebra_basis(desc);
  const int d = static_cast<int>(basis.size());
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const AlgebraElement ei(desc, basis[static_cast<std::size_t>(i)], Trusted{});
      const AlgebraElement ej(desc, basis[static_cast<std::size_t>(j)], Trusted{});
      W(i, j) = -pairing(mu, bracket(ei, ej));
    }
  W.block(0, d, d, d) = Eigen::MatrixXd::Identity(d, d);
  W.block(d, 0, d, d) = -Eigen::MatrixXd::Identity(d, d);
  return W;
}

TrivializedCotangentPoint variational_step(const CotangentField& f, const TrivializedCotangentPoint& z, double h,
                                           const VariationalConfig& cfg, StepInfo* info) {
  if (!finite(h)) throw NumericError("variational_step: non-finite step size");
  const AlgebraDescriptor& desc = z.descriptor();
  const CoordinateMap chart = variational_chart(desc, cfg);
  const Eigen::VectorXd mu0 = dual_coordinates(z.mu);

  Eigen::VectorXd mubar = mu0;
  double residual = 0.0;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const CoAlgebraElement mb = from_dual_coordinates(desc, mubar);
    const AlgebraElement u = h * f.f1(z.g, mb);
    const GroupElement delta = psi(chart, u);
    const MomentumMaps maps = momentum_maps(chart, u, delta);
    const Eigen::VectorXd rhs = mu0 + h * dual_coordinates(f.f2(z.g, mb));
    Eigen::FullPivLU<Eigen::MatrixXd> lu(maps.forward);
    if (!lu.isInvertible()) throw NumericError("variational_step: singular momentum map");
    const Eigen::VectorXd next = lu.solve(rhs);
    if (!next.allFinite()) throw NumericError("variational_step: non-finite iterate");
    residual = (next - mubar).cwiseAbs().maxCoeff();
    mubar = next;
    if (residual <= cfg.tol * std::max(1.0, mubar.cwiseAbs().maxCoeff())) {
      // Final evaluation at the converged μ̄.
      const CoAlgebraElement mbf = from_dual_coordinates(desc, mubar);
      const AlgebraElement uf = h * f.f1(z.g, mbf);
      const GroupElement df = psi(chart, uf);
      const MomentumMaps mf = momentum_maps(chart, uf, df);
      if (info) {
        info->iterations = it;
        info->exponentials = it + 1;
        info->residual = residual;
      }
      return {df * z.g, from_dual_coordinates(desc, mf.update * mubar)};
    }
  }
  throw SolverError("variational_step: fixed-point iteration did not converge", residual, cfg.max_iterations);
}

TrivializedCotangentPoint cotangent_lie_euler_step(const CotangentField& f, const TrivializedCotangentPoint& z,
                                                   double h) {
  const GroupElement delta = group_exp(h * f.f1(z.g, z.mu));
  const CoAlgebraElement mu = z.mu + h * f.f2(z.g, z.mu);
  return {delta * z.g, coAd(delta.inverse(), mu)};
}

double symplecticity_check(const CotangentStepper& stepper, const TrivializedCotangentPoint& z, double h,
                           double fd_step) {
  const AlgebraDescriptor& desc = z.descriptor();
  const auto basis = algebra_basis(desc);
  const int d = static_cast<int>(basis.size());
  const TrivializedCotangentPoint z1 = stepper(z, h);
  const GroupElement g1inv = z1.g.inverse();
  const Eigen::VectorXd mu1 = dual_coordinates(z1.mu);

  auto perturbed_image = [&](int j, double eps) {
    Eigen::VectorXd dx = Eigen::VectorXd::Zero(d), dm = Eigen::VectorXd::Zero(d);
    if (j < d)
      dx(j) = eps;
    else
      dm(j - d) = eps;
    const GroupElement g = group_exp(from_coordinates(desc, dx)) * z.g;
    const CoAlgebraElement mu = z.mu + from_dual_coordinates(desc, dm);
    const TrivializedCotangentPoint out = stepper(TrivializedCotangentPoint(g, mu), h);
    Eigen::VectorXd v(2 * d);
    v.head(d) = coordinates(group_log(out.g * g1inv));
    v.tail(d) = dual_coordinates(out.mu) - mu1;
    return v;
  };

  Eigen::MatrixXd J(2 * d, 2 * d);
  for (int j = 0; j < 2 * d; ++j)
    J.col(j) = (perturbed_image(j, fd_step) - perturbed_image(j, -fd_step)) / (2.0 * fd_step);
  if (!J.allFinite()) throw NumericError("symplecticity_check: non-finite finite differences");
  const Eigen::MatrixXd defect =
      J.transpose() * symplectic_form_matrix(z1.mu) * J - symplectic_form_matrix(z.mu);
  return max_abs(defect);
}

// ---------------------------------------------------------------- discrete gradients

void DiscreteGradientConfig::validate() const {
  if (!(tol > 0.0)) throw DomainError("DiscreteGradientConfig: tolerance must be positive");
  if (nodes < 1) throw DomainError("DiscreteGradientConfig: at least one quadrature node is required");
  if (max_iterations < 1) throw DomainError("DiscreteGradientConfig: max_iterations must be positive");
}

std::string DiscreteGradientConfig::name() const {
  return kind == DiscreteGradientKind::GonzalezMidpoint ? "gonzalez" : "approximate-AVF";
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: at least one node is required");
  // Golub–Welsch on [−1, 1], mapped to [0, 1].
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    T(k, k - 1) = b;
    T(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  Eigen::VectorXd x = (es.eigenvalues().array() + 1.0) / 2.0;
  Eigen::VectorXd w = es.eigenvectors().row(0).transpose().array().square();
  return {x, w};
}

CoAlgebraElement discrete_differential(const DiscreteGradientConfig& cfg, const GroupFunction& H,
                                       const GroupElement& u, const GroupElement& v) {
  cfg.validate();
  require_same(u.descriptor(), v.descriptor(), "discrete_differential");
  const AlgebraElement eta = group_log(v * u.inverse());
  if (cfg.kind == DiscreteGradientKind::AVFQuadrature) {
    const auto [x, w] = gauss_legendre(cfg.nodes);
    CoAlgebraElement acc = CoAlgebraElement::zero(u.descriptor());
    for (int i = 0; i < cfg.nodes; ++i) acc = acc + w(i) * H.dH(group_exp(x(i) * eta) * u);
    return acc;
  }
  const double ee = inner(eta, eta);
  if (ee == 0.0) return H.dH(u);
  const GroupElement c = group_exp(0.5 * eta) * u;
  const CoAlgebraElement a = H.dH(c);
  const double coef = (H.H(v) - H.H(u) - pairing(a, eta)) / ee;
  return a + coef * flat(eta);
}

GroupBivector bivector_from_gradient(std::function<AlgebraElement(const GroupElement&)> F, GroupFunction H) {
  return [F = std::move(F), H = std::move(H)](const GroupElement& u, const GroupElement& v,
                                                 const CoAlgebraElement& alpha) {
    const GroupElement c = group_exp(0.5 * group_log(v * u.inverse())) * u;
    const AlgebraElement grad = sharp(H.dH(c));
    const double gg = inner(grad, grad);
    if (!(std::sqrt(gg) >= 1e-10)) throw DegeneracyError("bivector_from_gradient: gradient vanishes");
    const AlgebraElement f = F(c);
    return (1.0 / gg) * (pairing(alpha, grad) * f - pairing(alpha, f) * grad);
  };
}

GroupElement dg_step_group(const DiscreteGradientConfig& cfg, const GroupFunction& H, const GroupBivector& omega,
                           const GroupElement& g, double h, StepInfo* info) {
  cfg.validate();
  GroupElement next = g;
  double residual = 0.0;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const CoAlgebraElement d = discrete_differential(cfg, H, g, next);
    const AlgebraElement zeta = omega(g, next, d);
    const GroupElement cand = group_exp(h * zeta) * g;
    if (!all_finite(cand.value())) throw NumericError("dg_step_group: non-finite iterate");
    residual = group_gap(cand, next);
    next = cand;
    if (residual <= cfg.tol) {
      if (info) {
        info->iterations = it;
        info->exponentials = it;
        info->residual = residual;
      }
      return next;
    }
  }
  throw SolverError("dg_step_group: fixed-point iteration did not converge", residual, cfg.max_iterations);
}

SphereBivector sphere_midpoint_bivector() {
  return [](const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& alpha) -> Eigen::VectorXd {
    if (x.size() != 3 || y.size() != 3 || alpha.size() != 3)
      throw DomainError("sphere_midpoint_bivector: defined on S² only");
    const Eigen::Vector3d m = 0.5 * (x + y);
    return m.cross(Eigen::Vector3d(alpha));
  };
}

SpherePoint sphere_center(const SpherePoint& x, const SpherePoint& y) {
  const Eigen::VectorXd s = x.x() + y.x();
  if (s.norm() < 1e-12) throw ChartError("sphere_center: antipodal points");
  return SpherePoint::normalized(s);
}

SphereBivector bivector_from_gradient(std::function<Eigen::VectorXd(const Eigen::VectorXd&)> F, SphereFunction H) {
  return [F = std::move(F), H = std::move(H)](const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                                 const Eigen::VectorXd& alpha) -> Eigen::VectorXd {
    const Eigen::VectorXd s = x + y;
    if (s.norm() < 1e-12) throw ChartError("bivector_from_gradient: antipodal points");
    const Eigen::VectorXd c = s.normalized();
    Eigen::VectorXd grad = H.grad(c);
    grad -= c.dot(grad) * c;
    const double gg = grad.squaredNorm();
    if (!(std::sqrt(gg) >= 1e-10)) throw DegeneracyError("bivector_from_gradient: gradient vanishes");
    const Eigen::VectorXd f = F(c);
    return (alpha.dot(grad) * f - alpha.dot(f) * grad) / gg;
  };
}

Eigen::VectorXd discrete_differential(const DiscreteGradientConfig& cfg, RetractionKind kind, const SphereFunction& H,
                                      const SpherePoint& x, const SpherePoint& y) {
  cfg.validate();
  if (x.x().size() != y.x().size()) throw DomainError("discrete_differential: dimension mismatch");
  const SpherePoint c = sphere_center(x, y);
  const RetractionChart chart{kind, c};
  const Eigen::VectorXd v = retraction_inv(chart, x);
  const Eigen::VectorXd w = retraction_inv(chart, y);
  if (cfg.kind == DiscreteGradientKind::AVFQuadrature) {
    const auto [s, wt] = gauss_legendre(cfg.nodes);
    const Eigen::Index n = c.x().size();
    const Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n) - c.x() * c.x().transpose();
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < cfg.nodes; ++i) {
      const Eigen::VectorXd gamma = (1.0 - s(i)) * v + s(i) * w;
      const Eigen::VectorXd p = retraction(chart, gamma).x();
      Eigen::MatrixXd T(n, n);
      for (Eigen::Index j = 0; j < n; ++j) T.col(j) = tangent_map(chart, gamma, P.col(j));
      acc += wt(i) * (T.transpose() * H.grad(p));
    }
    return P * acc;
  }
  const Eigen::VectorXd eta = w - v;
  const Eigen::VectorXd a = H.grad(c.x());
  const double ee = eta.squaredNorm();
  if (ee == 0.0) return a;
  return a + ((H.H(y.x()) - H.H(x.x()) - a.dot(eta)) / ee) * eta;
}

SpherePoint dg_step_retraction(const DiscreteGradientConfig& cfg, RetractionKind kind, const SphereFunction& H,
                               const SphereBivector& omega, const SpherePoint& y, double h, StepInfo* info) {
  cfg.validate();
  SpherePoint next = y;
  double residual = 0.0;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const SpherePoint c = sphere_center(y, next);
    const RetractionChart chart{kind, c};
    const Eigen::VectorXd d = discrete_differential(cfg, kind, H, y, next);
    Eigen::VectorXd W = retraction_inv(chart, y) + h * omega(y.x(), next.x(), d);
    W -= c.x().dot(W) * c.x();  // remove roundoff off the tangent space
    const SpherePoint cand = retraction(chart, W);
    if (!cand.x().allFinite()) throw NumericError("dg_step_retraction: non-finite iterate");
    residual = (cand.x() - next.x()).cwiseAbs().maxCoeff();
    next = cand;
    if (residual <= cfg.tol) {
      if (info) {
        info->iterations = it;
        info->residual = residual;
      }
      return next;
    }
  }
  throw SolverError("dg_step_retraction: fixed-point iteration did not converge", residual, cfg.max_iterations);
}

}  // namespace lgi
