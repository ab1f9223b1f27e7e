#include "lgi/actions.hpp"

#include <cmath>

#include "lgi/errors.hpp"

namespace lgi {

namespace {

[[noreturn]] void mismatch(const ActionKind& a, const ManifoldPoint& x) {
  throw DomainError("action " + action_name(a.type) + " cannot act on a " + variant_name(x));
}

template <class T>
const T& expect(const ActionKind& a, const ManifoldPoint& x) {
  if (const auto* p = std::get_if<T>(&x)) return *p;
  mismatch(a, x);
}

Eigen::MatrixXd as_column(const Eigen::VectorXd& v) { return Eigen::MatrixXd(v); }

}  // namespace

SpherePoint::SpherePoint(Eigen::VectorXd x) : x_(std::move(x)) {
  if (x_.size() < 1) throw DomainError("SpherePoint: empty vector");
  if (std::abs(x_.norm() - 1.0) > 1e-12) throw DomainError("SpherePoint: vector is not of unit length");
}

SpherePoint SpherePoint::normalized(const Eigen::VectorXd& x) {
  const double n = x.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("SpherePoint::normalized: zero or non-finite vector");
  return {x / n, Raw{}};
}

SymmetricPoint::SymmetricPoint(Eigen::MatrixXd X) : X_(std::move(X)) {
  if (X_.rows() != X_.cols()) throw DomainError("SymmetricPoint: matrix is not square");
  const double scale = std::max(1.0, X_.size() ? X_.cwiseAbs().maxCoeff() : 0.0);
  if (X_.size() && (X_ - X_.transpose()).cwiseAbs().maxCoeff() > 1e-13 * scale)
    throw DomainError("SymmetricPoint: matrix is not symmetric");
}

SymmetricPoint SymmetricPoint::symmetrized(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols()) throw DomainError("SymmetricPoint: matrix is not square");
  return {0.5 * (M + M.transpose()), Raw{}};
}

Eigen::MatrixXd ambient(const ManifoldPoint& x) {
  return std::visit(
      [](const auto& p) -> Eigen::MatrixXd {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GroupPoint>) return p.g.value();
        else if constexpr (std::is_same_v<T, SpherePoint>) return as_column(p.x());
        else if constexpr (std::is_same_v<T, MomentumPoint>) {
          if (p.mu.descriptor().is_so3()) return as_column(p.mu.vec());
          return p.mu.value();
        } else if constexpr (std::is_same_v<T, SymmetricPoint>) return p.X();
        else return as_column(p.u);
      },
      x);
}

double ambient_distance(const ManifoldPoint& a, const ManifoldPoint& b) {
  if (a.index() != b.index()) throw DomainError("ambient_distance: points of different kinds");
  const Eigen::MatrixXd A = ambient(a);
  const Eigen::MatrixXd B = ambient(b);
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw DomainError("ambient_distance: size mismatch");
  return (A - B).norm();
}

std::string variant_name(const ManifoldPoint& x) {
  static const char* names[] = {"group point", "sphere point", "momentum point", "symmetric point", "flat point"};
  return names[x.index()];
}

double constraint_defect(const ManifoldPoint& x) {
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GroupPoint>) {
          const auto& d = p.g.descriptor();
          const Eigen::MatrixXd& g = p.g.value();
          const int r = d.rep_size();
          switch (d.kind()) {
            case AlgebraKind::SO:
              return (g.transpose() * g - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff();
            case AlgebraKind::SL: return std::abs(g.determinant() - 1.0);
            case AlgebraKind::Quadratic: return (g.transpose() * d.J() * g - d.J()).cwiseAbs().maxCoeff();
            default: return 0.0;
          }
        } else if constexpr (std::is_same_v<T, SpherePoint>) return std::abs(p.x().norm() - 1.0);
        else if constexpr (std::is_same_v<T, SymmetricPoint>)
          return (p.X() - p.X().transpose()).cwiseAbs().maxCoeff();
        else return 0.0;
      },
      x);
}

std::string action_name(ActionType t) {
  switch (t) {
    case ActionType::LeftMultiplication: return "left multiplication";
    case ActionType::RightMultiplication: return "right multiplication";
    case ActionType::SphereSO3: return "SO(3) on the sphere";
    case ActionType::Affine: return "affine";
    case ActionType::Coadjoint: return "coadjoint";
    case ActionType::IsospectralConjugation: return "isospectral conjugation";
  }
  return "?";
}

ManifoldPoint act(const ActionKind& a, const GroupElement& g, const ManifoldPoint& x) {
  switch (a.type) {
    case ActionType::LeftMultiplication: {
      const auto& p = expect<GroupPoint>(a, x);
      return GroupPoint{g * p.g};
    }
    case ActionType::RightMultiplication: {
      const auto& p = expect<GroupPoint>(a, x);
      return GroupPoint{p.g * g.inverse()};
    }
    case ActionType::SphereSO3: {
      const auto& p = expect<SpherePoint>(a, x);
      if (!g.descriptor().is_so3() || p.x().size() != 3) throw DomainError("sphere action needs SO(3) and S²");
      return SpherePoint::normalized(g.value() * p.x());
    }
    case ActionType::Affine: {
      const auto& p = expect<FlatPoint>(a, x);
      if (g.descriptor().kind() != AlgebraKind::Affine || g.descriptor().n() != p.u.size())
        throw DomainError("affine action: group and point dimensions differ");
      return FlatPoint{g.A() * p.u + g.b()};
    }
    case ActionType::Coadjoint: {
      const auto& p = expect<MomentumPoint>(a, x);
      return MomentumPoint{coAd(g.inverse(), p.mu)};
    }
    case ActionType::IsospectralConjugation: {
      const auto& p = expect<SymmetricPoint>(a, x);
      if (g.value().rows() != p.X().rows()) throw DomainError("isospectral action: size mismatch");
      return SymmetricPoint::symmetrized(g.value() * p.X() * g.value().transpose());
    }
  }
  mismatch(a, x);
}

Tangent infinitesimal(const ActionKind& a, const AlgebraElement& xi, const ManifoldPoint& x) {
  switch (a.type) {
    case ActionType::LeftMultiplication: return xi.value() * expect<GroupPoint>(a, x).g.value();
    case ActionType::RightMultiplication: return -expect<GroupPoint>(a, x).g.value() * xi.value();
    case ActionType::SphereSO3: {
      const auto& p = expect<SpherePoint>(a, x);
      if (!xi.descriptor().is_so3() || p.x().size() != 3) throw DomainError("sphere action needs so(3) and S²");
      const Eigen::Vector3d y = p.x();
      return as_column(xi.vec().cross(y));
    }
    case ActionType::Affine: {
      const auto& p = expect<FlatPoint>(a, x);
      if (xi.descriptor().kind() != AlgebraKind::Affine || xi.descriptor().n() != p.u.size())
        throw DomainError("affine action: algebra and point dimensions differ");
      return as_column(xi.xi() * p.u + xi.c());
    }
    case ActionType::Coadjoint: {
      const auto& p = expect<MomentumPoint>(a, x);
      const CoAlgebraElement d = -ad_star(xi, p.mu);
      return ambient(MomentumPoint{d});
    }
    case ActionType::IsospectralConjugation: {
      const auto& X = expect<SymmetricPoint>(a, x).X();
      return xi.value() * X + X * xi.value().transpose();
    }
  }
  mismatch(a, x);
}

AlgebraElement FieldPresentation::operator()(const ManifoldPoint& x) const {
  AlgebraElement v = f(x);
  require_same(v.descriptor(), desc, "FieldPresentation");
  if (action.type == ActionType::SphereSO3 && action.isotropy) {
    const Eigen::Vector3d y = std::get<SpherePoint>(x).x();
    v += action.isotropy(y) * AlgebraElement::so3(y);
  }
  return v;
}

SpherePoint sphere_lie_euler_closed_form(const Eigen::Vector3d& f_val, double alpha_val, const SpherePoint& y,
                                         double h) {
  if (y.x().size() != 3) throw DomainError("sphere_lie_euler_closed_form: point must lie on S²");
  const Eigen::Vector3d yv = y.x();
  const double fn2 = f_val.squaredNorm();
  if (std::abs(f_val.dot(yv)) > 1e-12 * std::max(1.0, std::sqrt(fn2)))
    throw DomainError("sphere_lie_euler_closed_form: f(y) must be orthogonal to y");
  const double t2 = h * h * (fn2 + alpha_val * alpha_val);
  double s, c;  // sinθ/θ, (1 − cosθ)/θ²
  if (t2 < 1e-8) {
    s = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    c = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  } else {
    const double t = std::sqrt(t2);
    s = std::sin(t) / t;
    c = (1.0 - std::cos(t)) / t2;
  }
  const Eigen::Vector3d y1 =
      (1.0 - h * h * c * fn2) * yv + h * s * f_val.cross(yv) + h * h * c * alpha_val * f_val;
  return SpherePoint::normalized(y1);
}

}  // namespace lgi
