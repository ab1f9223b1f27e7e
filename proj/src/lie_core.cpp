#include "lgi/lie_core.hpp"

#include <array>
#include <cmath>

#include "lgi/errors.hpp"
#include "lgi/matfun.hpp"

namespace lgi {

namespace {

constexpr double kMemberTol = 1e-13;

double inf_norm(const Eigen::MatrixXd& M) { return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff(); }

double scaled_tol(const Eigen::MatrixXd& M) { return kMemberTol * std::max(1.0, inf_norm(M)); }

Eigen::MatrixXd vectorise_basis(const std::vector<Eigen::MatrixXd>& basis, int rep) {
  Eigen::MatrixXd B(rep * rep, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j)
    B.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(basis[j].data(), rep * rep);
  return B;
}

std::vector<Eigen::MatrixXd> quadratic_basis(const Eigen::MatrixXd& J) {
  const Eigen::Index n = J.rows();
  // Column (i,j) holds vec(E_ijᵀ J + J E_ij).
  Eigen::MatrixXd K(n * n, n * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, n);
      E(i, j) = 1.0;
      const Eigen::MatrixXd img = E.transpose() * J + J * E;
      K.col(j * n + i) = Eigen::Map<const Eigen::VectorXd>(img.data(), n * n);
    }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
  lu.setThreshold(1e-12);
  const Eigen::MatrixXd ker = lu.kernel();
  // Orthonormalise so that coordinates are well conditioned.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(ker);
  const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(ker.rows(), ker.cols());
  std::vector<Eigen::MatrixXd> out;
  for (Eigen::Index c = 0; c < Q.cols(); ++c)
    out.emplace_back(Eigen::Map<const Eigen::MatrixXd>(Q.col(c).data(), n, n));
  return out;
}

// Gram matrix of the basis under the pairing.
Eigen::MatrixXd pairing_gram(const AlgebraDescriptor& desc, const std::vector<Eigen::MatrixXd>& basis) {
  const auto d = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd G(d, d);
  const double scale = desc.is_so3() ? 0.5 : 1.0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) G(i, j) = scale * basis[i].cwiseProduct(basis[j]).sum();
  return G;
}

void check_finite(const Eigen::MatrixXd& M, const char* what) {
  if (!M.allFinite()) throw NumericError(std::string(what) + ": non-finite entries");
}

}  // namespace

// ---------------------------------------------------------------- descriptor

AlgebraDescriptor AlgebraDescriptor::so(int n) {
  if (n < 1) throw DomainError("so(n): n must be positive");
  return {AlgebraKind::SO, n, nullptr};
}
AlgebraDescriptor AlgebraDescriptor::sl(int n) {
  if (n < 1) throw DomainError("sl(n): n must be positive");
  return {AlgebraKind::SL, n, nullptr};
}
AlgebraDescriptor AlgebraDescriptor::gl(int n) {
  if (n < 1) throw DomainError("gl(n): n must be positive");
  return {AlgebraKind::GL, n, nullptr};
}
AlgebraDescriptor AlgebraDescriptor::quadratic(const Eigen::MatrixXd& J) {
  if (J.rows() != J.cols() || J.rows() < 1) throw DomainError("quadratic(J): J must be square");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
  if (!lu.isInvertible()) throw DomainError("quadratic(J): J must be invertible");
  return {AlgebraKind::Quadratic, static_cast<int>(J.rows()), std::make_shared<const Eigen::MatrixXd>(J)};
}
AlgebraDescriptor AlgebraDescriptor::affine(int nd) {
  if (nd < 1) throw DomainError("affine(n_d): n_d must be positive");
  return {AlgebraKind::Affine, nd, nullptr};
}

int AlgebraDescriptor::dimension() const {
  switch (kind_) {
    case AlgebraKind::SO: return n_ * (n_ - 1) / 2;
    case AlgebraKind::SL: return n_ * n_ - 1;
    case AlgebraKind::GL: return n_ * n_;
    case AlgebraKind::Affine: return n_ * n_ + n_;
    case AlgebraKind::Quadratic: return static_cast<int>(quadratic_basis(*J_).size());
  }
  return 0;
}

const Eigen::MatrixXd& AlgebraDescriptor::J() const {
  if (!J_) throw DomainError("descriptor " + name() + " carries no J");
  return *J_;
}

std::string AlgebraDescriptor::name() const {
  const std::string n = std::to_string(n_);
  switch (kind_) {
    case AlgebraKind::SO: return "so(" + n + ")";
    case AlgebraKind::SL: return "sl(" + n + ")";
    case AlgebraKind::GL: return "gl(" + n + ")";
    case AlgebraKind::Quadratic: return "quadratic(" + n + ")";
    case AlgebraKind::Affine: return "affine(" + n + ")";
  }
  return "?";
}

bool operator==(const AlgebraDescriptor& a, const AlgebraDescriptor& b) {
  if (a.kind_ != b.kind_ || a.n_ != b.n_) return false;
  if (a.kind_ != AlgebraKind::Quadratic) return true;
  if (a.J_ == b.J_) return true;
  return (*a.J_ - *b.J_).cwiseAbs().maxCoeff() == 0.0;
}

void require_same(const AlgebraDescriptor& a, const AlgebraDescriptor& b, const char* what) {
  if (a != b) throw DomainError(std::string(what) + ": descriptor mismatch " + a.name() + " vs " + b.name());
}

// ---------------------------------------------------------------- so(3)

Eigen::Matrix3d hat(const Eigen::Vector3d& a) {
  Eigen::Matrix3d A;
  A << 0.0, -a(2), a(1), a(2), 0.0, -a(0), -a(1), a(0), 0.0;
  return A;
}

Eigen::Vector3d vee(const Eigen::Matrix3d& A) { return {A(2, 1), A(0, 2), A(1, 0)}; }

// ---------------------------------------------------------------- projection, basis

Eigen::MatrixXd project_to_algebra(const AlgebraDescriptor& desc, const Eigen::MatrixXd& M) {
  const int r = desc.rep_size();
  if (M.rows() != r || M.cols() != r) throw DomainError("project_to_algebra: wrong matrix size for " + desc.name());
  switch (desc.kind()) {
    case AlgebraKind::SO: return 0.5 * (M - M.transpose());
    case AlgebraKind::SL: return M - (M.trace() / r) * Eigen::MatrixXd::Identity(r, r);
    case AlgebraKind::GL: return M;
    case AlgebraKind::Affine: {
      Eigen::MatrixXd P = M;
      P.row(r - 1).setZero();
      return P;
    }
    case AlgebraKind::Quadratic: {
      const auto basis = quadratic_basis(desc.J());
      const Eigen::MatrixXd B = vectorise_basis(basis, r);
      const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(M.data(), r * r);
      const Eigen::VectorXd p = B * (B.transpose() * v);  // orthonormal columns
      return Eigen::Map<const Eigen::MatrixXd>(p.data(), r, r);
    }
  }
  return M;
}

std::vector<Eigen::MatrixXd> algebra_basis(const AlgebraDescriptor& desc) {
  const int n = desc.n();
  const int r = desc.rep_size();
  std::vector<Eigen::MatrixXd> out;
  auto E = [r](int i, int j) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(r, r);
    M(i, j) = 1.0;
    return M;
  };
  switch (desc.kind()) {
    case AlgebraKind::SO:
      if (n == 3) {
        for (int i = 0; i < 3; ++i) out.emplace_back(hat(Eigen::Vector3d::Unit(i)));
      } else {
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) out.push_back(E(i, j) - E(j, i));
      }
      break;
    case AlgebraKind::SL:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) out.push_back(E(i, j));
      for (int i = 0; i + 1 < n; ++i) out.push_back(E(i, i) - E(i + 1, i + 1));
      break;
    case AlgebraKind::GL:
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) out.push_back(E(i, j));
      break;
    case AlgebraKind::Affine:
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i < n; ++i) out.push_back(E(i, j));
      break;
    case AlgebraKind::Quadratic: out = quadratic_basis(desc.J()); break;
  }
  return out;
}

Eigen::VectorXd coordinates(const AlgebraElement& xi) {
  const auto& desc = xi.descriptor();
  if (desc.is_so3()) return xi.vec();
  const auto basis = algebra_basis(desc);
  const int r = desc.rep_size();
  const Eigen::MatrixXd B = vectorise_basis(basis, r);
  const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(xi.value().data(), r * r);
  return (B.transpose() * B).ldlt().solve(B.transpose() * v);
}

AlgebraElement from_coordinates(const AlgebraDescriptor& desc, const Eigen::VectorXd& c) {
  if (desc.is_so3()) return AlgebraElement::so3(c.head<3>());
  const auto basis = algebra_basis(desc);
  if (static_cast<std::size_t>(c.size()) != basis.size()) throw DomainError("from_coordinates: wrong length");
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(desc.rep_size(), desc.rep_size());
  for (std::size_t i = 0; i < basis.size(); ++i) M += c(static_cast<Eigen::Index>(i)) * basis[i];
  return {desc, M, Trusted{}};
}

Eigen::VectorXd dual_coordinates(const CoAlgebraElement& mu) {
  const auto& desc = mu.descriptor();
  if (desc.is_so3()) return mu.vec();
  const auto basis = algebra_basis(desc);
  Eigen::VectorXd out(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = pairing(mu, AlgebraElement(desc, basis[i], Trusted{}));
  return out;
}

CoAlgebraElement from_dual_coordinates(const AlgebraDescriptor& desc, const Eigen::VectorXd& c) {
  if (desc.is_so3()) return CoAlgebraElement::so3(c.head<3>());
  const auto basis = algebra_basis(desc);
  if (static_cast<std::size_t>(c.size()) != basis.size()) throw DomainError("from_dual_coordinates: wrong length");
  const Eigen::VectorXd d = pairing_gram(desc, basis).ldlt().solve(c);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(desc.rep_size(), desc.rep_size());
  for (std::size_t i = 0; i < basis.size(); ++i) M += d(static_cast<Eigen::Index>(i)) * basis[i];
  return {desc, M, Trusted{}};
}

// ---------------------------------------------------------------- elements

namespace {

void validate_algebra(const AlgebraDescriptor& desc, const Eigen::MatrixXd& v, const char* what) {
  const int r = desc.rep_size();
  if (v.rows() != r || v.cols() != r)
    throw DomainError(std::string(what) + ": expected " + std::to_string(r) + "x" + std::to_string(r) +
                      " matrix for " + desc.name());
  const double tol = scaled_tol(v);
  double defect = 0.0;
  switch (desc.kind()) {
    case AlgebraKind::SO: defect = inf_norm(v + v.transpose()); break;
    case AlgebraKind::SL: defect = std::abs(v.trace()); break;
    case AlgebraKind::GL: break;
    case AlgebraKind::Quadratic: defect = inf_norm(v.transpose() * desc.J() + desc.J() * v); break;
    case AlgebraKind::Affine: defect = inf_norm(v.row(r - 1)); break;
  }
  if (defect > tol)
    throw DomainError(std::string(what) + ": matrix is not in " + desc.name() + " (defect " + std::to_string(defect) +
                      ")");
}

}  // namespace

AlgebraElement::AlgebraElement(AlgebraDescriptor desc, Eigen::MatrixXd value)
    : desc_(std::move(desc)), value_(std::move(value)) {
  validate_algebra(desc_, value_, "AlgebraElement");
}

AlgebraElement AlgebraElement::zero(const AlgebraDescriptor& desc) {
  return {desc, Eigen::MatrixXd::Zero(desc.rep_size(), desc.rep_size()), Trusted{}};
}

AlgebraElement AlgebraElement::so3(const Eigen::Vector3d& a) {
  return {AlgebraDescriptor::so(3), Eigen::MatrixXd(hat(a)), Trusted{}};
}

AlgebraElement AlgebraElement::affine(const Eigen::MatrixXd& xi, const Eigen::VectorXd& c) {
  const auto n = xi.rows();
  if (xi.cols() != n || c.size() != n) throw DomainError("AlgebraElement::affine: inconsistent block sizes");
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n + 1);
  M.topLeftCorner(n, n) = xi;
  M.topRightCorner(n, 1) = c;
  return {AlgebraDescriptor::affine(static_cast<int>(n)), M, Trusted{}};
}

Eigen::Vector3d AlgebraElement::vec() const {
  if (!desc_.is_so3()) throw DomainError("vec(): element of " + desc_.name() + " is not in so(3)");
  return vee(value_);
}

Eigen::MatrixXd AlgebraElement::xi() const {
  if (desc_.kind() != AlgebraKind::Affine) throw DomainError("xi(): not an affine element");
  return value_.topLeftCorner(desc_.n(), desc_.n());
}

Eigen::VectorXd AlgebraElement::c() const {
  if (desc_.kind() != AlgebraKind::Affine) throw DomainError("c(): not an affine element");
  return value_.topRightCorner(desc_.n(), 1);
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  require_same(desc_, o.desc_, "AlgebraElement +");
  return {desc_, value_ + o.value_, Trusted{}};
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  require_same(desc_, o.desc_, "AlgebraElement -");
  return {desc_, value_ - o.value_, Trusted{}};
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  require_same(desc_, o.desc_, "AlgebraElement +=");
  value_ += o.value_;
  return *this;
}

GroupElement::GroupElement(AlgebraDescriptor desc, Eigen::MatrixXd value)
    : desc_(std::move(desc)), value_(std::move(value)) {
  const int r = desc_.rep_size();
  if (value_.rows() != r || value_.cols() != r) throw DomainError("GroupElement: wrong matrix size for " + desc_.name());
  if (desc_.kind() == AlgebraKind::Affine) {
    Eigen::RowVectorXd last = Eigen::RowVectorXd::Zero(r);
    last(r - 1) = 1.0;
    if (inf_norm(value_.row(r - 1) - last) > 1e-12) throw DomainError("GroupElement: affine last row must be (0,…,0,1)");
  }
}

GroupElement GroupElement::identity(const AlgebraDescriptor& desc) {
  return {desc, Eigen::MatrixXd::Identity(desc.rep_size(), desc.rep_size())};
}

GroupElement GroupElement::affine(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const auto n = A.rows();
  if (A.cols() != n || b.size() != n) throw DomainError("GroupElement::affine: inconsistent block sizes");
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n + 1, n + 1);
  M.topLeftCorner(n, n) = A;
  M.topRightCorner(n, 1) = b;
  return {AlgebraDescriptor::affine(static_cast<int>(n)), M};
}

Eigen::MatrixXd GroupElement::A() const {
  if (desc_.kind() != AlgebraKind::Affine) return value_;
  return value_.topLeftCorner(desc_.n(), desc_.n());
}

Eigen::VectorXd GroupElement::b() const {
  if (desc_.kind() != AlgebraKind::Affine) throw DomainError("b(): not an affine group element");
  return value_.topRightCorner(desc_.n(), 1);
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  require_same(desc_, o.desc_, "GroupElement *");
  return {desc_, value_ * o.value_};
}

GroupElement GroupElement::inverse() const {
  if (desc_.kind() == AlgebraKind::SO) return {desc_, value_.transpose()};
  Eigen::FullPivLU<Eigen::MatrixXd> lu(value_);
  if (!lu.isInvertible()) throw NumericError("GroupElement::inverse: singular matrix");
  return {desc_, lu.inverse()};
}

bool GroupElement::satisfies_group_relation(double tol) const {
  const int r = desc_.rep_size();
  switch (desc_.kind()) {
    case AlgebraKind::SO:
      return inf_norm(value_.transpose() * value_ - Eigen::MatrixXd::Identity(r, r)) <= tol && value_.determinant() > 0;
    case AlgebraKind::SL: return std::abs(value_.determinant() - 1.0) <= tol;
    case AlgebraKind::Quadratic: return inf_norm(value_.transpose() * desc_.J() * value_ - desc_.J()) <= tol;
    case AlgebraKind::GL:
    case AlgebraKind::Affine: return Eigen::FullPivLU<Eigen::MatrixXd>(value_).isInvertible();
  }
  return false;
}

CoAlgebraElement::CoAlgebraElement(AlgebraDescriptor desc, Eigen::MatrixXd value)
    : desc_(std::move(desc)), value_(std::move(value)) {
  validate_algebra(desc_, value_, "CoAlgebraElement");
}

CoAlgebraElement CoAlgebraElement::zero(const AlgebraDescriptor& desc) {
  return {desc, Eigen::MatrixXd::Zero(desc.rep_size(), desc.rep_size()), Trusted{}};
}

CoAlgebraElement CoAlgebraElement::so3(const Eigen::Vector3d& mu) {
  return {AlgebraDescriptor::so(3), Eigen::MatrixXd(hat(mu)), Trusted{}};
}

Eigen::Vector3d CoAlgebraElement::vec() const {
  if (!desc_.is_so3()) throw DomainError("vec(): coalgebra element of " + desc_.name() + " is not in so(3)*");
  return vee(value_);
}

CoAlgebraElement CoAlgebraElement::operator+(const CoAlgebraElement& o) const {
  require_same(desc_, o.desc_, "CoAlgebraElement +");
  return {desc_, value_ + o.value_, Trusted{}};
}

CoAlgebraElement CoAlgebraElement::operator-(const CoAlgebraElement& o) const {
  require_same(desc_, o.desc_, "CoAlgebraElement -");
  return {desc_, value_ - o.value_, Trusted{}};
}

// ---------------------------------------------------------------- pairing

double pairing(const CoAlgebraElement& mu, const AlgebraElement& xi) {
  require_same(mu.descriptor(), xi.descriptor(), "pairing");
  const double frob = mu.value().cwiseProduct(xi.value()).sum();
  return mu.descriptor().is_so3() ? 0.5 * frob : frob;
}

double inner(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a.descriptor(), b.descriptor(), "inner");
  const double frob = a.value().cwiseProduct(b.value()).sum();
  return a.descriptor().is_so3() ? 0.5 * frob : frob;
}

CoAlgebraElement flat(const AlgebraElement& eta) { return {eta.descriptor(), eta.value(), Trusted{}}; }

AlgebraElement sharp(const CoAlgebraElement& mu) { return {mu.descriptor(), mu.value(), Trusted{}}; }

// ---------------------------------------------------------------- algebra ops

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a.descriptor(), b.descriptor(), "bracket");
  return {a.descriptor(), a.value() * b.value() - b.value() * a.value(), Trusted{}};
}

namespace {

Eigen::Matrix3d rodrigues(const Eigen::Vector3d& a) {
  const double t2 = a.squaredNorm();
  const double t = std::sqrt(t2);
  double s, c;  // sin t / t, (1 − cos t)/t²
  if (t < 1e-4) {
    s = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    c = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  } else {
    s = std::sin(t) / t;
    c = (1.0 - std::cos(t)) / t2;
  }
  const Eigen::Matrix3d A = hat(a);
  return Eigen::Matrix3d::Identity() + s * A + c * A * A;
}

}  // namespace

GroupElement group_exp(const AlgebraElement& a) {
  check_finite(a.value(), "group_exp");
  const auto& desc = a.descriptor();
  if (desc.is_so3()) return {desc, Eigen::MatrixXd(rodrigues(a.vec()))};
  if (desc.kind() == AlgebraKind::Affine) {
    const Eigen::MatrixXd L = a.xi();
    const Eigen::MatrixXd A = expm(L);
    const Eigen::VectorXd b = phi1(L) * a.c();
    return GroupElement::affine(A, b);
  }
  return {desc, expm(a.value())};
}

AlgebraElement group_log(const GroupElement& g) {
  check_finite(g.value(), "group_log");
  const auto& desc = g.descriptor();
  if (desc.is_so3()) {
    const Eigen::Matrix3d R = g.value();
    const Eigen::Vector3d w = vee(R - R.transpose());  // 2 sin θ · axis
    const double sin_t = 0.5 * w.norm();
    const double cos_t = 0.5 * (R.trace() - 1.0);
    const double t = std::atan2(sin_t, cos_t);
    if (t >= M_PI - 0.1) throw ChartError("group_log: rotation angle outside the principal domain");
    double f;  // θ / (2 sin θ)
    if (t < 1e-4)
      f = 0.5 * (1.0 + t * t / 6.0 + 7.0 * t * t * t * t / 360.0);
    else
      f = t / (2.0 * std::sin(t));
    return AlgebraElement::so3(f * w);
  }
  Eigen::MatrixXd L = logm(g.value());
  return {desc, project_to_algebra(desc, L), Trusted{}};
}

AlgebraElement Ad(const GroupElement& g, const AlgebraElement& v) {
  require_same(g.descriptor(), v.descriptor(), "Ad");
  if (g.descriptor().kind() == AlgebraKind::SO)
    return {v.descriptor(), g.value() * v.value() * g.value().transpose(), Trusted{}};
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g.value());
  if (!lu.isInvertible()) throw NumericError("Ad: singular group element");
  const Eigen::MatrixXd out = g.value() * v.value() * lu.inverse();
  return {v.descriptor(), out, Trusted{}};
}

CoAlgebraElement coAd(const GroupElement& g, const CoAlgebraElement& mu) {
  require_same(g.descriptor(), mu.descriptor(), "coAd");
  const auto& desc = mu.descriptor();
  if (desc.kind() == AlgebraKind::SO) {
    // gᵀ μ g for orthogonal g is already skew.
    return {desc, g.value().transpose() * mu.value() * g.value(), Trusted{}};
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g.value());
  if (!lu.isInvertible()) throw NumericError("coAd: singular group element");
  // ⟨μ, g ξ g⁻¹⟩_F = ⟨gᵀ μ g⁻ᵀ, ξ⟩_F
  const Eigen::MatrixXd gtmu = g.value().transpose() * mu.value();
  const Eigen::MatrixXd M = lu.solve(gtmu.transpose()).transpose();  // gᵀμ g⁻ᵀ
  return {desc, project_to_algebra(desc, M), Trusted{}};
}

CoAlgebraElement ad_star(const AlgebraElement& xi, const CoAlgebraElement& mu) {
  require_same(xi.descriptor(), mu.descriptor(), "ad_star");
  const auto& desc = mu.descriptor();
  const Eigen::MatrixXd M = xi.value().transpose() * mu.value() - mu.value() * xi.value().transpose();
  return {desc, project_to_algebra(desc, M), Trusted{}};
}

std::pair<long, long> bernoulli_even(int k) {
  static constexpr std::array<std::pair<long, long>, 5> kTable = {
      {{1, 6}, {-1, 30}, {1, 42}, {-1, 30}, {5, 66}}};
  if (k < 1 || k > 5) throw UnsupportedError("bernoulli_even: only B_2 … B_10 are tabulated");
  return kTable[static_cast<std::size_t>(k - 1)];
}

int dexpinv_truncation_for_order(int p) {
  if (p < 1) throw DomainError("dexpinv_truncation_for_order: order must be positive");
  return p / 2;  // ceil((p−1)/2)
}

AlgebraElement dexpinv(const AlgebraElement& u, const AlgebraElement& w, int m) {
  require_same(u.descriptor(), w.descriptor(), "dexpinv");
  if (m < 0) throw DomainError("dexpinv: m must be non-negative");
  if (m > 5) throw UnsupportedError("dexpinv: truncation index above 5 is not tabulated");
  AlgebraElement term = bracket(u, w);  // ad_u^{2k-1}(w)
  AlgebraElement out = w - 0.5 * term;
  double factorial = 1.0;  // (2k)!
  for (int k = 1; k <= m; ++k) {
    term = bracket(u, term);
    factorial *= static_cast<double>((2 * k - 1) * (2 * k));
    const auto [num, den] = bernoulli_even(k);
    out += (static_cast<double>(num) / static_cast<double>(den) / factorial) * term;
    if (k < m) term = bracket(u, term);
  }
  return out;
}

AlgebraElement dexp(const AlgebraElement& u, const AlgebraElement& v, int terms) {
  require_same(u.descriptor(), v.descriptor(), "dexp");
  if (terms < 0) throw DomainError("dexp: terms must be non-negative");
  AlgebraElement term = v;
  AlgebraElement out = v;
  double factorial = 1.0;  // (k+1)!
  for (int k = 1; k <= terms; ++k) {
    term = bracket(u, term);
    factorial *= static_cast<double>(k + 1);
    out += (1.0 / factorial) * term;
  }
  return out;
}

Eigen::Matrix3d dexp_so3_matrix(const Eigen::Vector3d& u) {
  const double t2 = u.squaredNorm();
  const double t = std::sqrt(t2);
  double a, b;  // (1 − cos t)/t², (t − sin t)/t³
  if (t < 1e-3) {
    a = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
    b = 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0;
  } else {
    a = (1.0 - std::cos(t)) / t2;
    b = (t - std::sin(t)) / (t2 * t);
  }
  const Eigen::Matrix3d U = hat(u);
  return Eigen::Matrix3d::Identity() + a * U + b * U * U;
}

Eigen::Matrix3d dexpinv_so3_matrix(const Eigen::Vector3d& u) {
  const double t2 = u.squaredNorm();
  const double t = std::sqrt(t2);
  double c;  // (1 − (t/2) cot(t/2)) / t²
  if (t < 1e-3) {
    c = 1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0;
  } else {
    c = (1.0 - 0.5 * t / std::tan(0.5 * t)) / t2;
  }
  const Eigen::Matrix3d U = hat(u);
  return Eigen::Matrix3d::Identity() - 0.5 * U + c * U * U;
}

GroupElement cayley(const AlgebraElement& a) {
  check_finite(a.value(), "cayley");
  const int r = a.descriptor().rep_size();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(r, r);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(I - 0.5 * a.value());
  if (!lu.isInvertible()) throw NumericError("cayley: I − a/2 is singular");
  return {a.descriptor(), lu.solve(I + 0.5 * a.value())};
}

AlgebraElement dcay_inv(const AlgebraElement& y, const AlgebraElement& v) {
  require_same(y.descriptor(), v.descriptor(), "dcay_inv");
  const int r = y.descriptor().rep_size();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(r, r);
  return {v.descriptor(), (I - 0.5 * y.value()) * v.value() * (I + 0.5 * y.value()), Trusted{}};
}

AlgebraElement dcay(const AlgebraElement& y, const AlgebraElement& u) {
  require_same(y.descriptor(), u.descriptor(), "dcay");
  const int r = y.descriptor().rep_size();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(r, r);
  Eigen::FullPivLU<Eigen::MatrixXd> left(I - 0.5 * y.value());
  Eigen::FullPivLU<Eigen::MatrixXd> right(I + 0.5 * y.value());
  if (!left.isInvertible() || !right.isInvertible()) throw NumericError("dcay: singular factor");
  const Eigen::MatrixXd out = left.solve(u.value()) * right.inverse();
  return {u.descriptor(), out, Trusted{}};
}

AlgebraElement cayley_inv(const GroupElement& g) {
  const int r = g.descriptor().rep_size();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(r, r);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g.value() + I);
  if (!lu.isInvertible()) throw ChartError("cayley_inv: g + I is singular");
  // 2 (g − I)(g + I)⁻¹; the factors commute.
  const Eigen::MatrixXd out = 2.0 * lu.solve(g.value() - I);
  return {g.descriptor(), project_to_algebra(g.descriptor(), out), Trusted{}};
}

}  // namespace lgi
