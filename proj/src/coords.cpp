#include "lgi/coords.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lgi/errors.hpp"

namespace lgi {

// ---------------------------------------------------------------- Chevalley basis

namespace {

Eigen::MatrixXd unit(int n, int a, int b) {
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, n);
  E(a, b) = 1.0;
  return E;
}

Eigen::VectorXi weight(int n, int a, int b) {
  Eigen::VectorXi w = Eigen::VectorXi::Zero(n);
  w(a) += 1;
  w(b) -= 1;
  return w;
}

bool in_closed_root_set(const Eigen::VectorXi& w) {
  int plus = 0, minus = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) == 1) ++plus;
    else if (w(i) == -1) ++minus;
    else if (w(i) != 0) return false;
  }
  return (plus == 0 && minus == 0) || (plus == 1 && minus == 1);
}

}  // namespace

ChevalleyBasis::ChevalleyBasis(int n, std::vector<Eigen::MatrixXd> elements, std::vector<bool> cartan,
                               std::vector<Eigen::VectorXi> roots)
    : n_(n),
      desc_(AlgebraDescriptor::sl(n)),
      elements_(std::move(elements)),
      cartan_(std::move(cartan)),
      roots_(std::move(roots)) {
  const int d = size();
  stacked_.resize(n * n, d);
  for (int j = 0; j < d; ++j) stacked_.col(j) = Eigen::Map<const Eigen::VectorXd>(elements_[j].data(), n * n);
  extract_ = stacked_.completeOrthogonalDecomposition().pseudoInverse();

  ad_.resize(static_cast<std::size_t>(d));
  nilp_.assign(static_cast<std::size_t>(d), 0);
  for (int i = 0; i < d; ++i) {
    Eigen::MatrixXd A(d, d);
    for (int j = 0; j < d; ++j) {
      const Eigen::MatrixXd br = elements_[i] * elements_[j] - elements_[j] * elements_[i];
      A.col(j) = coordinates(br);
    }
    ad_[static_cast<std::size_t>(i)] = A;
    if (cartan_[static_cast<std::size_t>(i)]) continue;
    Eigen::MatrixXd P = A;
    int K = 1;
    while (P.cwiseAbs().maxCoeff() > 1e-12) {
      if (K > 2 * n) throw DomainError("ChevalleyBasis: root element is not ad-nilpotent");
      P = P * A;
      ++K;
    }
    nilp_[static_cast<std::size_t>(i)] = K - 1;
  }
}

ChevalleyBasis ChevalleyBasis::standard(int n) {
  if (n < 2) throw DomainError("ChevalleyBasis: n must be at least 2");
  std::vector<Eigen::MatrixXd> el;
  std::vector<bool> cartan;
  std::vector<Eigen::VectorXi> roots;
  for (int sign = 0; sign < 2; ++sign)
    for (int i = 0; i + 1 < n; ++i)
      for (int j = i; j + 1 < n; ++j) {
        const int a = sign == 0 ? i : j + 1;
        const int b = sign == 0 ? j + 1 : i;
        el.push_back(unit(n, a, b));
        cartan.push_back(false);
        roots.push_back(weight(n, a, b));
      }
  for (int i = 0; i + 1 < n; ++i) {
    el.push_back(unit(n, i, i) - unit(n, i + 1, i + 1));
    cartan.push_back(true);
    roots.push_back(Eigen::VectorXi::Zero(n));
  }
  return {n, std::move(el), std::move(cartan), std::move(roots)};
}

ChevalleyBasis ChevalleyBasis::permuted(int n, const std::vector<int>& order) {
  const ChevalleyBasis base = standard(n);
  const int d = base.size();
  std::vector<int> check = order;
  std::sort(check.begin(), check.end());
  std::vector<int> iota(static_cast<std::size_t>(d));
  std::iota(iota.begin(), iota.end(), 0);
  if (check != iota) throw DomainError("ChevalleyBasis::permuted: order is not a permutation of the basis");
  std::vector<Eigen::MatrixXd> el;
  std::vector<bool> cartan;
  std::vector<Eigen::VectorXi> roots;
  for (int k : order) {
    el.push_back(base.elements_[static_cast<std::size_t>(k)]);
    cartan.push_back(base.cartan_[static_cast<std::size_t>(k)]);
    roots.push_back(base.roots_[static_cast<std::size_t>(k)]);
  }
  return {n, std::move(el), std::move(cartan), std::move(roots)};
}

Eigen::VectorXd ChevalleyBasis::coordinates(const Eigen::MatrixXd& M) const {
  if (M.rows() != n_ || M.cols() != n_) throw DomainError("ChevalleyBasis::coordinates: wrong matrix size");
  return extract_ * Eigen::Map<const Eigen::VectorXd>(M.data(), n_ * n_);
}

Eigen::MatrixXd ChevalleyBasis::from_coordinates(const Eigen::VectorXd& c) const {
  if (c.size() != size()) throw DomainError("ChevalleyBasis::from_coordinates: wrong length");
  const Eigen::VectorXd v = stacked_ * c;
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), n_, n_);
}

AobReport is_aob(const ChevalleyBasis& basis) {
  AobReport rep;
  const int d = basis.size();
  int dstar = 0;
  while (dstar < d && !basis.is_cartan(dstar)) ++dstar;
  for (int i = dstar; i < d; ++i)
    if (!basis.is_cartan(i)) {
      rep.admissible = false;
      rep.reason = "root element at position " + std::to_string(i) + " follows a Cartan element";
      return rep;
    }
  const int kmax = basis.n();
  for (int m = 0; m < dstar; ++m)
    for (int i = m + 1; i < dstar; ++i)
      for (int s = i + 1; s < dstar; ++s)
        for (int k = 1; k <= kmax; ++k) {
          if (k * basis.root(i) + basis.root(s) != basis.root(m)) continue;
          for (int n = m + 1; n <= i - 1; ++n) {
            if (in_closed_root_set(basis.root(m) + basis.root(n))) {
              rep.admissible = false;
              rep.witness = std::array<int, 5>{m, i, s, k, n};
              rep.reason = "k*beta_i + beta_s = beta_m but beta_m + beta_n is a root or zero";
              return rep;
            }
          }
        }
  rep.reason = "all root triples satisfy the admissibility condition";
  return rep;
}

// ---------------------------------------------------------------- CC2K

namespace {

void require_basis_algebra(const ChevalleyBasis& basis, const AlgebraElement& u, const char* what) {
  require_same(basis.descriptor(), u.descriptor(), what);
}

// Coordinate matrix of Ad_{exp(c e_k)} = Σ_j c^j/j! ad_{e_k}^j for a root element.
Eigen::MatrixXd ad_exp_root(const ChevalleyBasis& basis, int k, double c) {
  const int d = basis.size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(d, d);
  for (int j = 1; j <= basis.nilpotency(k); ++j) {
    term = (c / j) * basis.ad_matrix(k) * term;
    out += term;
  }
  return out;
}

}  // namespace

GroupElement psi_cc2k(const ChevalleyBasis& basis, const AlgebraElement& u) {
  require_basis_algebra(basis, u, "psi_cc2k");
  const int n = basis.n();
  const Eigen::VectorXd c = basis.coordinates(u.value());
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < basis.size(); ++i) {
    if (c(i) == 0.0) continue;
    const Eigen::MatrixXd& e = basis.element(i);
    if (basis.is_cartan(i)) {
      const Eigen::VectorXd diag = (c(i) * e.diagonal()).array().exp();
      g = g * diag.asDiagonal();
    } else {
      g += c(i) * (g * e);  // g (I + c e)
    }
  }
  return {u.descriptor(), g};
}

AlgebraElement dpsi_cc2k(const ChevalleyBasis& basis, const AlgebraElement& u, const AlgebraElement& v) {
  require_basis_algebra(basis, u, "dpsi_cc2k");
  require_basis_algebra(basis, v, "dpsi_cc2k");
  const Eigen::VectorXd c = basis.coordinates(u.value());
  Eigen::VectorXd w = basis.coordinates(v.value());
  const int d = basis.size();
  for (int k = d - 1; k >= 0; --k) {
    if (basis.is_cartan(k) || c(k) == 0.0 || k + 1 >= d) continue;
    const Eigen::MatrixXd M = ad_exp_root(basis, k, c(k));
    const int tail = d - k - 1;
    const Eigen::VectorXd lower = w.tail(tail);
    w.head(k + 1) += M.topRightCorner(k + 1, tail) * lower;
    w.tail(tail) = M.bottomRightCorner(tail, tail) * lower;
  }
  return {u.descriptor(), basis.from_coordinates(w), Trusted{}};
}

AlgebraElement dpsi_inv_cc2k(const ChevalleyBasis& basis, const AlgebraElement& u, const AlgebraElement& v) {
  require_basis_algebra(basis, u, "dpsi_inv_cc2k");
  require_basis_algebra(basis, v, "dpsi_inv_cc2k");
  if (!is_aob(basis).admissible) throw DomainError("dpsi_inv_cc2k: basis ordering is not admissible");
  const Eigen::VectorXd c = basis.coordinates(u.value());
  Eigen::VectorXd w = basis.coordinates(v.value());
  const int d = basis.size();
  for (int k = 0; k < d; ++k) {
    if (basis.is_cartan(k) || c(k) == 0.0 || k + 1 >= d) continue;
    const Eigen::MatrixXd M = ad_exp_root(basis, k, c(k));
    const int tail = d - k - 1;
    const Eigen::VectorXd lower = M.bottomRightCorner(tail, tail).partialPivLu().solve(w.tail(tail));
    w.head(k + 1) -= M.topRightCorner(k + 1, tail) * lower;
    w.tail(tail) = lower;
  }
  return {u.descriptor(), basis.from_coordinates(w), Trusted{}};
}

// ---------------------------------------------------------------- chart dispatch

CoordinateMap CoordinateMap::cc2k(std::shared_ptr<const ChevalleyBasis> b) {
  if (!b) throw DomainError("CoordinateMap::cc2k: null basis");
  const AobReport rep = is_aob(*b);
  if (!rep.admissible) throw DomainError("CoordinateMap::cc2k: " + rep.reason);
  const AlgebraDescriptor d = b->descriptor();
  return {ChartKind::CC2K, d, 0, std::move(b)};
}

std::string CoordinateMap::name() const {
  switch (kind) {
    case ChartKind::Exp: return m < 0 ? "exp" : "exp(m=" + std::to_string(m) + ")";
    case ChartKind::Cayley: return "cayley";
    case ChartKind::CC2K: return "cc2k";
  }
  return "?";
}

GroupElement psi(const CoordinateMap& map, const AlgebraElement& u) {
  require_same(map.desc, u.descriptor(), "psi");
  switch (map.kind) {
    case ChartKind::Exp: return group_exp(u);
    case ChartKind::Cayley: return cayley(u);
    case ChartKind::CC2K: return psi_cc2k(*map.basis, u);
  }
  throw DomainError("psi: unknown chart");
}

AlgebraElement dpsi(const CoordinateMap& map, const AlgebraElement& u, const AlgebraElement& v) {
  require_same(map.desc, u.descriptor(), "dpsi");
  switch (map.kind) {
    case ChartKind::Exp:
      if (map.m < 0 && u.descriptor().is_so3()) return AlgebraElement::so3(dexp_so3_matrix(u.vec()) * v.vec());
      return dexp(u, v, 24);
    case ChartKind::Cayley: return dcay(u, v);
    case ChartKind::CC2K: return dpsi_cc2k(*map.basis, u, v);
  }
  throw DomainError("dpsi: unknown chart");
}

AlgebraElement dpsi_inv(const CoordinateMap& map, const AlgebraElement& u, const AlgebraElement& v) {
  require_same(map.desc, u.descriptor(), "dpsi_inv");
  switch (map.kind) {
    case ChartKind::Exp:
      if (map.m < 0) {
        if (u.descriptor().is_so3()) return AlgebraElement::so3(dexpinv_so3_matrix(u.vec()) * v.vec());
        return dexpinv(u, v, 5);
      }
      return dexpinv(u, v, map.m);
    case ChartKind::Cayley: return dcay_inv(u, v);
    case ChartKind::CC2K: return dpsi_inv_cc2k(*map.basis, u, v);
  }
  throw DomainError("dpsi_inv: unknown chart");
}

// ---------------------------------------------------------------- retractions

namespace {

void require_tangent(const RetractionChart& chart, const Eigen::VectorXd& v, const char* what) {
  if (v.size() != chart.x.x().size()) throw DomainError(std::string(what) + ": dimension mismatch");
  if (std::abs(v.dot(chart.x.x())) > 1e-12 * std::max(1.0, v.norm()))
    throw DomainError(std::string(what) + ": vector is not tangent at the base point");
}

}  // namespace

std::string RetractionChart::name() const {
  return kind == RetractionKind::SphereProjective ? "sphere-projective" : "embedded-projector";
}

SpherePoint retraction(const RetractionChart& chart, const Eigen::VectorXd& v) {
  require_tangent(chart, v, "retraction");
  const Eigen::VectorXd& x = chart.x.x();
  if (chart.kind == RetractionKind::SphereProjective) return SpherePoint::normalized(x + v);
  const double v2 = v.squaredNorm();
  if (v2 >= 1.0) throw ChartError("retraction: tangent vector outside the unit ball");
  return SpherePoint::normalized(x + v + (std::sqrt(1.0 - v2) - 1.0) * x);
}

Eigen::VectorXd retraction_inv(const RetractionChart& chart, const SpherePoint& y) {
  const Eigen::VectorXd& x = chart.x.x();
  if (y.x().size() != x.size()) throw DomainError("retraction_inv: dimension mismatch");
  const double xy = x.dot(y.x());
  if (!(xy > 0.0)) throw ChartError("retraction_inv: point outside the chart cone (x, y) > 0");
  if (chart.kind == RetractionKind::SphereProjective) return y.x() / xy - x;
  return y.x() - xy * x;
}

Eigen::VectorXd tangent_map(const RetractionChart& chart, const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
  const Eigen::VectorXd& x = chart.x.x();
  if (chart.kind == RetractionKind::SphereProjective) {
    const Eigen::VectorXd p = x + v;
    const double r = p.norm();
    return (w - p * (p.dot(w) / (r * r))) / r;
  }
  const double s = std::sqrt(1.0 - v.squaredNorm());
  return w - (v.dot(w) / s) * x;
}

Eigen::VectorXd tangent_solve(const RetractionChart& chart, const Eigen::VectorXd& v, const Eigen::VectorXd& W) {
  require_tangent(chart, v, "tangent_solve");
  const Eigen::VectorXd& x = chart.x.x();
  if (W.size() != x.size()) throw DomainError("tangent_solve: dimension mismatch");
  if (chart.kind == RetractionKind::SphereProjective) {
    const Eigen::VectorXd p = x + v;
    const double r = p.norm();
    return r * W - (r * x.dot(W)) * p;
  }
  return W - x.dot(W) * x;
}

}  // namespace lgi
