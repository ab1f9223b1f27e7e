#pragma once

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lgi/actions.hpp"
#include "lgi/lie_core.hpp"

namespace lgi {

/// Ordered Chevalley basis of sl(n, ℝ).
///
/// Root vectors E_ab carry the integer weight ε_a − ε_b; Cartan elements
/// E_ii − E_{i+1,i+1} carry no root.
class ChevalleyBasis {
 public:
  /// Positive roots e_i e_{j+1}ᵀ (i ≤ j, sorted by i then j), the negative
  /// roots in the same order, then the Cartan elements.
  static ChevalleyBasis standard(int n);
  /// Reorders `standard(n)`: entry k of `order` is the standard index of the
  /// k-th element. Throws DomainError unless `order` is a permutation.
  static ChevalleyBasis permuted(int n, const std::vector<int>& order);

  int n() const { return n_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const AlgebraDescriptor& descriptor() const { return desc_; }
  const Eigen::MatrixXd& element(int i) const { return elements_[static_cast<std::size_t>(i)]; }
  bool is_cartan(int i) const { return cartan_[static_cast<std::size_t>(i)]; }
  /// Weight vector of a root element (length n).
  const Eigen::VectorXi& root(int i) const { return roots_[static_cast<std::size_t>(i)]; }
  /// Smallest K with ad_{e_i}^{K+1} = 0 (0 for Cartan elements).
  int nilpotency(int i) const { return nilp_[static_cast<std::size_t>(i)]; }
  /// Matrix of ad_{e_i} acting on coordinates.
  const Eigen::MatrixXd& ad_matrix(int i) const { return ad_[static_cast<std::size_t>(i)]; }

  Eigen::VectorXd coordinates(const Eigen::MatrixXd& M) const;
  Eigen::MatrixXd from_coordinates(const Eigen::VectorXd& c) const;

 private:
  ChevalleyBasis(int n, std::vector<Eigen::MatrixXd> elements, std::vector<bool> cartan,
                 std::vector<Eigen::VectorXi> roots);
  int n_;
  AlgebraDescriptor desc_;
  std::vector<Eigen::MatrixXd> elements_;
  std::vector<bool> cartan_;
  std::vector<Eigen::VectorXi> roots_;
  std::vector<int> nilp_;
  std::vector<Eigen::MatrixXd> ad_;
  // Column-stacked basis and its pseudo-inverse for coordinate extraction.
  Eigen::MatrixXd stacked_;
  Eigen::MatrixXd extract_;
};

/// Outcome of the root-combinatorial admissibility check.
struct AobReport {
  bool admissible = true;
  /// 0-based indices (m, i, s, k, n) with kβ_i + β_s = β_m and
  /// β_m + β_n ∈ Φ ∪ {0}, when the check fails.
  std::optional<std::array<int, 5>> witness;
  std::string reason;
};

/// Checks kβ_i + β_s = β_m (m < i < s, k ≥ 1) ⇒ β_m + β_n ∉ Φ ∪ {0} for
/// m < n ≤ i−1, over all root indices. Cartan elements must come last.
AobReport is_aob(const ChevalleyBasis& basis);

enum class ChartKind { Exp, Cayley, CC2K };

/// A chart ψ: 𝔤 → G with its right-trivialised inverse differential.
struct CoordinateMap {
  ChartKind kind;
  AlgebraDescriptor desc;
  /// dexpinv truncation index (Exp only); negative selects the exact
  /// closed form on so(3) and m = 5 elsewhere.
  int m = -1;
  std::shared_ptr<const ChevalleyBasis> basis;

  static CoordinateMap exp(const AlgebraDescriptor& d, int m = -1) { return {ChartKind::Exp, d, m, nullptr}; }
  static CoordinateMap cayley(const AlgebraDescriptor& d) { return {ChartKind::Cayley, d, 0, nullptr}; }
  /// Throws DomainError when the ordering fails `is_aob`.
  static CoordinateMap cc2k(std::shared_ptr<const ChevalleyBasis> b);

  std::string name() const;
};

GroupElement psi(const CoordinateMap& map, const AlgebraElement& u);
/// Right-trivialised differential: d/dt ψ(u + t v) ψ(u)⁻¹ at t = 0.
AlgebraElement dpsi(const CoordinateMap& map, const AlgebraElement& u, const AlgebraElement& v);
AlgebraElement dpsi_inv(const CoordinateMap& map, const AlgebraElement& u, const AlgebraElement& v);

/// ψ(u) = exp(u₁e₁)···exp(u_d e_d) with closed-form factors.
GroupElement psi_cc2k(const ChevalleyBasis& basis, const AlgebraElement& u);
/// dψ_u = Âd₁∘…∘Âd_d, Âd_k = (Id − P_k) + Ad_{exp(u_k e_k)} P_k.
AlgebraElement dpsi_cc2k(const ChevalleyBasis& basis, const AlgebraElement& u, const AlgebraElement& v);
/// dψ_u⁻¹ = Âd_{d*}⁻¹∘…∘Âd₁⁻¹. Throws DomainError for a non-admissible ordering.
AlgebraElement dpsi_inv_cc2k(const ChevalleyBasis& basis, const AlgebraElement& u, const AlgebraElement& v);

enum class RetractionKind { SphereProjective, EmbeddedProjector };

/// Retraction φ_x: T_xM → M on the unit sphere.
///
/// SphereProjective: φ_x(v) = (x + v)/‖x + v‖.
/// EmbeddedProjector: φ_x(v) = x + v + n_x(v) with n_x(v) = (√(1 − ‖v‖²) − 1)x.
struct RetractionChart {
  RetractionKind kind;
  SpherePoint x;

  std::string name() const;
};

SpherePoint retraction(const RetractionChart& chart, const Eigen::VectorXd& v);
/// Throws ChartError when y lies outside the chart's domain ((x, y) ≤ 0).
Eigen::VectorXd retraction_inv(const RetractionChart& chart, const SpherePoint& y);
/// Solves T_vφ_x(w) = W for w ∈ T_xM.
Eigen::VectorXd tangent_solve(const RetractionChart& chart, const Eigen::VectorXd& v, const Eigen::VectorXd& W);
/// T_vφ_x(w).
Eigen::VectorXd tangent_map(const RetractionChart& chart, const Eigen::VectorXd& v, const Eigen::VectorXd& w);

}  // namespace lgi
