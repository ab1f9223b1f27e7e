#pragma once

#include <Eigen/Dense>

namespace lgi {

/// Dense matrix exponential: scaling and squaring with a degree-(6,6)
/// diagonal Padé approximant, scaled until ‖Z/2^s‖₁ ≤ 1/2.
Eigen::MatrixXd expm(const Eigen::MatrixXd& Z);

/// φ₁(Z) = Σ_k Z^k/(k+1)!, the entire function (e^z − 1)/z at a matrix.
///
/// Uses the linear solve Z⁻¹(e^Z − I) when σ_min(Z) ≥ 1e-4·σ_max(Z). Otherwise
/// the 18-term Taylor sum for ‖Z‖₁ ≤ 1, and the top-right block of
/// exp([[Z, I], [0, 0]]) beyond that, where the plain Taylor sum loses digits.
Eigen::MatrixXd phi1(const Eigen::MatrixXd& Z);

/// The two φ₁ evaluation paths, exposed for cross-checking.
Eigen::MatrixXd phi1_series(const Eigen::MatrixXd& Z, int terms = 18);
Eigen::MatrixXd phi1_solve(const Eigen::MatrixXd& Z);

/// Principal matrix logarithm by inverse scaling and squaring
/// (Denman–Beavers square roots until ‖X − I‖₁ ≤ 1/4, then a Gregory series).
/// Throws ChartError when the square-root iteration fails, e.g. for matrices
/// with eigenvalues on the closed negative real axis.
Eigen::MatrixXd logm(const Eigen::MatrixXd& X);

/// Square matrix, all entries finite.
bool all_finite(const Eigen::MatrixXd& Z);

}  // namespace lgi
