#include "lgi/matfun.hpp"

#include <array>
#include <cmath>

#include "lgi/errors.hpp"

namespace lgi {

namespace {

// Padé(6,6) numerator coefficients c_k = (2q−k)! q! / ((2q)! k! (q−k)!), q = 6.
constexpr std::array<double, 7> kPade6 = {
    1.0, 1.0 / 2.0, 5.0 / 44.0, 1.0 / 66.0, 1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};

}  // namespace

bool all_finite(const Eigen::MatrixXd& Z) { return Z.allFinite(); }

Eigen::MatrixXd expm(const Eigen::MatrixXd& Z) {
  if (!Z.allFinite()) throw NumericError("expm: non-finite input");
  const Eigen::Index n = Z.rows();
  const double norm1 = Z.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm1 > 0.5) s = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const Eigen::MatrixXd A = Z / std::ldexp(1.0, s);

  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd even = kPade6[0] * I;
  Eigen::MatrixXd odd = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd power = I;
  for (int k = 1; k <= 6; ++k) {
    power = power * A;
    if (k % 2 == 0)
      even += kPade6[k] * power;
    else
      odd += kPade6[k] * power;
  }
  // N(A) = even + odd, D(A) = even − odd.
  Eigen::MatrixXd E = (even - odd).partialPivLu().solve(even + odd);
  for (int i = 0; i < s; ++i) E = E * E;
  return E;
}

Eigen::MatrixXd phi1_series(const Eigen::MatrixXd& Z, int terms) {
  const Eigen::Index n = Z.rows();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k < terms; ++k) {
    term = term * Z / static_cast<double>(k + 1);
    sum += term;
  }
  return sum;
}

Eigen::MatrixXd phi1_solve(const Eigen::MatrixXd& Z) {
  const Eigen::Index n = Z.rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(Z);
  if (!lu.isInvertible()) throw NumericError("phi1_solve: singular argument");
  return lu.solve(expm(Z) - I);
}

Eigen::MatrixXd phi1(const Eigen::MatrixXd& Z) {
  if (!Z.allFinite()) throw NumericError("phi1: non-finite input");
  const Eigen::Index n = Z.rows();
  if (n == 0) return Z;
  const double norm1 = Z.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 <= 1.0) return phi1_series(Z, 18);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Z);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) >= 1e-4 * sv(0)) return phi1_solve(Z);
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  aug.topLeftCorner(n, n) = Z;
  aug.topRightCorner(n, n).setIdentity();
  return expm(aug).topRightCorner(n, n);
}

Eigen::MatrixXd logm(const Eigen::MatrixXd& X) {
  if (!X.allFinite()) throw NumericError("logm: non-finite input");
  const Eigen::Index n = X.rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  auto norm1 = [](const Eigen::MatrixXd& M) { return M.cwiseAbs().colwise().sum().maxCoeff(); };

  Eigen::MatrixXd Y = X;
  int k = 0;
  while (norm1(Y - I) > 0.25) {
    if (++k > 60) throw ChartError("logm: square-root iteration did not reach a neighbourhood of I");
    // Denman–Beavers iteration for the principal square root.
    Eigen::MatrixXd S = Y;
    Eigen::MatrixXd T = I;
    for (int it = 0; it < 100; ++it) {
      Eigen::FullPivLU<Eigen::MatrixXd> luS(S), luT(T);
      if (!luS.isInvertible() || !luT.isInvertible())
        throw ChartError("logm: singular iterate, no principal logarithm");
      const Eigen::MatrixXd Sn = 0.5 * (S + luT.inverse());
      const Eigen::MatrixXd Tn = 0.5 * (T + luS.inverse());
      const double delta = norm1(Sn - S);
      S = Sn;
      T = Tn;
      if (delta <= 1e-15 * std::max(1.0, norm1(S))) break;
    }
    if (!S.allFinite()) throw ChartError("logm: square-root iteration diverged");
    Y = S;
  }
  // log(Y) = 2 atanh((Y − I)(Y + I)⁻¹) = 2 Σ W^{2j+1}/(2j+1).
  const Eigen::MatrixXd W = (Y + I).partialPivLu().solve(Y - I).eval();
  const Eigen::MatrixXd W2 = W * W;
  Eigen::MatrixXd term = W;
  Eigen::MatrixXd sum = W;
  for (int j = 1; j < 40; ++j) {
    term = term * W2;
    sum += term / static_cast<double>(2 * j + 1);
    if (norm1(term) < 1e-18) break;
  }
  return std::ldexp(2.0, k) * sum;
}

}  // namespace lgi
