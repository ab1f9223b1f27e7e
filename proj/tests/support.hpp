#pragma once

#include <Eigen/Dense>
#include <random>

#include "lgi/lie_core.hpp"

namespace lgi::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240613ULL);
  return g;
}

inline double uniform(double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Eigen::VectorXd random_vector(int n, double scale = 1.0) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = scale * uniform();
  return v;
}

inline Eigen::Vector3d random_vec3(double norm = 1.0) {
  Eigen::Vector3d v = random_vector(3);
  return norm * v.normalized();
}

inline Eigen::Vector3d random_unit3() { return random_vec3(1.0); }

inline Eigen::MatrixXd random_matrix(int n, double scale = 1.0) {
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = scale * uniform();
  return M;
}

/// Random element of the algebra with Frobenius norm `norm`.
inline AlgebraElement random_element(const AlgebraDescriptor& d, double norm = 1.0) {
  const int r = d.rep_size();
  Eigen::MatrixXd P = project_to_algebra(d, random_matrix(r));
  return AlgebraElement(d, norm * P / P.norm(), Trusted{});
}

inline CoAlgebraElement random_coelement(const AlgebraDescriptor& d) {
  return from_dual_coordinates(d, random_vector(d.dimension()));
}

inline GroupElement random_group(const AlgebraDescriptor& d, double norm = 1.0) {
  return group_exp(random_element(d, norm));
}

inline double max_abs(const Eigen::MatrixXd& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace lgi::test
