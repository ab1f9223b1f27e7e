#include <doctest.h>

#include <array>
#include <cmath>

#include "lgi/errors.hpp"
#include "lgi/lie_core.hpp"
#include "lgi/matfun.hpp"
#include "support.hpp"

using namespace lgi;
using lgi::test::max_abs;
using lgi::test::random_element;

namespace {

AlgebraElement ad_power_series_Ad(const AlgebraElement& u, const AlgebraElement& v, int terms) {
  AlgebraElement term = v;
  AlgebraElement sum = v;
  double fact = 1.0;
  for (int k = 1; k <= terms; ++k) {
    term = bracket(u, term);
    fact *= k;
    sum += (1.0 / fact) * term;
  }
  return sum;
}

Eigen::MatrixXd J_symplectic(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  J.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return J;
}

}  // namespace

TEST_SUITE("lie_core") {
  TEST_CASE("descriptor dimensions") {
    CHECK(AlgebraDescriptor::so(3).dimension() == 3);
    CHECK(AlgebraDescriptor::so(5).dimension() == 10);
    CHECK(AlgebraDescriptor::sl(3).dimension() == 8);
    CHECK(AlgebraDescriptor::gl(2).dimension() == 4);
    CHECK(AlgebraDescriptor::affine(3).dimension() == 12);
    CHECK(AlgebraDescriptor::quadratic(J_symplectic(2)).dimension() == 10);
    CHECK(AlgebraDescriptor::so(3) == AlgebraDescriptor::so(3));
    CHECK(AlgebraDescriptor::so(3) != AlgebraDescriptor::sl(3));
  }

  TEST_CASE("element construction validates membership") {
    Eigen::Matrix3d S = Eigen::Matrix3d::Identity();
    CHECK_THROWS_AS(AlgebraElement(AlgebraDescriptor::so(3), S), DomainError);
    CHECK_THROWS_AS(AlgebraElement(AlgebraDescriptor::sl(3), S), DomainError);
    CHECK_NOTHROW(AlgebraElement(AlgebraDescriptor::gl(3), S));
    CHECK_THROWS_AS(AlgebraElement(AlgebraDescriptor::so(3), Eigen::MatrixXd::Zero(2, 2)), DomainError);
    const GroupElement singular(AlgebraDescriptor::gl(3), Eigen::Matrix3d::Zero());
    CHECK_THROWS_AS(Ad(singular, AlgebraElement(AlgebraDescriptor::gl(3), S)), NumericError);
    CHECK_THROWS_AS(singular.inverse(), NumericError);
  }

  TEST_CASE("bracket on so(3) is the cross product") {
    const auto ex = AlgebraElement::so3({1, 0, 0});
    const auto ey = AlgebraElement::so3({0, 1, 0});
    CHECK((bracket(ex, ey).vec() - Eigen::Vector3d(0, 0, 1)).norm() < 1e-15);
    const auto a = random_element(AlgebraDescriptor::so(3));
    CHECK(bracket(a, a).norm() == 0.0);
    const auto b = random_element(AlgebraDescriptor::so(3));
    CHECK((bracket(a, b) + bracket(b, a)).norm() < 1e-15);
    CHECK((bracket(a, b).vec() - a.vec().cross(b.vec())).norm() < 1e-15);
  }

  TEST_CASE("bracket rejects mixed descriptors") {
    CHECK_THROWS_AS(bracket(AlgebraElement::zero(AlgebraDescriptor::so(3)), AlgebraElement::zero(AlgebraDescriptor::gl(3))),
                    DomainError);
  }

  TEST_CASE("Jacobi identity") {
    for (const auto& d : {AlgebraDescriptor::so(3), AlgebraDescriptor::sl(3), AlgebraDescriptor::affine(2)}) {
      for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_element(d), b = random_element(d), c = random_element(d);
        const auto j = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
        CHECK(max_abs(j.value()) <= 1e-12);
      }
    }
  }

  TEST_CASE("group_exp special values") {
    const auto so3 = AlgebraDescriptor::so(3);
    CHECK(max_abs(group_exp(AlgebraElement::zero(so3)).value() - Eigen::MatrixXd::Identity(3, 3)) == 0.0);
    const auto R = group_exp(AlgebraElement::so3({0, 0, M_PI / 2}));
    CHECK((R.value() * Eigen::Vector3d(1, 0, 0) - Eigen::Vector3d(0, 1, 0)).norm() < 1e-15);
    const Eigen::Vector3d b(1, -2, 0.5);
    const auto g = group_exp(AlgebraElement::affine(Eigen::Matrix3d::Zero(), b));
    CHECK(max_abs(g.A() - Eigen::Matrix3d::Identity()) < 1e-15);
    CHECK((g.b() - b).norm() < 1e-15);
  }

  TEST_CASE("group_exp rejects non-finite input") {
    Eigen::Matrix3d M = hat({1, 0, 0});
    M(0, 1) = std::nan("");
    M(1, 0) = -M(0, 1);
    CHECK_THROWS_AS(group_exp(AlgebraElement(AlgebraDescriptor::so(3), M, Trusted{})), NumericError);
  }

  TEST_CASE("Rodrigues exponential matches scaling and squaring") {
    for (double r : {1e-9, 1e-3, 0.5, 1.0, 3.0, 7.0, 10.0}) {
      const auto a = AlgebraElement::so3(lgi::test::random_vec3(r));
      CHECK(max_abs(group_exp(a).value() - expm(a.value())) <= 1e-13);
    }
  }

  TEST_CASE("exponential stays in quadratic groups") {
    const Eigen::MatrixXd J = J_symplectic(2);
    const auto d = AlgebraDescriptor::quadratic(J);
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_element(d, 2.0);
      const Eigen::MatrixXd g = group_exp(a).value();
      CHECK(max_abs(g.transpose() * J * g - J) <= 1e-10);
    }
  }

  TEST_CASE("Ad of exp equals exp of ad") {
    for (const auto& d : {AlgebraDescriptor::so(3), AlgebraDescriptor::sl(3)}) {
      for (int trial = 0; trial < 10; ++trial) {
        const auto u = random_element(d, lgi::test::uniform(0.1, 1.0));
        const auto v = random_element(d);
        CHECK(max_abs(Ad(group_exp(u), v).value() - ad_power_series_Ad(u, v, 20).value()) <= 1e-10);
      }
    }
    const auto v = random_element(AlgebraDescriptor::sl(3));
    CHECK(max_abs(Ad(GroupElement::identity(AlgebraDescriptor::sl(3)), v).value() - v.value()) == 0.0);
  }

  TEST_CASE("coAd and ad_star satisfy their defining pairings") {
    const auto so3 = AlgebraDescriptor::so(3);
    const auto basis = algebra_basis(so3);
    for (int trial = 0; trial < 10; ++trial) {
      const auto g = lgi::test::random_group(so3, 2.0);
      const auto mu = lgi::test::random_coelement(so3);
      const auto xi = random_element(so3);
      CHECK(std::abs(pairing(coAd(g, mu), xi) - pairing(mu, Ad(g, xi))) <= 1e-14);
      CHECK(std::abs(pairing(ad_star(xi, mu), xi)) <= 1e-15);
      // Solving the defining relation on the basis gives Rᵀμ and μ × ξ.
      Eigen::Vector3d lhs, rhs;
      for (int i = 0; i < 3; ++i) {
        const AlgebraElement e(so3, basis[static_cast<std::size_t>(i)]);
        lhs(i) = pairing(mu, Ad(g, e));
        rhs(i) = pairing(mu, bracket(xi, e));
      }
      CHECK((coAd(g, mu).vec() - lhs).norm() <= 1e-14);
      CHECK((coAd(g, mu).vec() - g.value().transpose() * mu.vec()).norm() <= 1e-14);
      CHECK((ad_star(xi, mu).vec() - rhs).norm() <= 1e-15);
      CHECK((ad_star(xi, mu).vec() - mu.vec().cross(xi.vec())).norm() <= 1e-15);
    }
    const auto mu = lgi::test::random_coelement(so3);
    CHECK(ad_star(AlgebraElement::zero(so3), mu).value().norm() == 0.0);
  }

  TEST_CASE("coAd pairing on sl(3) and the affine algebra") {
    for (const auto& d : {AlgebraDescriptor::sl(3), AlgebraDescriptor::affine(2), AlgebraDescriptor::gl(3)}) {
      const auto g = lgi::test::random_group(d);
      const auto mu = lgi::test::random_coelement(d);
      const auto xi = random_element(d);
      CHECK(std::abs(pairing(coAd(g, mu), xi) - pairing(mu, Ad(g, xi))) <= 1e-13);
      const auto eta = random_element(d);
      CHECK(std::abs(pairing(ad_star(xi, mu), eta) - pairing(mu, bracket(xi, eta))) <= 1e-13);
    }
  }

  TEST_CASE("coordinates and dual coordinates round trip") {
    for (const auto& d : {AlgebraDescriptor::so(3), AlgebraDescriptor::so(4), AlgebraDescriptor::sl(3),
                          AlgebraDescriptor::affine(2), AlgebraDescriptor::quadratic(J_symplectic(1))}) {
      const auto xi = random_element(d);
      CHECK(max_abs(from_coordinates(d, coordinates(xi)).value() - xi.value()) <= 1e-14);
      const auto mu = lgi::test::random_coelement(d);
      CHECK((dual_coordinates(from_dual_coordinates(d, dual_coordinates(mu))) - dual_coordinates(mu)).norm() <= 1e-13);
      CHECK(std::abs(pairing(mu, xi) - dual_coordinates(mu).dot(coordinates(xi))) <= 1e-13);
      CHECK(std::abs(pairing(flat(xi), xi) - inner(xi, xi)) <= 1e-14);
      CHECK(max_abs(sharp(flat(xi)).value() - xi.value()) <= 1e-14);
    }
  }

  TEST_CASE("dexpinv basic values and errors") {
    const auto d = AlgebraDescriptor::sl(3);
    const auto w = random_element(d);
    for (int m = 0; m <= 5; ++m) CHECK(max_abs(dexpinv(AlgebraElement::zero(d), w, m).value() - w.value()) == 0.0);
    CHECK(max_abs(dexpinv(2.5 * w, w, 3).value() - w.value()) <= 1e-15);
    CHECK_THROWS_AS(dexpinv(w, w, 6), UnsupportedError);
    CHECK(bernoulli_even(1) == std::pair<long, long>{1, 6});
    CHECK(bernoulli_even(2) == std::pair<long, long>{-1, 30});
    CHECK(bernoulli_even(3) == std::pair<long, long>{1, 42});
    CHECK(bernoulli_even(4) == std::pair<long, long>{-1, 30});
    CHECK(bernoulli_even(5) == std::pair<long, long>{5, 66});
    CHECK(dexpinv_truncation_for_order(1) == 0);
    CHECK(dexpinv_truncation_for_order(3) == 1);
    CHECK(dexpinv_truncation_for_order(4) == 2);
    CHECK(dexpinv_truncation_for_order(5) == 2);
  }

  TEST_CASE("dexp partial sums") {
    const auto d = AlgebraDescriptor::so(3);
    const auto u = random_element(d), v = random_element(d);
    CHECK(max_abs(dexp(AlgebraElement::zero(d), v, 7).value() - v.value()) == 0.0);
    CHECK(max_abs(dexp(u, v, 1).value() - (v + 0.5 * bracket(u, v)).value()) <= 1e-15);
  }

  TEST_CASE("dexp matches a finite-difference derivative of exp") {
    for (const auto& d : {AlgebraDescriptor::so(3), AlgebraDescriptor::sl(3)}) {
      const auto u = random_element(d, 0.9), v = random_element(d);
      const double s = 1e-5;
      const Eigen::MatrixXd Einv = group_exp(-u).value();
      const Eigen::MatrixXd D =
          (group_exp(u + s * v).value() - group_exp(u - (s * v)).value()) * Einv / (2 * s);
      CHECK(max_abs(D - dexp(u, v, 12).value()) <= 1e-8);
    }
  }

  TEST_CASE("dexp inverts dexpinv for small arguments") {
    for (const auto& d : {AlgebraDescriptor::so(3), AlgebraDescriptor::sl(3)}) {
      const auto u = random_element(d, 1e-2), w = random_element(d);
      const auto back = dexp(u, dexpinv(u, w, 3), 8);
      CHECK(max_abs(back.value() - w.value()) <= 1e-14 * w.norm());
    }
  }

  TEST_CASE("dexpinv round trip error decays like |u|^(2m+2)") {
    // The first omitted dexp⁻¹ term is B_{2m+2} ad_u^{2m+2}.
    const auto d = AlgebraDescriptor::sl(3);
    const auto u0 = random_element(d), v = random_element(d);
    for (int m = 1; m <= 5; ++m) {
      auto err = [&](double r) {
        const auto u = r * u0;
        return (dexpinv(u, dexp(u, v, 2 * m + 2), m) - v).norm();
      };
      const double r = std::array<double, 5>{0.1, 0.1, 0.4, 1.0, 1.2}[static_cast<std::size_t>(m - 1)];
      const double slope = std::log2(err(r) / err(r / 2));
      CAPTURE(m);
      CAPTURE(slope);
      CHECK(std::abs(slope - (2 * m + 2)) <= 0.2 * (2 * m + 1));
    }
  }

  TEST_CASE("closed-form so(3) dexp matrices") {
    for (double r : {1e-9, 1e-4, 0.3, 1.0, 2.5}) {
      const Eigen::Vector3d u = lgi::test::random_vec3(r);
      const auto uu = AlgebraElement::so3(u);
      const Eigen::Vector3d v = lgi::test::random_unit3();
      CHECK((dexp_so3_matrix(u) * v - dexp(uu, AlgebraElement::so3(v), 30).vec()).norm() <= 1e-13);
      CHECK((dexpinv_so3_matrix(u) * dexp_so3_matrix(u) - Eigen::Matrix3d::Identity()).norm() <= 1e-13);
      if (r <= 0.3) CHECK((dexpinv_so3_matrix(u) * v - dexpinv(uu, AlgebraElement::so3(v), 5).vec()).norm() <= 1e-10);
    }
  }

  TEST_CASE("Cayley transform") {
    const auto so3 = AlgebraDescriptor::so(3);
    CHECK(max_abs(cayley(AlgebraElement::zero(so3)).value() - Eigen::MatrixXd::Identity(3, 3)) == 0.0);
    const auto a = random_element(so3, 1.5);
    const Eigen::MatrixXd C = cayley(a).value();
    CHECK(max_abs(C.transpose() * C - Eigen::MatrixXd::Identity(3, 3)) <= 1e-13);
    CHECK(max_abs(cayley_inv(cayley(a)).value() - a.value()) <= 1e-13);

    const Eigen::MatrixXd J = J_symplectic(2);
    const auto dq = AlgebraDescriptor::quadratic(J);
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::MatrixXd G = cayley(random_element(dq, 1.0)).value();
      CHECK(max_abs(G.transpose() * J * G - J) <= 1e-12);
    }
    Eigen::Matrix2d sing;
    sing << 2, 0, 0, 0;
    CHECK_THROWS_AS(cayley(AlgebraElement(AlgebraDescriptor::gl(2), sing)), NumericError);
  }

  TEST_CASE("dcay and dcay_inv are inverse and match finite differences") {
    const auto d = AlgebraDescriptor::sl(3);
    const auto y = random_element(d, 0.8), v = random_element(d);
    CHECK(max_abs(dcay(y, dcay_inv(y, v)).value() - v.value()) <= 1e-14);
    const double s = 1e-5;
    const Eigen::MatrixXd D =
        (cayley(y + s * v).value() - cayley(y - (s * v)).value()) * cayley(y).inverse().value() / (2 * s);
    CHECK(max_abs(D - dcay(y, v).value()) <= 1e-8);
  }

  TEST_CASE("group_log inverts group_exp") {
    const auto so3 = AlgebraDescriptor::so(3);
    const auto a = random_element(so3, 2.0);
    CHECK(max_abs(group_log(group_exp(a)).value() - a.value()) <= 1e-12);
    const auto b = random_element(AlgebraDescriptor::sl(3), 0.7);
    CHECK(max_abs(group_log(group_exp(b)).value() - b.value()) <= 1e-12);
    CHECK_THROWS_AS(group_log(group_exp(AlgebraElement::so3({0, 0, M_PI - 0.05}))), ChartError);
  }

  TEST_CASE("affine algebra structure") {
    const Eigen::Matrix2d xi1 = lgi::test::random_matrix(2), xi2 = lgi::test::random_matrix(2);
    const Eigen::Vector2d c1 = lgi::test::random_vector(2), c2 = lgi::test::random_vector(2);
    const auto br = bracket(AlgebraElement::affine(xi1, c1), AlgebraElement::affine(xi2, c2));
    CHECK(max_abs(br.xi() - (xi1 * xi2 - xi2 * xi1)) <= 1e-15);
    CHECK((br.c() - (xi1 * c2 - xi2 * c1)).norm() <= 1e-15);
  }
}
