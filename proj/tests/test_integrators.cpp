#include <doctest.h>

#include <cmath>

#include "lgi/errors.hpp"
#include "lgi/integrators.hpp"
#include "lgi/problems.hpp"
#include "support.hpp"

using namespace lgi;
using lgi::test::max_abs;

namespace {

// u' = N(u) presented through translations (affine action with L = 0).
FieldPresentation flat_presentation(int n) {
  return {ActionKind::affine(Eigen::MatrixXd::Zero(n, n)), AlgebraDescriptor::affine(n), [n](const ManifoldPoint& x) {
            const Eigen::VectorXd& u = std::get<FlatPoint>(x).u;
            Eigen::VectorXd N(n);
            for (int i = 0; i < n; ++i) N(i) = std::sin(u((i + 1) % n)) - 0.5 * u(i) * u(i);
            return AlgebraElement::affine(Eigen::MatrixXd::Zero(n, n), N);
          }};
}

Eigen::VectorXd classical_rk(const ButcherTableau& tab, const FieldPresentation& pres, const Eigen::VectorXd& u0,
                             double h) {
  const int s = tab.stages();
  std::vector<Eigen::VectorXd> K;
  for (int r = 0; r < s; ++r) {
    Eigen::VectorXd U = u0;
    for (int j = 0; j < r; ++j) U += h * tab.a_d(r, j) * K[static_cast<std::size_t>(j)];
    K.push_back(pres(FlatPoint{U}).c());
  }
  Eigen::VectorXd u1 = u0;
  for (int r = 0; r < s; ++r) u1 += h * tab.b_d(r) * K[static_cast<std::size_t>(r)];
  return u1;
}

Eigen::VectorXd flat(const ManifoldPoint& p) { return std::get<FlatPoint>(p).u; }
Eigen::Vector3d sphere(const ManifoldPoint& p) { return std::get<SpherePoint>(p).x(); }

}  // namespace

TEST_SUITE("integrators") {
  TEST_CASE("tableaux") {
    const auto rk4 = ButcherTableau::rk4();
    CHECK(rk4.stages() == 4);
    CHECK(rk4.is_explicit());
    CHECK(rk4.b(0) == frac(1, 6));
    CHECK(rk4.c(1) == frac(1, 2));
    const auto cg = ButcherTableau::cg3();
    CHECK(cg.a(1, 0) == frac(3, 4));
    CHECK(cg.a(2, 0) == frac(119, 216));
    CHECK(cg.a(2, 1) == frac(17, 108));
    CHECK(cg.b(0) == frac(13, 51));
    CHECK(cg.b(1) == frac(-2, 3));
    CHECK(cg.b(2) == frac(24, 17));
    CHECK_THROWS_AS(ButcherTableau("bad", {{0}}, {frac(1, 2)}), SchemeError);
    CHECK_THROWS_AS(ButcherTableau::by_name("nope"), LookupError);
  }

  TEST_CASE("CF4 classical projection is the RK4 tableau") {
    const auto tab = CFScheme::cf4().classical_tableau();
    const auto rk4 = ButcherTableau::rk4();
    for (int r = 0; r < 4; ++r) {
      CHECK(tab.b(r) == rk4.b(r));
      CHECK(tab.c(r) == rk4.c(r));
    }
    CHECK(tab.b(0) == frac(1, 6));
    CHECK(tab.b(1) == frac(1, 3));
    CHECK(tab.b(2) == frac(1, 3));
    CHECK(tab.b(3) == frac(1, 6));
    CHECK(CFScheme::cf4().exponentials_per_step() == 5);
    const auto cg = CFScheme::cg3().classical_tableau();
    const auto cgt = ButcherTableau::cg3();
    for (int r = 0; r < 3; ++r) {
      CHECK(cg.b(r) == cgt.b(r));
      for (int j = 0; j < 3; ++j) CHECK(cg.a(r, j) == cgt.a(r, j));
    }
  }

  TEST_CASE("scheme validation") {
    CFStage bad;
    bad.groups = {{frac(1, 2), Rational(0)}};
    CFStage up;
    up.groups = {{frac(1, 2), frac(1, 2)}};
    // Stage 0 may not reference F_0.
    CHECK_THROWS_AS(CFScheme("bad", 1, {bad, CFStage{}}, up), SchemeError);
    CHECK_THROWS_AS(CFScheme::by_name("nope"), LookupError);
  }

  TEST_CASE("zero step returns the initial point") {
    const auto p = make_problem("rigid_body_sphere");
    const auto y0 = p.y0;
    CHECK(ambient_distance(lie_euler_step(p.presentation, y0, 0.0), y0) == 0.0);
    CHECK(ambient_distance(rkmk4_minimal_step(p.presentation, y0, 0.0), y0) == 0.0);
    CHECK(ambient_distance(rkmk_step(ButcherTableau::rk4(), CoordinateMap::exp(p.presentation.desc), p.presentation, y0, 0.0), y0) == 0.0);
    CHECK(ambient_distance(cf_step(CFScheme::cf4(), p.presentation, y0, 0.0), y0) == 0.0);
  }

  TEST_CASE("Euler tableau and the trivial scheme reduce to Lie-Euler") {
    const auto p = make_problem("rigid_body_sphere");
    const auto le = lie_euler_step(p.presentation, p.y0, 0.1);
    const auto rk = rkmk_step(ButcherTableau::euler(), CoordinateMap::exp(p.presentation.desc), p.presentation, p.y0, 0.1);
    CHECK(ambient_distance(le, rk) <= 1e-15);
    CHECK(ambient_distance(le, cf_step(CFScheme::lie_euler(), p.presentation, p.y0, 0.1)) <= 1e-15);
  }

  TEST_CASE("flat presentation reduces to classical Runge-Kutta") {
    const auto pres = flat_presentation(4);
    const Eigen::VectorXd u0 = lgi::test::random_vector(4);
    const double h = 0.3;
    const auto rk4 = ButcherTableau::rk4();
    const auto expect4 = classical_rk(rk4, pres, u0, h);
    CHECK((flat(rkmk_step(rk4, CoordinateMap::exp(pres.desc), pres, FlatPoint{u0}, h)) - expect4).norm() <= 1e-14);
    CHECK((flat(rkmk4_minimal_step(pres, FlatPoint{u0}, h)) - expect4).norm() <= 1e-14);
    CHECK((flat(cf_step(CFScheme::cf4(), pres, FlatPoint{u0}, h)) - expect4).norm() <= 1e-14);
    CHECK((flat(cf_step(CFScheme::rk4_classical(), pres, FlatPoint{u0}, h)) - expect4).norm() <= 1e-14);
    const auto expect3 = classical_rk(ButcherTableau::cg3(), pres, u0, h);
    CHECK((flat(cf_step(CFScheme::cg3(), pres, FlatPoint{u0}, h)) - expect3).norm() <= 1e-14);
  }

  TEST_CASE("non-explicit tableau is rejected") {
    const ButcherTableau implicit("implicit midpoint", {{frac(1, 2)}}, {Rational(1)});
    CHECK_FALSE(implicit.is_explicit());
    const auto p = make_problem("rigid_body_sphere");
    CHECK_THROWS_AS(rkmk_step(implicit, CoordinateMap::exp(p.presentation.desc), p.presentation, p.y0, 0.1),
                    UnsupportedError);
  }

  TEST_CASE("minimal-commutator RKMK4 differs from full RKMK4 at fifth order") {
    const auto p = make_problem("rigid_body_sphere");
    const auto map = CoordinateMap::exp(p.presentation.desc, 2);
    auto diff = [&](double h) {
      return (sphere(rkmk4_minimal_step(p.presentation, p.y0, h)) -
              sphere(rkmk_step(ButcherTableau::rk4(), map, p.presentation, p.y0, h)))
          .norm();
    };
    const double slope = std::log2(diff(0.1) / diff(0.05));
    CAPTURE(slope);
    CHECK(std::abs(slope - 5.0) <= 0.3);
  }

  TEST_CASE("integrate records states and attaches the failing step") {
    const auto p = make_problem("rigid_body_sphere");
    const auto stepper = make_cf_stepper(CFScheme::cf4(), p.presentation);
    const auto rec = integrate(stepper, p.y0, 0.0, 0.1, 1, p.invariants);
    REQUIRE(rec.states.size() == 2);
    CHECK(rec.times.back() == 0.1);
    StepInfo info;
    CHECK(ambient_distance(rec.states[1], stepper(p.y0, 0.1, info)) == 0.0);
    CHECK(rec.invariants.size() == 2);
    CHECK(rec.observer_names == std::vector<std::string>{"H", "norm"});

    const Stepper failing = [](const ManifoldPoint& y, double, StepInfo&) -> ManifoldPoint {
      static thread_local int calls = 0;
      if (++calls == 3) {
        calls = 0;
        throw NumericError("boom");
      }
      return y;
    };
    try {
      integrate(failing, p.y0, 0.0, 1.0, 10);
      FAIL("expected an error");
    } catch (const NumericError& e) {
      REQUIRE(e.step().has_value());
      CHECK(*e.step() == 3);
    }
    CHECK_THROWS_AS(integrate(stepper, p.y0, 0.0, 1.0, 0), DomainError);
  }

  TEST_CASE("sphere norm is preserved by CF4") {
    const auto p = make_problem("rigid_body_sphere");
    const auto rec = integrate(make_cf_stepper(CFScheme::cf4(), p.presentation), p.y0, 0.0, 10.0, 1000);
    double worst = 0.0;
    for (const auto& s : rec.states) worst = std::max(worst, std::abs(sphere(s).norm() - 1.0));
    CHECK(worst <= 1e-12);
  }

  TEST_CASE("homogeneous-space constraints hold along long runs") {
    for (const char* method : {"lie_euler", "rkmk4", "rkmk4_cayley"}) {
      CAPTURE(method);
      const auto p = make_problem("rigid_body_sphere");
      const Stepper st = std::string(method) == "lie_euler" ? make_lie_euler_stepper(p.presentation)
                         : std::string(method) == "rkmk4"
                             ? make_rkmk_stepper(ButcherTableau::rk4(), CoordinateMap::exp(p.presentation.desc), p.presentation)
                             : make_rkmk_stepper(ButcherTableau::rk4(), CoordinateMap::cayley(p.presentation.desc), p.presentation);
      ManifoldPoint y = p.y0;
      StepInfo info;
      double worst = 0.0;
      for (int k = 0; k < 10000; ++k) {
        y = st(y, 0.05, info);
        worst = std::max(worst, constraint_defect(y));
      }
      CHECK(worst <= 1e-10);
    }
    const auto toda = make_problem("toda_isospectral");
    ManifoldPoint X = toda.y0;
    StepInfo info;
    const auto st = make_cf_stepper(CFScheme::cf4(), toda.presentation);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
      X = st(X, 0.01, info);
      worst = std::max(worst, constraint_defect(X));
    }
    CHECK(worst <= 1e-10);
  }

  TEST_CASE("RKMK commutes with a change of variables by the action") {
    const auto p = make_problem("rigid_body_sphere");
    const auto g = lgi::test::random_group(AlgebraDescriptor::so(3), 1.3);
    const auto ginv = g.inverse();
    const ActionKind action = p.presentation.action;
    FieldPresentation moved = p.presentation;
    moved.f = [f = p.presentation.f, g, ginv, action](const ManifoldPoint& x) {
      return Ad(g, f(act(action, ginv, x)));
    };
    const auto map = CoordinateMap::exp(p.presentation.desc);
    const double h = 0.1;
    const auto lhs = rkmk_step(ButcherTableau::rk4(), map, moved, act(action, g, p.y0), h);
    const auto rhs = act(action, g, rkmk_step(ButcherTableau::rk4(), map, p.presentation, p.y0, h));
    CHECK(ambient_distance(lhs, rhs) <= 1e-12);
  }
}
