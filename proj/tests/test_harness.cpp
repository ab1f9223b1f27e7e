#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lgi/config.hpp"
#include "lgi/csv.hpp"
#include "lgi/errors.hpp"
#include "lgi/experiments.hpp"
#include "lgi/problems.hpp"
#include "support.hpp"

using namespace lgi;

namespace {

ExperimentConfig config(const std::string& problem, const std::string& method) {
  ExperimentConfig c;
  c.problem = problem;
  c.method = method;
  return c;
}

double last_order(const ConvergenceResult& r) { return *r.rows.back().order; }

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("problem registry") {
    const auto names = problem_names();
    CHECK(names == std::vector<std::string>{"rigid_body_sphere", "rigid_body_liepoisson", "toda_isospectral",
                                            "heat_semilinear", "isotropy_demo"});
    CHECK(make_problem("rigid_body_sphere").invariants.size() == 2);
    CHECK(make_problem("rigid_body_sphere").sphere_energy.has_value());
    CHECK(make_problem("rigid_body_liepoisson").cotangent_field.has_value());
    CHECK(make_problem("toda_isospectral").invariants.size() == 3);
    CHECK(make_problem("heat_semilinear").invariants.empty());
    CHECK_THROWS_AS(make_problem("nope"), LookupError);
    CHECK((rigid_body_inertia() - Eigen::Vector3d(1, 2, 4)).norm() == 0.0);
    CHECK(std::abs(rigid_body_initial().norm() - 1.0) <= 1e-15);
    const Eigen::MatrixXd X = toda_initial();
    CHECK(X(0, 0) == -2.0);
    CHECK(X(4, 4) == 2.0);
    CHECK(X(1, 2) == 1.0);
    CHECK(X(0, 2) == 0.0);
  }

  TEST_CASE("registered invariants are conserved by the reference solution") {
    for (const auto& name : problem_names()) {
      const auto p = make_problem(name, ProblemOptions{1.0});
      if (p.invariants.empty()) continue;
      CAPTURE(name);
      const auto rec = integrate(make_stepper("cf4", p), p.y0, 0.0, 1.0, 1000, p.invariants);
      for (std::size_t i = 0; i < p.invariants.size(); ++i) {
        double worst = 0.0;
        for (const auto& row : rec.invariants) worst = std::max(worst, std::abs(row[i] - rec.invariants[0][i]));
        CAPTURE(p.invariants[i].name);
        CHECK(worst <= 1e-10);
      }
    }
  }

  TEST_CASE("convergence orders on the sphere rigid body") {
    const std::vector<std::pair<std::string, double>> expected{
        {"lie_euler", 1.0}, {"cg3", 3.0}, {"cf4", 4.0}, {"rkmk4_minimal", 4.0}, {"rkmk4_cayley", 4.0}, {"rkmk4", 4.0}};
    for (const auto& [method, order] : expected) {
      CAPTURE(method);
      const auto r = converge(config("rigid_body_sphere", method));
      REQUIRE(r.rows.size() == 5);
      CHECK(r.rows.front().h == 0.2);
      CHECK(r.h_ref == doctest::Approx(0.0125 / 64));
      const double tol = order == 3.0 ? 0.15 : order == 1.0 ? 0.1 : 0.2;
      CHECK(std::abs(last_order(r) - order) <= tol);
      for (std::size_t k = 1; k < r.rows.size(); ++k) CHECK(r.rows[k].error < r.rows[k - 1].error);
    }
  }

  TEST_CASE("Gonzalez discrete gradient is second order") {
    const auto r = converge(config("rigid_body_sphere", "dg_gonzalez"));
    CHECK(last_order(r) >= 1.85);
    CHECK(last_order(r) <= 2.15);
  }

  TEST_CASE("converge needs three step sizes") {
    auto c = config("rigid_body_sphere", "cf4");
    c.hs = {0.1, 0.05};
    CHECK_THROWS_AS(converge(c), LookupError);
  }

  TEST_CASE("energy drift of the discrete gradient and the CF4 control") {
    auto c = config("rigid_body_sphere", "dg_gonzalez");
    c.hs = {0.05};
    c.steps = 10000;
    const auto dg = drift(c);
    CHECK(dg.invariant_names == std::vector<std::string>{"H", "norm"});
    CHECK(dg.max_drift[0] <= 1e-10);
    CHECK(dg.max_drift[1] <= 1e-12);
    CHECK(dg.max_iterations >= 1);
    c.method = "cf4";
    const auto cf = drift(c);
    CHECK(cf.max_drift[0] >= 1e-10);
    CHECK(cf.max_drift[0] >= 1e3 * dg.max_drift[0]);
    CHECK(cf.max_drift[1] <= 1e-12);
  }

  TEST_CASE("variational Lie-Poisson run preserves the Casimir") {
    auto c = config("rigid_body_liepoisson", "variational");
    c.hs = {0.05};
    c.steps = 10000;
    const auto r = drift(c);
    CHECK(r.invariant_names[1] == "casimir");
    CHECK(r.max_drift[1] <= 1e-11);
    CHECK(r.max_drift[0] <= 1e-2);
    CHECK_THROWS_AS(drift(config("heat_semilinear", "cf4")), LookupError);
  }

  TEST_CASE("variational run follows the body-frame flow") {
    auto c = config("rigid_body_liepoisson", "variational");
    c.hs = {0.01, 0.005, 0.0025};
    const auto r = converge(c);
    CHECK(std::abs(last_order(r) - 2.0) <= 0.15);
  }

  TEST_CASE("sphere and Lie-Poisson presentations agree") {
    auto a = config("rigid_body_sphere", "cf4");
    auto b = config("rigid_body_liepoisson", "cf4");
    a.hs = b.hs = {1e-3};
    const auto ya = ambient(integrate_problem(a).states.back());
    const auto yb = ambient(integrate_problem(b).states.back());
    CHECK((ya - yb).norm() <= 1e-8);
  }

  TEST_CASE("Lie-Euler on the affine presentation is exponential Euler") {
    const auto p = make_problem("heat_semilinear");
    const Eigen::MatrixXd L = heat_laplacian(32);
    const double h = 1e-3;
    const Eigen::MatrixXd E = expm(h * L), P = phi1(h * L);
    Eigen::VectorXd u = heat_initial(32);
    ManifoldPoint y = p.y0;
    const auto st = make_stepper("lie_euler", p);
    StepInfo info;
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
      y = st(y, h, info);
      const Eigen::VectorXd direct = E * u + h * P * heat_nonlinearity(u);
      worst = std::max(worst, (std::get<FlatPoint>(y).u - direct).lpNorm<Eigen::Infinity>());
      u = std::get<FlatPoint>(y).u;
    }
    CHECK(worst <= 1e-12);
    CHECK(heat_initial(32).size() == 32);
    CHECK(std::abs(heat_initial(32)(15) - std::sin(M_PI * 16.0 / 33.0)) <= 1e-15);
  }

  TEST_CASE("Toda flow keeps its spectrum") {
    auto c = config("toda_isospectral", "cf4");
    c.hs = {0.01};
    c.steps = 1000;
    const auto r = drift(c);
    for (double d : r.max_drift) CHECK(d <= 1e-10);
  }

  TEST_CASE("isotropy demo") {
    const auto p0 = make_problem("isotropy_demo");
    const auto p1 = make_problem("isotropy_demo", ProblemOptions{1.0});
    CHECK(std::abs(std::get<SpherePoint>(p0.y0).x().norm() - 1.0) <= 1e-15);
    const auto y0 = p0.y0;
    CHECK(lgi::test::max_abs(p0.presentation.field(y0) - p1.presentation.field(y0)) <= 1e-15);
    StepInfo info;
    const auto a = make_stepper("lie_euler", p0)(y0, 0.1, info);
    const auto b = make_stepper("lie_euler", p1)(y0, 0.1, info);
    CHECK(ambient_distance(a, b) > 1e-4);
    const Eigen::Vector3d f = p0.presentation(y0).vec();
    const auto closed = sphere_lie_euler_closed_form(f, 1.0, std::get<SpherePoint>(y0), 0.1);
    CHECK((closed.x() - std::get<SpherePoint>(b).x()).norm() <= 1e-13);
  }

  TEST_CASE("methods and stepper binding") {
    CHECK(canonical_method("rkmk4-cayley") == "rkmk4_cayley");
    CHECK_THROWS_AS(canonical_method("bogus"), LookupError);
    CHECK_THROWS_AS(make_stepper("dg_gonzalez", make_problem("toda_isospectral")), LookupError);
    CHECK_THROWS_AS(make_stepper("variational", make_problem("rigid_body_sphere")), LookupError);
    for (const auto& m : method_names()) {
      const std::string prob = m == "variational" ? "rigid_body_liepoisson" : "rigid_body_sphere";
      const auto p = make_problem(prob);
      StepInfo info;
      CHECK(constraint_defect(make_stepper(m, p)(p.y0, 0.1, info)) <= 1e-12);
    }
  }

  TEST_CASE("config parsing") {
    std::istringstream in("# comment\nproblem = toda_isospectral  # trailing\n\n method=cf4\nh = 0.1, 0.05 ,0.025\nT=2\n");
    const auto m = parse_config(in);
    CHECK(m.at("problem") == "toda_isospectral");
    CHECK(m.at("method") == "cf4");
    const auto c = experiment_config_from_map(m);
    CHECK(c.hs == std::vector<double>{0.1, 0.05, 0.025});
    CHECK(c.T == 2.0);
    std::istringstream bad("problem toda");
    CHECK_THROWS_AS(parse_config(bad), LookupError);
    CHECK_THROWS_AS(experiment_config_from_map({{"colour", "red"}}), LookupError);
    CHECK_THROWS_AS(experiment_config_from_map({{"h", "-1"}}), LookupError);
    CHECK_THROWS_AS(experiment_config_from_map({{"T", "abc"}}), LookupError);
    CHECK_THROWS_AS(experiment_config_from_map({{"problem", "nope"}}), LookupError);
    CHECK_THROWS_AS(experiment_config_from_map({{"tau", "polar"}}), LookupError);
    CHECK(experiment_config_from_map({{"tau", "cayley"}}).solver.variational.tau == ChartKind::Cayley);
    CHECK(config_int({{"n", "12"}}, "n", 0) == 12);
    CHECK_THROWS_AS(config_int({{"n", "1.5"}}, "n", 0), LookupError);
    CHECK(config_double({}, "x", 4.5) == 4.5);
    CHECK(steps_for(1.0, 0.0125) == 80);
    CHECK_THROWS_AS(steps_for(1.0, 0.3), LookupError);
    CHECK(ExperimentConfig{}.step_sizes().size() == 5);
  }

  TEST_CASE("CSV formatting") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    std::ostringstream out;
    CsvWriter w(out);
    w.header({"a", "b,c", "d"});
    w.row({std::string("x\"y"), 2.5, 3LL});
    CHECK(out.str() == "a,\"b,c\",d\r\n\"x\"\"y\",2.5,3\r\n");
    CHECK_THROWS_AS(w.row({1.0}), DomainError);
  }

  TEST_CASE("CSV output is deterministic") {
    auto c = config("rigid_body_sphere", "dg_gonzalez");
    c.hs = {0.1};
    c.steps = 50;
    auto render = [&]() {
      std::ostringstream a;
      write_drift_csv(a, drift(c), 5);
      write_trajectory_csv(a, integrate_problem(c), 7);
      auto cc = config("rigid_body_sphere", "cf4");
      write_convergence_csv(a, converge(cc));
      auto sc = config("rigid_body_liepoisson", "variational");
      sc.method = "all";
      write_symplectic_csv(a, symplectic_check(sc));
      return a.str();
    };
    const std::string first = render();
    CHECK(first == render());
    CHECK(first.find("max_drift") != std::string::npos);
    CHECK(first.find("step,t,y0,y1,y2,H,norm") != std::string::npos);
  }

  TEST_CASE("symplectic check rows") {
    auto c = config("rigid_body_liepoisson", "variational");
    c.method = "all";
    const auto rows = symplectic_check(c);
    REQUIRE(rows.size() == 6);
    for (const auto& r : rows) {
      CAPTURE(r.method);
      CAPTURE(r.h);
      if (r.method == "variational") CHECK(r.defect <= 1e-6);
      if (r.method == "lie_euler" && r.h == 0.1) CHECK(r.defect >= 1e-3);
    }
    c.method = "cf4";
    CHECK_THROWS_AS(symplectic_check(c), LookupError);
  }
}
