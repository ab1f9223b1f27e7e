#include "lgi/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "lgi/csv.hpp"
#include "lgi/errors.hpp"

namespace lgi {

namespace {

Stepper sphere_dg_stepper(const ProblemDefinition& p, DiscreteGradientConfig cfg) {
  if (!p.sphere_energy || !p.sphere_bivector)
    throw LookupError("method needs a sphere energy; problem '" + p.name + "' has none");
  return [H = *p.sphere_energy, omega = *p.sphere_bivector, cfg](const ManifoldPoint& y, double h, StepInfo& info) {
    return ManifoldPoint(dg_step_retraction(cfg, RetractionKind::SphereProjective, H, omega, std::get<SpherePoint>(y),
                                            h, &info));
  };
}

Stepper variational_stepper(const ProblemDefinition& p, VariationalConfig cfg) {
  if (!p.cotangent_field) throw LookupError("method needs a Lagrangian; problem '" + p.name + "' has none");
  return [f = *p.cotangent_field, cfg](const ManifoldPoint& y, double h, StepInfo& info) {
    const CoAlgebraElement& mu = std::get<MomentumPoint>(y).mu;
    const TrivializedCotangentPoint z(GroupElement::identity(mu.descriptor()), mu);
    return ManifoldPoint(MomentumPoint{variational_step(f, z, -h, cfg, &info).mu});
  };
}

std::vector<double> parse_list(const std::string& key, const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    ConfigMap tmp{{key, item}};
    tmp[key].erase(std::remove_if(tmp[key].begin(), tmp[key].end(), ::isspace), tmp[key].end());
    out.push_back(config_double(tmp, key, 0.0));
  }
  if (out.empty()) throw LookupError("config key '" + key + "': empty list");
  return out;
}

double h_for_single_run(const ExperimentConfig& cfg) { return cfg.hs.empty() ? cfg.h0 : cfg.hs.front(); }

int steps_for_single_run(const ExperimentConfig& cfg, double h) {
  return cfg.steps > 0 ? cfg.steps : steps_for(cfg.T, h);
}

}  // namespace

std::vector<std::string> method_names() {
  return {"lie_euler",     "cf4",           "cg3",         "rk4_classical", "rkmk4",      "rkmk4_minimal",
          "rkmk4_cayley",  "rkmk_midpoint", "dg_gonzalez", "dg_avf",        "variational"};
}

std::string canonical_method(const std::string& name) {
  std::string s = name;
  std::replace(s.begin(), s.end(), '-', '_');
  const auto names = method_names();
  if (std::find(names.begin(), names.end(), s) == names.end()) throw LookupError("unknown method '" + name + "'");
  return s;
}

Stepper make_stepper(const std::string& method, const ProblemDefinition& p, const SolverSettings& solver) {
  const std::string m = canonical_method(method);
  const FieldPresentation& pres = p.presentation;
  if (m == "lie_euler") return make_lie_euler_stepper(pres);
  if (m == "cf4" || m == "cg3" || m == "rk4_classical") return make_cf_stepper(CFScheme::by_name(m), pres);
  if (m == "rkmk4") return make_rkmk_stepper(ButcherTableau::rk4(), CoordinateMap::exp(pres.desc), pres);
  if (m == "rkmk4_minimal") return make_rkmk4_minimal_stepper(pres);
  if (m == "rkmk4_cayley") return make_rkmk_stepper(ButcherTableau::rk4(), CoordinateMap::cayley(pres.desc), pres);
  if (m == "rkmk_midpoint") return make_rkmk_stepper(ButcherTableau::midpoint(), CoordinateMap::exp(pres.desc), pres);
  if (m == "dg_gonzalez" || m == "dg_avf") {
    DiscreteGradientConfig cfg = solver.dg;
    cfg.kind = m == "dg_gonzalez" ? DiscreteGradientKind::GonzalezMidpoint : DiscreteGradientKind::AVFQuadrature;
    return sphere_dg_stepper(p, cfg);
  }
  return variational_stepper(p, solver.variational);
}

void ExperimentConfig::validate() const {
  const auto names = problem_names();
  if (std::find(names.begin(), names.end(), problem) == names.end())
    throw LookupError("unknown problem '" + problem + "'");
  canonical_method(method);
  if (!(T > 0.0) || !std::isfinite(T)) throw LookupError("T must be positive");
  if (!(h0 > 0.0) || !std::isfinite(h0)) throw LookupError("h0 must be positive");
  for (double h : hs)
    if (!(h > 0.0) || !std::isfinite(h)) throw LookupError("step sizes must be positive");
  if (halvings < 0) throw LookupError("halvings must be non-negative");
  if (steps < 0) throw LookupError("steps must be non-negative");
  if (every < 1) throw LookupError("every must be at least 1");
  solver.dg.validate();
  if (!(solver.variational.tol > 0.0) || solver.variational.max_iterations < 1)
    throw LookupError("invalid variational solver settings");
}

std::vector<double> ExperimentConfig::step_sizes() const {
  if (!hs.empty()) return hs;
  std::vector<double> out;
  for (int k = 0; k <= halvings; ++k) out.push_back(std::ldexp(h0, -k));
  return out;
}

ExperimentConfig experiment_config_from_map(const ConfigMap& m) {
  static const std::set<std::string> known{"problem", "method", "h",     "h0",    "halvings", "T",       "steps",
                                           "every",   "alpha",  "nodes", "tol",   "max_iter", "tau",     "output"};
  for (const auto& [k, v] : m)
    if (!known.count(k)) throw LookupError("unknown config key '" + k + "'");
  ExperimentConfig c;
  c.problem = config_string(m, "problem", c.problem);
  c.method = config_string(m, "method", c.method);
  if (m.count("h")) c.hs = parse_list("h", m.at("h"));
  c.h0 = config_double(m, "h0", c.h0);
  c.halvings = config_int(m, "halvings", c.halvings);
  c.T = config_double(m, "T", c.T);
  c.steps = config_int(m, "steps", c.steps);
  c.every = config_int(m, "every", c.every);
  c.options.alpha = config_double(m, "alpha", c.options.alpha);
  c.solver.dg.nodes = config_int(m, "nodes", c.solver.dg.nodes);
  c.solver.dg.tol = config_double(m, "tol", c.solver.dg.tol);
  c.solver.variational.tol = c.solver.dg.tol;
  c.solver.dg.max_iterations = config_int(m, "max_iter", c.solver.dg.max_iterations);
  c.solver.variational.max_iterations = c.solver.dg.max_iterations;
  const std::string tau = config_string(m, "tau", "exp");
  if (tau == "exp")
    c.solver.variational.tau = ChartKind::Exp;
  else if (tau == "cayley")
    c.solver.variational.tau = ChartKind::Cayley;
  else
    throw LookupError("config key 'tau': expected exp or cayley");
  try {
    c.validate();
  } catch (const DomainError& e) {
    throw LookupError(e.what());
  }
  return c;
}

int steps_for(double T, double h) {
  const double n = T / h;
  const double r = std::round(n);
  if (r < 1.0 || std::abs(n - r) > 1e-9 * std::max(1.0, n))
    throw LookupError("T/h must be a positive integer (T = " + format_double(T) + ", h = " + format_double(h) + ")");
  return static_cast<int>(r);
}

ConvergenceResult converge(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<double> hs = cfg.step_sizes();
  if (hs.size() < 3) throw LookupError("converge needs at least three step sizes");
  const ProblemDefinition p = make_problem(cfg.problem, cfg.options);
  const Stepper stepper = make_stepper(cfg.method, p, cfg.solver);

  ConvergenceResult out;
  out.h_ref = *std::min_element(hs.begin(), hs.end()) / 64.0;
  const Stepper ref_stepper = make_stepper("cf4", p);
  const ManifoldPoint ref = integrate(ref_stepper, p.y0, 0.0, cfg.T, steps_for(cfg.T, out.h_ref)).states.back();

  for (std::size_t k = 0; k < hs.size(); ++k) {
    const int n = steps_for(cfg.T, hs[k]);
    const ManifoldPoint y = integrate(stepper, p.y0, 0.0, cfg.T, n).states.back();
    ConvergenceRow row{hs[k], n, ambient_distance(y, ref), std::nullopt};
    if (k > 0) {
      const auto& prev = out.rows.back();
      row.order = std::log(prev.error / row.error) / std::log(prev.h / row.h);
    }
    out.rows.push_back(row);
  }
  return out;
}

void write_convergence_csv(std::ostream& out, const ConvergenceResult& r) {
  CsvWriter w(out);
  w.header({"h", "steps", "error", "order"});
  for (const auto& row : r.rows)
    w.row({row.h, static_cast<long long>(row.steps), row.error,
           row.order ? CsvWriter::Cell(*row.order) : CsvWriter::Cell(std::string())});
}

DriftResult drift(const ExperimentConfig& cfg) {
  cfg.validate();
  const ProblemDefinition p = make_problem(cfg.problem, cfg.options);
  if (p.invariants.empty()) throw LookupError("problem '" + p.name + "' has no registered invariants");
  const double h = h_for_single_run(cfg);
  const int n = steps_for_single_run(cfg, h);
  DriftResult out;
  out.record = integrate(make_stepper(cfg.method, p, cfg.solver), p.y0, 0.0, n * h, n, p.invariants);
  out.invariant_names = out.record.observer_names;
  out.max_drift.assign(p.invariants.size(), 0.0);
  const auto& inv = out.record.invariants;
  for (const auto& row : inv)
    for (std::size_t i = 0; i < row.size(); ++i) out.max_drift[i] = std::max(out.max_drift[i], std::abs(row[i] - inv[0][i]));
  for (const auto& s : out.record.steps) out.max_iterations = std::max(out.max_iterations, s.iterations);
  return out;
}

void write_drift_csv(std::ostream& out, const DriftResult& r, int every) {
  CsvWriter w(out);
  std::vector<std::string> head{"kind", "step", "t"};
  head.insert(head.end(), r.invariant_names.begin(), r.invariant_names.end());
  head.push_back("iterations");
  w.header(head);
  const auto& rec = r.record;
  const std::size_t last = rec.times.size() - 1;
  for (std::size_t k = 0; k <= last; ++k) {
    if (k % static_cast<std::size_t>(every) != 0 && k != last) continue;
    std::vector<CsvWriter::Cell> cells{std::string("step"), static_cast<long long>(k), rec.times[k]};
    for (double v : rec.invariants[k]) cells.emplace_back(v);
    cells.emplace_back(static_cast<long long>(rec.steps[k].iterations));
    w.row(cells);
  }
  std::vector<CsvWriter::Cell> summary{std::string("max_drift"), static_cast<long long>(last), rec.times[last]};
  for (double v : r.max_drift) summary.emplace_back(v);
  summary.emplace_back(static_cast<long long>(r.max_iterations));
  w.row(summary);
}

TrajectoryRecord integrate_problem(const ExperimentConfig& cfg) {
  cfg.validate();
  const ProblemDefinition p = make_problem(cfg.problem, cfg.options);
  const double h = h_for_single_run(cfg);
  const int n = steps_for_single_run(cfg, h);
  return integrate(make_stepper(cfg.method, p, cfg.solver), p.y0, 0.0, n * h, n, p.invariants);
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& r, int every) {
  CsvWriter w(out);
  const Eigen::MatrixXd a0 = ambient(r.states.front());
  std::vector<std::string> head{"step", "t"};
  for (Eigen::Index i = 0; i < a0.size(); ++i) head.push_back("y" + std::to_string(i));
  head.insert(head.end(), r.observer_names.begin(), r.observer_names.end());
  w.header(head);
  const std::size_t last = r.states.size() - 1;
  for (std::size_t k = 0; k <= last; ++k) {
    if (k % static_cast<std::size_t>(every) != 0 && k != last) continue;
    std::vector<CsvWriter::Cell> cells{static_cast<long long>(k), r.times[k]};
    const Eigen::MatrixXd a = ambient(r.states[k]);
    for (Eigen::Index i = 0; i < a.size(); ++i) cells.emplace_back(a(i));
    for (double v : r.invariants[k]) cells.emplace_back(v);
    w.row(cells);
  }
}

std::vector<SymplecticRow> symplectic_check(const ExperimentConfig& cfg) {
  const std::vector<double> hs = cfg.hs.empty() ? std::vector<double>{0.05, 0.1, 0.2} : cfg.hs;
  std::vector<std::string> methods;
  if (cfg.method == "all" || cfg.method.empty()) {
    methods = {"variational", "lie_euler"};
  } else {
    const std::string m = canonical_method(cfg.method);
    if (m != "variational" && m != "lie_euler")
      throw LookupError("symplectic-check supports the methods variational and lie_euler");
    methods = {m};
  }
  const CotangentField f = CotangentField::from_lagrangian(rigid_body_lagrangian());
  const TrivializedCotangentPoint z(group_exp(AlgebraElement::so3(Eigen::Vector3d(0.3, -0.2, 0.1))),
                                    CoAlgebraElement::so3(rigid_body_initial()));
  std::vector<SymplecticRow> out;
  for (const auto& m : methods) {
    CotangentStepper step;
    if (m == "variational")
      step = [&f, v = cfg.solver.variational](const TrivializedCotangentPoint& p, double h) {
        return variational_step(f, p, h, v);
      };
    else
      step = [&f](const TrivializedCotangentPoint& p, double h) { return cotangent_lie_euler_step(f, p, h); };
    for (double h : hs) out.push_back({m, h, symplecticity_check(step, z, h)});
  }
  return out;
}

void write_symplectic_csv(std::ostream& out, const std::vector<SymplecticRow>& rows) {
  CsvWriter w(out);
  w.header({"method", "h", "defect"});
  for (const auto& r : rows) w.row({r.method, r.h, r.defect});
}

}  // namespace lgi
