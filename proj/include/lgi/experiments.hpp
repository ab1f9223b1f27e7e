#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lgi/config.hpp"
#include "lgi/problems.hpp"

namespace lgi {

/// Solver overrides shared by the implicit methods.
struct SolverSettings {
  DiscreteGradientConfig dg;
  VariationalConfig variational;
};

/// lie_euler, cf4, cg3, rk4_classical, rkmk4, rkmk4_minimal, rkmk4_cayley,
/// rkmk_midpoint, dg_gonzalez, dg_avf, variational.
std::vector<std::string> method_names();
/// Canonical spelling ('-' becomes '_'); throws LookupError for unknown names.
std::string canonical_method(const std::string& name);
/// Binds the method to the problem. Throws LookupError when the method
/// needs data the problem does not provide.
Stepper make_stepper(const std::string& method, const ProblemDefinition& problem, const SolverSettings& solver = {});

struct ExperimentConfig {
  std::string problem = "rigid_body_sphere";
  std::string method = "cf4";
  /// Explicit step sizes; when empty, h₀·2^{−k} for k = 0..halvings.
  std::vector<double> hs;
  double h0 = 0.2;
  int halvings = 4;
  double T = 1.0;
  /// Number of steps for drift/integrate (0: derived from T and h).
  int steps = 0;
  /// Row stride for drift/integrate output.
  int every = 1;
  ProblemOptions options;
  SolverSettings solver;

  /// Throws LookupError for non-positive h or T, or unknown names.
  void validate() const;
  std::vector<double> step_sizes() const;
};

/// Reads the keys problem, method, h, h0, halvings, T, steps, every, alpha,
/// dg, nodes, tol, max_iter, tau. Unknown keys throw LookupError.
ExperimentConfig experiment_config_from_map(const ConfigMap& m);

/// Number of uniform steps covering [0, T] with step ≈ h; throws LookupError
/// when T/h is not within 1e-9 of an integer.
int steps_for(double T, double h);

struct ConvergenceRow {
  double h;
  int steps;
  double error;
  /// log₂-type estimate log(e_{k−1}/e_k)/log(h_{k−1}/h_k); empty on the first row.
  std::optional<double> order;
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  double h_ref;
};

/// Errors at T against a CF4 reference with h_ref = h_min/64 (ambient distance).
ConvergenceResult converge(const ExperimentConfig& cfg);
void write_convergence_csv(std::ostream& out, const ConvergenceResult& r);

struct DriftResult {
  std::vector<std::string> invariant_names;
  TrajectoryRecord record;
  /// max_n |I(y_n) − I(y_0)| per invariant.
  std::vector<double> max_drift;
  int max_iterations = 0;
};

/// Steps `steps` times with h = hs.front() (or h0), recording invariants.
/// Throws LookupError when the problem has no invariants.
DriftResult drift(const ExperimentConfig& cfg);
void write_drift_csv(std::ostream& out, const DriftResult& r, int every = 1);

/// Trajectory with ambient coordinates and invariants.
TrajectoryRecord integrate_problem(const ExperimentConfig& cfg);
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& r, int every = 1);

struct SymplecticRow {
  std::string method;
  double h;
  double defect;
};

/// Symplecticity defect of `variational` and the cotangent `lie_euler`
/// control on the rigid body for each step size.
std::vector<SymplecticRow> symplectic_check(const ExperimentConfig& cfg);
void write_symplectic_csv(std::ostream& out, const std::vector<SymplecticRow>& rows);

}  // namespace lgi
