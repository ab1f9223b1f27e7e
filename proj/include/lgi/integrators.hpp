#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lgi/actions.hpp"
#include "lgi/coords.hpp"
#include "lgi/rational.hpp"

namespace lgi {

/// Runge–Kutta coefficients (A, b) in exact rationals.
class ButcherTableau {
 public:
  /// Throws SchemeError for inconsistent shapes or Σ b_r ≠ 1.
  ButcherTableau(std::string name, std::vector<std::vector<Rational>> A, std::vector<Rational> b);

  static ButcherTableau euler();
  static ButcherTableau midpoint();
  static ButcherTableau kutta3();
  static ButcherTableau rk4();
  /// Classical coefficients of the third-order Crouch–Grossman method.
  static ButcherTableau cg3();
  /// Lookup by name: euler, midpoint, kutta3, rk4, cg3. Throws LookupError.
  static ButcherTableau by_name(const std::string& name);

  const std::string& name() const { return name_; }
  int stages() const { return static_cast<int>(b_.size()); }
  bool is_explicit() const;
  const Rational& a(int r, int j) const { return A_[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]; }
  const Rational& b(int r) const { return b_[static_cast<std::size_t>(r)]; }
  Rational c(int r) const;
  double a_d(int r, int j) const { return to_double(a(r, j)); }
  double b_d(int r) const { return to_double(b(r)); }

 private:
  std::string name_;
  std::vector<std::vector<Rational>> A_;
  std::vector<Rational> b_;
};

/// One exponential factor: the frozen combination Σ_k coeffs[k]·F_k.
using CFExponential = std::vector<Rational>;

/// Stage of a commutator-free scheme. Groups are listed in the order they
/// act, so groups[0] is the rightmost exponential. When `reuse` names an
/// earlier stage q, the first J_q groups coincide with stage q's groups and
/// the stage starts from Y_q instead of y₀.
struct CFStage {
  std::vector<CFExponential> groups;
  std::optional<int> reuse;
};

/// Commutator-free scheme with coefficients α_{r,j}^k, β_j^k.
class CFScheme {
 public:
  /// Validates the scheme; throws SchemeError for coefficient vectors of the
  /// wrong length, a stage referencing F_k with k ≥ r, or a reuse annotation
  /// that does not match the earlier stage.
  CFScheme(std::string name, int order, std::vector<CFStage> stages, CFStage update);

  static CFScheme lie_euler();
  static CFScheme cf4();
  static CFScheme cg3();
  /// Classical RK4 with one exponential per stage and update.
  static CFScheme rk4_classical();
  /// Crouch–Grossman embedding: stage r applies exp(a_{r,1}F₁) first, then
  /// exp(a_{r,2}F₂), …, and likewise for the update.
  static CFScheme crouch_grossman(const ButcherTableau& tab, int order);
  /// lie-euler, cf4, cg3, rk4-classical. Throws LookupError.
  static CFScheme by_name(const std::string& name);

  const std::string& name() const { return name_; }
  int order() const { return order_; }
  int stages() const { return static_cast<int>(stages_.size()); }
  const CFStage& stage(int r) const { return stages_[static_cast<std::size_t>(r)]; }
  const CFStage& update() const { return update_; }
  /// a_r^k = Σ_j α_{r,j}^k and b^k = Σ_j β_j^k.
  ButcherTableau classical_tableau() const;
  /// Exponentials evaluated per step, counting reused prefixes once.
  int exponentials_per_step() const;

 private:
  std::string name_;
  int order_;
  std::vector<CFStage> stages_;
  CFStage update_;
};

/// Per-step diagnostics reported by steppers.
struct StepInfo {
  int iterations = 0;
  int exponentials = 0;
  double residual = 0.0;
};

/// One step y ↦ y₁ of size h, with the vector field bound in.
using Stepper = std::function<ManifoldPoint(const ManifoldPoint& y, double h, StepInfo& info)>;

ManifoldPoint rkmk_step(const ButcherTableau& tab, const CoordinateMap& map, const FieldPresentation& pres,
                        const ManifoldPoint& y0, double h, StepInfo* info = nullptr);
/// Fourth-order RKMK with the minimal commutator set.
ManifoldPoint rkmk4_minimal_step(const FieldPresentation& pres, const ManifoldPoint& y0, double h,
                                 StepInfo* info = nullptr);
/// y₁ = exp(h f(y₀))·y₀.
ManifoldPoint lie_euler_step(const FieldPresentation& pres, const ManifoldPoint& y0, double h,
                             StepInfo* info = nullptr);
ManifoldPoint cf_step(const CFScheme& scheme, const FieldPresentation& pres, const ManifoldPoint& y0, double h,
                      StepInfo* info = nullptr);

Stepper make_rkmk_stepper(ButcherTableau tab, CoordinateMap map, FieldPresentation pres);
Stepper make_rkmk4_minimal_stepper(FieldPresentation pres);
Stepper make_lie_euler_stepper(FieldPresentation pres);
Stepper make_cf_stepper(CFScheme scheme, FieldPresentation pres);

/// Named scalar evaluated on every state.
struct Observer {
  std::string name;
  std::function<double(const ManifoldPoint&)> eval;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<ManifoldPoint> states;
  std::vector<std::string> observer_names;
  /// invariants[k][i]: observer i at state k.
  std::vector<std::vector<double>> invariants;
  /// Step diagnostics; entry k describes the step ending at state k (entry 0 is empty).
  std::vector<StepInfo> steps;
};

/// Uniform steps from t0 to t1 (t1 > t0, nsteps ≥ 1). Library errors raised
/// by the stepper are rethrown with the failing step index attached.
TrajectoryRecord integrate(const Stepper& stepper, const ManifoldPoint& y0, double t0, double t1, int nsteps,
                           const std::vector<Observer>& observers = {});

}  // namespace lgi
