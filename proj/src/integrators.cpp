#include "lgi/integrators.hpp"

#include <cmath>

#include "lgi/errors.hpp"

namespace lgi {

// ---------------------------------------------------------------- tableaus

ButcherTableau::ButcherTableau(std::string name, std::vector<std::vector<Rational>> A, std::vector<Rational> b)
    : name_(std::move(name)), A_(std::move(A)), b_(std::move(b)) {
  const std::size_t s = b_.size();
  if (s == 0) throw SchemeError("ButcherTableau " + name_ + ": no stages");
  if (A_.size() != s) throw SchemeError("ButcherTableau " + name_ + ": A must have s rows");
  for (const auto& row : A_)
    if (row.size() != s) throw SchemeError("ButcherTableau " + name_ + ": A must be square");
  Rational sum = 0;
  for (const auto& x : b_) sum += x;
  if (sum != 1) throw SchemeError("ButcherTableau " + name_ + ": weights do not sum to one");
}

bool ButcherTableau::is_explicit() const {
  for (int r = 0; r < stages(); ++r)
    for (int j = r; j < stages(); ++j)
      if (a(r, j) != 0) return false;
  return true;
}

Rational ButcherTableau::c(int r) const {
  Rational sum = 0;
  for (const auto& x : A_[static_cast<std::size_t>(r)]) sum += x;
  return sum;
}

ButcherTableau ButcherTableau::euler() { return {"euler", {{0}}, {1}}; }

ButcherTableau ButcherTableau::midpoint() { return {"midpoint", {{0, 0}, {frac(1, 2), 0}}, {0, 1}}; }

ButcherTableau ButcherTableau::kutta3() {
  return {"kutta3", {{0, 0, 0}, {frac(1, 2), 0, 0}, {-1, 2, 0}}, {frac(1, 6), frac(2, 3), frac(1, 6)}};
}

ButcherTableau ButcherTableau::rk4() {
  return {"rk4",
          {{0, 0, 0, 0}, {frac(1, 2), 0, 0, 0}, {0, frac(1, 2), 0, 0}, {0, 0, 1, 0}},
          {frac(1, 6), frac(1, 3), frac(1, 3), frac(1, 6)}};
}

ButcherTableau ButcherTableau::cg3() {
  return {"cg3",
          {{0, 0, 0}, {frac(3, 4), 0, 0}, {frac(119, 216), frac(17, 108), 0}},
          {frac(13, 51), frac(-2, 3), frac(24, 17)}};
}

ButcherTableau ButcherTableau::by_name(const std::string& name) {
  if (name == "euler") return euler();
  if (name == "midpoint") return midpoint();
  if (name == "kutta3") return kutta3();
  if (name == "rk4") return rk4();
  if (name == "cg3") return cg3();
  throw LookupError("unknown tableau '" + name + "'");
}

// ---------------------------------------------------------------- commutator-free schemes

CFScheme::CFScheme(std::string name, int order, std::vector<CFStage> stages, CFStage update)
    : name_(std::move(name)), order_(order), stages_(std::move(stages)), update_(std::move(update)) {
  const int s = this->stages();
  if (s == 0) throw SchemeError("CFScheme " + name_ + ": no stages");
  auto check = [&](const CFStage& st, int r) {
    for (const auto& g : st.groups) {
      if (static_cast<int>(g.size()) != s)
        throw SchemeError("CFScheme " + name_ + ": coefficient vector of length " + std::to_string(g.size()) +
                          ", expected " + std::to_string(s));
      for (int k = r; k < s; ++k)
        if (g[static_cast<std::size_t>(k)] != 0)
          throw SchemeError("CFScheme " + name_ + ": stage " + std::to_string(r + 1) + " references F_" +
                            std::to_string(k + 1) + " before it is computed");
    }
    if (st.reuse) {
      const int q = *st.reuse;
      if (q < 0 || q >= r) throw SchemeError("CFScheme " + name_ + ": reuse must name an earlier stage");
      const auto& prev = stages_[static_cast<std::size_t>(q)].groups;
      if (prev.size() > st.groups.size())
        throw SchemeError("CFScheme " + name_ + ": reused stage has more exponentials than the reusing stage");
      for (std::size_t j = 0; j < prev.size(); ++j)
        if (prev[j] != st.groups[j])
          throw SchemeError("CFScheme " + name_ + ": reuse annotation does not match stage " + std::to_string(q + 1));
    }
  };
  for (int r = 0; r < s; ++r) check(stages_[static_cast<std::size_t>(r)], r);
  check(update_, s);
}

namespace {

CFExponential coeffs(std::initializer_list<Rational> xs) { return CFExponential(xs); }

}  // namespace

CFScheme CFScheme::lie_euler() { return {"lie-euler", 1, {CFStage{}}, CFStage{{coeffs({1})}, {}}}; }

CFScheme CFScheme::cf4() {
  const Rational z = 0;
  std::vector<CFStage> st(4);
  st[1].groups = {coeffs({frac(1, 2), z, z, z})};
  st[2].groups = {coeffs({z, frac(1, 2), z, z})};
  st[3].groups = {coeffs({frac(1, 2), z, z, z}), coeffs({frac(-1, 2), z, 1, z})};
  st[3].reuse = 1;
  CFStage up;
  up.groups = {coeffs({frac(3, 12), frac(2, 12), frac(2, 12), frac(-1, 12)}),
               coeffs({frac(-1, 12), frac(2, 12), frac(2, 12), frac(3, 12)})};
  return {"cf4", 4, std::move(st), std::move(up)};
}

CFScheme CFScheme::crouch_grossman(const ButcherTableau& tab, int order) {
  if (!tab.is_explicit()) throw SchemeError("crouch_grossman: tableau must be explicit");
  const int s = tab.stages();
  std::vector<CFStage> st(static_cast<std::size_t>(s));
  auto single = [s](int k, const Rational& x) {
    CFExponential e(static_cast<std::size_t>(s), Rational(0));
    e[static_cast<std::size_t>(k)] = x;
    return e;
  };
  for (int r = 0; r < s; ++r)
    for (int j = 0; j < r; ++j)
      if (tab.a(r, j) != 0) st[static_cast<std::size_t>(r)].groups.push_back(single(j, tab.a(r, j)));
  CFStage up;
  for (int j = 0; j < s; ++j)
    if (tab.b(j) != 0) up.groups.push_back(single(j, tab.b(j)));
  return {tab.name(), order, std::move(st), std::move(up)};
}

CFScheme CFScheme::cg3() { return crouch_grossman(ButcherTableau::cg3(), 3); }

CFScheme CFScheme::rk4_classical() {
  const ButcherTableau t = ButcherTableau::rk4();
  const int s = t.stages();
  std::vector<CFStage> st(static_cast<std::size_t>(s));
  for (int r = 1; r < s; ++r) {
    CFExponential e;
    for (int k = 0; k < s; ++k) e.push_back(t.a(r, k));
    st[static_cast<std::size_t>(r)].groups = {e};
  }
  CFExponential b;
  for (int k = 0; k < s; ++k) b.push_back(t.b(k));
  return {"rk4-classical", 4, std::move(st), CFStage{{b}, {}}};
}

CFScheme CFScheme::by_name(const std::string& name) {
  if (name == "lie-euler" || name == "lie_euler") return lie_euler();
  if (name == "cf4") return cf4();
  if (name == "cg3") return cg3();
  if (name == "rk4-classical" || name == "rk4_classical") return rk4_classical();
  throw LookupError("unknown commutator-free scheme '" + name + "'");
}

ButcherTableau CFScheme::classical_tableau() const {
  const int s = stages();
  std::vector<std::vector<Rational>> A(static_cast<std::size_t>(s), std::vector<Rational>(static_cast<std::size_t>(s)));
  std::vector<Rational> b(static_cast<std::size_t>(s));
  for (int r = 0; r < s; ++r)
    for (const auto& g : stages_[static_cast<std::size_t>(r)].groups)
      for (int k = 0; k < s; ++k) A[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] += g[static_cast<std::size_t>(k)];
  for (const auto& g : update_.groups)
    for (int k = 0; k < s; ++k) b[static_cast<std::size_t>(k)] += g[static_cast<std::size_t>(k)];
  return {name_ + "-classical", std::move(A), std::move(b)};
}

int CFScheme::exponentials_per_step() const {
  int count = 0;
  auto add = [&](const CFStage& st) {
    const std::size_t skip = st.reuse ? stages_[static_cast<std::size_t>(*st.reuse)].groups.size() : 0;
    count += static_cast<int>(st.groups.size() - skip);
  };
  for (const auto& st : stages_) add(st);
  add(update_);
  return count;
}

// ---------------------------------------------------------------- steppers

namespace {

void require_explicit(const ButcherTableau& tab) {
  if (!tab.is_explicit()) throw UnsupportedError("rkmk_step: implicit tableau " + tab.name() + " is not supported");
}

AlgebraElement combine(const AlgebraDescriptor& desc, const std::vector<AlgebraElement>& F, const CFExponential& c,
                       double h) {
  AlgebraElement out = AlgebraElement::zero(desc);
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] != 0) out += (h * to_double(c[k])) * F[k];
  return out;
}

bool is_zero(const AlgebraElement& a) { return a.value().cwiseAbs().maxCoeff() == 0.0; }

}  // namespace

ManifoldPoint rkmk_step(const ButcherTableau& tab, const CoordinateMap& map, const FieldPresentation& pres,
                        const ManifoldPoint& y0, double h, StepInfo* info) {
  require_explicit(tab);
  require_same(map.desc, pres.desc, "rkmk_step");
  const int s = tab.stages();
  std::vector<AlgebraElement> kt;
  kt.reserve(static_cast<std::size_t>(s));
  int exps = 0;
  for (int r = 0; r < s; ++r) {
    AlgebraElement u = AlgebraElement::zero(pres.desc);
    for (int j = 0; j < r; ++j)
      if (tab.a(r, j) != 0) u += (h * tab.a_d(r, j)) * kt[static_cast<std::size_t>(j)];
    if (is_zero(u)) {
      kt.push_back(pres(y0));
    } else {
      const ManifoldPoint Y = act(pres.action, psi(map, u), y0);
      ++exps;
      kt.push_back(dpsi_inv(map, u, pres(Y)));
    }
  }
  AlgebraElement v = AlgebraElement::zero(pres.desc);
  for (int r = 0; r < s; ++r)
    if (tab.b(r) != 0) v += (h * tab.b_d(r)) * kt[static_cast<std::size_t>(r)];
  if (info) info->exponentials = exps + 1;
  return act(pres.action, psi(map, v), y0);
}

ManifoldPoint rkmk4_minimal_step(const FieldPresentation& pres, const ManifoldPoint& y0, double h, StepInfo* info) {
  const auto& a = pres.action;
  const AlgebraElement k1 = h * pres(y0);
  const AlgebraElement k2 = h * pres(act(a, group_exp(0.5 * k1), y0));
  const AlgebraElement k3 = h * pres(act(a, group_exp(0.5 * k2 - 0.125 * bracket(k1, k2)), y0));
  const AlgebraElement k4 = h * pres(act(a, group_exp(k3), y0));
  const AlgebraElement v = (1.0 / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4 - 0.5 * bracket(k1, k4));
  if (info) info->exponentials = 4;
  return act(a, group_exp(v), y0);
}

ManifoldPoint lie_euler_step(const FieldPresentation& pres, const ManifoldPoint& y0, double h, StepInfo* info) {
  if (info) info->exponentials = 1;
  return act(pres.action, group_exp(h * pres(y0)), y0);
}

ManifoldPoint cf_step(const CFScheme& scheme, const FieldPresentation& pres, const ManifoldPoint& y0, double h,
                      StepInfo* info) {
  const int s = scheme.stages();
  std::vector<ManifoldPoint> Y;
  std::vector<AlgebraElement> F;
  Y.reserve(static_cast<std::size_t>(s));
  F.reserve(static_cast<std::size_t>(s));
  int exps = 0;
  auto run = [&](const CFStage& st) {
    std::size_t j0 = 0;
    ManifoldPoint y = y0;
    if (st.reuse) {
      const int q = *st.reuse;
      if (q >= static_cast<int>(Y.size())) throw SchemeError("cf_step: reuse of a stage that is not computed yet");
      y = Y[static_cast<std::size_t>(q)];
      j0 = scheme.stage(q).groups.size();
    }
    for (std::size_t j = j0; j < st.groups.size(); ++j) {
      const auto& g = st.groups[j];
      for (std::size_t k = F.size(); k < g.size(); ++k)
        if (g[k] != 0) throw SchemeError("cf_step: coefficient references an uncomputed stage");
      const AlgebraElement w = combine(pres.desc, F, CFExponential(g.begin(), g.begin() + static_cast<long>(F.size())), h);
      y = act(pres.action, group_exp(w), y);
      ++exps;
    }
    return y;
  };
  for (int r = 0; r < s; ++r) {
    Y.push_back(run(scheme.stage(r)));
    F.push_back(pres(Y.back()));
  }
  ManifoldPoint y1 = run(scheme.update());
  if (info) info->exponentials = exps;
  return y1;
}

Stepper make_rkmk_stepper(ButcherTableau tab, CoordinateMap map, FieldPresentation pres) {
  require_explicit(tab);
  return [tab = std::move(tab), map = std::move(map), pres = std::move(pres)](const ManifoldPoint& y, double h,
                                                                              StepInfo& info) {
    return rkmk_step(tab, map, pres, y, h, &info);
  };
}

Stepper make_rkmk4_minimal_stepper(FieldPresentation pres) {
  return [pres = std::move(pres)](const ManifoldPoint& y, double h, StepInfo& info) {
    return rkmk4_minimal_step(pres, y, h, &info);
  };
}

Stepper make_lie_euler_stepper(FieldPresentation pres) {
  return [pres = std::move(pres)](const ManifoldPoint& y, double h, StepInfo& info) {
    return lie_euler_step(pres, y, h, &info);
  };
}

Stepper make_cf_stepper(CFScheme scheme, FieldPresentation pres) {
  return [scheme = std::move(scheme), pres = std::move(pres)](const ManifoldPoint& y, double h, StepInfo& info) {
    return cf_step(scheme, pres, y, h, &info);
  };
}

// ---------------------------------------------------------------- driver

TrajectoryRecord integrate(const Stepper& stepper, const ManifoldPoint& y0, double t0, double t1, int nsteps,
                           const std::vector<Observer>& observers) {
  if (nsteps < 1) throw DomainError("integrate: nsteps must be at least 1");
  if (!(t1 > t0)) throw DomainError("integrate: t1 must exceed t0");
  const double h = (t1 - t0) / nsteps;
  TrajectoryRecord rec;
  rec.times.reserve(static_cast<std::size_t>(nsteps) + 1);
  rec.states.reserve(static_cast<std::size_t>(nsteps) + 1);
  for (const auto& o : observers) rec.observer_names.push_back(o.name);
  auto observe = [&](const ManifoldPoint& y) {
    std::vector<double> row;
    row.reserve(observers.size());
    for (const auto& o : observers) row.push_back(o.eval(y));
    rec.invariants.push_back(std::move(row));
  };
  rec.times.push_back(t0);
  rec.states.push_back(y0);
  rec.steps.emplace_back();
  observe(y0);
  for (int k = 1; k <= nsteps; ++k) {
    StepInfo info;
    try {
      rec.states.push_back(stepper(rec.states.back(), h, info));
    } catch (Error& e) {
      e.attach_step(static_cast<std::size_t>(k));
      throw;
    }
    rec.times.push_back(k == nsteps ? t1 : t0 + k * h);
    rec.steps.push_back(info);
    observe(rec.states.back());
  }
  return rec;
}

}  // namespace lgi
