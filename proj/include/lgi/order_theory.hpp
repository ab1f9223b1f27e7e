#pragma once

#include <string>
#include <vector>

#include "lgi/integrators.hpp"
#include "lgi/rational.hpp"

namespace lgi {

/// Largest supported tree size (nodes, including the root).
constexpr int kMaxTreeNodes = 9;

/// Handle to an interned canonical ordered rooted tree.
///
/// Trees are numbered in the canonical order: by node count, then
/// lexicographically by the ids of the ordered subtree list. Id 0 is the
/// single node.
class OrderedTree {
 public:
  OrderedTree() = default;
  static OrderedTree single() { return OrderedTree(0); }
  /// B₊ of an ordered forest. Throws UnsupportedError above kMaxTreeNodes.
  static OrderedTree join(const std::vector<OrderedTree>& forest);
  /// Parses the bracket form produced by `str()`, e.g. "[[][[]]]".
  static OrderedTree parse(const std::string& s);
  static OrderedTree from_id(int id);

  int id() const { return id_; }
  int nodes() const;
  /// B₋: the ordered list of root subtrees.
  std::vector<OrderedTree> children() const;
  /// Bracket form: "[]" is the single node, B₊(t₁…t_μ) is "[" t₁ … t_μ "]".
  std::string str() const;

  friend bool operator==(OrderedTree a, OrderedTree b) { return a.id_ == b.id_; }
  friend bool operator!=(OrderedTree a, OrderedTree b) { return a.id_ != b.id_; }
  friend bool operator<(OrderedTree a, OrderedTree b) { return a.id_ < b.id_; }

 private:
  explicit OrderedTree(int id) : id_(id) {}
  int id_ = 0;
};

/// Canonical trees with n+1 nodes for n = 0..N, concatenated in canonical
/// order. Throws UnsupportedError for N > 8.
std::vector<OrderedTree> trees_up_to(int N);
/// Canonical trees with exactly `nodes` nodes.
std::vector<OrderedTree> trees_with_nodes(int nodes);

/// Number of monotone labellings in the tree's class.
BigInt alpha(OrderedTree t);
/// α(t)/(|t|−1)!.
Rational exact_flow_coeff(OrderedTree t);
/// u·v = B₊(u₁…u_μ v₁…v_ν).
OrderedTree concat(OrderedTree u, OrderedTree v);

/// Exact coefficients a(t) for every tree with |t| ≤ N+1.
class BSeriesMap {
 public:
  explicit BSeriesMap(int N);
  /// 1 on the single node, 0 elsewhere.
  static BSeriesMap identity(int N);
  /// α(t)/(|t|−1)! on every tree.
  static BSeriesMap exact_flow(int N);

  int order_cap() const { return N_; }
  int size() const { return static_cast<int>(c_.size()); }
  const Rational& operator[](OrderedTree t) const;
  Rational& operator[](OrderedTree t);
  /// Coefficient of B₊ of a forest (1 on the empty forest for maps).
  const Rational& at_forest(const std::vector<OrderedTree>& forest) const;

  friend bool operator==(const BSeriesMap& a, const BSeriesMap& b) { return a.N_ == b.N_ && a.c_ == b.c_; }

 private:
  int N_;
  std::vector<Rational> c_;
};

/// Deconcatenation product ab(t) = Σ_k a(B₊(t_{k+1}…t_μ)) b(B₊(t₁…t_k)); the
/// series of φ_a∘φ_b when φ_a is the flow of a frozen field.
BSeriesMap bseries_compose(const BSeriesMap& a, const BSeriesMap& b);
/// Frozen field at φ_a(x): F(B₊(t)) = a(t), zero elsewhere.
BSeriesMap frozen_bseries(const BSeriesMap& a);
/// Flow of hG: g(B₊(t₁…t_μ)) = (1/μ!) G(B₊(t₁))···G(B₊(t_μ)).
/// Throws DomainError unless G vanishes on the single node.
BSeriesMap exp_bseries(const BSeriesMap& G);
/// Series of the scheme's output y₁ (N ≤ 6). Throws SchemeError for a
/// stage that references a stage not yet computed.
BSeriesMap cf_scheme_bseries(const CFScheme& scheme, int N);

struct OrderConditionRow {
  OrderedTree tree;
  Rational scheme_coeff;
  Rational exact_coeff;
  bool pass;
};

struct OrderReport {
  std::string scheme;
  int order = 0;
  std::vector<OrderConditionRow> rows;
  bool pass = true;
  /// Number of checked trees and the number of independent conditions
  /// (Σ ν_n over grades 1..q).
  int checked() const { return static_cast<int>(rows.size()); }
  long independent = 0;
};

/// Compares the scheme series with the exact flow on all |t| ≤ q+1 (q ≤ 5).
OrderReport check_order(const CFScheme& scheme, int q);

/// Dimension ν_n of the n-th graded component of the free Lie algebra (n ≤ 12).
long dim_free_lie(int n);
/// Möbius function.
int moebius(int n);
/// Dimension of the span of the trees obtained by permuting subtrees with
/// multiplicities κ.
BigInt c_kappa(const std::vector<int>& kappa);

}  // namespace lgi
