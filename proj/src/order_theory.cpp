#include "lgi/order_theory.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "lgi/errors.hpp"

namespace lgi {

namespace {

struct TreeTable {
  std::vector<std::vector<int>> children;
  std::vector<int> nodes;
  std::map<std::vector<int>, int> index;
  std::vector<int> first_of_size;  // first id with the given node count, size kMaxTreeNodes + 2

  TreeTable() {
    children.push_back({});
    nodes.push_back(1);
    index[{}] = 0;
    first_of_size.assign(kMaxTreeNodes + 2, 0);
    first_of_size[1] = 0;
    first_of_size[2] = 1;
    for (int n = 2; n <= kMaxTreeNodes; ++n) {
      std::vector<std::vector<int>> forests;
      std::vector<int> current;
      extend(n - 1, current, forests);
      std::sort(forests.begin(), forests.end());
      for (auto& f : forests) {
        index[f] = static_cast<int>(children.size());
        children.push_back(f);
        nodes.push_back(n);
      }
      first_of_size[n + 1] = static_cast<int>(children.size());
    }
  }

  // All ordered forests of total size `remaining`, built from trees already in the table.
  void extend(int remaining, std::vector<int>& current, std::vector<std::vector<int>>& out) const {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int id = 0; id < static_cast<int>(children.size()) && nodes[static_cast<std::size_t>(id)] <= remaining; ++id) {
      current.push_back(id);
      extend(remaining - nodes[static_cast<std::size_t>(id)], current, out);
      current.pop_back();
    }
  }
};

const TreeTable& table() {
  static const TreeTable t;
  return t;
}

int lookup(const std::vector<int>& forest) {
  const auto& tab = table();
  const auto it = tab.index.find(forest);
  if (it == tab.index.end()) throw UnsupportedError("tree exceeds the supported size of 9 nodes");
  return it->second;
}

int count_with_nodes_at_most(int nodes) { return table().first_of_size[static_cast<std::size_t>(nodes) + 1]; }

BigInt binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt factorial(long n) {
  BigInt r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

std::vector<OrderedTree> to_trees(const std::vector<int>& ids) {
  std::vector<OrderedTree> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(OrderedTree::from_id(id));
  return out;
}

}  // namespace

// ---------------------------------------------------------------- trees

OrderedTree OrderedTree::from_id(int id) {
  if (id < 0 || id >= static_cast<int>(table().children.size())) throw DomainError("OrderedTree: invalid id");
  return OrderedTree(id);
}

OrderedTree OrderedTree::join(const std::vector<OrderedTree>& forest) {
  std::vector<int> ids;
  int total = 1;
  for (const auto& t : forest) {
    ids.push_back(t.id());
    total += t.nodes();
  }
  if (total > kMaxTreeNodes) throw UnsupportedError("OrderedTree::join: tree exceeds 9 nodes");
  return OrderedTree(lookup(ids));
}

OrderedTree OrderedTree::parse(const std::string& s) {
  std::size_t pos = 0;
  auto fail = [&s]() -> OrderedTree { throw DomainError("OrderedTree::parse: malformed tree '" + s + "'"); };
  std::function<OrderedTree()> rec = [&]() -> OrderedTree {
    if (pos >= s.size() || s[pos] != '[') return fail();
    ++pos;
    std::vector<OrderedTree> kids;
    while (pos < s.size() && s[pos] == '[') kids.push_back(rec());
    if (pos >= s.size() || s[pos] != ']') return fail();
    ++pos;
    return join(kids);
  };
  const OrderedTree t = rec();
  if (pos != s.size()) return fail();
  return t;
}

int OrderedTree::nodes() const { return table().nodes[static_cast<std::size_t>(id_)]; }

std::vector<OrderedTree> OrderedTree::children() const {
  return to_trees(table().children[static_cast<std::size_t>(id_)]);
}

std::string OrderedTree::str() const {
  std::string out = "[";
  for (const auto& c : children()) out += c.str();
  return out + "]";
}

std::vector<OrderedTree> trees_with_nodes(int nodes) {
  if (nodes < 1 || nodes > kMaxTreeNodes) throw UnsupportedError("trees_with_nodes: node count outside 1..9");
  const auto& tab = table();
  std::vector<OrderedTree> out;
  for (int id = tab.first_of_size[static_cast<std::size_t>(nodes)]; id < tab.first_of_size[static_cast<std::size_t>(nodes) + 1]; ++id)
    out.push_back(OrderedTree::from_id(id));
  return out;
}

std::vector<OrderedTree> trees_up_to(int N) {
  if (N < 0 || N > kMaxTreeNodes - 1) throw UnsupportedError("trees_up_to: order outside 0..8");
  std::vector<OrderedTree> out;
  for (int id = 0; id < count_with_nodes_at_most(N + 1); ++id) out.push_back(OrderedTree::from_id(id));
  return out;
}

BigInt alpha(OrderedTree t) {
  BigInt out = 1;
  long partial = 0;
  for (const auto& c : t.children()) {
    partial += c.nodes();
    out *= binomial(partial - 1, c.nodes() - 1) * alpha(c);
  }
  return out;
}

Rational exact_flow_coeff(OrderedTree t) { return Rational(alpha(t)) / Rational(factorial(t.nodes() - 1)); }

OrderedTree concat(OrderedTree u, OrderedTree v) {
  std::vector<OrderedTree> f = u.children();
  for (const auto& c : v.children()) f.push_back(c);
  return OrderedTree::join(f);
}

// ---------------------------------------------------------------- series

BSeriesMap::BSeriesMap(int N) : N_(N) {
  if (N < 0 || N > kMaxTreeNodes - 1) throw UnsupportedError("BSeriesMap: order cap outside 0..8");
  c_.assign(static_cast<std::size_t>(count_with_nodes_at_most(N + 1)), Rational(0));
}

BSeriesMap BSeriesMap::identity(int N) {
  BSeriesMap m(N);
  m.c_[0] = 1;
  return m;
}

BSeriesMap BSeriesMap::exact_flow(int N) {
  BSeriesMap m(N);
  for (int id = 0; id < m.size(); ++id) m.c_[static_cast<std::size_t>(id)] = exact_flow_coeff(OrderedTree::from_id(id));
  return m;
}

const Rational& BSeriesMap::operator[](OrderedTree t) const {
  if (t.id() >= size()) throw DomainError("BSeriesMap: tree above the order cap");
  return c_[static_cast<std::size_t>(t.id())];
}

Rational& BSeriesMap::operator[](OrderedTree t) {
  if (t.id() >= size()) throw DomainError("BSeriesMap: tree above the order cap");
  return c_[static_cast<std::size_t>(t.id())];
}

const Rational& BSeriesMap::at_forest(const std::vector<OrderedTree>& forest) const {
  return (*this)[OrderedTree::join(forest)];
}

namespace {

void require_same_cap(const BSeriesMap& a, const BSeriesMap& b) {
  if (a.order_cap() != b.order_cap()) throw DomainError("B-series with different order caps");
}

}  // namespace

BSeriesMap bseries_compose(const BSeriesMap& a, const BSeriesMap& b) {
  require_same_cap(a, b);
  BSeriesMap out(a.order_cap());
  for (int id = 0; id < out.size(); ++id) {
    const OrderedTree t = OrderedTree::from_id(id);
    const auto kids = t.children();
    Rational sum = 0;
    for (std::size_t k = 0; k <= kids.size(); ++k) {
      const std::vector<OrderedTree> left(kids.begin(), kids.begin() + static_cast<long>(k));
      const std::vector<OrderedTree> right(kids.begin() + static_cast<long>(k), kids.end());
      sum += a.at_forest(right) * b.at_forest(left);
    }
    out[t] = sum;
  }
  return out;
}

BSeriesMap frozen_bseries(const BSeriesMap& a) {
  BSeriesMap out(a.order_cap());
  for (int id = 1; id < out.size(); ++id) {
    const OrderedTree t = OrderedTree::from_id(id);
    const auto kids = t.children();
    if (kids.size() == 1) out[t] = a[kids[0]];
  }
  return out;
}

BSeriesMap exp_bseries(const BSeriesMap& G) {
  if (G[OrderedTree::single()] != 0) throw DomainError("exp_bseries: vector-field series must vanish on the single node");
  BSeriesMap out(G.order_cap());
  out[OrderedTree::single()] = 1;
  for (int id = 1; id < out.size(); ++id) {
    const OrderedTree t = OrderedTree::from_id(id);
    const auto kids = t.children();
    Rational prod = Rational(1) / Rational(factorial(static_cast<long>(kids.size())));
    for (const auto& c : kids) {
      prod *= G.at_forest({c});
      if (prod == 0) break;
    }
    out[t] = prod;
  }
  return out;
}

BSeriesMap cf_scheme_bseries(const CFScheme& scheme, int N) {
  if (N < 0 || N > 6) throw UnsupportedError("cf_scheme_bseries: order cap must be at most 6");
  const int s = scheme.stages();
  std::vector<BSeriesMap> Y;
  Y.reserve(static_cast<std::size_t>(s));
  auto stage_series = [&](const CFStage& st, int r) {
    BSeriesMap y = BSeriesMap::identity(N);
    for (const auto& g : st.groups) {
      BSeriesMap a(N);  // stage value combination Σ_k α^k Y_k, frozen below
      for (int k = 0; k < static_cast<int>(g.size()); ++k) {
        const Rational& coef = g[static_cast<std::size_t>(k)];
        if (coef == 0) continue;
        if (k >= r) throw SchemeError("cf_scheme_bseries: stage " + std::to_string(r + 1) + " references stage " +
                                      std::to_string(k + 1));
        const BSeriesMap& yk = Y[static_cast<std::size_t>(k)];
        for (int id = 0; id < a.size(); ++id) {
          const OrderedTree t = OrderedTree::from_id(id);
          a[t] += coef * yk[t];
        }
      }
      const BSeriesMap b = exp_bseries(frozen_bseries(a));
      y = bseries_compose(b, y);
    }
    return y;
  };
  for (int r = 0; r < s; ++r) Y.push_back(stage_series(scheme.stage(r), r));
  return stage_series(scheme.update(), s);
}

OrderReport check_order(const CFScheme& scheme, int q) {
  if (q < 1 || q > 5) throw UnsupportedError("check_order: order must lie in 1..5");
  const BSeriesMap y = cf_scheme_bseries(scheme, q);
  OrderReport rep;
  rep.scheme = scheme.name();
  rep.order = q;
  for (const auto& t : trees_up_to(q)) {
    const Rational e = exact_flow_coeff(t);
    const Rational c = y[t];
    rep.rows.push_back({t, c, e, c == e});
    if (c != e) rep.pass = false;
  }
  for (int n = 1; n <= q; ++n) rep.independent += dim_free_lie(n);
  return rep;
}

// ---------------------------------------------------------------- counting

int moebius(int n) {
  if (n < 1) throw DomainError("moebius: argument must be positive");
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

long dim_free_lie(int n) {
  if (n < 1 || n > 12) throw UnsupportedError("dim_free_lie: grade outside 1..12");
  BigInt sum = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) sum += moebius(d) * binomial(2 * n / d, n / d);
  return (sum / (2 * n)).convert_to<long>();
}

BigInt c_kappa(const std::vector<int>& kappa) {
  if (kappa.empty()) throw DomainError("c_kappa: empty multiplicity list");
  int total = 0, g = 0;
  for (int k : kappa) {
    if (k < 1) throw DomainError("c_kappa: multiplicities must be positive");
    total += k;
    g = std::gcd(g, k);
  }
  BigInt sum = 0;
  for (int d = 1; d <= g; ++d) {
    if (g % d != 0) continue;
    BigInt term = factorial(total / d);
    for (int k : kappa) term /= factorial(k / d);
    sum += moebius(d) * term;
  }
  return sum / total;
}

}  // namespace lgi
