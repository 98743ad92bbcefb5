#include "rpp/instances.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

namespace rpp {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

void check_budget_bounds(int n, std::int64_t budget) {
  if (budget < 0) throw std::invalid_argument("budget must be nonnegative");
  const std::int64_t cells = static_cast<std::int64_t>(n) * n + 1;
  if (budget >= std::numeric_limits<std::int64_t>::max() / cells - 1) {
    throw std::invalid_argument("budget too large: (budget+1)*n^2 must fit in 64 bits");
  }
}

void floyd_warshall(std::vector<std::int64_t>& d, int n, std::int64_t cap) {
  for (int m = 0; m < n; ++m) {
    for (int u = 0; u < n; ++u) {
      const std::int64_t dum = d[static_cast<std::size_t>(u) * n + m];
      if (dum >= cap) continue;  // saturated legs cannot improve anything
      for (int v = 0; v < n; ++v) {
        auto& duv = d[static_cast<std::size_t>(u) * n + v];
        duv = std::min(duv, saturating_add(dum, d[static_cast<std::size_t>(m) * n + v], cap));
      }
    }
  }
}

EeInstance blank_ee(bool directed, int n, std::int64_t budget) {
  EeInstance g;
  g.directed = directed;
  g.n = n;
  g.budget = budget;
  g.weight.assign(static_cast<std::size_t>(n) * n, budget + 1);
  for (int v = 0; v < n; ++v) g.weight[static_cast<std::size_t>(v) * n + v] = 0;
  g.origin.resize(n);
  std::iota(g.origin.begin(), g.origin.end(), 0);
  return g;
}

}  // namespace

std::int64_t saturating_add(std::int64_t a, std::int64_t b, std::int64_t cap) {
  return std::min(a + b, cap);
}

void RppInstance::validate() const {
  if (n < 1) throw std::invalid_argument("instance needs at least one vertex");
  check_budget_bounds(n, budget);
  for (const Arc& a : arcs) {
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n) {
      throw std::invalid_argument("arc endpoint out of range");
    }
    if (a.weight < 0) throw std::invalid_argument("negative arc weight");
  }
  // directed: strong connectivity; undirected: connectivity
  std::vector<std::vector<int>> fwd(n), bwd(n);
  for (const Arc& a : arcs) {
    fwd[a.tail].push_back(a.head);
    bwd[a.head].push_back(a.tail);
    if (!directed) {
      fwd[a.head].push_back(a.tail);
      bwd[a.tail].push_back(a.head);
    }
  }
  auto reaches_all = [&](const std::vector<std::vector<int>>& adj) {
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int cnt = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int u : adj[v]) {
        if (!seen[u]) {
          seen[u] = 1;
          ++cnt;
          q.push(u);
        }
      }
    }
    return cnt == n;
  };
  if (!reaches_all(fwd) || (directed && !reaches_all(bwd))) {
    throw std::invalid_argument(directed ? "directed instance is not strongly connected"
                                         : "undirected instance is not connected");
  }
}

void EeInstance::validate() const {
  if (n < 1) throw std::invalid_argument("instance needs at least one vertex");
  check_budget_bounds(n, budget);
  if (weight.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("weight grid size mismatch");
  }
  if (origin.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("origin map size mismatch");
  }
  std::vector<char> incident(n, 0);
  for (auto [u, v] : required) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("required arc out of range");
    incident[u] = incident[v] = 1;
  }
  for (int v = 0; v < n; ++v) {
    if (!incident[v]) throw std::invalid_argument("isolated vertex (not incident to any required arc)");
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (w(u, v) < 0) throw std::invalid_argument("negative extension weight");
      if (!directed && w(u, v) != w(v, u)) {
        throw std::invalid_argument("undirected weights must be symmetric");
      }
    }
  }
}

void CbmInstance::validate() const {
  if (n < 1) throw std::invalid_argument("instance needs at least one vertex");
  check_budget_bounds(n, budget);
  if (part.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("every vertex needs a class");
  for (int p : part) {
    if (p < 0 || p >= classes) throw std::invalid_argument("vertex class out of range");
  }
  if (bipartite) {
    if (side.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("every vertex needs a side");
    for (char s : side) {
      if (s != 'L' && s != 'R') throw std::invalid_argument("side must be L or R");
    }
  }
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.weight < 0) throw std::invalid_argument("negative edge weight");
    if (bipartite && side[e.u] == side[e.v]) {
      throw std::invalid_argument("bipartite edge must cross the bipartition");
    }
  }
  for (auto [i, j] : requests) {
    if (i < 0 || j < 0 || i >= classes || j >= classes || i == j) {
      throw std::invalid_argument("request classes out of range");
    }
  }
}

std::vector<std::int64_t> balances(const EeInstance& inst) {
  std::vector<std::int64_t> bal(inst.n, 0);
  for (auto [u, v] : inst.required) {
    --bal[u];
    ++bal[v];
  }
  return bal;
}

std::vector<std::int64_t> degrees(const EeInstance& inst) {
  std::vector<std::int64_t> deg(inst.n, 0);
  for (auto [u, v] : inst.required) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

int component_count(const EeInstance& inst) {
  Dsu dsu(inst.n);
  for (auto [u, v] : inst.required) dsu.unite(u, v);
  int k = 0;
  for (int v = 0; v < inst.n; ++v) {
    if (dsu.find(v) == v) ++k;
  }
  return k;
}

EeInstance rpp_to_ee(const RppInstance& inst) {
  const int n = inst.n;
  const std::int64_t cap = inst.budget + 1;
  std::vector<std::int64_t> d(static_cast<std::size_t>(n) * n, cap);
  for (int v = 0; v < n; ++v) d[static_cast<std::size_t>(v) * n + v] = 0;
  for (const Arc& a : inst.arcs) {
    auto relax = [&](int t, int h) {
      auto& cell = d[static_cast<std::size_t>(t) * n + h];
      cell = std::min(cell, std::min(a.weight, cap));
    };
    relax(a.tail, a.head);
    if (!inst.directed) relax(a.head, a.tail);
  }
  floyd_warshall(d, n, cap);

  std::vector<char> incident(n, 0);
  for (const Arc& a : inst.arcs) {
    if (a.required) incident[a.tail] = incident[a.head] = 1;
  }
  std::vector<int> newid(n, -1);
  std::vector<int> kept;
  for (int v = 0; v < n; ++v) {
    if (incident[v]) {
      newid[v] = static_cast<int>(kept.size());
      kept.push_back(v);
    }
  }

  EeInstance out = blank_ee(inst.directed, static_cast<int>(kept.size()), inst.budget);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    out.origin[i] = kept[i];
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (i == j) continue;
      out.weight[i * kept.size() + j] = d[static_cast<std::size_t>(kept[i]) * n + kept[j]];
    }
  }
  for (const Arc& a : inst.arcs) {
    if (a.required) out.required.emplace_back(newid[a.tail], newid[a.head]);
  }
  return out;
}

RppInstance ee_to_rpp(const EeInstance& inst) {
  RppInstance out;
  out.directed = inst.directed;
  out.n = inst.n;
  out.budget = inst.budget;
  for (auto [u, v] : inst.required) {
    out.arcs.push_back({u, v, u == v ? 0 : inst.w(u, v), true});
  }
  for (int u = 0; u < inst.n; ++u) {
    for (int v = inst.directed ? 0 : u + 1; v < inst.n; ++v) {
      if (u == v) continue;
      if (inst.w(u, v) <= inst.budget) out.arcs.push_back({u, v, inst.w(u, v), false});
    }
  }
  return out;
}

EeInstance normalize_balances(const EeInstance& inst) {
  if (!inst.directed) throw std::invalid_argument("normalize_balances: directed instances only");
  const auto bal = balances(inst);
  std::int64_t extra = 0;
  for (std::int64_t b : bal) {
    if (b > 1) extra += b - 1;
    if (b < -1) extra += -b - 1;
  }
  if (extra == 0) return inst;

  const int n2 = inst.n + static_cast<int>(extra);
  std::vector<int> base(n2);
  std::iota(base.begin(), base.begin() + inst.n, 0);
  EeInstance out = blank_ee(true, n2, inst.budget);
  out.required = inst.required;

  int next = inst.n;
  for (int v = 0; v < inst.n; ++v) {
    const std::int64_t b = bal[v];
    for (std::int64_t c = 1; c < (b > 1 ? b : -b); ++c) {
      base[next] = v;
      if (b > 1) {
        out.required.emplace_back(v, next);  // drains one unit of surplus into a +1 companion
      } else {
        out.required.emplace_back(next, v);  // feeds one unit of deficit from a -1 companion
      }
      ++next;
    }
  }

  for (int x = 0; x < n2; ++x) {
    out.origin[x] = inst.origin[base[x]];
    for (int y = 0; y < n2; ++y) {
      if (x == y) continue;
      out.weight[static_cast<std::size_t>(x) * n2 + y] =
          base[x] == base[y] ? 0 : inst.w(base[x], base[y]);
    }
  }
  return out;
}

EeInstance metric_close(EeInstance inst) {
  const std::int64_t cap = inst.cap();
  for (auto& c : inst.weight) c = std::min(c, cap);
  for (int v = 0; v < inst.n; ++v) inst.weight[static_cast<std::size_t>(v) * inst.n + v] = 0;
  floyd_warshall(inst.weight, inst.n, cap);
  return inst;
}

EeInstance no_cycles_transform(const EeInstance& inst) {
  const int n = inst.n;
  const int n2 = 3 * n;
  auto base = [&](int x) { return x < n ? x : (x - n) / 2; };
  auto first_companion = [&](int v) { return n + 2 * v; };
  auto second_companion = [&](int v) { return n + 2 * v + 1; };

  EeInstance out = blank_ee(inst.directed, n2, inst.budget);
  out.required = inst.required;
  for (int v = 0; v < n; ++v) {
    const int c1 = first_companion(v), c2 = second_companion(v);
    if (inst.directed) {
      out.required.emplace_back(v, c1);
      out.required.emplace_back(c1, v);
      out.required.emplace_back(v, c2);
      out.required.emplace_back(c2, v);
      out.required.emplace_back(c1, c2);
    } else {
      out.required.emplace_back(v, c1);
      out.required.emplace_back(v, c2);
    }
  }
  for (int x = 0; x < n2; ++x) {
    out.origin[x] = inst.origin[base(x)];
    for (int y = 0; y < n2; ++y) {
      if (x == y) continue;
      out.weight[static_cast<std::size_t>(x) * n2 + y] =
          base(x) == base(y) ? 0 : inst.w(base(x), base(y));
    }
  }
  return out;
}

NormalizedEe analyze_components(EeInstance inst) {
  NormalizedEe out;
  const int n = inst.n;
  Dsu dsu(n);
  for (auto [u, v] : inst.required) dsu.unite(u, v);
  out.component_of.assign(n, -1);
  std::vector<int> comp_of_root(n, -1);
  int k = 0;
  for (int v = 0; v < n; ++v) {
    const int r = dsu.find(v);
    if (comp_of_root[r] < 0) comp_of_root[r] = k++;
    out.component_of[v] = comp_of_root[r];
  }
  out.k = k;

  if (inst.directed) {
    const auto bal = balances(inst);
    for (int v = 0; v < n; ++v) {
      if (bal[v] < -1 || bal[v] > 1) {
        throw std::logic_error("analyze_components: balance outside {-1,0,1}; normalization missing");
      }
      if (bal[v] == 1) out.surplus.push_back(v);
      if (bal[v] == -1) out.deficit.push_back(v);
    }
    if (out.surplus.size() != out.deficit.size()) {
      throw std::logic_error("analyze_components: imbalance sets differ in size");
    }
  } else {
    const auto deg = degrees(inst);
    std::vector<int> odd_per_comp(k, 0);
    for (int v = 0; v < n; ++v) {
      if (deg[v] % 2 != 0) {
        out.odd.push_back(v);
        ++odd_per_comp[out.component_of[v]];
      }
    }
    for (int c = 0; c < k; ++c) {
      if (odd_per_comp[c] % 2 != 0) {
        throw std::logic_error("analyze_components: odd-degree set of a component has odd size");
      }
    }
  }

  const std::int64_t cap = inst.cap();
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (v == u) continue;
      const std::int64_t duv = inst.w(u, v);
      for (int x = 0; x < n; ++x) {
        if (x == u || x == v) continue;
        if (inst.w(u, x) > saturating_add(duv, inst.w(v, x), cap)) {
          throw std::logic_error("analyze_components: triangle inequality violated; metric closure missing");
        }
      }
    }
  }

  out.g = std::move(inst);
  return out;
}

NormalizedEe normalize_for_sieve(EeInstance inst) {
  if (inst.directed) inst = normalize_balances(inst);
  inst = metric_close(std::move(inst));
  inst = no_cycles_transform(inst);
  return analyze_components(std::move(inst));
}

}  // namespace rpp
