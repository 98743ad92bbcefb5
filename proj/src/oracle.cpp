#include "rpp/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace rpp::oracle {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// partitions of [k] encoded in 3-bit lanes, canonical first-occurrence labels
std::uint32_t identity_partition(unsigned k) {
  std::uint32_t code = 0;
  for (unsigned c = 0; c < k; ++c) code |= c << (3 * c);
  return code;
}

std::uint32_t merge_partition(std::uint32_t code, unsigned k, unsigned comp_set) {
  int label[8];
  for (unsigned c = 0; c < k; ++c) label[c] = static_cast<int>(code >> (3 * c)) & 7;
  int target = -1;
  for (unsigned c = 0; c < k; ++c) {
    if (comp_set >> c & 1) {
      if (target < 0) {
        target = label[c];
      } else if (label[c] != target) {
        const int from = label[c];
        for (unsigned c2 = 0; c2 < k; ++c2) {
          if (label[c2] == from) label[c2] = target;
        }
      }
    }
  }
  int remap[8];
  std::fill(remap, remap + 8, -1);
  int next = 0;
  std::uint32_t out = 0;
  for (unsigned c = 0; c < k; ++c) {
    if (remap[label[c]] < 0) remap[label[c]] = next++;
    out |= static_cast<std::uint32_t>(remap[label[c]]) << (3 * c);
  }
  return out;
}

std::optional<std::int64_t> run_walk_search(int n, std::int64_t budget,
                                            const std::vector<std::array<std::int64_t, 4>>& moves,
                                            const std::vector<int>& starts, int covered_bits) {
  // moves: {from, to, cost, required bit or -1}
  const std::size_t full = (std::size_t{1} << covered_bits) - 1;
  std::vector<std::vector<std::size_t>> moves_from(n);
  for (std::size_t i = 0; i < moves.size(); ++i) {
    moves_from[static_cast<int>(moves[i][0])].push_back(i);
  }

  std::int64_t best = kInf;
  std::vector<std::int64_t> dist((full + 1) * n);
  using Item = std::pair<std::int64_t, std::size_t>;
  for (int s : starts) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s] = 0;
    heap.emplace(0, static_cast<std::size_t>(s));
    while (!heap.empty()) {
      auto [w, state] = heap.top();
      heap.pop();
      if (w != dist[state]) continue;
      if (w > budget) break;
      const std::size_t mask = state / n;
      const int v = static_cast<int>(state % n);
      if (mask == full && v == s) break;  // goal popped; Dijkstra order makes it optimal
      for (std::size_t mi : moves_from[v]) {
        const auto& mv = moves[mi];
        std::size_t nmask = mask;
        std::int64_t cost = mv[2];
        if (mv[3] >= 0) {
          if (mask >> mv[3] & 1) continue;  // free traversal already spent
          nmask = mask | (std::size_t{1} << mv[3]);
          cost = 0;
        }
        const std::int64_t nw = w + cost;
        if (nw > budget) continue;
        const std::size_t nstate = nmask * n + static_cast<std::size_t>(mv[1]);
        if (nw < dist[nstate]) {
          dist[nstate] = nw;
          heap.emplace(nw, nstate);
        }
      }
    }
    best = std::min(best, dist[full * n + s]);
  }
  if (best > budget) return std::nullopt;
  return best;
}

}  // namespace

ExplicitMatchingGraph build_matching_graph(const NormalizedEe& inst, const PathTable& pt) {
  ExplicitMatchingGraph g;
  g.bipartite = inst.g.directed;
  g.k = pt.k;
  g.left = pt.sources;
  g.right = pt.targets;
  const std::size_t S = pt.sources.size(), T = pt.targets.size();
  for (std::size_t set = 0; set < pt.subset_count(); ++set) {
    for (std::size_t si = 0; si < S; ++si) {
      for (std::size_t ti = 0; ti < T; ++ti) {
        if (!g.bipartite && pt.targets[ti] <= pt.sources[si]) continue;  // one edge per pair
        const std::int64_t d = pt.at(si, static_cast<unsigned>(set), ti);
        if (d < 0) continue;
        g.edges.push_back({static_cast<int>(si), static_cast<int>(ti),
                           static_cast<unsigned>(set), d, set * S * T + si * T + ti});
      }
    }
  }
  return g;
}

std::optional<std::int64_t> brute_force_ee(const NormalizedEe& inst) {
  const std::size_t matching_size =
      inst.g.directed ? inst.surplus.size() : inst.odd.size() / 2;
  if (matching_size > 8 || inst.k > 6) {
    throw std::invalid_argument("brute_force_ee: instance exceeds oracle size guards");
  }
  if (matching_size == 0) return inst.k == 1 ? std::optional<std::int64_t>(0) : std::nullopt;

  const PathTable pt = compute_path_table(inst);
  const ExplicitMatchingGraph g = build_matching_graph(inst, pt);
  const unsigned k = g.k;
  const std::int64_t budget = inst.g.budget;

  // states: (matched mask, component partition) -> min weight; masks ascend
  std::map<std::uint64_t, std::int64_t> dist;
  auto key = [](std::size_t mask, std::uint32_t part) {
    return (static_cast<std::uint64_t>(mask) << 24) | part;
  };
  dist[key(0, identity_partition(k))] = 0;

  if (g.bipartite) {
    std::vector<std::vector<ExplicitMatchingGraph::Edge>> by_left(g.left.size());
    for (const auto& e : g.edges) by_left[e.li].push_back(e);
    const std::size_t m = g.left.size();
    for (auto it = dist.begin(); it != dist.end(); ++it) {
      const std::size_t mask = it->first >> 24;
      const auto part = static_cast<std::uint32_t>(it->first & 0xFFFFFF);
      const std::size_t li = static_cast<std::size_t>(std::popcount(mask));
      if (li == m) continue;
      for (const auto& e : by_left[li]) {
        if (mask >> e.ri & 1) continue;
        const std::int64_t nw = it->second + e.weight;
        if (nw > budget) continue;
        const std::uint64_t nk = key(mask | (std::size_t{1} << e.ri), merge_partition(part, k, e.comp_set));
        auto [pos, inserted] = dist.emplace(nk, nw);
        if (!inserted && nw < pos->second) pos->second = nw;
      }
    }
    const std::size_t full = (std::size_t{1} << m) - 1;
    auto hit = dist.find(key(full, 0));  // canonical single-group code is 0
    if (hit == dist.end()) return std::nullopt;
    return hit->second;
  }

  // undirected: always match the lowest unmatched odd vertex
  const std::size_t q = g.left.size();
  std::vector<std::vector<ExplicitMatchingGraph::Edge>> by_pair(q * q);
  for (const auto& e : g.edges) by_pair[static_cast<std::size_t>(e.li) * q + e.ri].push_back(e);
  for (auto it = dist.begin(); it != dist.end(); ++it) {
    const std::size_t mask = it->first >> 24;
    const auto part = static_cast<std::uint32_t>(it->first & 0xFFFFFF);
    if (mask == (std::size_t{1} << q) - 1) continue;
    std::size_t v = 0;
    while (mask >> v & 1) ++v;
    for (std::size_t w = v + 1; w < q; ++w) {
      if (mask >> w & 1) continue;
      for (const auto& e : by_pair[v * q + w]) {
        const std::int64_t nw = it->second + e.weight;
        if (nw > budget) continue;
        const std::size_t nmask = mask | (std::size_t{1} << v) | (std::size_t{1} << w);
        const std::uint64_t nk = key(nmask, merge_partition(part, k, e.comp_set));
        auto [pos, inserted] = dist.emplace(nk, nw);
        if (!inserted && nw < pos->second) pos->second = nw;
      }
    }
  }
  auto hit = dist.find(key((std::size_t{1} << q) - 1, 0));
  if (hit == dist.end()) return std::nullopt;
  return hit->second;
}

std::optional<std::int64_t> walk_oracle_rpp(const RppInstance& inst) {
  std::vector<std::size_t> req_arcs;
  for (std::size_t i = 0; i < inst.arcs.size(); ++i) {
    if (inst.arcs[i].required) req_arcs.push_back(i);
  }
  if (req_arcs.size() > 14 || inst.n > 12) {
    throw std::invalid_argument("walk_oracle_rpp: instance exceeds oracle size guards");
  }
  if (req_arcs.empty()) return 0;

  std::vector<std::array<std::int64_t, 4>> moves;
  for (std::size_t i = 0; i < inst.arcs.size(); ++i) {
    const Arc& a = inst.arcs[i];
    int bit = -1;
    if (a.required) {
      bit = static_cast<int>(std::find(req_arcs.begin(), req_arcs.end(), i) - req_arcs.begin());
    }
    moves.push_back({a.tail, a.head, a.weight, bit});
    moves.push_back({a.tail, a.head, a.weight, -1});  // paid re-traversal
    if (!inst.directed) {
      moves.push_back({a.head, a.tail, a.weight, bit});
      moves.push_back({a.head, a.tail, a.weight, -1});
    }
  }
  std::vector<int> starts;
  for (std::size_t i : req_arcs) {
    starts.push_back(inst.arcs[i].tail);
    starts.push_back(inst.arcs[i].head);
  }
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  return run_walk_search(inst.n, inst.budget, moves, starts, static_cast<int>(req_arcs.size()));
}

std::optional<std::int64_t> walk_oracle_ee(const EeInstance& inst) {
  if (inst.required.size() > 14 || inst.n > 12) {
    throw std::invalid_argument("walk_oracle_ee: instance exceeds oracle size guards");
  }
  if (inst.required.empty()) return 0;

  std::vector<std::array<std::int64_t, 4>> moves;
  for (std::size_t i = 0; i < inst.required.size(); ++i) {
    auto [u, v] = inst.required[i];
    moves.push_back({u, v, 0, static_cast<int>(i)});
    if (!inst.directed) moves.push_back({v, u, 0, static_cast<int>(i)});
  }
  for (int u = 0; u < inst.n; ++u) {
    for (int v = 0; v < inst.n; ++v) {
      if (u == v) continue;
      if (inst.w(u, v) <= inst.budget) moves.push_back({u, v, inst.w(u, v), -1});
    }
  }
  std::vector<int> starts;
  for (auto [u, v] : inst.required) {
    starts.push_back(u);
    starts.push_back(v);
  }
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  return run_walk_search(inst.n, inst.budget, moves, starts,
                         static_cast<int>(inst.required.size()));
}

std::int64_t brute_force_paths(const NormalizedEe& inst, int u, unsigned comp_set, int w) {
  const unsigned k = static_cast<unsigned>(inst.k);
  if (std::popcount(comp_set) > 6) {
    throw std::invalid_argument("brute_force_paths: component set exceeds oracle size guards");
  }
  const unsigned cu = static_cast<unsigned>(inst.component_of[u]);
  const unsigned cw = static_cast<unsigned>(inst.component_of[w]);
  if (!(comp_set >> cu & 1) || !(comp_set >> cw & 1) || comp_set >= (1u << k)) {
    throw std::invalid_argument("brute_force_paths: endpoints outside the component set");
  }

  std::vector<std::vector<int>> comp_vertices(k);
  for (int v = 0; v < inst.g.n; ++v) comp_vertices[inst.component_of[v]].push_back(v);

  // middle components are toured once each, one vertex per component; the
  // endpoint components are covered by u and w themselves
  std::vector<unsigned> middle;
  for (unsigned c = 0; c < k; ++c) {
    if ((comp_set >> c & 1) && c != cu && c != cw) middle.push_back(c);
  }

  std::size_t combos = 1;
  for (unsigned c : middle) combos *= comp_vertices[c].size();
  if (combos > 1'000'000) throw std::invalid_argument("brute_force_paths: too many combinations");

  std::int64_t best = inst.g.cap();
  std::sort(middle.begin(), middle.end());
  do {
    // choose one vertex per middle component, in this visiting order
    std::vector<std::size_t> choice(middle.size(), 0);
    while (true) {
      std::int64_t total = 0;
      int prev = u;
      for (std::size_t i = 0; i < middle.size(); ++i) {
        const int v = comp_vertices[middle[i]][choice[i]];
        total = saturating_add(total, inst.g.w(prev, v), inst.g.cap());
        prev = v;
      }
      total = saturating_add(total, inst.g.w(prev, w), inst.g.cap());
      best = std::min(best, total);
      std::size_t pos = 0;
      while (pos < choice.size()) {
        if (++choice[pos] < comp_vertices[middle[pos]].size()) break;
        choice[pos++] = 0;
      }
      if (pos == choice.size()) break;
    }
  } while (std::next_permutation(middle.begin(), middle.end()));
  return best;
}

namespace {

int request_slot(const CbmInstance& inst, int u, int v) {
  const auto key = std::minmax(inst.part[u], inst.part[v]);
  for (std::size_t r = 0; r < inst.requests.size(); ++r) {
    if (inst.requests[r] == std::pair<int, int>(key.first, key.second)) return static_cast<int>(r);
  }
  return -1;
}

}  // namespace

std::optional<std::int64_t> brute_force_cbm(const CbmInstance& inst) {
  std::vector<int> left, right;
  for (int v = 0; v < inst.n; ++v) (inst.side[v] == 'L' ? left : right).push_back(v);
  if (left.size() != right.size()) return std::nullopt;
  if (left.size() > 7) throw std::invalid_argument("brute_force_cbm: side exceeds oracle size guards");

  const std::size_t s = left.size();
  std::vector<std::int64_t> wmin(static_cast<std::size_t>(inst.n) * inst.n, kInf);
  for (const auto& e : inst.edges) {
    auto& cell = wmin[static_cast<std::size_t>(e.u) * inst.n + e.v];
    cell = std::min(cell, e.weight);
    wmin[static_cast<std::size_t>(e.v) * inst.n + e.u] = cell;
  }

  const std::uint32_t all_requests = (1u << inst.requests.size()) - 1;
  std::vector<std::size_t> perm(s);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t best = kInf;
  do {
    std::int64_t total = 0;
    std::uint32_t covered = 0;
    bool ok = true;
    for (std::size_t i = 0; i < s && ok; ++i) {
      const int u = left[i], v = right[perm[i]];
      const std::int64_t wc = wmin[static_cast<std::size_t>(u) * inst.n + v];
      if (wc >= kInf) {
        ok = false;
        break;
      }
      total += wc;
      const int slot = request_slot(inst, u, v);
      if (slot >= 0) covered |= 1u << slot;
    }
    if (ok && covered == all_requests) best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (best >= kInf) return std::nullopt;
  return best;
}

std::optional<std::int64_t> brute_force_cgm(const CbmInstance& inst) {
  if (inst.n > 12) throw std::invalid_argument("brute_force_cgm: order exceeds oracle size guards");
  if (inst.n % 2 != 0) return std::nullopt;

  std::vector<std::int64_t> wmin(static_cast<std::size_t>(inst.n) * inst.n, kInf);
  for (const auto& e : inst.edges) {
    auto& cell = wmin[static_cast<std::size_t>(e.u) * inst.n + e.v];
    cell = std::min(cell, e.weight);
    wmin[static_cast<std::size_t>(e.v) * inst.n + e.u] = cell;
  }

  const std::uint32_t all_requests = (1u << inst.requests.size()) - 1;
  std::int64_t best = kInf;
  std::vector<int> unmatched(inst.n);
  std::iota(unmatched.begin(), unmatched.end(), 0);
  auto rec = [&](auto&& self, std::vector<int>& free_ids, std::int64_t total,
                 std::uint32_t covered) -> void {
    if (free_ids.empty()) {
      if (covered == all_requests) best = std::min(best, total);
      return;
    }
    const int u = free_ids.front();
    for (std::size_t t = 1; t < free_ids.size(); ++t) {
      const int v = free_ids[t];
      const std::int64_t wc = wmin[static_cast<std::size_t>(u) * inst.n + v];
      if (wc >= kInf) continue;
      std::vector<int> rest;
      rest.reserve(free_ids.size() - 2);
      for (std::size_t i = 1; i < free_ids.size(); ++i) {
        if (i != t) rest.push_back(free_ids[i]);
      }
      const int slot = request_slot(inst, u, v);
      self(self, rest, total + wc, slot >= 0 ? covered | (1u << slot) : covered);
    }
  };
  rec(rec, unmatched, 0, 0);
  if (best >= kInf) return std::nullopt;
  return best;
}

namespace {

// all perfect matchings of the block restricted to a component subset
std::vector<std::vector<std::size_t>> block_matchings(const ExplicitMatchingGraph& g,
                                                      const NormalizedEe& inst, unsigned set) {
  std::vector<int> rows, cols;
  for (std::size_t i = 0; i < g.left.size(); ++i) {
    if (set >> inst.component_of[g.left[i]] & 1) rows.push_back(static_cast<int>(i));
  }
  for (std::size_t j = 0; j < g.right.size(); ++j) {
    if (set >> inst.component_of[g.right[j]] & 1) cols.push_back(static_cast<int>(j));
  }

  std::vector<std::vector<std::size_t>> result;
  if (g.bipartite) {
    if (rows.size() != cols.size()) return result;
    std::vector<char> used(g.right.size(), 0);
    std::vector<std::size_t> chosen;
    auto rec = [&](auto&& self, std::size_t ri) -> void {
      if (ri == rows.size()) {
        result.push_back(chosen);
        return;
      }
      for (const auto& e : g.edges) {
        if (e.li != rows[ri] || used[e.ri] || (e.comp_set & ~set)) continue;
        used[e.ri] = 1;
        chosen.push_back(e.triple_id);
        self(self, ri + 1);
        chosen.pop_back();
        used[e.ri] = 0;
      }
    };
    rec(rec, 0);
    return result;
  }

  if (rows.size() % 2 != 0) return result;
  std::vector<char> used(g.left.size(), 0);
  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self) -> void {
    int v = -1;
    for (int r : rows) {
      if (!used[r]) {
        v = r;
        break;
      }
    }
    if (v < 0) {
      result.push_back(chosen);
      return;
    }
    used[v] = 1;
    for (const auto& e : g.edges) {
      if (e.li != v || used[e.ri] || (e.comp_set & ~set)) continue;
      used[e.ri] = 1;
      chosen.push_back(e.triple_id);
      self(self);
      chosen.pop_back();
      used[e.ri] = 0;
    }
    used[v] = 0;
  };
  rec(rec);
  return result;
}

}  // namespace

SymbolicQ symbolic_Q(const NormalizedEe& inst, const PathTable& pt) {
  const std::size_t matching_size =
      inst.g.directed ? inst.surplus.size() : inst.odd.size() / 2;
  if (matching_size > 4 || inst.k > 3) {
    throw std::invalid_argument("symbolic_Q: instance exceeds oracle size guards");
  }
  const ExplicitMatchingGraph g = build_matching_graph(inst, pt);
  const unsigned k = g.k;
  const unsigned full = static_cast<unsigned>((1u << k) - 1);
  const unsigned anchored = full & ~1u;

  std::map<std::vector<std::size_t>, long long> counts;
  for (unsigned i = anchored;; i = (i - 1) & anchored) {
    const auto side = block_matchings(g, inst, i);
    const auto rest = block_matchings(g, inst, full ^ i);
    for (const auto& m1 : side) {
      for (const auto& m2 : rest) {
        std::vector<std::size_t> key = m1;
        key.insert(key.end(), m2.begin(), m2.end());
        std::sort(key.begin(), key.end());
        ++counts[key];
      }
    }
    if (i == 0) break;
  }

  std::vector<std::int64_t> edge_weight;
  std::vector<unsigned> edge_set;
  {
    const std::size_t total = pt.d.size();
    edge_weight.assign(total, -1);
    edge_set.assign(total, 0);
    for (const auto& e : g.edges) {
      edge_weight[e.triple_id] = e.weight;
      edge_set[e.triple_id] = e.comp_set;
    }
  }

  SymbolicQ q;
  for (const auto& [edges, mult] : counts) {
    SymbolicQ::Term term;
    term.edges = edges;
    term.multiplicity = mult;
    unsigned merged[8];
    for (unsigned c = 0; c < k; ++c) merged[c] = c;
    auto root = [&](unsigned c) {
      while (merged[c] != c) c = merged[c] = merged[merged[c]];
      return c;
    };
    for (std::size_t e : edges) {
      term.weight += edge_weight[e];
      const unsigned set = edge_set[e];
      int first = -1;
      for (unsigned c = 0; c < k; ++c) {
        if (!(set >> c & 1)) continue;
        if (first < 0) {
          first = static_cast<int>(c);
        } else {
          merged[root(static_cast<unsigned>(first))] = root(c);
        }
      }
    }
    for (unsigned c = 0; c < k; ++c) {
      if (root(c) == c) ++term.rho;
    }
    term.survives = term.multiplicity % 2 != 0;
    q.terms.push_back(std::move(term));
  }
  return q;
}

Fe eval_symbolic(const Field& f, const SymbolicQ& q, const PathTable& pt, std::span<const Fe> xbar,
                 Fe z) {
  Fe total = Field::zero();
  for (const auto& term : q.terms) {
    if (!term.survives) continue;
    Fe prod = f.pow(z, static_cast<std::uint64_t>(term.weight));
    for (std::size_t e : term.edges) prod = f.mul(prod, xbar[e]);
    total = f.add(total, prod);
  }
  (void)pt;
  return total;
}

}  // namespace rpp::oracle
