#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "rpp/generator.hpp"
#include "rpp/oracle.hpp"
#include "rpp/tables.hpp"

using namespace rpp;
using namespace rpp::oracle;

namespace {

EeInstance small_ee(bool directed, int n, std::int64_t budget,
                    std::vector<std::pair<int, int>> required,
                    std::vector<std::tuple<int, int, std::int64_t>> weights) {
  EeInstance g;
  g.directed = directed;
  g.n = n;
  g.budget = budget;
  g.required = std::move(required);
  g.weight.assign(static_cast<std::size_t>(n) * n, budget + 1);
  for (int v = 0; v < n; ++v) g.weight[static_cast<std::size_t>(v) * n + v] = 0;
  g.origin.resize(n);
  for (int v = 0; v < n; ++v) g.origin[v] = v;
  for (auto [u, v, c] : weights) g.set_w(u, v, c);
  return g;
}

CbmInstance crossing_cbm() {
  // parts V1 = {u1, w1}, V2 = {u2, w2}; straight matching costs 0 but only
  // the crossing matching satisfies the request {1,2} at weight 2
  CbmInstance inst;
  inst.bipartite = true;
  inst.n = 4;
  inst.classes = 2;
  inst.part = {0, 1, 0, 1};  // u1, u2, w1, w2
  inst.side = {'L', 'L', 'R', 'R'};
  inst.edges = {{0, 2, 0}, {1, 3, 0}, {0, 3, 1}, {1, 2, 1}};
  inst.requests = {{0, 1}};
  inst.budget = 2;
  return inst;
}

}  // namespace

TEST_CASE("walk oracle on hand instances") {
  // required Hamiltonian cycle: already a closed walk, zero extra weight
  RppInstance cyc;
  cyc.directed = true;
  cyc.n = 3;
  cyc.budget = 0;
  cyc.arcs = {{0, 1, 2, true}, {1, 2, 2, true}, {2, 0, 2, true}};
  CHECK(walk_oracle_rpp(cyc) == 0);

  // two-arcs instance over the complete unit digraph: optimum 2
  RppInstance two;
  two.directed = true;
  two.n = 4;
  two.budget = 2;
  two.arcs = {{0, 1, 1, true}, {2, 3, 1, true}};
  for (int u = 0; u < 4; ++u) {
    for (int v = 0; v < 4; ++v) {
      if (u != v && !(u == 0 && v == 1) && !(u == 2 && v == 3)) two.arcs.push_back({u, v, 1, false});
    }
  }
  CHECK(walk_oracle_rpp(two) == 2);
  two.budget = 1;
  CHECK(walk_oracle_rpp(two) == std::nullopt);

  // undirected: two disjoint unit edges, all pairs weight 1
  RppInstance un;
  un.directed = false;
  un.n = 4;
  un.budget = 2;
  un.arcs = {{0, 1, 1, true}, {2, 3, 1, true}};
  for (int u = 0; u < 4; ++u) {
    for (int v = u + 1; v < 4; ++v) {
      if (!(u == 0 && v == 1) && !(u == 2 && v == 3)) un.arcs.push_back({u, v, 1, false});
    }
  }
  CHECK(walk_oracle_rpp(un) == 2);
  un.budget = 1;
  CHECK(walk_oracle_rpp(un) == std::nullopt);

  RppInstance big;
  big.n = 20;
  CHECK_THROWS_AS(walk_oracle_rpp(big), std::invalid_argument);
}

TEST_CASE("matching graph enumerates one edge per valid triple") {
  EeInstance g = small_ee(true, 2, 3, {{0, 1}}, {{1, 0, 1}});
  const NormalizedEe norm = normalize_for_sieve(g);
  const PathTable pt = compute_path_table(norm);
  const ExplicitMatchingGraph mg = build_matching_graph(norm, pt);
  CHECK(mg.bipartite);
  CHECK(mg.left.size() == 3);  // 1 surplus + one companion per original vertex
  CHECK(mg.left.size() == mg.right.size());
  for (const auto& e : mg.edges) {
    CHECK(e.weight >= 0);
    CHECK(e.weight <= g.budget + 1);
    const unsigned cu = static_cast<unsigned>(norm.component_of[mg.left[e.li]]);
    const unsigned cw = static_cast<unsigned>(norm.component_of[mg.right[e.ri]]);
    CHECK((e.comp_set >> cu & 1) == 1);
    CHECK((e.comp_set >> cw & 1) == 1);
  }
}

TEST_CASE("brute_force_ee agrees with the walk oracle") {
  int checked = 0;
  for (std::uint64_t seed = 1; checked < 120; ++seed) {
    GenParams p;
    p.kind = seed % 2 ? Kind::Ee : Kind::Uee;
    p.n = 2 + static_cast<int>(seed % 3);
    p.k = 1 + static_cast<int>(seed % 2);
    p.budget = static_cast<std::int64_t>(seed % 8);
    p.density = 0.7;
    p.weight_max = 3;
    p.seed = seed * 31;
    if (p.k > p.n) continue;
    const auto ee = std::get<EeInstance>(generate_instance(p));
    if (ee.required.size() > 14 || ee.n > 4) continue;
    ++checked;
    const auto walk = walk_oracle_ee(ee);
    const auto matching = brute_force_ee(normalize_for_sieve(ee));
    CHECK(walk == matching);
  }
}

TEST_CASE("brute_force_ee hand cases") {
  // already Eulerian and connected: empty extension
  EeInstance euler = small_ee(true, 2, 0, {{0, 1}, {1, 0}}, {});
  CHECK(brute_force_ee(normalize_for_sieve(euler)) == 0);

  // two components, every cross pair at the sentinel: infeasible
  EeInstance split = small_ee(true, 4, 1, {{0, 1}, {1, 0}, {2, 3}, {3, 2}}, {});
  CHECK(brute_force_ee(normalize_for_sieve(split)) == std::nullopt);

  // size guard
  GenParams p;
  p.kind = Kind::Ee;
  p.n = 12;
  p.k = 2;
  p.budget = 3;
  p.seed = 5;
  const auto big = std::get<EeInstance>(generate_instance(p));
  CHECK_THROWS_AS(brute_force_ee(normalize_for_sieve(big)), std::invalid_argument);
}

TEST_CASE("brute_force_paths handles shared endpoint components") {
  EeInstance g = small_ee(true, 4, 9, {{0, 1}, {1, 0}, {2, 3}},
                          {{0, 2, 1}, {2, 0, 1}, {1, 3, 1}, {3, 1, 1}, {0, 1, 2},
                           {1, 0, 2}, {2, 3, 1}, {3, 2, 1}, {0, 3, 2}, {3, 0, 2},
                           {1, 2, 2}, {2, 1, 2}});
  const NormalizedEe norm = normalize_for_sieve(g);
  const PathTable pt = compute_path_table(norm);
  // same-component pair must tour the other component and come back
  int u = -1, w = -1;
  for (int s : norm.surplus) {
    for (int t : norm.deficit) {
      if (norm.component_of[s] == norm.component_of[t] && s != t) {
        u = s;
        w = t;
      }
    }
  }
  REQUIRE(u >= 0);
  const unsigned both = 0b11;
  const std::int64_t direct = norm.g.w(u, w);
  const std::int64_t tour = brute_force_paths(norm, u, both, w);
  CHECK(tour >= direct);  // extra component can only add weight under the metric
  std::int64_t best = pt.cap;
  for (int v = 0; v < norm.g.n; ++v) {
    if (norm.component_of[v] == (norm.component_of[u] ^ 1)) {
      best = std::min(best, saturating_add(saturating_add(norm.g.w(u, v), norm.g.w(v, w), pt.cap),
                                           0, pt.cap));
    }
  }
  CHECK(tour == best);
}

TEST_CASE("symbolic_Q multiplicities follow the component count") {
  // two 2-cycles: any perfect matching of the companions only merges nothing,
  // rho = 2, multiplicity 2; matchings using a cross path survive
  EeInstance g = small_ee(true, 4, 4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}},
                          {{0, 2, 1}, {2, 0, 1}, {1, 3, 1}, {3, 1, 1}, {0, 3, 1},
                           {3, 0, 1}, {1, 2, 1}, {2, 1, 1}, {0, 1, 1}, {1, 0, 1},
                           {2, 3, 1}, {3, 2, 1}});
  const NormalizedEe norm = normalize_for_sieve(g);
  REQUIRE(norm.k == 2);
  REQUIRE(norm.surplus.size() == 4);  // companions only
  const PathTable pt = compute_path_table(norm);
  const SymbolicQ q = symbolic_Q(norm, pt);
  REQUIRE(!q.terms.empty());
  bool saw_disconnected = false, saw_connected = false;
  for (const auto& term : q.terms) {
    CHECK(term.multiplicity == (1LL << (term.rho - 1)));
    CHECK(term.survives == (term.rho == 1));
    saw_disconnected = saw_disconnected || term.rho == 2;
    saw_connected = saw_connected || term.rho == 1;
  }
  CHECK(saw_disconnected);
  CHECK(saw_connected);

  // the surviving minimum weight equals the oracle optimum
  std::int64_t best = -1;
  for (const auto& term : q.terms) {
    if (term.survives && term.weight <= g.budget && (best < 0 || term.weight < best)) {
      best = term.weight;
    }
  }
  const auto oracle_opt = brute_force_ee(norm);
  REQUIRE(oracle_opt.has_value());
  CHECK(best == *oracle_opt);
}

TEST_CASE("symbolic_Q survivors equal connected matchings on random tiny instances") {
  int checked = 0;
  for (std::uint64_t seed = 1; checked < 25; ++seed) {
    GenParams p;
    p.kind = seed % 2 ? Kind::Ee : Kind::Uee;
    p.n = 2 + static_cast<int>(seed % 2);
    p.k = 1 + static_cast<int>(seed % 2);
    p.budget = 2 + static_cast<std::int64_t>(seed % 4);
    p.density = 0.8;
    p.weight_max = 2;
    p.seed = seed * 17;
    if (p.k > p.n) continue;
    const auto ee = std::get<EeInstance>(generate_instance(p));
    const NormalizedEe norm = normalize_for_sieve(ee);
    const std::size_t m = ee.directed ? norm.surplus.size() : norm.odd.size() / 2;
    if (m > 4 || norm.k > 3) continue;
    ++checked;
    const PathTable pt = compute_path_table(norm);
    const SymbolicQ q = symbolic_Q(norm, pt);
    std::int64_t best = -1;
    for (const auto& term : q.terms) {
      CHECK(term.multiplicity == (1LL << (term.rho - 1)));
      CHECK(term.survives == (term.rho == 1));
      if (term.survives && term.weight <= ee.budget && (best < 0 || term.weight < best)) {
        best = term.weight;
      }
    }
    const auto oracle_opt = brute_force_ee(norm);
    if (oracle_opt) {
      CHECK(best == *oracle_opt);
    } else {
      CHECK(best == -1);
    }
  }
}

TEST_CASE("brute_force_cbm examples") {
  const CbmInstance inst = crossing_cbm();
  CHECK(brute_force_cbm(inst) == 2);

  CbmInstance no_requests = inst;
  no_requests.requests.clear();
  CHECK(brute_force_cbm(no_requests) == 0);  // plain assignment optimum

  CbmInstance impossible = inst;
  impossible.edges = {{0, 2, 0}, {1, 3, 0}};  // no class-crossing edge at all
  CHECK(brute_force_cbm(impossible) == std::nullopt);
}

TEST_CASE("brute_force_cgm examples") {
  // 4-cycle, no requests: two perfect matchings, the cheaper wins
  CbmInstance cyc;
  cyc.bipartite = false;
  cyc.n = 4;
  cyc.classes = 1;
  cyc.part = {0, 0, 0, 0};
  cyc.edges = {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}, {3, 0, 2}};
  cyc.budget = 4;
  CHECK(brute_force_cgm(cyc) == 2);  // edges {0,1} and {2,3}

  // triangle with a pendant: exactly one perfect matching
  CbmInstance tri;
  tri.bipartite = false;
  tri.n = 4;
  tri.classes = 1;
  tri.part = {0, 0, 0, 0};
  tri.edges = {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {2, 3, 5}};
  tri.budget = 9;
  CHECK(brute_force_cgm(tri) == 6);  // {0,1} + {2,3}

  CbmInstance odd;
  odd.bipartite = false;
  odd.n = 3;
  odd.classes = 1;
  odd.part = {0, 0, 0};
  CHECK(brute_force_cgm(odd) == std::nullopt);
}
