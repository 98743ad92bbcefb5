#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "rpp/field.hpp"
#include "rpp/instances.hpp"
#include "rpp/tables.hpp"

namespace rpp::oracle {

/// The auxiliary matching multigraph: one edge per (source, component set,
/// target) triple whose path exists, carrying the capped path weight. Perfect
/// matchings correspond to candidate extensions.
struct ExplicitMatchingGraph {
  bool bipartite = true;
  unsigned k = 0;
  std::vector<int> left, right;  // vertex ids; the same odd set twice when undirected
  struct Edge {
    int li = 0, ri = 0;          // indices into left/right
    unsigned comp_set = 0;
    std::int64_t weight = 0;
    std::size_t triple_id = 0;   // index into the PathTable/xbar layout
  };
  std::vector<Edge> edges;
};

ExplicitMatchingGraph build_matching_graph(const NormalizedEe& inst, const PathTable& pt);

/// Exhaustive minimum over perfect matchings whose merged component sets
/// connect everything: the ground truth for the sieve. Returns the optimal
/// extension weight when it is within budget, nothing otherwise.
/// Guards: matching size <= 8, components <= 6.
std::optional<std::int64_t> brute_force_ee(const NormalizedEe& inst);

/// Closed-walk search oracle on the raw RPP instance: Dijkstra over
/// (covered required arcs, position). Independent of every reduction.
/// Guards: |R| <= 14, n <= 12.
std::optional<std::int64_t> walk_oracle_rpp(const RppInstance& inst);

/// Same search on an EE instance, where any vertex pair can be traversed at
/// its extension weight. Guards: |R| <= 14, n <= 12.
std::optional<std::int64_t> walk_oracle_ee(const EeInstance& inst);

/// Minimum weight of a u -> w path visiting exactly the component set I, by
/// enumerating component orders and vertex choices. Guards: |I| <= 6, at most
/// 1e6 combinations.
std::int64_t brute_force_paths(const NormalizedEe& inst, int u, unsigned comp_set, int w);

/// All perfect matchings of the left side onto the right side that cover
/// every request, minimized over weight. Guards: side size <= 7.
std::optional<std::int64_t> brute_force_cbm(const CbmInstance& inst);

/// General-matching variant over pair partitions. Guards: n <= 12.
std::optional<std::int64_t> brute_force_cgm(const CbmInstance& inst);

/// Exact symbolic expansion of the sieve polynomial with integer
/// multiplicities: one term per perfect matching of the matching graph,
/// counted over every anchored component bipartition that generates it.
/// Guards: matching size <= 4, components <= 3.
struct SymbolicQ {
  struct Term {
    std::vector<std::size_t> edges;  // triple ids, sorted
    long long multiplicity = 0;      // pre-cancellation count
    std::int64_t weight = 0;         // z-degree
    int rho = 0;                     // components of G + EP(M)
    bool survives = false;           // odd multiplicity
  };
  std::vector<Term> terms;
};

SymbolicQ symbolic_Q(const NormalizedEe& inst, const PathTable& pt);

/// Evaluates the surviving terms at a concrete instantiation; must agree with
/// the production evaluation engine.
Fe eval_symbolic(const Field& f, const SymbolicQ& q, const PathTable& pt, std::span<const Fe> xbar,
                 Fe z);

}  // namespace rpp::oracle
