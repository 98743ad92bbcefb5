#pragma once

#include <span>
#include <vector>

#include "rpp/field.hpp"
#include "rpp/instances.hpp"

namespace rpp {

/// Component-constrained shortest-path weights d(u,I,w): the minimum weight
/// of a path from u to w that touches exactly the component set I, one vertex
/// per component (endpoints share a component when comp(u) = comp(w)), capped
/// at budget+1. Sources are the surplus side (directed) or the odd set
/// (undirected); targets the deficit side or again the odd set. Entry -1
/// marks subsets that miss an endpoint's component (and the diagonal in the
/// undirected case).
struct PathTable {
  unsigned k = 0;
  std::vector<int> sources;  // vertex ids, ascending
  std::vector<int> targets;
  std::vector<std::int64_t> d;  // [subset * pair_count + si * targets + ti]
  std::int64_t cap = 0;

  std::size_t pair_count() const { return sources.size() * targets.size(); }
  std::size_t subset_count() const { return std::size_t{1} << k; }
  std::int64_t at(std::size_t si, unsigned subset, std::size_t ti) const {
    return d[static_cast<std::size_t>(subset) * pair_count() + si * targets.size() + ti];
  }
};

/// Held-Karp sweep over (component set, current vertex) states, one source at
/// a time; O(2^k * n^2) per source, intermediate layers transient.
PathTable compute_path_table(const NormalizedEe& inst);

/// In-place fast zeta transform: f(S) becomes the sum of f(A) over A
/// subseteq S. Length must be a power of two.
void fast_zeta(std::span<Fe> f);

/// Instantiated matrix entries A_I(u,w) for all I at one evaluation point:
/// the zeta transform over I of x_{u,I,w} * z^d(u,I,w).
struct ZetaTables {
  unsigned k = 0;
  std::size_t rows = 0, cols = 0;
  std::vector<Fe> a;  // [subset * rows*cols + row * cols + col]

  const Fe* slice(unsigned subset) const {
    return a.data() + static_cast<std::size_t>(subset) * rows * cols;
  }
};

/// xbar holds one drawn element per (source, subset, target) triple, laid out
/// exactly like PathTable::d; entries at invalid triples are ignored. `out`
/// storage is reused across calls.
void build_zeta_tables(const Field& f, const PathTable& pt, std::span<const Fe> xbar, Fe z,
                       ZetaTables& out);

}  // namespace rpp
