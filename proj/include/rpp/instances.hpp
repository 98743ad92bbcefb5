#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace rpp {

enum class Kind { Drpp, Urpp, Ee, Uee, Cbm, Cgm };

struct Arc {
  int tail = 0, head = 0;
  std::int64_t weight = 0;
  bool required = false;
};

/// Rural postman instance: weighted multigraph with a required arc subset and
/// an extra-weight budget. Directed instances must be strongly connected,
/// undirected ones connected; validate() enforces this.
struct RppInstance {
  bool directed = true;
  int n = 0;
  std::vector<Arc> arcs;
  std::int64_t budget = 0;

  void validate() const;  // throws std::invalid_argument
};

/// Eulerian extension instance: required multigraph (V,R) plus an n x n grid
/// of extension weights (symmetric when undirected). Unknown pairs carry the
/// sentinel budget+1; any weight above the budget compares equal to it.
struct EeInstance {
  bool directed = true;
  int n = 0;
  std::vector<std::pair<int, int>> required;
  std::vector<std::int64_t> weight;  // n*n row-major, diagonal unused
  std::int64_t budget = 0;
  std::vector<int> origin;  // provenance to pre-reduction vertex ids

  std::int64_t cap() const { return budget + 1; }
  std::int64_t w(int u, int v) const { return weight[static_cast<std::size_t>(u) * n + v]; }
  void set_w(int u, int v, std::int64_t c) {
    weight[static_cast<std::size_t>(u) * n + v] = c;
    if (!directed) weight[static_cast<std::size_t>(v) * n + u] = c;
  }

  void validate() const;
};

/// Conjoining matching instance (bipartite when `bipartite`, general
/// otherwise): vertex classes, weighted edges, and a set of class-pair
/// requests that the matching must cover.
struct CbmInstance {
  bool bipartite = true;
  int n = 0;
  int classes = 0;
  std::vector<int> part;   // 0-based class per vertex
  std::vector<char> side;  // 'L'/'R' per vertex, bipartite only
  struct Edge {
    int u = 0, v = 0;
    std::int64_t weight = 0;
  };
  std::vector<Edge> edges;
  std::vector<std::pair<int, int>> requests;  // 0-based class pairs, first < second
  std::int64_t budget = 0;

  std::int64_t cap() const { return budget + 1; }
  void validate() const;
};

/// Balance-normalized, metric, cycle-free form ready for the sieve.
struct NormalizedEe {
  EeInstance g;
  int k = 0;
  std::vector<int> component_of;  // components numbered by smallest vertex id
  std::vector<int> surplus;       // directed: balance +1 vertices, ascending
  std::vector<int> deficit;       // directed: balance -1 vertices, ascending
  std::vector<int> odd;           // undirected: odd-degree vertices, ascending
};

// --- reductions ---------------------------------------------------------

/// RPP -> EE: pairwise min arc weights (sentinel budget+1 when absent),
/// shortest-path closure, then vertices not incident to R are dropped.
EeInstance rpp_to_ee(const RppInstance& inst);

/// EE -> RPP: required arcs stay required, each pair within budget becomes a
/// plain arc. The result can fail RPP connectivity validation; that only
/// happens when the EE instance was infeasible at this budget.
RppInstance ee_to_rpp(const EeInstance& inst);

/// Splits vertices until every balance is +1, 0 or -1 (directed only).
EeInstance normalize_balances(const EeInstance& inst);

/// Replaces each extension weight by the shortest-path weight, saturating at
/// budget+1; establishes the triangle inequality.
EeInstance metric_close(EeInstance inst);

/// Adds the two companion vertices per vertex that let every minimum
/// extension decompose into paths between imbalanced (or odd) vertices.
EeInstance no_cycles_transform(const EeInstance& inst);

/// Labels components and extracts the imbalance (or odd-degree) sets;
/// enforces the invariants of the normalized form.
NormalizedEe analyze_components(EeInstance inst);

/// Full normalization chain: balances (directed), metric closure, no-cycles
/// transform, component analysis.
NormalizedEe normalize_for_sieve(EeInstance inst);

/// Vertex balances (in-degree minus out-degree) of the required multigraph.
std::vector<std::int64_t> balances(const EeInstance& inst);

/// Vertex degrees of the required multigraph (self-loops count twice).
std::vector<std::int64_t> degrees(const EeInstance& inst);

int component_count(const EeInstance& inst);

std::int64_t saturating_add(std::int64_t a, std::int64_t b, std::int64_t cap);

// --- instance files -----------------------------------------------------

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

using Instance = std::variant<RppInstance, EeInstance, CbmInstance>;

Instance parse_instance(std::string_view text);
Kind kind_of(const Instance& inst);

std::string serialize(const RppInstance& inst);
std::string serialize(const EeInstance& inst);
std::string serialize(const CbmInstance& inst);
std::string serialize(const Instance& inst);

}  // namespace rpp
