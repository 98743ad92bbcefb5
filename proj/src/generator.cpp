#include "rpp/generator.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace rpp {

namespace {

std::int64_t rand_weight(std::mt19937_64& rng, std::int64_t weight_max) {
  return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(weight_max + 1));
}

bool rand_coin(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

int rand_int(std::mt19937_64& rng, int lo, int hi) {  // inclusive
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Fisher-Yates; std::shuffle is not pinned down across standard libraries,
// and generated files must be byte-identical for a given seed everywhere
template <typename T>
void shuffle_vec(std::mt19937_64& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng() % i]);
  }
}

// split `total` vertices into `k` nonempty groups
std::vector<std::vector<int>> partition_vertices(std::mt19937_64& rng, int total, int k) {
  std::vector<int> sizes(k, 1);
  for (int extra = total - k; extra > 0; --extra) ++sizes[rand_int(rng, 0, k - 1)];
  std::vector<std::vector<int>> groups(k);
  int v = 0;
  for (int g = 0; g < k; ++g) {
    for (int i = 0; i < sizes[g]; ++i) groups[g].push_back(v++);
  }
  return groups;
}

Instance generate_rpp(const GenParams& p, std::mt19937_64& rng) {
  const bool directed = p.kind == Kind::Drpp;
  const bool want_required_only = p.kind == Kind::Ee || p.kind == Kind::Uee;
  if (p.k < 1 || p.k > p.n) throw std::invalid_argument("generator: need 1 <= k <= n");

  // the matching size after the pipeline is (required-incident vertices) +
  // (path-shaped pieces); the oracle guards cap it
  const int matching_limit = directed || p.kind == Kind::Ee ? 8 : 7;
  int nr;
  if (want_required_only) {
    nr = p.n;  // ee/uee allow no isolated vertices
    if (p.oracle_compatible && nr > matching_limit) {
      throw std::invalid_argument("generator: n too large for oracle guards");
    }
  } else {
    const int hi = p.oracle_compatible ? std::min(p.n, matching_limit) : p.n;
    if (p.k > hi) throw std::invalid_argument("generator: k too large for oracle guards");
    nr = rand_int(rng, p.k, hi);
  }
  int paths_allowed = p.n;
  if (p.oracle_compatible) paths_allowed = std::max(0, matching_limit - nr);
  if (p.balanced_only) paths_allowed = 0;

  const auto groups = partition_vertices(rng, nr, p.k);
  std::vector<Arc> required;
  int paths_used = 0;
  for (const auto& g : groups) {
    if (g.size() == 1) {
      required.push_back({g[0], g[0], rand_weight(rng, p.weight_max), true});
      continue;
    }
    const bool as_path = paths_used < paths_allowed && rand_coin(rng, 0.4);
    if (as_path) ++paths_used;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      required.push_back({g[i], g[i + 1], rand_weight(rng, p.weight_max), true});
    }
    if (!as_path) {
      // close the cycle; for two vertices this doubles the edge, which keeps
      // undirected degrees even and directed balances zero
      required.push_back({g.back(), g.front(), rand_weight(rng, p.weight_max), true});
    }
  }

  if (want_required_only) {
    EeInstance inst;
    inst.directed = p.kind == Kind::Ee;
    inst.n = p.n;
    inst.budget = p.budget;
    inst.weight.assign(static_cast<std::size_t>(p.n) * p.n, p.budget + 1);
    for (int v = 0; v < p.n; ++v) inst.weight[static_cast<std::size_t>(v) * p.n + v] = 0;
    inst.origin.resize(p.n);
    std::iota(inst.origin.begin(), inst.origin.end(), 0);
    for (const Arc& a : required) inst.required.emplace_back(a.tail, a.head);
    for (int u = 0; u < p.n; ++u) {
      for (int v = inst.directed ? 0 : u + 1; v < p.n; ++v) {
        if (u == v) continue;
        if (rand_coin(rng, p.density)) inst.set_w(u, v, rand_weight(rng, p.weight_max));
      }
    }
    return inst;
  }

  RppInstance inst;
  inst.directed = directed;
  inst.n = p.n;
  inst.budget = p.budget;
  inst.arcs = std::move(required);

  // a random tour over all vertices keeps the instance (strongly) connected
  std::vector<int> tour(p.n);
  std::iota(tour.begin(), tour.end(), 0);
  shuffle_vec(rng, tour);
  for (int i = 0; i < p.n; ++i) {
    if (p.n == 1) break;
    inst.arcs.push_back({tour[i], tour[(i + 1) % p.n], rand_weight(rng, p.weight_max), false});
  }
  for (int u = 0; u < p.n; ++u) {
    for (int v = inst.directed ? 0 : u + 1; v < p.n; ++v) {
      if (u == v) continue;
      if (rand_coin(rng, p.density)) {
        inst.arcs.push_back({u, v, rand_weight(rng, p.weight_max), false});
      }
    }
  }
  return inst;
}

Instance generate_matching(const GenParams& p, std::mt19937_64& rng) {
  const bool bipartite = p.kind == Kind::Cbm;
  if (p.n < 2 || p.n % 2 != 0) throw std::invalid_argument("generator: matching kinds need even n");
  if (p.k < 1 || p.k > p.n) throw std::invalid_argument("generator: need 1 <= k <= n classes");

  CbmInstance inst;
  inst.bipartite = bipartite;
  inst.n = p.n;
  inst.budget = p.budget;
  inst.classes = p.k;
  inst.part.resize(p.n);
  for (int v = 0; v < p.n; ++v) inst.part[v] = v < p.k ? v : rand_int(rng, 0, p.k - 1);
  if (bipartite) {
    inst.side.assign(p.n, 'R');
    for (int v = 0; v < p.n / 2; ++v) inst.side[v] = 'L';
  }

  auto may_join = [&](int u, int v) { return !bipartite || inst.side[u] != inst.side[v]; };
  for (int u = 0; u < p.n; ++u) {
    for (int v = u + 1; v < p.n; ++v) {
      if (!may_join(u, v)) continue;
      if (rand_coin(rng, p.density)) {
        inst.edges.push_back({u, v, rand_weight(rng, p.weight_max)});
      }
    }
  }
  if (rand_coin(rng, 0.7)) {
    // plant a perfect matching so a fair share of instances is feasible
    std::vector<int> left, right;
    for (int v = 0; v < p.n; ++v) {
      (bipartite ? (inst.side[v] == 'L' ? left : right) : (v < p.n / 2 ? left : right)).push_back(v);
    }
    shuffle_vec(rng, right);
    for (std::size_t i = 0; i < left.size(); ++i) {
      inst.edges.push_back({left[i], right[i], rand_weight(rng, p.weight_max)});
    }
  }

  std::vector<std::pair<int, int>> all_pairs;
  for (int i = 0; i < p.k; ++i) {
    for (int j = i + 1; j < p.k; ++j) all_pairs.emplace_back(i, j);
  }
  shuffle_vec(rng, all_pairs);
  const int f = std::min<int>(p.requests, static_cast<int>(all_pairs.size()));
  inst.requests.assign(all_pairs.begin(), all_pairs.begin() + f);
  std::sort(inst.requests.begin(), inst.requests.end());
  return inst;
}

}  // namespace

Instance generate_instance(const GenParams& params) {
  std::mt19937_64 rng(params.seed);
  switch (params.kind) {
    case Kind::Drpp:
    case Kind::Urpp:
    case Kind::Ee:
    case Kind::Uee:
      return generate_rpp(params, rng);
    case Kind::Cbm:
    case Kind::Cgm:
      return generate_matching(params, rng);
  }
  throw std::invalid_argument("generator: unknown kind");
}

std::string generate_instance_text(const GenParams& params) {
  return serialize(generate_instance(params));
}

}  // namespace rpp
