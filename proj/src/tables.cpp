#include "rpp/tables.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace rpp {

namespace {

constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max();

}  // namespace

PathTable compute_path_table(const NormalizedEe& inst) {
  const EeInstance& g = inst.g;
  const unsigned k = static_cast<unsigned>(inst.k);
  if (k > 24) throw std::invalid_argument("compute_path_table: too many components");

  PathTable pt;
  pt.k = k;
  pt.cap = g.cap();
  if (g.directed) {
    pt.sources = inst.surplus;
    pt.targets = inst.deficit;
  } else {
    pt.sources = inst.odd;
    pt.targets = inst.odd;
  }
  const std::size_t S = pt.sources.size(), T = pt.targets.size();
  const std::size_t nsub = pt.subset_count();
  pt.d.assign(nsub * S * T, -1);

  std::vector<std::vector<int>> comp_vertices(k);
  for (int v = 0; v < g.n; ++v) comp_vertices[inst.component_of[v]].push_back(v);

  std::vector<std::int64_t> dist(nsub * g.n);
  for (std::size_t si = 0; si < S; ++si) {
    const int u = pt.sources[si];
    const unsigned cu = static_cast<unsigned>(inst.component_of[u]);

    std::fill(dist.begin(), dist.end(), kUnreached);
    dist[(std::size_t{1} << cu) * g.n + u] = 0;

    for (unsigned set = 0; set < nsub; ++set) {
      if (!(set >> cu & 1)) continue;
      const std::int64_t* layer = dist.data() + static_cast<std::size_t>(set) * g.n;
      for (unsigned c = 0; c < k; ++c) {
        if (!(set >> c & 1)) continue;
        for (int v : comp_vertices[c]) {
          const std::int64_t dv = layer[v];
          if (dv == kUnreached) continue;
          for (unsigned c2 = 0; c2 < k; ++c2) {
            if (set >> c2 & 1) continue;
            std::int64_t* next = dist.data() + (static_cast<std::size_t>(set) | (1u << c2)) * g.n;
            for (int v2 : comp_vertices[c2]) {
              const std::int64_t nd = saturating_add(dv, g.w(v, v2), pt.cap);
              if (nd < next[v2]) next[v2] = nd;
            }
          }
        }
      }
    }

    for (std::size_t ti = 0; ti < T; ++ti) {
      const int w = pt.targets[ti];
      if (w == u) continue;  // undirected diagonal stays invalid
      const unsigned cw = static_cast<unsigned>(inst.component_of[w]);
      for (unsigned set = 0; set < nsub; ++set) {
        if (!(set >> cu & 1) || !(set >> cw & 1)) continue;
        std::int64_t value;
        if (cu != cw) {
          value = dist[static_cast<std::size_t>(set) * g.n + w];
        } else if (set == (1u << cu)) {
          value = g.w(u, w);
        } else {
          // endpoints share a component: tour the rest, then hop back
          value = kUnreached;
          const std::int64_t* layer = dist.data() + static_cast<std::size_t>(set) * g.n;
          for (unsigned c = 0; c < k; ++c) {
            if (!(set >> c & 1) || c == cu) continue;
            for (int v : comp_vertices[c]) {
              if (layer[v] == kUnreached) continue;
              const std::int64_t cand = saturating_add(layer[v], g.w(v, w), pt.cap);
              if (cand < value) value = cand;
            }
          }
        }
        if (value != kUnreached) {
          pt.d[static_cast<std::size_t>(set) * S * T + si * T + ti] = std::min(value, pt.cap);
        }
      }
    }
  }
  return pt;
}

void fast_zeta(std::span<Fe> f) {
  const std::size_t n = f.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fast_zeta: length must be a power of two");
  for (std::size_t bit = 1; bit < n; bit <<= 1) {
    for (std::size_t s = 0; s < n; ++s) {
      if (s & bit) f[s].v ^= f[s ^ bit].v;
    }
  }
}

void build_zeta_tables(const Field& f, const PathTable& pt, std::span<const Fe> xbar, Fe z,
                       ZetaTables& out) {
  const std::size_t P = pt.pair_count();
  const std::size_t nsub = pt.subset_count();
  if (xbar.size() != pt.d.size()) throw std::invalid_argument("build_zeta_tables: xbar size mismatch");
  out.k = pt.k;
  out.rows = pt.sources.size();
  out.cols = pt.targets.size();
  out.a.assign(nsub * P, Fe{});

  std::vector<Fe> zpow(static_cast<std::size_t>(pt.cap) + 1);
  zpow[0] = Field::one();
  for (std::size_t i = 1; i < zpow.size(); ++i) zpow[i] = f.mul(zpow[i - 1], z);

  for (std::size_t set = 0; set < nsub; ++set) {
    Fe* row = out.a.data() + set * P;
    const std::int64_t* dd = pt.d.data() + set * P;
    const Fe* xx = xbar.data() + set * P;
    for (std::size_t p = 0; p < P; ++p) {
      if (dd[p] >= 0) row[p] = f.mul(xx[p], zpow[static_cast<std::size_t>(dd[p])]);
    }
  }

  // zeta transform along the subset dimension, streaming whole rows
  for (std::size_t bit = 1; bit < nsub; bit <<= 1) {
    for (std::size_t set = 0; set < nsub; ++set) {
      if (!(set & bit)) continue;
      Fe* dst = out.a.data() + set * P;
      const Fe* src = out.a.data() + (set ^ bit) * P;
      for (std::size_t p = 0; p < P; ++p) dst[p].v ^= src[p].v;
    }
  }
}

}  // namespace rpp
