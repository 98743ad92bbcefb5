#include "rpp/sieve.hpp"

#include <algorithm>
#include <stdexcept>

namespace rpp {

namespace {

// det or pf of every component-subset block, then the anchored convolution
Fe anchored_block_sum(const Field& f, const ZetaTables& zt, const NormalizedEe& inst,
                      bool use_pfaffian) {
  const unsigned k = static_cast<unsigned>(inst.k);
  const unsigned full = static_cast<unsigned>((std::size_t{1} << k) - 1);
  const std::vector<int>& row_ids = inst.g.directed ? inst.surplus : inst.odd;
  const std::vector<int>& col_ids = inst.g.directed ? inst.deficit : inst.odd;

  std::vector<std::vector<int>> rows_of_comp(k), cols_of_comp(k);
  for (std::size_t i = 0; i < row_ids.size(); ++i) {
    rows_of_comp[inst.component_of[row_ids[i]]].push_back(static_cast<int>(i));
  }
  for (std::size_t j = 0; j < col_ids.size(); ++j) {
    cols_of_comp[inst.component_of[col_ids[j]]].push_back(static_cast<int>(j));
  }

  const std::size_t cols_total = zt.cols;
  std::vector<Fe> dets(std::size_t{1} << k);
  std::vector<int> ridx, cidx;
  std::vector<Fe> scratch;
  for (unsigned set = 0; set <= full; ++set) {
    ridx.clear();
    cidx.clear();
    for (unsigned c = 0; c < k; ++c) {
      if (!(set >> c & 1)) continue;
      ridx.insert(ridx.end(), rows_of_comp[c].begin(), rows_of_comp[c].end());
      cidx.insert(cidx.end(), cols_of_comp[c].begin(), cols_of_comp[c].end());
    }
    const std::size_t s = ridx.size();
    if (use_pfaffian) {
      if (s % 2 != 0) continue;  // no perfect matching of an odd set
    } else if (s != cidx.size()) {
      continue;  // determinant of a non-square block is 0
    }
    // row/column order is the deterministic per-component concatenation;
    // permutations cannot change the value here since signs vanish
    scratch.resize(s * s);
    const Fe* slice = zt.slice(set);
    for (std::size_t r = 0; r < s; ++r) {
      const Fe* zrow = slice + static_cast<std::size_t>(ridx[r]) * cols_total;
      for (std::size_t c = 0; c < s; ++c) scratch[r * s + c] = zrow[cidx[c]];
    }
    Fe det = determinant_destructive(f, s, scratch.data());
    dets[set] = use_pfaffian ? f.sqrt(det) : det;
  }

  const unsigned anchored = full & ~1u;  // subsets avoiding component 0
  Fe q = f.mul(dets[0], dets[full]);     // the I = empty term
  for (unsigned i = anchored; i != 0; i = (i - 1) & anchored) {
    q = f.add(q, f.mul(dets[i], dets[full ^ i]));
  }
  return q;
}

struct CbmMatrix {
  std::size_t n = 0;
  std::vector<Fe> base;
  std::vector<int> request_of;  // request index per entry, -1 when unconstrained
};

// rows/cols: vertex lists (left/right sides, or all vertices twice for the
// general variant); entries sum the instantiated edge terms per vertex pair
CbmMatrix build_request_matrix(const Field& f, const CbmInstance& inst,
                               std::span<const Fe> x_edges, std::span<const Fe> y_requests, Fe z,
                               const std::vector<int>& rows, const std::vector<int>& cols) {
  if (x_edges.size() != inst.edges.size() || y_requests.size() != inst.requests.size()) {
    throw std::invalid_argument("sieve: instantiation size mismatch");
  }
  const std::int64_t cap = inst.cap();
  std::int64_t max_exp = 0;
  for (const auto& e : inst.edges) max_exp = std::max(max_exp, std::min(e.weight, cap));
  std::vector<Fe> zpow(static_cast<std::size_t>(max_exp) + 1);
  zpow[0] = Field::one();
  for (std::size_t i = 1; i < zpow.size(); ++i) zpow[i] = f.mul(zpow[i - 1], z);

  std::vector<int> row_of(inst.n, -1), col_of(inst.n, -1);
  for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = static_cast<int>(i);
  for (std::size_t j = 0; j < cols.size(); ++j) col_of[cols[j]] = static_cast<int>(j);

  auto request_index = [&](int u, int v) {
    const auto key = std::minmax(inst.part[u], inst.part[v]);
    for (std::size_t r = 0; r < inst.requests.size(); ++r) {
      if (inst.requests[r] == std::pair<int, int>(key.first, key.second)) return static_cast<int>(r);
    }
    return -1;
  };

  CbmMatrix m;
  m.n = rows.size();
  m.base.assign(m.n * m.n, Fe{});
  m.request_of.assign(m.n * m.n, -1);
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    const auto& edge = inst.edges[e];
    const Fe y = [&] {
      int r = request_index(edge.u, edge.v);
      return r >= 0 ? y_requests[r] : Field::one();
    }();
    const Fe term = f.mul(f.mul(x_edges[e], y),
                          zpow[static_cast<std::size_t>(std::min(edge.weight, cap))]);
    auto add_at = [&](int u, int v) {
      const int r = row_of[u], c = col_of[v];
      if (r < 0 || c < 0) return;
      const std::size_t idx = static_cast<std::size_t>(r) * m.n + c;
      m.base[idx] = f.add(m.base[idx], term);
      m.request_of[idx] = request_index(u, v);
    };
    add_at(edge.u, edge.v);
    add_at(edge.v, edge.u);
  }
  return m;
}

Fe request_subset_sum(const Field& f, const CbmMatrix& m, std::size_t request_count,
                      bool use_pfaffian) {
  std::vector<Fe> scratch(m.n * m.n);
  Fe total = Field::zero();
  for (std::size_t mask = 0; mask < (std::size_t{1} << request_count); ++mask) {
    for (std::size_t i = 0; i < m.base.size(); ++i) {
      const int r = m.request_of[i];
      scratch[i] = (r >= 0 && (mask >> r & 1)) ? Field::zero() : m.base[i];
    }
    Fe det = determinant_destructive(f, m.n, scratch.data());
    total = f.add(total, use_pfaffian ? f.sqrt(det) : det);
  }
  return total;
}

}  // namespace

Fe eval_Q_directed(const Field& f, const ZetaTables& zt, const NormalizedEe& inst) {
  if (!inst.g.directed) throw std::invalid_argument("eval_Q_directed: undirected instance");
  return anchored_block_sum(f, zt, inst, false);
}

Fe eval_Q_undirected(const Field& f, const ZetaTables& zt, const NormalizedEe& inst) {
  if (inst.g.directed) throw std::invalid_argument("eval_Q_undirected: directed instance");
  return anchored_block_sum(f, zt, inst, true);
}

Fe eval_p_cbm(const Field& f, const CbmInstance& inst, std::span<const Fe> x_edges,
              std::span<const Fe> y_requests, Fe z) {
  if (!inst.bipartite || inst.side.size() != static_cast<std::size_t>(inst.n)) {
    throw std::invalid_argument("eval_p_cbm: instance has no bipartition");
  }
  std::vector<int> left, right;
  for (int v = 0; v < inst.n; ++v) (inst.side[v] == 'L' ? left : right).push_back(v);
  if (left.size() != right.size()) {
    throw std::invalid_argument("eval_p_cbm: bipartition sides differ in size");
  }
  CbmMatrix m = build_request_matrix(f, inst, x_edges, y_requests, z, left, right);
  return request_subset_sum(f, m, inst.requests.size(), false);
}

Fe eval_p_cgm(const Field& f, const CbmInstance& inst, std::span<const Fe> x_edges,
              std::span<const Fe> y_requests, Fe z) {
  if (inst.n % 2 != 0) throw std::invalid_argument("eval_p_cgm: odd vertex count");
  std::vector<int> all(inst.n);
  for (int v = 0; v < inst.n; ++v) all[v] = v;
  CbmMatrix m = build_request_matrix(f, inst, x_edges, y_requests, z, all, all);
  return request_subset_sum(f, m, inst.requests.size(), true);
}

}  // namespace rpp
