#include "rpp/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <random>
#include <thread>
#include <vector>

#include "rpp/linalg.hpp"
#include "rpp/sieve.hpp"
#include "rpp/tables.hpp"

namespace rpp {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Field make_field(const DriverConfig& cfg) {
  return cfg.modulus ? Field(cfg.field_bits, *cfg.modulus) : Field(cfg.field_bits);
}

void check_degree_fits(unsigned bits, std::int64_t degree_bound) {
  if (bits < 64 && static_cast<unsigned __int128>(degree_bound) + 2 >
                       (static_cast<unsigned __int128>(1) << bits)) {
    throw std::invalid_argument("field too small for the degree bound: need 2^r >= L+2");
  }
  if (degree_bound >= (std::int64_t{1} << 26)) {
    throw std::invalid_argument("degree bound too large to evaluate; the budget must stay polynomial");
  }
}

double failure_bound(bool yes, std::int64_t budget, double total_degree, unsigned bits,
                     unsigned reps) {
  if (yes) return 0.0;
  const double single =
      std::min(1.0, std::ldexp(static_cast<double>(budget + 1) * total_degree, -static_cast<int>(bits)));
  return std::pow(single, reps);
}

void parallel_for_blocks(unsigned threads, std::size_t count,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    fn(0, count);
    return;
  }
  const std::size_t chunk = (count + threads - 1) / threads;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, t, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// scan the interpolated coefficients for the cheapest feasible weight
std::optional<std::int64_t> first_nonzero_coefficient(const std::vector<Fe>& coeffs,
                                                      std::int64_t budget) {
  const std::int64_t limit = std::min<std::int64_t>(budget, static_cast<std::int64_t>(coeffs.size()) - 1);
  for (std::int64_t i = 0; i <= limit; ++i) {
    if (coeffs[static_cast<std::size_t>(i)]) return i;
  }
  return std::nullopt;
}

}  // namespace

Verdict decide_ee(const NormalizedEe& inst, const DriverConfig& cfg) {
  const Field field = make_field(cfg);
  const bool directed = inst.g.directed;
  const std::size_t m = directed ? inst.surplus.size() : inst.odd.size() / 2;

  Verdict verdict;
  verdict.seed = cfg.seed;
  verdict.k = static_cast<unsigned>(inst.k);
  verdict.matching_size = m;
  verdict.field_bits = cfg.field_bits;
  verdict.repetitions = cfg.repetitions;

  if (m == 0) {
    // no imbalanced vertices at all: feasible exactly when already connected
    verdict.yes = inst.k == 1;
    if (verdict.yes) verdict.min_extension_weight = 0;
    return verdict;
  }

  const std::int64_t L = static_cast<std::int64_t>(m) * (inst.g.budget + 1);
  verdict.degree_bound = L;
  check_degree_fits(cfg.field_bits, L);

  auto t0 = Clock::now();
  const PathTable pt = compute_path_table(inst);
  verdict.times.path_table_ms = ms_since(t0);

  std::mt19937_64 rng(cfg.seed);
  std::vector<Fe> xbar(pt.d.size());
  std::vector<Fe> values(static_cast<std::size_t>(L) + 1);
  const std::size_t pair_count = pt.pair_count();
  const std::size_t T = pt.targets.size();

  for (unsigned round = 0; round < cfg.repetitions; ++round) {
    // one draw per (u, J, w) triple with a defined path weight
    for (std::size_t si = 0; si < pt.sources.size(); ++si) {
      for (std::size_t set = 0; set < pt.subset_count(); ++set) {
        for (std::size_t ti = 0; ti < T; ++ti) {
          if (pt.d[set * pair_count + si * T + ti] < 0) continue;
          if (!directed) {
            if (pt.targets[ti] < pt.sources[si]) continue;  // one variable per unordered pair
            const Fe draw = field.sample(rng);
            xbar[set * pair_count + si * T + ti] = draw;
            xbar[set * pair_count + ti * T + si] = draw;
          } else {
            xbar[set * pair_count + si * T + ti] = field.sample(rng);
          }
        }
      }
    }

    auto t1 = Clock::now();
    parallel_for_blocks(cfg.threads, values.size(), [&](std::size_t begin, std::size_t end) {
      ZetaTables zt;
      for (std::size_t j = begin; j < end; ++j) {
        build_zeta_tables(field, pt, xbar, field.element(j), zt);
        values[j] = directed ? eval_Q_directed(field, zt, inst) : eval_Q_undirected(field, zt, inst);
      }
    });
    verdict.times.sieve_ms += ms_since(t1);

    auto t2 = Clock::now();
    std::vector<std::pair<Fe, Fe>> points(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) points[j] = {field.element(j), values[j]};
    const std::vector<Fe> coeffs = interpolate(field, points, static_cast<std::size_t>(L));
    verdict.times.interpolate_ms += ms_since(t2);

    if (auto hit = first_nonzero_coefficient(coeffs, inst.g.budget)) {
      verdict.yes = true;
      if (!verdict.min_extension_weight || *hit < *verdict.min_extension_weight) {
        verdict.min_extension_weight = *hit;
      }
    }
  }

  verdict.failure_bound = failure_bound(verdict.yes, inst.g.budget, static_cast<double>(m),
                                        cfg.field_bits, cfg.repetitions);
  return verdict;
}

Verdict decide_ee(const EeInstance& inst, const DriverConfig& cfg) {
  inst.validate();
  auto t0 = Clock::now();
  NormalizedEe norm = normalize_for_sieve(inst);
  const double reduce_ms = ms_since(t0);
  Verdict v = decide_ee(norm, cfg);
  v.times.reduce_ms = reduce_ms;
  return v;
}

Verdict decide_drpp(const RppInstance& inst, const DriverConfig& cfg) {
  if (!inst.directed) throw std::invalid_argument("decide_drpp: instance is undirected");
  inst.validate();
  if (std::none_of(inst.arcs.begin(), inst.arcs.end(), [](const Arc& a) { return a.required; })) {
    Verdict v;  // nothing to cover: the empty walk works
    v.yes = true;
    v.min_extension_weight = 0;
    v.seed = cfg.seed;
    v.k = 0;
    v.field_bits = cfg.field_bits;
    v.repetitions = cfg.repetitions;
    return v;
  }
  auto t0 = Clock::now();
  NormalizedEe norm = normalize_for_sieve(rpp_to_ee(inst));
  const double reduce_ms = ms_since(t0);
  Verdict v = decide_ee(norm, cfg);
  v.times.reduce_ms = reduce_ms;
  return v;
}

Verdict decide_urpp(const RppInstance& inst, const DriverConfig& cfg) {
  if (inst.directed) throw std::invalid_argument("decide_urpp: instance is directed");
  RppInstance copy = inst;
  copy.directed = false;
  copy.validate();
  if (std::none_of(copy.arcs.begin(), copy.arcs.end(), [](const Arc& a) { return a.required; })) {
    Verdict v;
    v.yes = true;
    v.min_extension_weight = 0;
    v.seed = cfg.seed;
    v.field_bits = cfg.field_bits;
    v.repetitions = cfg.repetitions;
    return v;
  }
  auto t0 = Clock::now();
  NormalizedEe norm = normalize_for_sieve(rpp_to_ee(copy));
  const double reduce_ms = ms_since(t0);
  Verdict v = decide_ee(norm, cfg);
  v.times.reduce_ms = reduce_ms;
  return v;
}

namespace {

Verdict decide_matching(const CbmInstance& inst, const DriverConfig& cfg, bool bipartite) {
  inst.validate();
  const Field field = make_field(cfg);

  Verdict verdict;
  verdict.seed = cfg.seed;
  verdict.k = static_cast<unsigned>(inst.requests.size());
  verdict.field_bits = cfg.field_bits;
  verdict.repetitions = cfg.repetitions;

  std::size_t m = 0;
  if (bipartite) {
    std::size_t left = 0;
    for (char s : inst.side) left += s == 'L';
    if (2 * left != static_cast<std::size_t>(inst.n)) {
      return verdict;  // unequal sides: no perfect matching, exactly
    }
    m = left;
  } else {
    if (inst.n % 2 != 0) return verdict;  // odd order: no perfect matching, exactly
    m = static_cast<std::size_t>(inst.n) / 2;
  }
  verdict.matching_size = m;

  std::int64_t max_weight = 0;
  for (const auto& e : inst.edges) max_weight = std::max(max_weight, std::min(e.weight, inst.cap()));
  const std::int64_t L = static_cast<std::int64_t>(m) * max_weight;
  verdict.degree_bound = L;
  check_degree_fits(cfg.field_bits, L);

  std::mt19937_64 rng(cfg.seed);
  std::vector<Fe> x_edges(inst.edges.size());
  std::vector<Fe> y_requests(inst.requests.size());
  std::vector<Fe> values(static_cast<std::size_t>(L) + 1);

  for (unsigned round = 0; round < cfg.repetitions; ++round) {
    for (auto& x : x_edges) x = field.sample(rng);
    for (auto& y : y_requests) y = field.sample(rng);

    auto t1 = Clock::now();
    parallel_for_blocks(cfg.threads, values.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t j = begin; j < end; ++j) {
        const Fe z = field.element(j);
        values[j] = bipartite ? eval_p_cbm(field, inst, x_edges, y_requests, z)
                              : eval_p_cgm(field, inst, x_edges, y_requests, z);
      }
    });
    verdict.times.sieve_ms += ms_since(t1);

    auto t2 = Clock::now();
    std::vector<std::pair<Fe, Fe>> points(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) points[j] = {field.element(j), values[j]};
    const std::vector<Fe> coeffs = interpolate(field, points, static_cast<std::size_t>(L));
    verdict.times.interpolate_ms += ms_since(t2);

    if (auto hit = first_nonzero_coefficient(coeffs, inst.budget)) {
      verdict.yes = true;
      if (!verdict.min_extension_weight || *hit < *verdict.min_extension_weight) {
        verdict.min_extension_weight = *hit;
      }
    }
  }

  const double total_degree = static_cast<double>(m) * (1.0 + static_cast<double>(inst.requests.size()));
  verdict.failure_bound =
      failure_bound(verdict.yes, inst.budget, total_degree, cfg.field_bits, cfg.repetitions);
  return verdict;
}

}  // namespace

Verdict decide_cbm(const CbmInstance& inst, const DriverConfig& cfg) {
  if (!inst.bipartite) throw std::invalid_argument("decide_cbm: instance is not bipartite");
  return decide_matching(inst, cfg, true);
}

Verdict decide_cgm(const CbmInstance& inst, const DriverConfig& cfg) {
  return decide_matching(inst, cfg, false);
}

Verdict decide(const Instance& inst, const DriverConfig& cfg) {
  if (const auto* r = std::get_if<RppInstance>(&inst)) {
    return r->directed ? decide_drpp(*r, cfg) : decide_urpp(*r, cfg);
  }
  if (const auto* e = std::get_if<EeInstance>(&inst)) return decide_ee(*e, cfg);
  const auto& c = std::get<CbmInstance>(inst);
  return c.bipartite ? decide_cbm(c, cfg) : decide_cgm(c, cfg);
}

}  // namespace rpp
