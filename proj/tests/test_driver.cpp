#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "rpp/driver.hpp"
#include "rpp/generator.hpp"
#include "rpp/oracle.hpp"

using namespace rpp;

namespace {

RppInstance two_arcs_instance(std::int64_t budget) {
  RppInstance inst;
  inst.directed = true;
  inst.n = 4;
  inst.budget = budget;
  inst.arcs = {{0, 1, 1, true}, {2, 3, 1, true}};
  for (int u = 0; u < 4; ++u) {
    for (int v = 0; v < 4; ++v) {
      if (u != v && !(u == 0 && v == 1) && !(u == 2 && v == 3)) {
        inst.arcs.push_back({u, v, 1, false});
      }
    }
  }
  return inst;
}

CbmInstance crossing_cbm(std::int64_t budget) {
  CbmInstance inst;
  inst.bipartite = true;
  inst.n = 4;
  inst.classes = 2;
  inst.part = {0, 1, 0, 1};
  inst.side = {'L', 'L', 'R', 'R'};
  inst.edges = {{0, 2, 0}, {1, 3, 0}, {0, 3, 1}, {1, 2, 1}};
  inst.requests = {{0, 1}};
  inst.budget = budget;
  return inst;
}

bool same_verdict(const Verdict& a, const Verdict& b) {
  return a.yes == b.yes && a.min_extension_weight == b.min_extension_weight &&
         a.failure_bound == b.failure_bound && a.seed == b.seed && a.k == b.k &&
         a.degree_bound == b.degree_bound;
}

}  // namespace

TEST_CASE("an Eulerian required graph is a YES at budget zero") {
  RppInstance inst;
  inst.directed = true;
  inst.n = 3;
  inst.budget = 0;
  inst.arcs = {{0, 1, 2, true}, {1, 2, 2, true}, {2, 0, 2, true}};
  DriverConfig cfg;
  cfg.seed = 7;
  const Verdict v = decide_drpp(inst, cfg);
  CHECK(v.yes);
  CHECK(v.min_extension_weight == 0);
  CHECK(v.failure_bound == 0.0);
  CHECK(v.k == 1);
}

TEST_CASE("the two-arcs instance: YES at 2, NO at 1") {
  DriverConfig cfg;
  cfg.seed = 11;
  const Verdict yes = decide_drpp(two_arcs_instance(2), cfg);
  CHECK(yes.yes);
  CHECK(yes.min_extension_weight == 2);
  CHECK(yes.k == 2);

  const Verdict no = decide_drpp(two_arcs_instance(1), cfg);
  CHECK_FALSE(no.yes);
  CHECK_FALSE(no.min_extension_weight.has_value());
  CHECK(no.failure_bound > 0.0);
  CHECK(no.failure_bound < 1e-30);
}

TEST_CASE("single required path: YES at 1 by closing the cycle") {
  RppInstance inst;
  inst.directed = true;
  inst.n = 2;
  inst.budget = 1;
  inst.arcs = {{0, 1, 1, true}, {1, 0, 1, false}};
  DriverConfig cfg;
  const Verdict v = decide_drpp(inst, cfg);
  CHECK(v.yes);
  CHECK(v.min_extension_weight == 1);
  CHECK(v.k == 1);
}

TEST_CASE("undirected pair of disjoint edges: YES at 2, NO at 1") {
  RppInstance inst;
  inst.directed = false;
  inst.n = 4;
  inst.budget = 2;
  inst.arcs = {{0, 1, 1, true}, {2, 3, 1, true}};
  for (int u = 0; u < 4; ++u) {
    for (int v = u + 1; v < 4; ++v) {
      if (!(u == 0 && v == 1) && !(u == 2 && v == 3)) inst.arcs.push_back({u, v, 1, false});
    }
  }
  DriverConfig cfg;
  cfg.seed = 3;
  const Verdict yes = decide_urpp(inst, cfg);
  CHECK(yes.yes);
  CHECK(yes.min_extension_weight == 2);

  inst.budget = 1;
  const Verdict no = decide_urpp(inst, cfg);
  CHECK_FALSE(no.yes);
}

TEST_CASE("an RPP instance with nothing required is trivially YES") {
  RppInstance inst;
  inst.directed = true;
  inst.n = 2;
  inst.budget = 0;
  inst.arcs = {{0, 1, 1, false}, {1, 0, 1, false}};
  DriverConfig cfg;
  const Verdict v = decide_drpp(inst, cfg);
  CHECK(v.yes);
  CHECK(v.min_extension_weight == 0);
}

TEST_CASE("invalid postman instances are rejected") {
  RppInstance inst;
  inst.directed = true;
  inst.n = 2;
  inst.budget = 0;
  inst.arcs = {{0, 1, 1, true}};  // no way back: not strongly connected
  DriverConfig cfg;
  CHECK_THROWS_AS(decide_drpp(inst, cfg), std::invalid_argument);
  CHECK_THROWS_AS(decide_urpp(inst, cfg), std::invalid_argument);  // wrong kind
}

TEST_CASE("cbm crossing instance: YES at 2, NO at 1; request coverage is mandatory") {
  DriverConfig cfg;
  cfg.seed = 5;
  const Verdict yes = decide_cbm(crossing_cbm(2), cfg);
  CHECK(yes.yes);
  CHECK(yes.min_extension_weight == 2);
  CHECK(yes.k == 1);  // the parameter is |F|

  const Verdict no = decide_cbm(crossing_cbm(1), cfg);
  CHECK_FALSE(no.yes);
  CHECK(no.failure_bound > 0.0);

  CbmInstance plain = crossing_cbm(0);
  plain.requests.clear();
  const Verdict v0 = decide_cbm(plain, cfg);
  CHECK(v0.yes);
  CHECK(v0.min_extension_weight == 0);

  CbmInstance hopeless = crossing_cbm(2);
  hopeless.edges = {{0, 2, 0}, {1, 3, 0}};
  const Verdict never = decide_cbm(hopeless, cfg);
  CHECK_FALSE(never.yes);
}

TEST_CASE("structural NO verdicts carry a zero failure bound") {
  DriverConfig cfg;
  CbmInstance unbalanced = crossing_cbm(2);
  unbalanced.side = {'L', 'L', 'L', 'R'};
  unbalanced.edges.clear();
  const Verdict v = decide_cbm(unbalanced, cfg);
  CHECK_FALSE(v.yes);
  CHECK(v.failure_bound == 0.0);

  CbmInstance odd;
  odd.bipartite = false;
  odd.n = 3;
  odd.classes = 1;
  odd.part = {0, 0, 0};
  odd.budget = 1;
  const Verdict vo = decide_cgm(odd, cfg);
  CHECK_FALSE(vo.yes);
  CHECK(vo.failure_bound == 0.0);
}

TEST_CASE("cgm agrees with cbm on bipartite inputs") {
  DriverConfig cfg;
  cfg.seed = 13;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GenParams p;
    p.kind = Kind::Cbm;
    p.n = 6;
    p.k = 3;
    p.requests = 2;
    p.density = 0.5;
    p.budget = static_cast<std::int64_t>(seed % 6);
    p.seed = seed * 41;
    const auto inst = std::get<CbmInstance>(generate_instance(p));
    const Verdict via_cbm = decide_cbm(inst, cfg);
    const Verdict via_cgm = decide_cgm(inst, cfg);
    CHECK(via_cbm.yes == via_cgm.yes);
    CHECK(via_cbm.min_extension_weight == via_cgm.min_extension_weight);
  }
}

TEST_CASE("verdicts are reproducible and independent of the worker count") {
  DriverConfig cfg;
  cfg.seed = 21;
  cfg.repetitions = 2;
  const RppInstance inst = two_arcs_instance(2);
  const Verdict a = decide_drpp(inst, cfg);
  const Verdict b = decide_drpp(inst, cfg);
  CHECK(same_verdict(a, b));

  DriverConfig wide = cfg;
  wide.threads = 4;
  const Verdict c = decide_drpp(inst, wide);
  CHECK(same_verdict(a, c));

  DriverConfig other = cfg;
  other.seed = 22;
  const Verdict d = decide_drpp(inst, other);
  CHECK(d.yes == a.yes);  // the answer is stable even though the draws differ
}

TEST_CASE("repetitions only widen the YES set and square the failure bound") {
  DriverConfig one;
  one.seed = 31;
  one.repetitions = 1;
  DriverConfig two = one;
  two.repetitions = 2;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GenParams p;
    p.kind = Kind::Ee;
    p.n = 4;
    p.k = 2;
    p.budget = static_cast<std::int64_t>(seed % 4);
    p.density = 0.5;
    p.seed = seed * 3;
    p.oracle_compatible = true;
    const auto ee = std::get<EeInstance>(generate_instance(p));
    const Verdict v1 = decide_ee(ee, one);
    const Verdict v2 = decide_ee(ee, two);
    if (v1.yes) CHECK(v2.yes);  // round one is a prefix of the two-round run
    if (!v2.yes) {
      CHECK(v2.failure_bound == doctest::Approx(v1.failure_bound * v1.failure_bound));
    }
  }
}

TEST_CASE("min_extension_weight equals the oracle optimum on random instances") {
  DriverConfig cfg;
  cfg.repetitions = 1;
  int checked = 0;
  for (std::uint64_t seed = 1; checked < 60; ++seed) {
    GenParams p;
    p.kind = seed % 2 ? Kind::Drpp : Kind::Urpp;
    p.n = 5 + static_cast<int>(seed % 3);
    p.k = 1 + static_cast<int>(seed % 3);
    p.budget = static_cast<std::int64_t>(seed % 9);
    p.density = 0.4;
    p.weight_max = 4;
    p.seed = seed * 101;
    p.oracle_compatible = true;
    const auto inst = std::get<RppInstance>(generate_instance(p));
    cfg.seed = seed;
    const Verdict v = inst.directed ? decide_drpp(inst, cfg) : decide_urpp(inst, cfg);
    const auto oracle_opt = oracle::brute_force_ee(normalize_for_sieve(rpp_to_ee(inst)));
    ++checked;
    CHECK(v.yes == oracle_opt.has_value());
    if (v.yes) CHECK(v.min_extension_weight == oracle_opt);
  }
}

TEST_CASE("a too-small field is rejected up front") {
  // m*(budget+1) + 2 above 2^8 makes r = 8 unusable
  GenParams p;
  p.kind = Kind::Ee;
  p.n = 6;
  p.k = 2;
  p.budget = 50;
  p.density = 0.8;
  p.seed = 4;
  const auto ee = std::get<EeInstance>(generate_instance(p));
  DriverConfig cfg;
  cfg.field_bits = 8;
  CHECK_THROWS_AS(decide_ee(ee, cfg), std::invalid_argument);
  cfg.field_bits = 32;
  CHECK_NOTHROW(decide_ee(ee, cfg));
}

TEST_CASE("smaller fields still decide correctly, just with weaker bounds") {
  DriverConfig cfg;
  cfg.field_bits = 16;
  cfg.seed = 17;
  const Verdict v = decide_drpp(two_arcs_instance(2), cfg);
  CHECK(v.yes);
  CHECK(v.min_extension_weight == 2);
  const Verdict no = decide_drpp(two_arcs_instance(1), cfg);
  CHECK_FALSE(no.yes);
  CHECK(no.failure_bound > 0.0);
}
