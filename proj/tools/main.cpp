#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rpp/driver.hpp"
#include "rpp/generator.hpp"
#include "rpp/instances.hpp"
#include "rpp/linalg.hpp"
#include "rpp/oracle.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_error_bound(double fb) {
  if (fb <= 0.0) return "0";
  if (fb >= 1.0) return "1";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "2^-%.1f", -std::log2(fb));
  return buf;
}

const char* kind_name(rpp::Kind k) {
  switch (k) {
    case rpp::Kind::Drpp: return "drpp";
    case rpp::Kind::Urpp: return "urpp";
    case rpp::Kind::Ee: return "ee";
    case rpp::Kind::Uee: return "uee";
    case rpp::Kind::Cbm: return "cbm";
    case rpp::Kind::Cgm: return "cgm";
  }
  return "?";
}

rpp::Kind kind_from_name(const std::string& name) {
  if (name == "drpp") return rpp::Kind::Drpp;
  if (name == "urpp") return rpp::Kind::Urpp;
  if (name == "ee") return rpp::Kind::Ee;
  if (name == "uee") return rpp::Kind::Uee;
  if (name == "cbm") return rpp::Kind::Cbm;
  if (name == "cgm") return rpp::Kind::Cgm;
  throw CLI::ValidationError("kind", "unknown kind '" + name + "'");
}

void print_summary(const rpp::Verdict& v) {
  std::cout << "answer=" << (v.yes ? "YES" : "NO") << " min_weight="
            << (v.min_extension_weight ? std::to_string(*v.min_extension_weight) : "-")
            << " error_bound=" << format_error_bound(v.failure_bound) << " k=" << v.k
            << " seed=" << v.seed << "\n";
}

void print_verbose(const rpp::Verdict& v, rpp::Kind kind, std::uint64_t digest, unsigned threads) {
  std::printf("# kind=%s digest=%016llx m=%zu L=%lld r=%u t=%u threads=%u\n", kind_name(kind),
              static_cast<unsigned long long>(digest), v.matching_size,
              static_cast<long long>(v.degree_bound), v.field_bits, v.repetitions, threads);
  std::printf("# times reduce=%.1fms path_table=%.1fms sieve=%.1fms interpolate=%.1fms\n",
              v.times.reduce_ms, v.times.path_table_ms, v.times.sieve_ms, v.times.interpolate_ms);
}

struct OracleComparison {
  std::optional<std::int64_t> oracle;  // optimum within budget
  bool match = false;
};

OracleComparison compare_with_oracle(const rpp::Instance& inst, const rpp::Verdict& v) {
  OracleComparison cmp;
  if (const auto* r = std::get_if<rpp::RppInstance>(&inst)) {
    if (std::none_of(r->arcs.begin(), r->arcs.end(), [](const rpp::Arc& a) { return a.required; })) {
      cmp.oracle = 0;  // nothing to cover
    } else {
      const rpp::NormalizedEe norm = rpp::normalize_for_sieve(rpp::rpp_to_ee(*r));
      cmp.oracle = rpp::oracle::brute_force_ee(norm);
    }
  } else if (const auto* e = std::get_if<rpp::EeInstance>(&inst)) {
    cmp.oracle = rpp::oracle::brute_force_ee(rpp::normalize_for_sieve(*e));
  } else {
    const auto& c = std::get<rpp::CbmInstance>(inst);
    const auto opt = c.bipartite ? rpp::oracle::brute_force_cbm(c) : rpp::oracle::brute_force_cgm(c);
    if (opt && *opt <= c.budget) cmp.oracle = *opt;
  }
  cmp.match = (v.yes == cmp.oracle.has_value()) &&
              (!v.yes || v.min_extension_weight == cmp.oracle);
  return cmp;
}

int cmd_solve(const std::string& path, const rpp::DriverConfig& cfg, bool verbose, bool with_oracle) {
  const std::string text = read_file(path);
  const rpp::Instance inst = rpp::parse_instance(text);
  const rpp::Verdict v = rpp::decide(inst, cfg);
  if (verbose) print_verbose(v, rpp::kind_of(inst), fnv1a(text), cfg.threads);
  if (with_oracle) {
    const OracleComparison cmp = compare_with_oracle(inst, v);
    std::cout << "oracle="
              << (cmp.oracle ? std::to_string(*cmp.oracle) : std::string("infeasible"))
              << " match=" << (cmp.match ? "yes" : "NO") << "\n";
  }
  print_summary(v);
  return v.yes ? 0 : 1;
}

int cmd_oracle(const std::string& path, const rpp::DriverConfig& cfg) {
  const std::string text = read_file(path);
  const rpp::Instance inst = rpp::parse_instance(text);
  const rpp::Verdict v = rpp::decide(inst, cfg);
  const OracleComparison cmp = compare_with_oracle(inst, v);
  std::cout << "oracle=" << (cmp.oracle ? std::to_string(*cmp.oracle) : std::string("infeasible"))
            << " algebraic="
            << (v.min_extension_weight ? std::to_string(*v.min_extension_weight) : std::string("-"))
            << " mismatches=" << (cmp.match ? 0 : 1) << "\n";
  return cmp.match ? 0 : 1;
}

struct BenchRow {
  int k = 0, n = 0;
  std::size_t m = 0;
  std::int64_t points = 0;
  double median_ms = 0;
};

int cmd_bench(int k_min, int k_max, int n, std::int64_t budget, std::int64_t weight_max, int reps,
              const rpp::DriverConfig& cfg, std::uint64_t gen_seed, const std::string& csv_path) {
  std::vector<BenchRow> rows;
  for (int k = k_min; k <= k_max; ++k) {
    rpp::GenParams gp;
    gp.kind = rpp::Kind::Ee;
    gp.n = n;
    gp.k = k;
    gp.weight_max = weight_max;
    gp.density = 1.0;
    gp.budget = budget;
    gp.seed = gen_seed + static_cast<std::uint64_t>(k);
    gp.balanced_only = true;
    const rpp::Instance inst = rpp::generate_instance(gp);
    const auto& ee = std::get<rpp::EeInstance>(inst);

    std::vector<double> times;
    rpp::Verdict v;
    for (int rep = 0; rep < reps; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      v = rpp::decide_ee(ee, cfg);
      times.push_back(
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count());
    }
    std::sort(times.begin(), times.end());
    BenchRow row;
    row.k = k;
    row.n = n;
    row.m = v.matching_size;
    row.points = v.degree_bound + 1;
    row.median_ms = times[times.size() / 2];
    rows.push_back(row);
    std::fprintf(stderr, "k=%d n=%d m=%zu points=%lld median=%.1fms answer=%s\n", k, n, row.m,
                 static_cast<long long>(row.points), row.median_ms, v.yes ? "YES" : "NO");
  }

  std::ostringstream csv;
  csv << "k,n,m,L+1,r,reps,median_ms,ratio\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv << rows[i].k << "," << rows[i].n << "," << rows[i].m << "," << rows[i].points << ","
        << cfg.field_bits << "," << reps << "," << rows[i].median_ms << ",";
    if (i == 0) {
      csv << "-";
    } else {
      csv << rows[i].median_ms / rows[i - 1].median_ms;
    }
    csv << "\n";
  }
  if (csv_path.empty() || csv_path == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream out(csv_path);
    out << csv.str();
  }
  return 0;
}

int cmd_selftest(const rpp::DriverConfig& cfg) {
  int failures = 0;
  auto report = [&](const char* name, bool ok) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  };

  {
    const rpp::Field f(64);
    std::mt19937_64 rng(7);
    bool ok = true;
    for (int i = 0; i < 200 && ok; ++i) {
      const rpp::Fe a = f.sample(rng), b = f.sample(rng), c = f.sample(rng);
      ok = f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
      if (a.v != 0) ok = ok && f.mul(a, f.inv(a)) == rpp::Field::one();
      ok = ok && f.sqrt(f.mul(a, a)) == a;
    }
    report("field arithmetic identities", ok);
  }
  {
    const rpp::Field f(16);
    std::mt19937_64 rng(11);
    bool ok = true;
    for (int i = 0; i < 40 && ok; ++i) {
      const std::size_t n = 2 + 2 * (rng() % 4);
      rpp::FieldMatrix m(n, n);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = r + 1; c < n; ++c) m.at(r, c) = m.at(c, r) = f.sample(rng);
      }
      const rpp::Fe pf = rpp::pfaffian(f, m);
      ok = f.mul(pf, pf) == rpp::determinant(f, m) &&
           pf == rpp::pfaffian_by_elimination(f, m);
    }
    report("pfaffian vs determinant", ok);
  }
  {
    bool ok = true;
    for (std::uint64_t seed = 1; seed <= 20 && ok; ++seed) {
      rpp::GenParams gp;
      gp.kind = seed % 2 ? rpp::Kind::Drpp : rpp::Kind::Urpp;
      gp.n = 6;
      gp.k = 1 + static_cast<int>(seed % 3);
      gp.budget = 1 + static_cast<std::int64_t>(seed % 8);
      gp.seed = seed;
      gp.oracle_compatible = true;
      const rpp::Instance inst = rpp::generate_instance(gp);
      rpp::DriverConfig dc = cfg;
      dc.seed = seed;
      const rpp::Verdict v = rpp::decide(inst, dc);
      ok = compare_with_oracle(inst, v).match;
    }
    report("oracle agreement on random postman instances", ok);
  }
  {
    bool ok = true;
    for (std::uint64_t seed = 1; seed <= 20 && ok; ++seed) {
      rpp::GenParams gp;
      gp.kind = seed % 2 ? rpp::Kind::Cbm : rpp::Kind::Cgm;
      gp.n = 6;
      gp.k = 3;
      gp.requests = 2;
      gp.density = 0.5;
      gp.budget = 1 + static_cast<std::int64_t>(seed % 6);
      gp.seed = seed;
      const rpp::Instance inst = rpp::generate_instance(gp);
      rpp::DriverConfig dc = cfg;
      dc.seed = seed;
      const rpp::Verdict v = rpp::decide(inst, dc);
      ok = compare_with_oracle(inst, v).match;
    }
    report("oracle agreement on random matching instances", ok);
  }
  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rural postman and conjoining matching solver (algebraic sieve)"};
  app.require_subcommand(1);
  app.fallthrough();

  rpp::DriverConfig cfg;
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--field-bits", cfg.field_bits, "field extension degree")
      ->check(CLI::IsMember({8, 16, 32, 64}))
      ->capture_default_str();
  app.add_option("--reps", cfg.repetitions, "independent repetitions")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)")->capture_default_str();

  std::string file;
  bool verbose = false, with_oracle = false;
  auto* solve = app.add_subcommand("solve", "decide an instance file");
  solve->add_option("file", file, "instance file")->required();
  solve->add_flag("--verbose", verbose, "print stage breakdown");
  solve->add_flag("--oracle", with_oracle, "also run the brute-force oracle and compare");

  rpp::GenParams gp;
  std::string gen_kind = "drpp", gen_out;
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--kind", gen_kind, "drpp|urpp|ee|uee|cbm|cgm")->capture_default_str();
  gen->add_option("--n", gp.n, "vertex count")->capture_default_str();
  gen->add_option("--k", gp.k, "required components / classes")->capture_default_str();
  gen->add_option("--weight-max", gp.weight_max, "maximum weight")->capture_default_str();
  gen->add_option("--density", gp.density, "optional arc probability")->capture_default_str();
  gen->add_option("--budget", gp.budget, "extension budget")->capture_default_str();
  gen->add_option("--gen-seed", gp.seed, "generator seed")->capture_default_str();
  gen->add_option("--requests", gp.requests, "request count (cbm/cgm)")->capture_default_str();
  gen->add_flag("--oracle-compatible", gp.oracle_compatible, "stay within oracle size guards");
  gen->add_flag("--balanced-only", gp.balanced_only, "only Eulerian required pieces");
  gen->add_option("-o,--out", gen_out, "output file (default stdout)");

  auto* oracle_cmd = app.add_subcommand("oracle", "compare oracle and algebraic verdicts");
  oracle_cmd->add_option("file", file, "instance file")->required();

  int k_min = 6, k_max = 11, bench_n = 40, bench_reps = 1;
  std::int64_t bench_budget = 40, bench_wmax = 2;
  std::uint64_t bench_seed = 1000;
  std::string csv_path;
  auto* bench = app.add_subcommand("bench", "k-scaling benchmark (O*(2^k) profile)");
  bench->add_option("--k-min", k_min, "")->capture_default_str();
  bench->add_option("--k-max", k_max, "")->capture_default_str();
  bench->add_option("--n", bench_n, "")->capture_default_str();
  bench->add_option("--budget", bench_budget, "")->capture_default_str();
  bench->add_option("--weight-max", bench_wmax, "")->capture_default_str();
  bench->add_option("--bench-reps", bench_reps, "timed repetitions per k")->capture_default_str();
  bench->add_option("--gen-seed", bench_seed, "")->capture_default_str();
  bench->add_option("--csv", csv_path, "CSV output path ('-' = stdout)");

  auto* selftest = app.add_subcommand("selftest", "quick built-in consistency checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(file, cfg, verbose, with_oracle);
    if (gen->parsed()) {
      gp.kind = kind_from_name(gen_kind);
      const std::string text = rpp::generate_instance_text(gp);
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(gen_out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + gen_out);
        out << text;
      }
      return 0;
    }
    if (oracle_cmd->parsed()) return cmd_oracle(file, cfg);
    if (bench->parsed()) {
      return cmd_bench(k_min, k_max, bench_n, bench_budget, bench_wmax, bench_reps, cfg, bench_seed,
                       csv_path);
    }
    if (selftest->parsed()) return cmd_selftest(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
