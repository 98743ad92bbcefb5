#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <tuple>

#include "rpp/instances.hpp"

namespace rpp {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    ++number;
    if (std::size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
      if (i > start) line.tokens.push_back(raw.substr(start, i - start));
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  return lines;
}

std::int64_t parse_number(const Line& line, std::size_t idx, std::int64_t lo, std::int64_t hi,
                          const char* what) {
  if (idx >= line.tokens.size()) throw ParseError(line.number, std::string("missing ") + what);
  std::string_view tok = line.tokens[idx];
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line.number, std::string("malformed ") + what);
  }
  if (value < lo || value > hi) {
    throw ParseError(line.number, std::string(what) + " out of range");
  }
  return value;
}

int parse_vertex(const Line& line, std::size_t idx, int n) {
  if (n < 0) throw ParseError(line.number, "vertex reference before the vertices directive");
  return static_cast<int>(parse_number(line, idx, 1, n, "vertex id")) - 1;
}

void expect_arity(const Line& line, std::size_t arity) {
  if (line.tokens.size() != arity + 1) {
    throw ParseError(line.number, "wrong number of fields for '" + std::string(line.tokens[0]) + "'");
  }
}

constexpr std::int64_t kMaxWeight = std::int64_t{1} << 40;

}  // namespace

Instance parse_instance(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty instance file");

  Kind kind;
  {
    const Line& first = lines.front();
    if (first.tokens[0] != "kind") throw ParseError(first.number, "instance must start with a kind line");
    expect_arity(first, 1);
    std::string_view k = first.tokens[1];
    if (k == "drpp") kind = Kind::Drpp;
    else if (k == "urpp") kind = Kind::Urpp;
    else if (k == "ee") kind = Kind::Ee;
    else if (k == "uee") kind = Kind::Uee;
    else if (k == "cbm") kind = Kind::Cbm;
    else if (k == "cgm") kind = Kind::Cgm;
    else throw ParseError(first.number, "unknown kind '" + std::string(k) + "'");
  }
  const bool rpp_kind = kind == Kind::Drpp || kind == Kind::Urpp;
  const bool ee_kind = kind == Kind::Ee || kind == Kind::Uee;
  const bool cbm_kind = kind == Kind::Cbm || kind == Kind::Cgm;

  int n = -1;
  std::int64_t budget = -1;
  int budget_line = 0;
  std::vector<Arc> arcs;
  std::vector<std::pair<int, int>> required;
  std::vector<std::tuple<int, int, std::int64_t, int>> weight_lines;  // u, v, w, line
  std::vector<std::pair<int, int>> part_lines;                        // vertex, class (0-based)
  std::vector<std::pair<int, char>> side_lines;
  std::vector<CbmInstance::Edge> edges;
  std::vector<std::pair<int, int>> requests;

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const std::string_view head = line.tokens[0];
    if (head == "vertices") {
      expect_arity(line, 1);
      if (n >= 0) throw ParseError(line.number, "duplicate vertices directive");
      n = static_cast<int>(parse_number(line, 1, 1, 1 << 20, "vertex count"));
    } else if (head == "budget") {
      expect_arity(line, 1);
      if (budget >= 0) throw ParseError(line.number, "duplicate budget directive");
      budget = parse_number(line, 1, 0, kMaxWeight, "budget");
      budget_line = line.number;
    } else if (head == "arc") {
      if (!rpp_kind) throw ParseError(line.number, "'arc' is only valid for drpp/urpp instances");
      expect_arity(line, 4);
      Arc a;
      a.tail = parse_vertex(line, 1, n);
      a.head = parse_vertex(line, 2, n);
      a.weight = parse_number(line, 3, 0, kMaxWeight, "weight");
      a.required = parse_number(line, 4, 0, 1, "required flag") != 0;
      arcs.push_back(a);
    } else if (head == "req") {
      if (!ee_kind) throw ParseError(line.number, "'req' is only valid for ee/uee instances");
      expect_arity(line, 2);
      required.emplace_back(parse_vertex(line, 1, n), parse_vertex(line, 2, n));
    } else if (head == "w") {
      if (!ee_kind) throw ParseError(line.number, "'w' is only valid for ee/uee instances");
      expect_arity(line, 3);
      int u = parse_vertex(line, 1, n);
      int v = parse_vertex(line, 2, n);
      if (u == v) throw ParseError(line.number, "extension weight of a vertex with itself");
      weight_lines.emplace_back(u, v, parse_number(line, 3, 0, kMaxWeight, "weight"), line.number);
    } else if (head == "part") {
      if (!cbm_kind) throw ParseError(line.number, "'part' is only valid for cbm/cgm instances");
      expect_arity(line, 2);
      int v = parse_vertex(line, 1, n);
      part_lines.emplace_back(v, static_cast<int>(parse_number(line, 2, 1, n, "class id")) - 1);
    } else if (head == "edge") {
      if (!cbm_kind) throw ParseError(line.number, "'edge' is only valid for cbm/cgm instances");
      expect_arity(line, 3);
      CbmInstance::Edge e;
      e.u = parse_vertex(line, 1, n);
      e.v = parse_vertex(line, 2, n);
      if (e.u == e.v) throw ParseError(line.number, "self-loop edge");
      e.weight = parse_number(line, 3, 0, kMaxWeight, "weight");
      edges.push_back(e);
    } else if (head == "conjoin") {
      if (!cbm_kind) throw ParseError(line.number, "'conjoin' is only valid for cbm/cgm instances");
      expect_arity(line, 2);
      int i = static_cast<int>(parse_number(line, 1, 1, 1 << 20, "class id")) - 1;
      int j = static_cast<int>(parse_number(line, 2, 1, 1 << 20, "class id")) - 1;
      if (i == j) throw ParseError(line.number, "request must join two distinct classes");
      requests.emplace_back(std::min(i, j), std::max(i, j));
    } else if (head == "side") {
      if (kind != Kind::Cbm) throw ParseError(line.number, "'side' is only valid for cbm instances");
      expect_arity(line, 2);
      int v = parse_vertex(line, 1, n);
      std::string_view s = line.tokens[2];
      if (s != "L" && s != "R") throw ParseError(line.number, "side must be L or R");
      side_lines.emplace_back(v, s[0]);
    } else {
      throw ParseError(line.number, "unknown directive '" + std::string(head) + "'");
    }
  }

  if (n < 0) throw ParseError(lines.back().number, "missing vertices directive");
  if (budget < 0) throw ParseError(lines.back().number, "missing budget directive");

  if (rpp_kind) {
    RppInstance inst;
    inst.directed = kind == Kind::Drpp;
    inst.n = n;
    inst.budget = budget;
    inst.arcs = std::move(arcs);
    return inst;
  }

  if (ee_kind) {
    EeInstance inst;
    inst.directed = kind == Kind::Ee;
    inst.n = n;
    inst.budget = budget;
    inst.required = std::move(required);
    inst.weight.assign(static_cast<std::size_t>(n) * n, budget + 1);
    for (int v = 0; v < n; ++v) inst.weight[static_cast<std::size_t>(v) * n + v] = 0;
    std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
    for (auto [u, v, c, ln] : weight_lines) {
      auto& flag = seen[static_cast<std::size_t>(u) * n + v];
      if (flag) throw ParseError(ln, "duplicate extension weight for the same pair");
      flag = 1;
      inst.weight[static_cast<std::size_t>(u) * n + v] = c;
      if (!inst.directed) {
        seen[static_cast<std::size_t>(v) * n + u] = 1;
        inst.weight[static_cast<std::size_t>(v) * n + u] = c;
      }
    }
    inst.origin.resize(n);
    std::iota(inst.origin.begin(), inst.origin.end(), 0);
    return inst;
  }

  CbmInstance inst;
  inst.bipartite = kind == Kind::Cbm;
  inst.n = n;
  inst.budget = budget;
  inst.part.assign(n, -1);
  for (auto [v, c] : part_lines) inst.part[v] = c;
  for (int v = 0; v < n; ++v) {
    if (inst.part[v] < 0) {
      throw ParseError(budget_line, "vertex " + std::to_string(v + 1) + " has no part line");
    }
  }
  inst.classes = *std::max_element(inst.part.begin(), inst.part.end()) + 1;
  if (inst.bipartite) {
    inst.side.assign(n, 0);
    for (auto [v, s] : side_lines) inst.side[v] = s;
    for (int v = 0; v < n; ++v) {
      if (inst.side[v] == 0) {
        throw ParseError(budget_line, "vertex " + std::to_string(v + 1) + " has no side line");
      }
    }
  }
  inst.edges = std::move(edges);
  inst.requests = std::move(requests);
  return inst;
}

Kind kind_of(const Instance& inst) {
  if (const auto* r = std::get_if<RppInstance>(&inst)) return r->directed ? Kind::Drpp : Kind::Urpp;
  if (const auto* e = std::get_if<EeInstance>(&inst)) return e->directed ? Kind::Ee : Kind::Uee;
  return std::get<CbmInstance>(inst).bipartite ? Kind::Cbm : Kind::Cgm;
}

std::string serialize(const RppInstance& inst) {
  std::ostringstream out;
  out << "kind " << (inst.directed ? "drpp" : "urpp") << "\n";
  out << "vertices " << inst.n << "\n";
  out << "budget " << inst.budget << "\n";
  for (const Arc& a : inst.arcs) {
    out << "arc " << a.tail + 1 << " " << a.head + 1 << " " << a.weight << " " << (a.required ? 1 : 0)
        << "\n";
  }
  return out.str();
}

std::string serialize(const EeInstance& inst) {
  std::ostringstream out;
  out << "kind " << (inst.directed ? "ee" : "uee") << "\n";
  out << "vertices " << inst.n << "\n";
  out << "budget " << inst.budget << "\n";
  for (auto [u, v] : inst.required) out << "req " << u + 1 << " " << v + 1 << "\n";
  for (int u = 0; u < inst.n; ++u) {
    for (int v = inst.directed ? 0 : u + 1; v < inst.n; ++v) {
      if (u == v) continue;
      if (inst.w(u, v) != inst.cap()) {
        out << "w " << u + 1 << " " << v + 1 << " " << inst.w(u, v) << "\n";
      }
    }
  }
  return out.str();
}

std::string serialize(const CbmInstance& inst) {
  std::ostringstream out;
  out << "kind " << (inst.bipartite ? "cbm" : "cgm") << "\n";
  out << "vertices " << inst.n << "\n";
  out << "budget " << inst.budget << "\n";
  for (int v = 0; v < inst.n; ++v) out << "part " << v + 1 << " " << inst.part[v] + 1 << "\n";
  if (inst.bipartite) {
    for (int v = 0; v < inst.n; ++v) out << "side " << v + 1 << " " << inst.side[v] << "\n";
  }
  for (const auto& e : inst.edges) {
    out << "edge " << e.u + 1 << " " << e.v + 1 << " " << e.weight << "\n";
  }
  for (auto [i, j] : inst.requests) out << "conjoin " << i + 1 << " " << j + 1 << "\n";
  return out.str();
}

std::string serialize(const Instance& inst) {
  return std::visit([](const auto& x) { return serialize(x); }, inst);
}

}  // namespace rpp
