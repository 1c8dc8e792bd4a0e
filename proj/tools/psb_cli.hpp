#pragma once

// Command-line front end. run() is the whole program minus main, so tests
// can drive it with captured streams.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "psb/psb.hpp"

namespace psb::cli {

enum class Format { Text, Json, Csv };

struct RunConfig {
  std::string format = "text";
  int n = 0;
  std::string x, y;
  std::string method = "fast";
  bool witness = false;
  std::string out;
  std::string export_kind;
  bool construct = false;
  bool exact = false;
  std::size_t cap = kDefaultCliqueVertexCap;
  std::string matrix;
  std::string solve_method = "dp";
  int max_n = 7;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw UsageError("unknown format '" + s + "'");
}

inline PsbEncoding read_encoding(const std::string& literal, int n, const char* flag) {
  PsbEncoding e = parse_literal(literal);
  if (e.n != n)
    throw DomainError(std::string(flag) + " has " + std::to_string(e.bits.size()) + " bits, --n " +
                      std::to_string(n) + " needs " + std::to_string(n - 2));
  return e;
}

inline void require_n(int n) {
  if (n < 3) throw DomainError("--n must be at least 3");
}

inline std::string join(const std::vector<int>& v, char sep) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s.push_back(sep);
    s += std::to_string(v[k]);
  }
  return s;
}

inline void cmd_count(const RunConfig& c, Format f, std::ostream& out) {
  require_n(c.n);
  const auto total = count_encodings(c.n);
  switch (f) {
    case Format::Text: out << total << '\n'; break;
    case Format::Json: out << json{{"n", c.n}, {"count", total}}.dump() << '\n'; break;
    case Format::Csv: out << "n,count\n" << c.n << ',' << total << '\n'; break;
  }
}

// One line per tour, streamed.
inline void cmd_enumerate(const RunConfig& c, Format f, std::ostream& out) {
  require_n(c.n);
  if (f == Format::Csv) out << "id,literal,tour\n";
  std::uint64_t id = 0;
  for_each_encoding(c.n, [&](const PsbEncoding& e) {
    switch (f) {
      case Format::Text: out << to_literal(e) << '\n'; break;
      case Format::Json: out << json(e).dump() << '\n'; break;
      case Format::Csv: out << id << ',' << to_literal(e) << ',' << join(decode(e).seq, ' ') << '\n'; break;
    }
    ++id;
  });
}

inline void cmd_adjacency(const RunConfig& c, Format f, std::ostream& out) {
  require_n(c.n);
  const auto x = read_encoding(c.x, c.n, "--x");
  const auto y = read_encoding(c.y, c.n, "--y");
  const Method m = parse_method(c.method);
  require_within_cap(c.n, m, oracle_max_n());
  if (x == y) throw DomainError("adjacency of a vertex with itself is undefined");

  std::optional<AdjacencyWitness> w;
  std::optional<PairWitness> pw;
  bool adj = false;
  switch (m) {
    case Method::Fast: w = nonadj_fast(x, y); adj = !w; break;
    case Method::Exhaustive: w = nonadj_exhaustive(x, y); adj = !w; break;
    case Method::Oracle:
      pw = pair_oracle(x, y, std::make_shared<const TourSet>(c.n));
      adj = !pw;
      break;
  }
  const char* verdict = adj ? "adjacent" : "non-adjacent";
  if (f == Format::Json) {
    json j{{"x", c.x}, {"y", c.y}, {"method", method_name(m)}, {"adjacent", adj}};
    if (c.witness && w) j["witness"] = witness_json(*w);
    if (c.witness && pw) j["witness"] = json{{"z", to_literal(pw->z)}, {"t", to_literal(pw->t)}};
    out << j.dump() << '\n';
    return;
  }
  if (f == Format::Csv) {
    out << "x,y,method,adjacent";
    if (c.witness) out << (m == Method::Oracle ? ",z,t" : ",i,j,case,i_a,j_b");
    out << '\n' << c.x << ',' << c.y << ',' << method_name(m) << ',' << (adj ? 1 : 0);
    if (c.witness && w) out << ',' << w->i() << ',' << w->j() << ',' << w->case_id << ',' << w->i_a << ',' << w->j_b;
    if (c.witness && pw) out << ',' << to_literal(pw->z) << ',' << to_literal(pw->t);
    if (c.witness && adj) out << (m == Method::Oracle ? ",," : ",,,,,");
    out << '\n';
    return;
  }
  out << verdict << '\n';
  if (!c.witness) return;
  if (w)
    out << "witness case " << w->case_id << ": i=" << w->i() << " j=" << w->j() << " i_a=" << w->i_a
        << " j_b=" << w->j_b << " (" << block_name(w->left.kind) << ", " << block_name(w->right.kind) << ")\n";
  if (pw) out << "witness z=" << to_literal(pw->z) << " t=" << to_literal(pw->t) << '\n';
}

inline void cmd_skeleton(const RunConfig& c, Format f, std::ostream& out) {
  require_n(c.n);
  const auto g = build_skeleton(c.n, parse_method(c.method));
  std::string kind = c.export_kind;
  if (kind.empty() && !c.out.empty()) kind = "json";

  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) throw DomainError("cannot write '" + c.out + "'");
  }
  std::ostream& dst = c.out.empty() ? out : file;
  if (kind == "edgelist") {
    write_edgelist(dst, g);
  } else if (kind == "dot") {
    write_dot(dst, g);
  } else if (kind == "json") {
    dst << skeleton_json(g).dump() << '\n';
  } else if (!kind.empty()) {
    throw UsageError("unknown export '" + kind + "'");
  }
  if (!kind.empty() && !c.out.empty()) file.close();
  if (!kind.empty() && c.out.empty()) return;

  switch (f) {
    case Format::Text:
      out << "n=" << g.n << " vertices=" << g.vertex_count() << " edges=" << g.edge_count()
          << " method=" << method_name(g.method) << '\n';
      break;
    case Format::Json:
      out << json{{"n", g.n}, {"vertices", g.vertex_count()}, {"edges", g.edge_count()}, {"method", method_name(g.method)}}
                 .dump()
          << '\n';
      break;
    case Format::Csv:
      out << "n,vertices,edges,method\n"
          << g.n << ',' << g.vertex_count() << ',' << g.edge_count() << ',' << method_name(g.method) << '\n';
      break;
  }
}

inline void cmd_diameter(const RunConfig& c, Format f, std::ostream& out) {
  require_n(c.n);
  const auto g = build_skeleton(c.n, parse_method(c.method));
  const int d = diameter(g);
  switch (f) {
    case Format::Text: out << "n=" << c.n << " vertices=" << g.vertex_count() << " diameter=" << d << '\n'; break;
    case Format::Json:
      out << json{{"n", c.n}, {"vertices", g.vertex_count()}, {"diameter", d}, {"method", method_name(g.method)}}.dump()
          << '\n';
      break;
    case Format::Csv: out << "n,vertices,diameter\n" << c.n << ',' << g.vertex_count() << ',' << d << '\n'; break;
  }
}

inline void print_members(const std::vector<PsbEncoding>& members, const char* kind, int n, Format f,
                          std::ostream& out) {
  switch (f) {
    case Format::Text:
      out << kind << " clique n=" << n << " size=" << members.size() << '\n';
      for (const auto& e : members) out << to_literal(e) << '\n';
      break;
    case Format::Json: {
      json lits = json::array();
      for (const auto& e : members) lits.push_back(to_literal(e));
      out << json{{"n", n}, {"kind", kind}, {"size", members.size()}, {"members", lits}}.dump() << '\n';
      break;
    }
    case Format::Csv:
      out << "index,literal\n";
      for (std::size_t k = 0; k < members.size(); ++k) out << k << ',' << to_literal(members[k]) << '\n';
      break;
  }
}

inline void cmd_clique(const RunConfig& c, Format f, std::ostream& out) {
  if (c.construct && c.exact) throw UsageError("--construct and --exact are exclusive");
  require_n(c.n);
  if (c.exact) {
    // refuse before building the skeleton
    if (count_encodings(c.n) > c.cap)
      throw CapExceeded("max clique is capped at " + std::to_string(c.cap) + " vertices, n=" + std::to_string(c.n) +
                        " has " + std::to_string(count_encodings(c.n)));
    const auto g = build_skeleton(c.n, Method::Fast);
    const auto r = max_clique(g, c.cap);
    std::vector<PsbEncoding> members;
    for (int v : r.members) members.push_back((*g.tours)[static_cast<std::size_t>(v)]);
    print_members(members, "exact", c.n, f, out);
    return;
  }
  print_members(clique_construction(c.n).members, "constructed", c.n, f, out);
}

inline void cmd_path(const RunConfig& c, Format f, std::ostream& out) {
  require_n(c.n);
  const auto p = four_hop_path(read_encoding(c.x, c.n, "--x"), read_encoding(c.y, c.n, "--y"));
  switch (f) {
    case Format::Text:
      out << "edges=" << p.edges() << '\n';
      for (const auto& e : p.hops) out << to_literal(e) << '\n';
      break;
    case Format::Json: out << path_json(p).dump() << '\n'; break;
    case Format::Csv:
      out << "hop,literal\n";
      for (std::size_t k = 0; k < p.hops.size(); ++k) out << k << ',' << to_literal(p.hops[k]) << '\n';
      break;
  }
}

inline void cmd_solve(const RunConfig& c, Format f, std::ostream& out) {
  const auto s = solve(load_matrix(c.matrix), parse_solve_method(c.solve_method));
  std::ostringstream cost;
  cost << std::setprecision(17) << s.cost;
  const std::string lit = s.encoding ? to_literal(*s.encoding) : "";
  switch (f) {
    case Format::Text:
      out << "cost " << cost.str() << "\ntour " << join(s.tour.seq, ' ') << "\nencoding "
          << (s.encoding ? lit : "none") << "\nmethod " << solve_method_name(s.method) << '\n';
      break;
    case Format::Json: out << solution_json(s).dump() << '\n'; break;
    case Format::Csv:
      out << "cost,tour,encoding,method\n"
          << cost.str() << ',' << join(s.tour.seq, ' ') << ',' << lit << ',' << solve_method_name(s.method) << '\n';
      break;
  }
}

// Returns false when anything disagrees.
inline bool cmd_selftest(const RunConfig& c, Format f, std::ostream& out) {
  if (c.max_n < 3) throw DomainError("--max-n must be at least 3");
  require_within_cap(c.max_n, Method::Oracle, oracle_max_n());
  bool ok = true;
  json rows = json::array();
  if (f == Format::Csv) out << "n,tours,pairs,adjacent,disagreements,invariant_failures\n";
  for (int n = 3; n <= c.max_n; ++n) {
    const auto eq = check_equivalence(n);
    const auto inv = check_invariants(n);
    ok = ok && eq.disagreements == 0 && inv.empty();
    const auto tours = count_encodings(n);
    switch (f) {
      case Format::Text:
        out << "n=" << n << " tours=" << tours << " pairs=" << eq.pairs << " adjacent=" << eq.adjacent_pairs
            << " disagreements=" << eq.disagreements << " invariant_failures=" << inv.size() << '\n';
        for (const auto& s : eq.samples) out << "  " << s << '\n';
        for (std::size_t k = 0; k < inv.size() && k < 5; ++k) out << "  " << inv[k] << '\n';
        break;
      case Format::Json:
        rows.push_back(json{{"n", n},
                            {"tours", tours},
                            {"pairs", eq.pairs},
                            {"adjacent", eq.adjacent_pairs},
                            {"disagreements", eq.disagreements},
                            {"invariant_failures", inv.size()}});
        break;
      case Format::Csv:
        out << n << ',' << tours << ',' << eq.pairs << ',' << eq.adjacent_pairs << ',' << eq.disagreements << ','
            << inv.size() << '\n';
        break;
    }
  }
  if (f == Format::Json) out << json{{"ok", ok}, {"sizes", rows}}.dump() << '\n';
  if (f == Format::Text) out << (ok ? "selftest passed" : "selftest FAILED") << '\n';
  return ok;
}

/// Exit status: 0 success, 1 domain error or failed selftest, 2 usage error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pyramidal tours with step-backs: encodings, 1-skeleton adjacency, analysis and solving", "psb"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  RunConfig c;
  app.add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();

  const auto method_check = CLI::IsMember({"fast", "exhaustive", "oracle"});

  auto* count = app.add_subcommand("count", "Number of tours of size n");
  count->add_option("--n", c.n, "Number of cities")->required();

  auto* enumerate = app.add_subcommand("enumerate", "List every tour in canonical order");
  enumerate->add_option("--n", c.n, "Number of cities")->required();

  auto* adjacency = app.add_subcommand("adjacency", "Test whether two tours are adjacent vertices");
  adjacency->add_option("--n", c.n, "Number of cities")->required();
  adjacency->add_option("--x", c.x, "First encoding literal")->required();
  adjacency->add_option("--y", c.y, "Second encoding literal")->required();
  adjacency->add_option("--method", c.method, "fast, exhaustive or oracle")->check(method_check);
  adjacency->add_flag("--witness", c.witness, "Print the non-adjacency certificate");

  auto* skeleton = app.add_subcommand("skeleton", "Build the 1-skeleton");
  skeleton->add_option("--n", c.n, "Number of cities")->required();
  skeleton->add_option("--method", c.method, "fast, exhaustive or oracle")->check(method_check);
  skeleton->add_option("--out", c.out, "Write the export to a file");
  skeleton->add_option("--export", c.export_kind, "edgelist, dot or json")
      ->check(CLI::IsMember({"edgelist", "dot", "json"}));

  auto* diam = app.add_subcommand("diameter", "Exact diameter of the 1-skeleton");
  diam->add_option("--n", c.n, "Number of cities")->required();
  diam->add_option("--method", c.method, "fast, exhaustive or oracle")->check(method_check);

  auto* clique = app.add_subcommand("clique", "Constructed or exact maximum clique");
  clique->add_option("--n", c.n, "Number of cities")->required();
  auto* construct = clique->add_flag("--construct", c.construct, "floor(n/2)^2 family (default)");
  auto* exact = clique->add_flag("--exact", c.exact, "Exact maximum clique");
  construct->excludes(exact);
  clique->add_option("--cap", c.cap, "Vertex cap for --exact")->capture_default_str();

  auto* path = app.add_subcommand("path", "Path of at most four edges between two tours");
  path->add_option("--n", c.n, "Number of cities")->required();
  path->add_option("--x", c.x, "First encoding literal")->required();
  path->add_option("--y", c.y, "Second encoding literal")->required();

  auto* solve_cmd = app.add_subcommand("solve", "Cheapest tour for a distance matrix");
  solve_cmd->add_option("--matrix", c.matrix, "CSV or JSON matrix file")->required();
  solve_cmd->add_option("--method", c.solve_method, "dp, enum or atsp-brute")
      ->check(CLI::IsMember({"dp", "enum", "atsp-brute"}));

  auto* selftest = app.add_subcommand("selftest", "Three-way adjacency equivalence and invariants");
  selftest->add_option("--max-n", c.max_n, "Largest size checked")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const Format f = parse_format(c.format);
    if (count->parsed()) cmd_count(c, f, out);
    else if (enumerate->parsed()) cmd_enumerate(c, f, out);
    else if (adjacency->parsed()) cmd_adjacency(c, f, out);
    else if (skeleton->parsed()) cmd_skeleton(c, f, out);
    else if (diam->parsed()) cmd_diameter(c, f, out);
    else if (clique->parsed()) cmd_clique(c, f, out);
    else if (path->parsed()) cmd_path(c, f, out);
    else if (solve_cmd->parsed()) cmd_solve(c, f, out);
    else if (selftest->parsed()) return cmd_selftest(c, f, out) ? 0 : 1;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const VerificationFailure& e) {
    err << "internal check failed: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace psb::cli
