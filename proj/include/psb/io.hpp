#pragma once

// JSON, CSV and DOT forms of encodings, witnesses, skeletons, paths,
// distance matrices and solutions.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "psb/adjacency.hpp"
#include "psb/analysis.hpp"
#include "psb/core.hpp"
#include "psb/literal.hpp"
#include "psb/oracle.hpp"
#include "psb/solver.hpp"

namespace psb {

using json = nlohmann::json;

inline std::string bit_string(const PsbEncoding& e) {
  std::string s;
  for (auto b : e.bits) s.push_back(b ? '1' : '0');
  return s;
}

// {"n": 8, "bits": "101101", "sb": [5]}
inline void to_json(json& j, const PsbEncoding& e) { j = json{{"n", e.n}, {"bits", bit_string(e)}, {"sb", e.sb}}; }

inline void from_json(const json& j, PsbEncoding& e) {
  try {
    e.n = j.at("n").get<int>();
    const auto bits = j.at("bits").get<std::string>();
    e.bits.clear();
    for (char c : bits) {
      if (c != '0' && c != '1') throw DomainError("bad character in bits '" + bits + "'");
      e.bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    e.sb = j.value("sb", std::vector<int>{});
  } catch (const json::exception& ex) {
    throw DomainError(std::string("malformed encoding: ") + ex.what());
  }
  require_valid(e);
}

inline json witness_json(const AdjacencyWitness& w) {
  return json{{"i", w.i()}, {"j", w.j()}, {"case", w.case_id}, {"i_a", w.i_a}, {"j_b", w.j_b}};
}

inline json path_json(const SkeletonPath& p) {
  json hops = json::array();
  for (const auto& e : p.hops) hops.push_back(to_literal(e));
  return json{{"n", p.hops.empty() ? 0 : p.hops.front().n}, {"edges", p.edges()}, {"hops", hops}};
}

inline json skeleton_json(const SkeletonGraph& g) {
  json verts = json::array();
  for (const auto& e : g.tours->tours()) verts.push_back(to_literal(e));
  json edges = json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  return json{{"n", g.n}, {"vertices", verts}, {"edges", edges}, {"method", method_name(g.method)}};
}

/// Inverse of skeleton_json. Vertices must list every tour of size n in
/// canonical order, so ids agree with build_skeleton.
inline SkeletonGraph skeleton_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    auto ts = std::make_shared<const TourSet>(n);
    const auto verts = j.at("vertices").get<std::vector<std::string>>();
    if (verts.size() != ts->size()) throw DomainError("vertex count does not match n");
    for (std::size_t k = 0; k < verts.size(); ++k)
      if (parse_literal(verts[k]) != (*ts)[k]) throw DomainError("vertex " + std::to_string(k) + " out of order");
    SkeletonGraph g{n, ts, std::vector<std::vector<int>>(ts->size()), parse_method(j.at("method").get<std::string>())};
    const int count = static_cast<int>(ts->size());
    for (const auto& e : j.at("edges")) {
      const int a = e.at(0).get<int>(), b = e.at(1).get<int>();
      if (a < 0 || b < 0 || a >= count || b >= count || a == b) throw DomainError("bad edge in skeleton");
      g.adjacency[a].push_back(b);
      g.adjacency[b].push_back(a);
    }
    for (auto& nb : g.adjacency) std::sort(nb.begin(), nb.end());
    return g;
  } catch (const json::exception& ex) {
    throw DomainError(std::string("malformed skeleton: ") + ex.what());
  }
}

inline void write_edgelist(std::ostream& os, const SkeletonGraph& g) {
  os << "id_a,id_b\n";
  for (auto [a, b] : g.edges()) os << a << ',' << b << '\n';
}

inline void write_dot(std::ostream& os, const SkeletonGraph& g) {
  os << "graph psb" << g.n << " {\n";
  for (std::size_t k = 0; k < g.vertex_count(); ++k)
    os << "  " << k << " [label=\"" << to_literal((*g.tours)[k]) << "\"];\n";
  for (auto [a, b] : g.edges()) os << "  " << a << " -- " << b << ";\n";
  os << "}\n";
}

// Distance matrices

inline DistanceMatrix matrix_from_json(const json& j) {
  try {
    const auto rows = j.at("cost").get<std::vector<std::vector<double>>>();
    if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(rows.size()))
      throw DomainError("\"n\" does not match the number of cost rows");
    return DistanceMatrix(rows);
  } catch (const json::exception& ex) {
    throw DomainError(std::string("malformed matrix: ") + ex.what());
  }
}

inline json matrix_json(const DistanceMatrix& m) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.n()));
  for (int a = 1; a <= m.n(); ++a)
    for (int b = 1; b <= m.n(); ++b) rows[a - 1].push_back(a == b ? 0.0 : m(a, b));
  return json{{"n", m.n()}, {"cost", rows}};
}

/// n rows of n comma-separated numbers; blank lines are skipped.
inline DistanceMatrix matrix_from_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw DomainError("bad matrix entry '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return DistanceMatrix(rows);
}

/// JSON when the first non-blank character is '{', CSV otherwise.
inline DistanceMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open matrix file '" + path + "'");
  in >> std::ws;
  if (in.peek() == '{') {
    try {
      return matrix_from_json(json::parse(in));
    } catch (const json::parse_error& ex) {
      throw DomainError(std::string("malformed matrix: ") + ex.what());
    }
  }
  return matrix_from_csv(in);
}

inline json solution_json(const Solution& s) {
  return json{{"tour", s.tour.seq},
              {"encoding", s.encoding ? json(to_literal(*s.encoding)) : json(nullptr)},
              {"cost", s.cost},
              {"method", solve_method_name(s.method)}};
}

inline Solution solution_from_json(const json& j) {
  try {
    Solution s;
    s.tour.seq = j.at("tour").get<std::vector<int>>();
    s.tour.n = static_cast<int>(s.tour.seq.size());
    check_tour(s.tour);
    if (!j.at("encoding").is_null()) s.encoding = parse_literal(j.at("encoding").get<std::string>());
    s.cost = j.at("cost").get<double>();
    s.method = parse_solve_method(j.at("method").get<std::string>());
    return s;
  } catch (const json::exception& ex) {
    throw DomainError(std::string("malformed solution: ") + ex.what());
  }
}

}  // namespace psb
