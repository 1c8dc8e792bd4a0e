// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brute.hpp"
#include "psb/psb.hpp"

using namespace psb;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  Outcome out;
  void expect(bool ok, const std::string& what) {
    if (!ok && out.pass) {
      out.pass = false;
      out.detail = what;
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool has_edge(const AdjacencyList& g, int a, int b) { return std::binary_search(g[a].begin(), g[a].end(), b); }

Outcome fixtures() {
  Check c;
  const Tour sample{8, {1, 2, 5, 4, 7, 8, 6, 3}};
  c.expect(to_literal(encode(sample)) == "101101@5", "encode of the sample tour");
  c.expect(decode(parse_literal("101101@5")) == sample, "decode of 101101@5");
  const auto v = char_vector(Tour{4, {1, 2, 4, 3}});
  const std::vector<std::pair<int, int>> sample_edges{{1, 2}, {2, 4}, {3, 1}, {4, 3}};
  c.expect(v.edges == sample_edges, "char_vector of <1,2,4,3>");
  if (c.out.pass) c.out.detail = "sample tour <-> 101101@5, char_vector edge set of <1,2,4,3>";
  return c.out;
}

Outcome equivalence() {
  Check c;
  std::ostringstream d;
  for (int n = 3; n <= 8; ++n) {
    const auto r = check_equivalence(n, 8);
    c.expect(r.disagreements == 0, "n=" + std::to_string(n) + ": " + std::to_string(r.disagreements) +
                                       " disagreements, first " + (r.samples.empty() ? "" : r.samples.front()));
    d << "n=" << n << " pairs=" << r.pairs << " adjacent=" << r.adjacent_pairs << "; ";
  }
  if (c.out.pass) c.out.detail = d.str() + "0 disagreements";
  return c.out;
}

Outcome known_pairs() {
  Check c;
  auto ts = std::make_shared<const TourSet>(7);
  struct Pair {
    const char *x, *y, *z, *t;
  };
  for (const Pair p : {Pair{"11111@5", "01111", "11111", "01111@5"}, Pair{"10010@4", "10000@6", "10000@4,6", "10010"}}) {
    const auto x = parse_literal(p.x), y = parse_literal(p.y);
    const std::string tag = std::string(p.x) + " / " + p.y;
    c.expect(!adjacent(x, y), tag + ": fast test says adjacent");
    c.expect(nonadj_exhaustive(x, y).has_value(), tag + ": exhaustive search finds no witness");
    const auto w = pair_oracle(x, y, ts);
    c.expect(w.has_value(), tag + ": pair oracle finds no complementary pair");
    if (w) {
      c.expect(sums_match(x, y, w->z, w->t), tag + ": returned pair fails the sum equation");
      c.expect(w->z != x && w->z != y && w->t != x && w->t != y, tag + ": returned pair reuses x or y");
    }
    c.expect(sums_match(x, y, parse_literal(p.z), parse_literal(p.t)), tag + ": drawn pair fails the sum equation");
  }
  if (c.out.pass) c.out.detail = "both pairs non-adjacent under fast, exhaustive and oracle; witnesses exact";
  return c.out;
}

Outcome diameter_bound() {
  Check c;
  std::ostringstream d;
  for (int n = 3; n <= 8; ++n) {
    const int dia = diameter(build_skeleton(n, Method::Fast));
    c.expect(dia <= 4, "diameter of skeleton(" + std::to_string(n) + ") is " + std::to_string(dia));
    d << dia << (n < 8 ? "," : "");
  }
  for (int n : {10, 15, 20}) {
    std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(n));
    for (int k = 0; k < 100; ++k) {
      const auto x = random_encoding(n, rng());
      const auto y = random_encoding(n, rng());
      const auto p = four_hop_path(x, y);
      const std::string tag = to_literal(x) + " -> " + to_literal(y);
      c.expect(p.edges() <= 4, tag + ": path too long");
      c.expect(p.hops.front() == x && p.hops.back() == y, tag + ": wrong endpoints");
      for (std::size_t h = 0; h + 1 < p.hops.size(); ++h)
        c.expect(p.hops[h] != p.hops[h + 1] && adjacent(p.hops[h], p.hops[h + 1]), tag + ": step is not an edge");
    }
  }
  if (c.out.pass) c.out.detail = "diameters n=3..8: " + d.str() + "; 300 random paths verified";
  return c.out;
}

Outcome clique_bound() {
  Check c;
  const std::vector<std::string> expected_family = {
      "000000", "000001", "000011", "000111", "100000", "100001", "100011", "100111",
      "110000", "110001", "110011", "110111", "111000", "111001", "111011", "111111"};
  for (int n = 4; n <= 12; ++n) {
    const auto fam = clique_construction(n);
    const std::size_t want = static_cast<std::size_t>((n / 2) * (n / 2));
    c.expect(fam.members.size() == want, "n=" + std::to_string(n) + ": family size " +
                                             std::to_string(fam.members.size()));
    c.expect(std::set<PsbEncoding>(fam.members.begin(), fam.members.end()).size() == want,
             "n=" + std::to_string(n) + ": repeated members");
    std::shared_ptr<const TourSet> ts;
    std::optional<PairOracle> oracle;
    if (n <= 8) {
      ts = std::make_shared<const TourSet>(n);
      oracle.emplace(ts);
    }
    for (std::size_t p = 0; p < fam.members.size(); ++p)
      for (std::size_t q = p + 1; q < fam.members.size(); ++q) {
        const auto& a = fam.members[p];
        const auto& b = fam.members[q];
        c.expect(adjacent(a, b), "n=" + std::to_string(n) + ": members not adjacent (fast)");
        if (oracle)
          c.expect(!oracle->find_pair(ts->id_of(a), ts->id_of(b)),
                   "n=" + std::to_string(n) + ": members not adjacent (oracle)");
      }
    if (n == 8) {
      std::vector<std::string> got;
      for (const auto& e : fam.members) got.push_back(to_literal(e));
      c.expect(got == expected_family, "n=8 family differs from the expected list");
    }
  }
  std::ostringstream d;
  for (int n = 5; n <= 8; ++n) {
    const auto g = build_skeleton(n, Method::Fast);
    const auto t0 = Clock::now();
    const auto r = max_clique(g);
    for (std::size_t p = 0; p < r.members.size(); ++p)
      for (std::size_t q = p + 1; q < r.members.size(); ++q)
        c.expect(has_edge(g.adjacency, r.members[p], r.members[q]), "max clique members are not adjacent");
    c.expect(static_cast<int>(r.members.size()) == r.size, "max clique size disagrees with its members");
    c.expect(r.size >= (n / 2) * (n / 2), "n=" + std::to_string(n) + ": omega " + std::to_string(r.size) +
                                              " below floor(n/2)^2");
    char buf[96];
    std::snprintf(buf, sizeof buf, "omega(%d)=%d in %.1f s; ", n, r.size, seconds_since(t0));
    d << buf;
  }
  if (c.out.pass) c.out.detail = "families n=4..12 verified, n=8 list exact; " + d.str();
  return c.out;
}

DistanceMatrix integer_matrix(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> cost(0, 99);
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) rows[a][b] = a == b ? 0 : cost(rng);
  return DistanceMatrix(rows);
}

Outcome solver_exactness() {
  Check c;
  int beaten = 0;
  for (int n = 4; n <= 9; ++n) {
    std::mt19937_64 rng(77 + static_cast<std::uint64_t>(n));
    for (int k = 0; k < 50; ++k) {
      const auto m = integer_matrix(n, rng);
      const auto dp = solve_dp(m);
      const auto en = solve_enum(m);
      const auto atsp = solve_atsp_bruteforce(m);
      const std::string tag = "n=" + std::to_string(n) + " matrix " + std::to_string(k);
      c.expect(dp.cost == en.cost, tag + ": dp and enumeration differ");
      c.expect(dp.cost == tour_cost(m, dp.tour), tag + ": dp cost does not match its tour");
      c.expect(atsp.cost <= dp.cost, tag + ": brute-force ATSP above the PSB optimum");
      if (n == 4) c.expect(atsp.cost == dp.cost, tag + ": all three must agree at n=4");
      if (atsp.cost < dp.cost) ++beaten;
    }
  }
  if (c.out.pass)
    c.out.detail = "300 matrices n=4..9; dp = enum everywhere; ATSP strictly cheaper on " + std::to_string(beaten);
  return c.out;
}

double median_adjacent_time(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<PsbEncoding, PsbEncoding>> pairs;
  while (pairs.size() < 1000) {
    auto x = random_encoding(n, rng());
    auto y = random_encoding(n, rng());
    if (x != y) pairs.emplace_back(std::move(x), std::move(y));
  }
  std::vector<double> times;
  volatile bool sink = false;
  for (const auto& [x, y] : pairs) {
    const auto t0 = Clock::now();
    sink = adjacent(x, y);
    times.push_back(seconds_since(t0));
  }
  (void)sink;
  std::nth_element(times.begin(), times.begin() + 500, times.end());
  return times[500];
}

Outcome linearity() {
  Check c;
  const double small = median_adjacent_time(10'000, 5);
  const double large = median_adjacent_time(100'000, 6);
  const double ratio = large / small;
  char buf[160];
  std::snprintf(buf, sizeof buf, "median %.3g s at n=1e4, %.3g s at n=1e5, ratio %.2f (allowed 3.33..30)", small,
                large, ratio);
  c.expect(ratio >= 10.0 / 3.0 && ratio <= 30.0, buf);
  if (c.out.pass) c.out.detail = buf;
  return c.out;
}

Outcome properties() {
  Check c;
  for (int n = 3; n <= 10; ++n) {
    const auto bad = check_invariants(n);
    c.expect(bad.empty(), bad.empty() ? "" : bad.front());
  }
  for (int n = 3; n <= 8; ++n) {
    std::size_t psb = 0;
    for (const auto& s : brute::all_tours(n)) {
      if (!brute::is_psb(s)) continue;
      ++psb;
      const Tour t{n, s};
      c.expect(decode(encode(t)) == t, "decode(encode(t)) != t at n=" + std::to_string(n));
    }
    c.expect(psb == count_encodings(n), "raw PSB tour count differs at n=" + std::to_string(n));
  }
  for (int n = 3; n <= 7; ++n) {
    const auto es = enumerate_encodings(n);
    for (const auto& x : es) {
      const auto h = pyramidalize(x);
      c.expect(h == x || adjacent(x, h), "pyramidalize not adjacent for " + to_literal(x));
      for (const auto& y : es) {
        if (x == y) continue;
        const bool a = adjacent(x, y);
        c.expect(a == adjacent(y, x), "asymmetric at " + to_literal(x));
        c.expect(a == adjacent(reverse_tour(x), reverse_tour(y)), "reverse_tour changes adjacency");
        c.expect(a == adjacent(relabel_mirror(x), relabel_mirror(y)), "relabel_mirror changes adjacency");
      }
    }
  }
  for (int n : {10, 20, 40}) {
    std::mt19937_64 rng(4242 + static_cast<std::uint64_t>(n));
    for (int k = 0; k < 10'000; ++k) {
      const auto x = random_encoding(n, rng());
      const auto y = random_encoding(n, rng());
      if (x == y) continue;
      c.expect(reverse_tour(reverse_tour(x)) == x && relabel_mirror(relabel_mirror(x)) == x, "involution fails");
      const bool a = adjacent(x, y);
      c.expect(a == adjacent(y, x), "asymmetric at n=" + std::to_string(n));
      c.expect(a == adjacent(reverse_tour(x), reverse_tour(y)), "reverse_tour changes adjacency");
      c.expect(a == adjacent(relabel_mirror(x), relabel_mirror(y)), "relabel_mirror changes adjacency");
    }
  }
  if (c.out.pass)
    c.out.detail = "round trips n<=10, raw tours n<=8, transforms on all pairs n<=7 and 3x10^4 random pairs";
  return c.out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;  // seconds
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "fixture fidelity", 1, fixtures},
      {2, "three-way adjacency equivalence, n=3..8", 300, equivalence},
      {3, "known non-adjacent pairs", 60, known_pairs},
      {4, "diameter at most 4 and four-hop paths", 120, diameter_bound},
      {5, "clique lower bound and exact clique number", 600, clique_bound},
      {6, "solver exactness", 120, solver_exactness},
      {7, "linear-time adjacency", 600, linearity},
      {8, "property suites", 600, properties},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double took = seconds_since(t0);
    if (o.pass && took > cr.budget) {
      o.pass = false;
      o.detail += " [over the " + std::to_string(static_cast<int>(cr.budget)) + " s budget]";
    }
    if (!o.pass) ++failed;
    std::printf("criterion %d %s: %s (%.2f s) %s\n", cr.id, o.pass ? "PASS" : "FAIL", cr.name, took, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
