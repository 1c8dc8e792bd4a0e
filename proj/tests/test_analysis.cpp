#include <gtest/gtest.h>

#include <random>
#include <set>

#include "brute.hpp"
#include "psb/psb.hpp"

using namespace psb;

namespace {

std::vector<std::vector<char>> matrix(const AdjacencyList& g) {
  std::vector<std::vector<char>> a(g.size(), std::vector<char>(g.size(), 0));
  for (std::size_t v = 0; v < g.size(); ++v)
    for (int w : g[v]) a[v][w] = 1;
  return a;
}

AdjacencyList random_graph(int count, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  AdjacencyList g(static_cast<std::size_t>(count));
  for (int a = 0; a < count; ++a)
    for (int b = a + 1; b < count; ++b)
      if (coin(rng)) g[a].push_back(b), g[b].push_back(a);
  return g;
}

bool is_clique(const AdjacencyList& g, const std::vector<int>& c) {
  for (std::size_t p = 0; p < c.size(); ++p)
    for (std::size_t q = p + 1; q < c.size(); ++q)
      if (std::find(g[c[p]].begin(), g[c[p]].end(), c[q]) == g[c[p]].end()) return false;
  return true;
}

}  // namespace

TEST(Pyramidalize, TwelveCityExample) {
  const auto x = parse_literal("1111001001@4,10");
  EXPECT_EQ(to_literal(pyramidalize(x)), "1001111001");
}

TEST(Pyramidalize, StepBackFreeGoesToOnes) {
  for (const auto& x : enumerate_encodings(7))
    if (x.sb.empty()) EXPECT_EQ(pyramidalize(x), all_ones(7));
}

TEST(Pyramidalize, AdjacentToSource) {
  for (int n = 3; n <= 7; ++n)
    for (const auto& x : enumerate_encodings(n)) {
      const auto h = pyramidalize(x);
      EXPECT_TRUE(h.sb.empty());
      if (h != x) EXPECT_TRUE(adjacent(x, h)) << to_literal(x);
      EXPECT_EQ(pyramidalize(h), all_ones(n));
    }
}

TEST(Pyramidalize, PyramidalAdjacentToOnesAndZeros) {
  for (int n = 3; n <= 8; ++n) {
    const auto ts = enumerate_tours(n);
    auto shared = std::make_shared<const TourSet>(n);
    const PairOracle oracle(shared);
    for (const auto& x : ts.tours()) {
      if (!x.sb.empty()) continue;
      for (const auto& end : {all_ones(n), all_zeros(n)}) {
        if (x == end) continue;
        EXPECT_TRUE(adjacent(x, end));
        EXPECT_FALSE(oracle.find_pair(ts.id_of(x), ts.id_of(end)));
      }
    }
  }
}

TEST(FourHopPath, SameEndpoints) {
  const auto x = parse_literal("101101@5");
  const auto p = four_hop_path(x, x);
  ASSERT_EQ(p.hops.size(), 1u);
  EXPECT_EQ(p.edges(), 0u);
}

TEST(FourHopPath, PyramidalToOnes) {
  const auto x = parse_literal("100110");
  const auto p = four_hop_path(x, all_ones(8));
  ASSERT_EQ(p.hops.size(), 2u);
  EXPECT_EQ(p.hops[0], x);
  EXPECT_EQ(p.hops[1], all_ones(8));
}

TEST(FourHopPath, SampleToItsReverse) {
  const auto x = parse_literal("101101@5");
  const auto p = four_hop_path(x, reverse_tour(x));
  EXPECT_LE(p.edges(), 4u);
  EXPECT_EQ(p.hops.front(), x);
  EXPECT_EQ(p.hops.back(), reverse_tour(x));
  for (std::size_t k = 0; k + 1 < p.hops.size(); ++k) EXPECT_TRUE(adjacent(p.hops[k], p.hops[k + 1]));
}

TEST(FourHopPath, VerifiedByBothCheckers) {
  for (int n = 3; n <= 7; ++n) {
    const auto es = enumerate_encodings(n);
    for (const auto& x : es)
      for (const auto& y : es) {
        const auto p = four_hop_path(x, y);
        ASSERT_LE(p.edges(), 4u);
        ASSERT_EQ(p.hops.front(), x);
        ASSERT_EQ(p.hops.back(), y);
        std::set<PsbEncoding> distinct(p.hops.begin(), p.hops.end());
        ASSERT_EQ(distinct.size(), p.hops.size());
        for (std::size_t k = 0; k + 1 < p.hops.size(); ++k) {
          ASSERT_TRUE(adjacent(p.hops[k], p.hops[k + 1]));
          ASSERT_FALSE(nonadj_exhaustive(p.hops[k], p.hops[k + 1]));
        }
      }
  }
}

TEST(FourHopPath, SizeMismatch) { EXPECT_THROW(four_hop_path(all_ones(5), all_ones(6)), DomainError); }

TEST(Diameter, SmallGraphs) {
  EXPECT_EQ(diameter(AdjacencyList{{1}, {0, 2}, {1}}), 2);
  EXPECT_EQ(diameter(build_skeleton(3, Method::Fast)), 1);
  EXPECT_EQ(diameter(AdjacencyList{}), 0);
}

TEST(Diameter, Disconnected) {
  try {
    diameter(AdjacencyList{{1}, {0}, {}});
    FAIL();
  } catch (const DisconnectedGraph& e) {
    EXPECT_EQ(e.from, 0);
    EXPECT_EQ(e.to, 2);
  }
}

TEST(Diameter, SkeletonsAtMostFour) {
  for (int n = 4; n <= 7; ++n) EXPECT_LE(diameter(build_skeleton(n, Method::Fast)), 4) << n;
}

TEST(CliqueConstruction, EightCityFamily) {
  const auto fam = clique_construction(8);
  ASSERT_EQ(fam.members.size(), 16u);
  const std::vector<std::string> table = {"000000", "000001", "000011", "000111", "100000", "100001",
                                          "100011", "100111", "110000", "110001", "110011", "110111",
                                          "111000", "111001", "111011", "111111"};
  std::vector<std::string> got;
  for (const auto& e : fam.members) got.push_back(to_literal(e));
  EXPECT_EQ(got, table);
}

TEST(CliqueConstruction, SizesAndAdjacency) {
  for (int n = 4; n <= 12; ++n) {
    const auto fam = clique_construction(n);
    const std::size_t half = static_cast<std::size_t>(n / 2);
    ASSERT_EQ(fam.members.size(), half * half);
    std::set<PsbEncoding> distinct(fam.members.begin(), fam.members.end());
    EXPECT_EQ(distinct.size(), fam.members.size());
    for (std::size_t p = 0; p < fam.members.size(); ++p) {
      EXPECT_TRUE(fam.members[p].sb.empty());
      for (std::size_t q = p + 1; q < fam.members.size(); ++q)
        EXPECT_TRUE(adjacent(fam.members[p], fam.members[q]));
    }
  }
  EXPECT_EQ(clique_construction(4).members.size(), 4u);
  EXPECT_EQ(clique_construction(9).members.size(), 16u);
  EXPECT_THROW(clique_construction(3), DomainError);
}

TEST(CliqueConstruction, OracleAgrees) {
  for (int n = 4; n <= 7; ++n) {
    const auto fam = clique_construction(n);
    auto ts = std::make_shared<const TourSet>(n);
    const PairOracle oracle(ts);
    for (std::size_t p = 0; p < fam.members.size(); ++p)
      for (std::size_t q = p + 1; q < fam.members.size(); ++q)
        EXPECT_FALSE(oracle.find_pair(ts->id_of(fam.members[p]), ts->id_of(fam.members[q])));
  }
}

TEST(MaxClique, Triangle) {
  const auto r = max_clique(AdjacencyList{{1, 2}, {0, 2}, {0, 1}});
  EXPECT_EQ(r.size, 3);
  EXPECT_EQ(r.members, (std::vector<int>{0, 1, 2}));
}

TEST(MaxClique, EdgeCases) {
  EXPECT_EQ(max_clique(AdjacencyList{}).size, 0);
  EXPECT_EQ(max_clique(AdjacencyList{{}, {}}).size, 1);
  EXPECT_THROW(max_clique(AdjacencyList(5), 4), CapExceeded);
}

TEST(MaxClique, RandomGraphsAgainstBronKerbosch) {
  std::uint64_t seed = 1;
  for (int count : {8, 20, 40, 60})
    for (double p : {0.2, 0.5, 0.8, 0.9})
      for (int rep = 0; rep < 5; ++rep) {
        const auto g = random_graph(count, p, seed++);
        const auto r = max_clique(g);
        ASSERT_EQ(static_cast<std::size_t>(r.size), brute::clique_number(matrix(g))) << count << ' ' << p;
        ASSERT_EQ(r.members.size(), static_cast<std::size_t>(r.size));
        ASSERT_TRUE(is_clique(g, r.members));
      }
}

TEST(MaxClique, WideGraphsAgainstBronKerbosch) {
  std::uint64_t seed = 500;
  for (int count : {70, 130, 200, 330, 420})
    for (double p : {0.1, 0.3, 0.5}) {
      if (count > 200 && p > 0.3) continue;
      const auto g = random_graph(count, p, seed++);
      const auto r = max_clique(g, 450);
      ASSERT_EQ(static_cast<std::size_t>(r.size), brute::clique_number(matrix(g))) << count << ' ' << p;
      ASSERT_TRUE(is_clique(g, r.members));
    }
}

TEST(MaxClique, SkeletonsReachConstruction) {
  for (int n = 4; n <= 7; ++n) {
    const auto g = build_skeleton(n, Method::Fast);
    const auto r = max_clique(g);
    EXPECT_GE(r.size, (n / 2) * (n / 2));
    EXPECT_TRUE(is_clique(g.adjacency, r.members));
    if (n <= 6) EXPECT_EQ(static_cast<std::size_t>(r.size), brute::clique_number(matrix(g.adjacency)));
  }
}

namespace {

// Circulant graph: i ~ j when |i - j| mod count lies in `gaps`.
AdjacencyList circulant(int count, const std::vector<int>& gaps) {
  AdjacencyList g(static_cast<std::size_t>(count));
  for (int a = 0; a < count; ++a)
    for (int b = 0; b < count; ++b) {
      const int d = std::min((a - b + count) % count, (b - a + count) % count);
      if (a != b && std::find(gaps.begin(), gaps.end(), d) != gaps.end()) g[a].push_back(b);
    }
  return g;
}

Permutation rotation(int count, int by) {
  Permutation p(static_cast<std::size_t>(count));
  for (int v = 0; v < count; ++v) p[v] = (v + by) % count;
  return p;
}

// Two copies of a random graph joined by a symmetric cross pattern, so
// swapping the copies is an automorphism.
AdjacencyList doubled(int half, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  AdjacencyList g(static_cast<std::size_t>(2 * half));
  auto link = [&](int a, int b) { g[a].push_back(b), g[b].push_back(a); };
  for (int a = 0; a < half; ++a)
    for (int b = a + 1; b < half; ++b)
      if (coin(rng)) link(a, b), link(a + half, b + half);
  for (int a = 0; a < half; ++a)
    for (int b = a; b < half; ++b)
      if (coin(rng)) {
        link(a, b + half);
        if (a != b) link(b, a + half);
      }
  for (auto& nb : g) std::sort(nb.begin(), nb.end());
  return g;
}

}  // namespace

TEST(Symmetry, IsAutomorphism) {
  const auto c6 = circulant(6, {1});
  EXPECT_TRUE(is_automorphism(c6, rotation(6, 1)));
  EXPECT_TRUE(is_automorphism(c6, Permutation{0, 5, 4, 3, 2, 1}));
  EXPECT_FALSE(is_automorphism(c6, Permutation{1, 0, 2, 3, 4, 5}));
  EXPECT_FALSE(is_automorphism(c6, Permutation{0, 0, 2, 3, 4, 5}));
  EXPECT_FALSE(is_automorphism(c6, Permutation{0, 1, 2}));
}

TEST(Symmetry, CloseGroup) {
  EXPECT_EQ(close_group(6, {rotation(6, 1)}).size(), 6u);
  EXPECT_EQ(close_group(6, {rotation(6, 1), Permutation{0, 5, 4, 3, 2, 1}}).size(), 12u);
  EXPECT_EQ(close_group(6, {}).size(), 1u);
}

TEST(Symmetry, RejectsNonAutomorphism) {
  EXPECT_THROW(max_clique(circulant(6, {1}), kDefaultCliqueVertexCap, {Permutation{1, 0, 2, 3, 4, 5}}), DomainError);
}

TEST(Symmetry, PrunedSearchIsExact) {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 12; ++rep) {
    const int count = 20 + 4 * rep;
    std::vector<int> gaps;
    for (int d = 1; d <= count / 2; ++d)
      if (rng() % 3 != 0) gaps.push_back(d);
    const auto g = circulant(count, gaps);
    const auto sym = max_clique(g, kDefaultCliqueVertexCap, {rotation(count, 1)});
    ASSERT_EQ(static_cast<std::size_t>(sym.size), brute::clique_number(matrix(g))) << count;
    ASSERT_TRUE(is_clique(g, sym.members));
    EXPECT_EQ(sym.size, max_clique(g).size);
  }
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const int half = 10 + static_cast<int>(seed) * 2;
    const auto g = doubled(half, seed % 2 ? 0.6 : 0.85, seed);
    Permutation swap(static_cast<std::size_t>(2 * half));
    for (int v = 0; v < half; ++v) swap[v] = v + half, swap[v + half] = v;
    const auto sym = max_clique(g, kDefaultCliqueVertexCap, {swap});
    ASSERT_EQ(static_cast<std::size_t>(sym.size), brute::clique_number(matrix(g))) << seed;
    ASSERT_TRUE(is_clique(g, sym.members));
  }
}

TEST(Symmetry, SkeletonGroup) {
  for (int n = 4; n <= 8; ++n) {
    const auto g = build_skeleton(n, Method::Fast);
    const auto gens = skeleton_symmetries(g);
    EXPECT_EQ(gens.size(), 4u) << n;
    for (const auto& p : gens) EXPECT_TRUE(is_automorphism(g.adjacency, p));
    EXPECT_EQ(close_group(g.vertex_count(), gens).size(), 16u) << n;
  }
}

TEST(Symmetry, SkeletonCliqueWithAndWithoutPruning) {
  for (int n = 4; n <= 7; ++n) {
    const auto g = build_skeleton(n, Method::Fast);
    const auto sym = max_clique(g);
    const auto plain = max_clique(g.adjacency);
    EXPECT_EQ(sym.size, plain.size) << n;
    EXPECT_LE(sym.nodes, plain.nodes) << n;
    EXPECT_TRUE(is_clique(g.adjacency, sym.members));
  }
}

TEST(RelabelCities, SwapsAndRotates) {
  const Tour t{5, {1, 2, 4, 5, 3}};
  EXPECT_EQ(relabel_cities(t, {0, 2, 1, 3, 4, 5}).seq, (std::vector<int>{1, 4, 5, 3, 2}));
  EXPECT_EQ(relabel_cities(t, {0, 1, 2, 3, 4, 5}), t);
  EXPECT_THROW(relabel_cities(t, {0, 1, 2}), DomainError);
  EXPECT_THROW(relabel_cities(t, {0, 2, 2, 3, 4, 5}), DomainError);
}
