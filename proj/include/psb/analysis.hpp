#pragma once

// Diameter and clique structure of the 1-skeleton.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "psb/adjacency.hpp"
#include "psb/clique.hpp"
#include "psb/core.hpp"
#include "psb/oracle.hpp"

namespace psb {

/// Step-back-free tour visiting every city under a step-back pair of `x`
/// on the way down and every other city on the way up. Adjacent to x
/// (when different) and, being pyramidal, to the all-ones tour.
inline PsbEncoding pyramidalize(const PsbEncoding& x) {
  require_valid(x);
  PsbEncoding out = all_ones(x.n);
  for (int p : x.sb) {
    out.bits[p - 3] = 0;
    out.bits[p - 2] = 0;
  }
  return out;
}

struct SkeletonPath {
  std::vector<PsbEncoding> hops;

  std::size_t edges() const { return hops.empty() ? 0 : hops.size() - 1; }
};

/// x -> pyramidalize(x) -> all-ones -> pyramidalize(y) -> y. Repeated hops
/// are collapsed, and a hop seen earlier cuts the loop back to its first
/// visit. Every step is re-checked with the fast test.
inline SkeletonPath four_hop_path(const PsbEncoding& x, const PsbEncoding& y) {
  require_same_size(x, y);
  require_valid(x);
  require_valid(y);
  SkeletonPath path;
  for (const auto& e : {x, pyramidalize(x), all_ones(x.n), pyramidalize(y), y}) {
    const auto seen = std::find(path.hops.begin(), path.hops.end(), e);
    if (seen != path.hops.end())
      path.hops.erase(seen + 1, path.hops.end());
    else
      path.hops.push_back(e);
  }
  for (std::size_t k = 0; k + 1 < path.hops.size(); ++k) {
    if (!adjacent(path.hops[k], path.hops[k + 1]))
      throw VerificationFailure("path step " + std::to_string(k) + " is not an edge of the skeleton");
  }
  return path;
}

class DisconnectedGraph : public DomainError {
 public:
  DisconnectedGraph(int a, int b)
      : DomainError("graph is disconnected: vertex " + std::to_string(b) + " is unreachable from " +
                    std::to_string(a)),
        from(a),
        to(b) {}
  int from;
  int to;
};

/// Exact diameter by breadth-first search from every vertex.
inline int diameter(const AdjacencyList& g) {
  const int count = static_cast<int>(g.size());
  if (count == 0) return 0;
  int best = 0;
  std::vector<int> dist(static_cast<std::size_t>(count));
  std::vector<int> queue(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    std::size_t head = 0, tail = 0;
    queue[tail++] = s;
    while (head < tail) {
      const int u = queue[head++];
      for (int w : g[u]) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue[tail++] = w;
        }
      }
    }
    for (int t = 0; t < count; ++t) {
      if (dist[t] < 0) throw DisconnectedGraph(s, t);
      best = std::max(best, dist[t]);
    }
  }
  return best;
}

inline int diameter(const SkeletonGraph& g) { return diameter(g.adjacency); }

struct CliqueFamily {
  int n = 0;
  std::vector<PsbEncoding> members;     // ordered by (k, s)
  std::vector<std::pair<int, int>> keys;  // (k, s) of each member
};

/// floor(n/2)^2 pairwise adjacent step-back-free tours: ones on cities
/// 2..k+1 and n-s..n-1, zeros elsewhere, for 0 <= k, s < floor(n/2). For odd
/// n the middle city floor(n/2)+1 stays descending in every member.
inline CliqueFamily clique_construction(int n) {
  if (n < 4) throw DomainError("clique construction needs n >= 4");
  const int half = n / 2;
  CliqueFamily fam{n, {}, {}};
  for (int k = 0; k < half; ++k) {
    for (int s = 0; s < half; ++s) {
      PsbEncoding e = all_zeros(n);
      for (int c = 2; c <= k + 1; ++c) e.bits[c - 2] = 1;
      for (int c = n - s; c <= n - 1; ++c) e.bits[c - 2] = 1;
      fam.members.push_back(std::move(e));
      fam.keys.emplace_back(k, s);
    }
  }
  for (std::size_t p = 0; p < fam.members.size(); ++p)
    for (std::size_t q = p + 1; q < fam.members.size(); ++q)
      if (!adjacent(fam.members[p], fam.members[q]))
        throw VerificationFailure("clique members " + std::to_string(p) + " and " + std::to_string(q) +
                                  " are not adjacent");
  return fam;
}

/// Vertex permutations of the skeleton induced by relabelling maps of the
/// tour set: reversal, the mirror i -> n + 1 - i, and the label swaps
/// (1 2) and (n-1 n). A map is kept only when it sends every tour in the
/// set to a tour in the set and preserves adjacency.
inline std::vector<Permutation> skeleton_symmetries(const SkeletonGraph& g) {
  const int n = g.n;
  const auto& ts = *g.tours;
  std::vector<std::function<Tour(const PsbEncoding&)>> maps{
      [](const PsbEncoding& e) { return decode(reverse_tour(e)); },
      [](const PsbEncoding& e) { return decode(relabel_mirror(e)); }};
  for (auto [a, b] : {std::pair{1, 2}, std::pair{n - 1, n}}) {
    maps.emplace_back([=](const PsbEncoding& e) {
      std::vector<int> city(static_cast<std::size_t>(n) + 1);
      std::iota(city.begin(), city.end(), 0);
      std::swap(city[a], city[b]);
      return relabel_cities(decode(e), city);
    });
  }
  std::vector<Permutation> out;
  for (const auto& f : maps) {
    Permutation p(ts.size());
    bool inside = true;
    for (std::size_t v = 0; v < ts.size() && inside; ++v) {
      const Tour t = f(ts[v]);
      const auto id = is_psb_tour(t) ? ts.find(encode(t)) : std::nullopt;
      if (id) p[v] = *id;
      else inside = false;
    }
    if (inside && is_automorphism(g.adjacency, p)) out.push_back(std::move(p));
  }
  return out;
}

/// Exact maximum clique of the skeleton, pruned by its relabelling symmetries.
inline CliqueResult max_clique(const SkeletonGraph& g, std::size_t vertex_cap = kDefaultCliqueVertexCap) {
  if (g.adjacency.size() > vertex_cap) return max_clique(g.adjacency, vertex_cap);
  return max_clique(g.adjacency, vertex_cap, skeleton_symmetries(g));
}

}  // namespace psb
