#pragma once

// Desk-scale ground truth: all tours of a given size, the complementary
// pair test and 1-skeleton construction.
//
// If two other tours z, t use between them exactly the edges of x and y
// (as a multiset), the segments [v(x), v(y)] and [v(z), v(t)] share their
// midpoint, so v(x) and v(y) cannot be adjacent. For this polytope the
// converse holds as well, which makes the search an exact oracle.

#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "psb/adjacency.hpp"
#include "psb/core.hpp"

namespace psb {

inline constexpr int kDefaultOracleMaxN = 8;

/// Size cap for the oracle and exhaustive methods; PSB_MAX_ORACLE_N
/// overrides the default.
inline int oracle_max_n() {
  if (const char* env = std::getenv("PSB_MAX_ORACLE_N")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw DomainError(std::string("PSB_MAX_ORACLE_N is not an integer: ") + env);
    }
  }
  return kDefaultOracleMaxN;
}

class TourSet {
 public:
  explicit TourSet(int n) : n_(n), tours_(enumerate_encodings(n)) {
    for (std::size_t k = 0; k < tours_.size(); ++k) index_.emplace(tours_[k], static_cast<int>(k));
  }

  int n() const { return n_; }
  std::size_t size() const { return tours_.size(); }
  const PsbEncoding& operator[](std::size_t id) const { return tours_[id]; }
  const std::vector<PsbEncoding>& tours() const { return tours_; }

  std::optional<int> find(const PsbEncoding& e) const {
    const auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  int id_of(const PsbEncoding& e) const {
    if (auto id = find(e)) return *id;
    throw DomainError("encoding is not a tour of size " + std::to_string(n_));
  }

 private:
  int n_;
  std::vector<PsbEncoding> tours_;
  std::map<PsbEncoding, int> index_;
};

inline TourSet enumerate_tours(int n) { return TourSet(n); }

struct PairWitness {
  PsbEncoding z;
  PsbEncoding t;
};

/// Index of every unordered tour pair by its summed edge multiset.
class PairOracle {
 public:
  explicit PairOracle(std::shared_ptr<const TourSet> ts) : ts_(std::move(ts)) {
    const int n = ts_->n();
    const std::size_t slots = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1);
    words_ = (slots + 63) / 64;
    masks_.reserve(ts_->size());
    for (const auto& e : ts_->tours()) {
      std::vector<std::uint64_t> m(words_, 0);
      for (auto [a, b] : char_vector(decode(e)).edges) {
        const auto s = edge_slot(n, a, b);
        m[s / 64] |= std::uint64_t{1} << (s % 64);
      }
      masks_.push_back(std::move(m));
    }
    const int count = static_cast<int>(ts_->size());
    for (int p = 0; p < count; ++p)
      for (int q = p + 1; q < count; ++q) buckets_[key(p, q)].emplace_back(p, q);
  }

  const TourSet& tours() const { return *ts_; }

  /// Some pair {z, t} disjoint from {x, y} with v(z) + v(t) = v(x) + v(y),
  /// preferring the smallest (id z, id t); nothing when x, y are adjacent.
  std::optional<std::pair<int, int>> find_pair(int x, int y) const {
    if (x == y) throw DomainError("adjacency of a vertex with itself is undefined");
    const auto it = buckets_.find(key(x, y));
    for (auto [p, q] : it->second)
      if (p != x && p != y && q != x && q != y) return std::pair{p, q};
    return std::nullopt;
  }

  std::optional<PairWitness> query(const PsbEncoding& x, const PsbEncoding& y) const {
    const int ix = ts_->id_of(x);
    const int iy = ts_->id_of(y);
    const auto found = find_pair(ix, iy);
    if (!found) return std::nullopt;
    return PairWitness{(*ts_)[static_cast<std::size_t>(found->first)],
                       (*ts_)[static_cast<std::size_t>(found->second)]};
  }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& k) const {
      std::uint64_t h = 0xcbf29ce484222325ULL;
      for (auto w : k) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

  // (edges used twice, edges used once) identifies the multiset sum
  std::vector<std::uint64_t> key(int p, int q) const {
    std::vector<std::uint64_t> k(2 * words_);
    for (std::size_t w = 0; w < words_; ++w) {
      k[w] = masks_[p][w] & masks_[q][w];
      k[words_ + w] = masks_[p][w] ^ masks_[q][w];
    }
    return k;
  }

  std::shared_ptr<const TourSet> ts_;
  std::size_t words_ = 0;
  std::vector<std::vector<std::uint64_t>> masks_;
  std::unordered_map<std::vector<std::uint64_t>, std::vector<std::pair<int, int>>, KeyHash> buckets_;
};

/// True iff v(z) + v(t) = v(x) + v(y) as edge multisets.
inline bool sums_match(const PsbEncoding& x, const PsbEncoding& y, const PsbEncoding& z, const PsbEncoding& t) {
  auto edges = [](const PsbEncoding& e) { return char_vector(decode(e)).edges; };
  auto lhs = edges(x), rhs = edges(z);
  const auto ly = edges(y), rt = edges(t);
  lhs.insert(lhs.end(), ly.begin(), ly.end());
  rhs.insert(rhs.end(), rt.begin(), rt.end());
  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  return lhs == rhs;
}

/// One-shot convenience form; builds the pair index for `ts`.
inline std::optional<PairWitness> pair_oracle(const PsbEncoding& x, const PsbEncoding& y,
                                              const std::shared_ptr<const TourSet>& ts) {
  require_same_size(x, y);
  if (x == y) throw DomainError("adjacency of a vertex with itself is undefined");
  return PairOracle(ts).query(x, y);
}

enum class Method : std::uint8_t { Fast, Exhaustive, Oracle };

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::Fast: return "fast";
    case Method::Exhaustive: return "exhaustive";
    case Method::Oracle: return "oracle";
  }
  return "?";
}

inline Method parse_method(std::string_view s) {
  if (s == "fast") return Method::Fast;
  if (s == "exhaustive") return Method::Exhaustive;
  if (s == "oracle") return Method::Oracle;
  throw DomainError("unknown method '" + std::string(s) + "'");
}

struct SkeletonGraph {
  int n = 0;
  std::shared_ptr<const TourSet> tours;
  std::vector<std::vector<int>> adjacency;  // sorted neighbour lists
  Method method = Method::Fast;

  std::size_t vertex_count() const { return adjacency.size(); }
  std::size_t edge_count() const {
    std::size_t s = 0;
    for (const auto& nb : adjacency) s += nb.size();
    return s / 2;
  }
  /// Edges (a, b) with a < b, ordered.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < static_cast<int>(adjacency.size()); ++a)
      for (int b : adjacency[a])
        if (a < b) out.emplace_back(a, b);
    return out;
  }
};

inline void require_within_cap(int n, Method m, int cap) {
  if (m != Method::Fast && n > cap)
    throw CapExceeded("method " + std::string(method_name(m)) + " is capped at n <= " + std::to_string(cap) +
                      " (set PSB_MAX_ORACLE_N to raise it)");
}

inline SkeletonGraph build_skeleton(int n, Method method, int cap) {
  if (n < 3) throw DomainError("n must be at least 3");
  require_within_cap(n, method, cap);
  auto ts = std::make_shared<const TourSet>(n);
  SkeletonGraph g{n, ts, std::vector<std::vector<int>>(ts->size()), method};
  std::optional<PairOracle> oracle;
  if (method == Method::Oracle) oracle.emplace(ts);

  const int count = static_cast<int>(ts->size());
  for (int p = 0; p < count; ++p) {
    for (int q = p + 1; q < count; ++q) {
      bool adj = false;
      switch (method) {
        case Method::Fast: adj = adjacent((*ts)[p], (*ts)[q]); break;
        case Method::Exhaustive: adj = !nonadj_exhaustive((*ts)[p], (*ts)[q]).has_value(); break;
        case Method::Oracle: adj = !oracle->find_pair(p, q).has_value(); break;
      }
      if (adj) {
        g.adjacency[p].push_back(q);
        g.adjacency[q].push_back(p);
      }
    }
  }
  for (auto& nb : g.adjacency) std::sort(nb.begin(), nb.end());
  return g;
}

inline SkeletonGraph build_skeleton(int n, Method method) { return build_skeleton(n, method, oracle_max_n()); }

}  // namespace psb
