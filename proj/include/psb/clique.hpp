#pragma once

// Exact maximum clique for graphs of a few hundred vertices.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "psb/error.hpp"

#ifdef __BMI2__
#include <immintrin.h>
#endif

namespace psb {

using AdjacencyList = std::vector<std::vector<int>>;
using Permutation = std::vector<int>;

inline constexpr std::size_t kDefaultCliqueVertexCap = 350;
inline constexpr std::size_t kMaxSymmetryGroup = 4096;

struct CliqueResult {
  int size = 0;
  std::vector<int> members;  // sorted vertex ids
  long long nodes = 0;       // search nodes visited
};

/// True when `p` is a permutation of the vertices that maps edges to edges.
inline bool is_automorphism(const AdjacencyList& g, const Permutation& p) {
  const std::size_t count = g.size();
  if (p.size() != count) return false;
  std::vector<char> hit(count, 0);
  for (int v : p) {
    if (v < 0 || static_cast<std::size_t>(v) >= count || hit[v]) return false;
    hit[v] = 1;
  }
  AdjacencyList sorted = g;
  for (auto& nb : sorted) std::sort(nb.begin(), nb.end());
  for (std::size_t v = 0; v < count; ++v) {
    if (sorted[p[v]].size() != sorted[v].size()) return false;
    for (int w : sorted[v])
      if (!std::binary_search(sorted[p[v]].begin(), sorted[p[v]].end(), p[w])) return false;
  }
  return true;
}

/// Every element of the group generated by `gens`, identity first.
inline std::vector<Permutation> close_group(std::size_t count, const std::vector<Permutation>& gens) {
  Permutation id(count);
  for (std::size_t v = 0; v < count; ++v) id[v] = static_cast<int>(v);
  std::vector<Permutation> group{id};
  for (std::size_t k = 0; k < group.size(); ++k) {
    for (const auto& g : gens) {
      Permutation p(count);
      for (std::size_t v = 0; v < count; ++v) p[v] = g[group[k][v]];
      if (std::find(group.begin(), group.end(), p) != group.end()) continue;
      if (group.size() == kMaxSymmetryGroup)
        throw CapExceeded("symmetry group exceeds " + std::to_string(kMaxSymmetryGroup) + " elements");
      group.push_back(std::move(p));
    }
  }
  return group;
}

namespace detail {

/// Branch and bound over bitsets.
///
/// Greedy colouring bounds each node. A vertex in a colour class above the
/// target is dropped from branching when unit propagation over the unused
/// lower classes refutes it; the classes used by a refutation are then
/// spent. With a symmetry group, each node keeps the elements that map its
/// candidate set onto itself and a finished branch vertex takes its whole
/// orbit out of the candidates. A node without symmetries whose
/// candidates fit in fewer words is searched on its induced subgraph by a
/// narrower engine.
template <std::size_t W>
class CliqueSearch {
 public:
  static constexpr std::size_t kLocal = W == 0 || W > 2 ? 2 : 1;

  CliqueSearch(const AdjacencyList& g, const std::vector<Permutation>& group)
      : count_(static_cast<int>(g.size())), words_((g.size() + 63) / 64) {
    order_ = degeneracy_order(g);
    std::vector<int> pos(static_cast<std::size_t>(count_));
    for (int k = 0; k < count_; ++k) pos[order_[k]] = k;
    adj_.assign(static_cast<std::size_t>(count_) * words(), 0);
    for (int v = 0; v < count_; ++v)
      for (int w : g[v])
        if (w != v) set(row(pos[v]), pos[w]);
    for (const auto& p : group) {
      Permutation q(static_cast<std::size_t>(count_));
      for (int v = 0; v < count_; ++v) q[pos[v]] = pos[p[v]];
      if (q != identity()) group_.push_back(std::move(q));
    }
    allocate(static_cast<std::size_t>(count_));
    initial_clique();
  }

  // Engine for induced subgraphs of at most 64 * W vertices.
  CliqueSearch() : count_(0), words_(W) {
    adj_.assign(64 * W * W, 0);
    allocate(64 * W);
  }

  /// Largest clique with more than `floor` vertices in the graph given by
  /// `count` adjacency rows, as row indices; empty when there is none.
  const std::vector<int>& improve(const std::uint64_t* rows, int count, int floor) {
    count_ = count;
    std::copy_n(rows, static_cast<std::size_t>(count) * words(), adj_.begin());
    bound_ = floor;
    best_.clear();
    current_.clear();
    nodes_ = 0;
    Frame& root = frames_[0];
    root.candidates.assign(words(), 0);
    for (int v = 0; v < count; ++v) set(root.candidates.data(), v);
    root.group.clear();
    expand(0);
    return best_;
  }

  long long nodes() const { return nodes_; }

  CliqueResult solve() {
    bound_ = static_cast<int>(best_.size());
    Frame& root = frames_[0];
    root.candidates.assign(words(), 0);
    for (int v = 0; v < count_; ++v) set(root.candidates.data(), v);
    root.group.resize(group_.size());
    for (std::size_t e = 0; e < group_.size(); ++e) root.group[e] = static_cast<int>(e);
    expand(0);
    CliqueResult r;
    r.size = static_cast<int>(best_.size());
    for (int v : best_) r.members.push_back(order_[v]);
    std::sort(r.members.begin(), r.members.end());
    r.nodes = nodes_;
    return r;
  }

 private:
  using Word = std::uint64_t;

  struct Frame {
    std::vector<Word> candidates;
    std::vector<int> group;
    std::vector<Word> classes;
    std::vector<Word> uncoloured;
    std::vector<Word> avail;
    std::vector<char> used;
    std::vector<int> branch;
  };

  void allocate(std::size_t cap) {
    class_of_.assign(cap, -1);
    forced_.assign(cap, 0);
    queue_.assign(cap + 1, 0);
    alive_.assign(cap * words(), 0);
    killers_.assign(cap * words(), 0);
    reason_.assign(words(), 0);
    frames_.resize(cap + 2);
  }

  static void set(Word* b, int v) { b[v >> 6] |= Word{1} << (v & 63); }
  static void reset(Word* b, int v) { b[v >> 6] &= ~(Word{1} << (v & 63)); }
  static bool test(const Word* b, int v) { return (b[v >> 6] >> (v & 63)) & 1; }

  std::size_t words() const { return W ? W : words_; }
  Word* row(int v) { return adj_.data() + static_cast<std::size_t>(v) * words(); }
  const Word* row(int v) const { return adj_.data() + static_cast<std::size_t>(v) * words(); }
  bool empty(const Word* b) const {
    for (std::size_t w = 0; w < words(); ++w)
      if (b[w]) return false;
    return true;
  }
  int first(const Word* b) const {
    for (std::size_t w = 0; w < words(); ++w)
      if (b[w]) return static_cast<int>(w * 64) + __builtin_ctzll(b[w]);
    return -1;
  }
  Permutation identity() const {
    Permutation id(static_cast<std::size_t>(count_));
    for (int v = 0; v < count_; ++v) id[v] = v;
    return id;
  }

  // Smallest-last order, reversed: dense cores come first.
  static std::vector<int> degeneracy_order(const AdjacencyList& g) {
    const int count = static_cast<int>(g.size());
    std::vector<int> deg(static_cast<std::size_t>(count));
    for (int v = 0; v < count; ++v) deg[v] = static_cast<int>(g[v].size());
    std::vector<char> gone(static_cast<std::size_t>(count), 0);
    std::vector<int> out(static_cast<std::size_t>(count));
    for (int k = count - 1; k >= 0; --k) {
      int pick = -1;
      for (int v = 0; v < count; ++v)
        if (!gone[v] && (pick < 0 || deg[v] < deg[pick])) pick = v;
      gone[pick] = 1;
      out[k] = pick;
      for (int w : g[pick])
        if (!gone[w]) --deg[w];
    }
    return out;
  }

  // Greedy clique from every vertex, then iterated local search on the
  // complement (one-out two-in swaps with random kicks, fixed seed).
  void initial_clique() {
    std::vector<Word> cand(words());
    for (int s = 0; s < count_; ++s) {
      std::vector<int> c{s};
      std::copy(row(s), row(s) + words(), cand.begin());
      for (int v = first(cand.data()); v >= 0; v = first(cand.data())) {
        c.push_back(v);
        for (std::size_t w = 0; w < words(); ++w) cand[w] &= row(v)[w];
      }
      if (c.size() > best_.size()) best_ = std::move(c);
    }

    std::vector<std::vector<int>> miss(static_cast<std::size_t>(count_));
    for (int v = 0; v < count_; ++v)
      for (int u = 0; u < count_; ++u)
        if (u != v && !test(row(v), u)) miss[v].push_back(u);
    std::vector<char> in(static_cast<std::size_t>(count_), 0);
    std::vector<int> tight(static_cast<std::size_t>(count_), 0);
    int size = 0;
    std::mt19937 rng(0x5eed);
    auto add = [&](int v) {
      in[v] = 1;
      ++size;
      for (int u : miss[v]) ++tight[u];
    };
    auto drop = [&](int v) {
      in[v] = 0;
      --size;
      for (int u : miss[v]) --tight[u];
    };
    auto fill = [&] {
      std::vector<int> free;
      for (int v = 0; v < count_; ++v)
        if (!in[v] && tight[v] == 0) free.push_back(v);
      std::shuffle(free.begin(), free.end(), rng);
      for (int v : free)
        if (!in[v] && tight[v] == 0) add(v);
    };
    auto swap_once = [&] {
      std::vector<int> members;
      for (int v = 0; v < count_; ++v)
        if (in[v]) members.push_back(v);
      std::shuffle(members.begin(), members.end(), rng);
      for (int x : members) {
        std::vector<int> one;
        for (int u : miss[x])
          if (!in[u] && tight[u] == 1) one.push_back(u);
        for (std::size_t a = 0; a < one.size(); ++a)
          for (std::size_t b = a + 1; b < one.size(); ++b)
            if (test(row(one[a]), one[b])) {
              drop(x);
              add(one[a]);
              add(one[b]);
              fill();
              return true;
            }
      }
      return false;
    };

    for (int v : best_) add(v);
    fill();
    while (swap_once()) {
    }
    auto keep = [&] {
      if (size <= static_cast<int>(best_.size())) return;
      best_.clear();
      for (int v = 0; v < count_; ++v)
        if (in[v]) best_.push_back(v);
    };
    keep();
    const long iterations = 40L * count_;
    for (long it = 0; it < iterations && size < count_; ++it) {
      const auto saved_in = in;
      const auto saved_tight = tight;
      const int saved_size = size;
      int v;
      do {
        v = static_cast<int>(rng() % static_cast<unsigned>(count_));
      } while (in[v]);
      for (int u : miss[v])
        if (in[u]) drop(u);
      add(v);
      fill();
      while (swap_once()) {
      }
      keep();
      if (size < saved_size && rng() % static_cast<unsigned>(1 + 4 * (saved_size - size)) != 0) {
        in = saved_in;
        tight = saved_tight;
        size = saved_size;
      }
    }
  }

  // Unit propagation from v over the unused classes below `low`. On a
  // conflict the classes that took part are marked used.
  bool refute(int v, const Word* classes, int low, char* used) {
    const std::size_t cw = (static_cast<std::size_t>(low) + 63) / 64;
    const Word* nv = row(v);
    int tail = 0;
    for (int c = 0; c < low; ++c) {
      if (used[c]) continue;
      const Word* cls = classes + static_cast<std::size_t>(c) * words();
      Word* a = alive_.data() + static_cast<std::size_t>(c) * words();
      int left = 0;
      for (std::size_t w = 0; w < words(); ++w) {
        a[w] = cls[w] & nv[w];
        left += __builtin_popcountll(a[w]);
      }
      if (left == 0) {
        used[c] = 1;
        return true;
      }
      std::fill_n(killers_.data() + static_cast<std::size_t>(c) * cw, cw, 0);
      forced_[c] = left == 1;
      if (left == 1) queue_[tail++] = first(a);
    }
    int head = 0;
    int conflict = -1;
    while (head < tail && conflict < 0) {
      const int u = queue_[head++];
      const int cu = class_of_[u];
      const Word* nu = row(u);
      for (int c = 0; c < low; ++c) {
        if (used[c] || c == cu) continue;
        Word* a = alive_.data() + static_cast<std::size_t>(c) * words();
        Word changed = 0;
        int left = 0;
        for (std::size_t w = 0; w < words(); ++w) {
          const Word kept = a[w] & nu[w];
          changed |= kept ^ a[w];
          a[w] = kept;
          left += __builtin_popcountll(kept);
        }
        if (!changed) continue;
        killers_[static_cast<std::size_t>(c) * cw + (cu >> 6)] |= Word{1} << (cu & 63);
        if (left == 0) {
          conflict = c;
          break;
        }
        if (left == 1 && !forced_[c]) {
          forced_[c] = 1;
          queue_[tail++] = first(a);
        }
      }
    }
    if (conflict < 0) return false;
    std::fill_n(reason_.begin(), cw, 0);
    reason_[conflict >> 6] |= Word{1} << (conflict & 63);
    int stack_top = 0;
    queue_[stack_top++] = conflict;
    while (stack_top > 0) {
      const int c = queue_[--stack_top];
      const Word* k = killers_.data() + static_cast<std::size_t>(c) * cw;
      for (std::size_t w = 0; w < cw; ++w) {
        Word fresh = k[w] & ~reason_[w];
        reason_[w] |= fresh;
        while (fresh) {
          queue_[stack_top++] = static_cast<int>(w * 64) + __builtin_ctzll(fresh);
          fresh &= fresh - 1;
        }
      }
    }
    for (int c = 0; c < low; ++c)
      if ((reason_[c >> 6] >> (c & 63)) & 1) used[c] = 1;
    return true;
  }

  bool maps_onto_itself(const Permutation& p, const Word* b) const {
    for (std::size_t w = 0; w < words(); ++w)
      for (Word bits = b[w]; bits; bits &= bits - 1)
        if (!test(b, p[static_cast<int>(w * 64) + __builtin_ctzll(bits)])) return false;
    return true;
  }

  // Bits of `r` at the positions set in `p`, packed from the front of `out`.
  void compress(const Word* r, const Word* p, Word* out) const {
    std::fill_n(out, kLocal, 0);
    int shift = 0;
    for (std::size_t w = 0; w < words(); ++w) {
      if (!p[w]) continue;
#ifdef __BMI2__
      const Word bits = _pext_u64(r[w], p[w]);
      const int count = __builtin_popcountll(p[w]);
      const int low = shift & 63;
      out[shift >> 6] |= bits << low;
      if (low + count > 64) out[(shift >> 6) + 1] |= bits >> (64 - low);
      shift += count;
#else
      for (Word bits = p[w]; bits; bits &= bits - 1, ++shift)
        if (r[w] & bits & -bits) set(out, shift);
#endif
    }
  }

  // Hands a symmetry-free node to a smaller engine once its candidates fit.
  void delegate(const Word* candidates) {
    if (!local_) local_ = std::make_unique<CliqueSearch<kLocal>>();
    int m = 0;
    for (std::size_t w = 0; w < words(); ++w)
      for (Word bits = candidates[w]; bits; bits &= bits - 1)
        local_ids_[m++] = static_cast<int>(w * 64) + __builtin_ctzll(bits);
    for (int i = 0; i < m; ++i) compress(row(local_ids_[i]), candidates, local_rows_ + i * kLocal);
    const int floor = std::max(bound_ - static_cast<int>(current_.size()), 0);
    const auto& found = local_->improve(local_rows_, m, floor);
    nodes_ += local_->nodes();
    if (found.empty()) return;
    best_ = current_;
    for (int i : found) best_.push_back(local_ids_[i]);
    bound_ = static_cast<int>(best_.size());
  }

  void expand(std::size_t depth) {
    Frame& f = frames_[depth];
    Word* candidates = f.candidates.data();
    if constexpr (W != 1) {
      if (f.group.empty()) {
        std::size_t size = 0;
        for (std::size_t w = 0; w < words(); ++w) size += __builtin_popcountll(candidates[w]);
        if (size <= 64 * kLocal && kLocal < words()) return delegate(candidates);
      }
    }
    ++nodes_;
    const int r = bound_ - static_cast<int>(current_.size());

    f.classes.clear();
    f.uncoloured = f.candidates;
    f.avail.resize(words());
    int k = 0;
    while (!empty(f.uncoloured.data())) {
      f.avail = f.uncoloured;
      f.classes.resize(f.classes.size() + words(), 0);
      Word* cls = f.classes.data() + static_cast<std::size_t>(k) * words();
      for (int v = first(f.avail.data()); v >= 0; v = first(f.avail.data())) {
        set(cls, v);
        reset(f.uncoloured.data(), v);
        reset(f.avail.data(), v);
        const Word* nv = row(v);
        for (std::size_t w = 0; w < words(); ++w) f.avail[w] &= ~nv[w];
      }
      ++k;
    }
    if (k <= r) return;

    const int low = std::max(r, 0);
    for (int c = 0; c < low; ++c) {
      const Word* cls = f.classes.data() + static_cast<std::size_t>(c) * words();
      for (std::size_t w = 0; w < words(); ++w)
        for (Word bits = cls[w]; bits; bits &= bits - 1) class_of_[w * 64 + __builtin_ctzll(bits)] = c;
    }
    f.used.assign(static_cast<std::size_t>(low), 0);
    f.branch.clear();
    for (int c = low; c < k; ++c) {
      const Word* cls = f.classes.data() + static_cast<std::size_t>(c) * words();
      for (std::size_t w = 0; w < words(); ++w)
        for (Word bits = cls[w]; bits; bits &= bits - 1) {
          const int v = static_cast<int>(w * 64) + __builtin_ctzll(bits);
          if (low > 0 && refute(v, f.classes.data(), low, f.used.data())) continue;
          f.branch.push_back(v);
        }
    }

    Frame& child = frames_[depth + 1];
    child.candidates.resize(words());
    for (auto it = f.branch.rbegin(); it != f.branch.rend(); ++it) {
      const int v = *it;
      if (!test(candidates, v)) continue;
      current_.push_back(v);
      const Word* nv = row(v);
      for (std::size_t w = 0; w < words(); ++w) child.candidates[w] = candidates[w] & nv[w];
      if (empty(child.candidates.data())) {
        if (static_cast<int>(current_.size()) > bound_) {
          best_ = current_;
          bound_ = static_cast<int>(best_.size());
        }
      } else {
        child.group.clear();
        for (int e : f.group)
          if (maps_onto_itself(group_[e], child.candidates.data())) child.group.push_back(e);
        expand(depth + 1);
      }
      current_.pop_back();
      reset(candidates, v);
      for (int e : f.group) reset(candidates, group_[e][v]);
    }
  }

  int count_;
  std::size_t words_;
  std::vector<int> order_;
  std::vector<Word> adj_;
  std::vector<Permutation> group_;  // non-identity elements, in search positions
  std::vector<int> class_of_;
  std::vector<char> forced_;
  std::vector<int> queue_;
  std::vector<Word> alive_;
  std::vector<Word> killers_;
  std::vector<Word> reason_;
  std::vector<Frame> frames_;
  std::vector<int> current_;
  std::vector<int> best_;
  int bound_ = 0;
  long long nodes_ = 0;
  std::unique_ptr<CliqueSearch<kLocal>> local_;
  int local_ids_[64 * kLocal] = {};
  Word local_rows_[64 * kLocal * kLocal] = {};
};

}  // namespace detail

/// Exact maximum clique. `symmetries` may list automorphisms of `g`; the
/// search then skips branches that are images of ones already explored.
/// Throws CapExceeded above `vertex_cap` vertices and DomainError when a
/// listed permutation is not an automorphism.
inline CliqueResult max_clique(const AdjacencyList& g, std::size_t vertex_cap = kDefaultCliqueVertexCap,
                               const std::vector<Permutation>& symmetries = {}) {
  if (g.size() > vertex_cap)
    throw CapExceeded("max clique is capped at " + std::to_string(vertex_cap) + " vertices, graph has " +
                      std::to_string(g.size()));
  if (g.empty()) return {};
  for (std::size_t k = 0; k < symmetries.size(); ++k)
    if (!is_automorphism(g, symmetries[k]))
      throw DomainError("symmetry " + std::to_string(k) + " is not an automorphism of the graph");
  const auto group = symmetries.empty() ? std::vector<Permutation>{} : close_group(g.size(), symmetries);
  switch ((g.size() + 63) / 64) {
    case 1: return detail::CliqueSearch<1>(g, group).solve();
    case 2: return detail::CliqueSearch<2>(g, group).solve();
    case 3: return detail::CliqueSearch<3>(g, group).solve();
    case 4: return detail::CliqueSearch<4>(g, group).solve();
    case 5: return detail::CliqueSearch<5>(g, group).solve();
    case 6: return detail::CliqueSearch<6>(g, group).solve();
    default: return detail::CliqueSearch<0>(g, group).solve();
  }
}

}  // namespace psb
