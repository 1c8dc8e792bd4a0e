#pragma once

// Vertex adjacency in the 1-skeleton of the polytope of pyramidal tours with
// step-backs.
//
// Two distinct tours x, y are non-adjacent iff there is a left block (city 1
// or one of the U/L patterns) and a right block (city n or one of the U/R
// patterns), with the direction bits of x and y equal strictly between
// them, such that one of four difference conditions holds. The conditions
// depend on the direction of the two blocks and on where the encodings
// differ: left of the central part (P), right of it (S), inside it among
// ascending cities (CA) or among descending cities (CD).
//
//   case 1, blocks 1/1:  CA and (P or CD or S)
//   case 2, blocks 0/0:  CD and (P or CA or S)
//   case 3, blocks 1/0:  (CA or S) and (CD or P)
//   case 4, blocks 0/1:  (CD or S) and (CA or P)
//
// `nonadj_exhaustive` checks this statement literally over all block pairs
// in O(n^3). `adjacent` decides the same question in one O(n) pass per case.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psb/core.hpp"

namespace psb {

enum class BlockKind : std::uint8_t {
  U11,
  U00,
  U1111,
  U0000,
  L1110,
  L1011,
  L0001,
  L0100,
  R1101,
  R0111,
  R0010,
  R1000,
  VirtualLeft1,
  VirtualRightN,
};

inline std::string_view block_name(BlockKind k) {
  constexpr std::array<std::string_view, 14> names = {
      "U11",   "U00",   "U1111", "U0000", "L1110", "L1011",        "L0001",
      "L0100", "R1101", "R0111", "R0010", "R1000", "VirtualLeft1", "VirtualRightN"};
  return names[static_cast<std::size_t>(k)];
}

/// A block matched by a pair of encodings, covering cities [lo, hi].
struct BlockClass {
  BlockKind kind = BlockKind::U11;
  int lo = 0;
  int hi = 0;

  bool is_virtual() const { return kind == BlockKind::VirtualLeft1 || kind == BlockKind::VirtualRightN; }
  bool can_be_left() const {
    return kind == BlockKind::VirtualLeft1 || kind <= BlockKind::U0000 ||
           (kind >= BlockKind::L1110 && kind <= BlockKind::L0100);
  }
  bool can_be_right() const {
    return kind == BlockKind::VirtualRightN || kind <= BlockKind::U0000 ||
           (kind >= BlockKind::R1101 && kind <= BlockKind::R1000);
  }

  friend bool operator==(const BlockClass&, const BlockClass&) = default;
};

struct AdjacencyWitness {
  BlockClass left;
  BlockClass right;
  int case_id = 0;
  int i_a = 0;  // first city after the left block
  int j_b = 0;  // last city before the right block

  int i() const { return left.lo; }
  int j() const { return right.hi; }

  friend bool operator==(const AdjacencyWitness&, const AdjacencyWitness&) = default;
};

enum class View : std::uint8_t { Full01sb, Bits01, AscendingSb, DescendingSb };

struct RegionView {
  View view = View::Full01sb;
  int lo = 2;
  int hi = 1;  // lo > hi means empty
};

namespace detail {

/// Bits and marks of both encodings, indexed by city.
class PairView {
 public:
  PairView(const PsbEncoding& x, const PsbEncoding& y) : n_(x.n) {
    require_same_size(x, y);
    require_valid(x);
    require_valid(y);
    bits_[0].assign(static_cast<std::size_t>(n_) + 1, 0);
    bits_[1].assign(static_cast<std::size_t>(n_) + 1, 0);
    for (int c = 2; c <= n_ - 1; ++c) {
      bits_[0][c] = x.bit(c);
      bits_[1][c] = y.bit(c);
    }
    marks_[0] = marks(x);
    marks_[1] = marks(y);
  }

  int n() const { return n_; }
  int bit(int row, int c) const { return bits_[row][c]; }
  Mark mark(int row, int c) const { return marks_[row][c]; }
  bool same_bit(int c) const { return bits_[0][c] == bits_[1][c]; }
  bool same(int c) const { return same_bit(c) && marks_[0][c] == marks_[1][c]; }

  bool plain(int row, int c, int b) const { return bit(row, c) == b && mark(row, c) == Mark::Plain; }
  bool pair(int row, int c, int b) const {
    return c + 1 <= n_ - 1 && bit(row, c) == b && mark(row, c) == Mark::PairFirst;
  }
  // A tilde coordinate may also open a step-back pair pointing away from
  // the block: rightwards after an L block, leftwards before an R block.
  bool tilde_right(int row, int c, int b) const {
    return bit(row, c) == b && (mark(row, c) == Mark::Plain || mark(row, c) == Mark::PairFirst);
  }
  bool tilde_left(int row, int c, int b) const {
    return bit(row, c) == b && (mark(row, c) == Mark::Plain || mark(row, c) == Mark::PairSecond);
  }

 private:
  int n_;
  std::array<std::vector<std::uint8_t>, 2> bits_;
  std::array<std::vector<Mark>, 2> marks_;
};

/// Calls `f(BlockClass)` for each block whose span starts at city i.
template <typename F>
void blocks_at(const PairView& v, int i, F&& f) {
  constexpr int X = 0, Y = 1;
  if (v.plain(X, i, 1) && v.plain(Y, i, 1)) f(BlockClass{BlockKind::U11, i, i});
  if (v.plain(X, i, 0) && v.plain(Y, i, 0)) f(BlockClass{BlockKind::U00, i, i});
  if (i + 1 > v.n() - 1) return;
  const int k = i + 1;
  auto emit = [&](BlockKind kind) { f(BlockClass{kind, i, k}); };
  if (v.pair(X, i, 1) && v.pair(Y, i, 1)) emit(BlockKind::U1111);
  if (v.pair(X, i, 0) && v.pair(Y, i, 0)) emit(BlockKind::U0000);
  if (v.pair(X, i, 1) && v.plain(Y, i, 1) && v.tilde_right(Y, k, 0)) emit(BlockKind::L1110);
  if (v.plain(X, i, 1) && v.tilde_right(X, k, 0) && v.pair(Y, i, 1)) emit(BlockKind::L1011);
  if (v.pair(X, i, 0) && v.plain(Y, i, 0) && v.tilde_right(Y, k, 1)) emit(BlockKind::L0001);
  if (v.plain(X, i, 0) && v.tilde_right(X, k, 1) && v.pair(Y, i, 0)) emit(BlockKind::L0100);
  if (v.pair(X, i, 1) && v.tilde_left(Y, i, 0) && v.plain(Y, k, 1)) emit(BlockKind::R1101);
  if (v.tilde_left(X, i, 0) && v.plain(X, k, 1) && v.pair(Y, i, 1)) emit(BlockKind::R0111);
  if (v.pair(X, i, 0) && v.tilde_left(Y, i, 1) && v.plain(Y, k, 0)) emit(BlockKind::R0010);
  if (v.tilde_left(X, i, 1) && v.plain(X, k, 0) && v.pair(Y, i, 0)) emit(BlockKind::R1000);
}

inline bool regions_differ(const PairView& v, const RegionView& rv) {
  if (rv.lo > rv.hi) return false;
  if (rv.lo < 2 || rv.hi > v.n() - 1)
    throw DomainError("region [" + std::to_string(rv.lo) + ", " + std::to_string(rv.hi) +
                      "] outside the coordinates [2, " + std::to_string(v.n() - 1) + "]");
  if (rv.view == View::AscendingSb || rv.view == View::DescendingSb) {
    for (int c = rv.lo; c <= rv.hi; ++c)
      if (!v.same_bit(c)) throw DomainError("step-back views need equal bits on the region");
  }
  for (int c = rv.lo; c <= rv.hi; ++c) {
    switch (rv.view) {
      case View::Full01sb:
        if (!v.same(c)) return true;
        break;
      case View::Bits01:
        if (!v.same_bit(c)) return true;
        break;
      case View::AscendingSb:
        if (v.bit(0, c) == 1 && !v.same(c)) return true;
        break;
      case View::DescendingSb:
        if (v.bit(0, c) == 0 && !v.same(c)) return true;
        break;
    }
  }
  return false;
}

constexpr std::array<std::array<int, 2>, 4> kCaseValues = {{{1, 1}, {0, 0}, {1, 0}, {0, 1}}};

inline bool case_holds(int case_id, bool left, bool right, bool asc, bool desc) {
  switch (case_id) {
    case 1: return asc && (left || desc || right);
    case 2: return desc && (left || asc || right);
    case 3: return (asc || right) && (desc || left);
    case 4: return (desc || right) && (asc || left);
    default: return false;
  }
}

inline void require_case(int case_id) {
  if (case_id < 1 || case_id > 4) throw DomainError("case id must be in 1..4");
}

inline void require_distinct(const PsbEncoding& x, const PsbEncoding& y) {
  if (x == y) throw DomainError("adjacency of a vertex with itself is undefined");
}

/// Declarative check of one (left block, right block, case) candidate.
inline bool witness_holds(const PairView& v, const AdjacencyWitness& w) {
  const int n = v.n();
  const auto& l = w.left;
  const auto& r = w.right;
  if (!l.can_be_left() || !r.can_be_right()) return false;
  if (l.is_virtual() ? (l.lo != 1 || l.hi != 1) : (l.lo < 2 || l.hi > n - 1)) return false;
  if (r.is_virtual() ? (r.lo != n || r.hi != n) : (r.lo < 2 || r.hi > n - 1)) return false;
  if (l.hi >= r.lo) return false;
  if (w.i_a != l.hi + 1 || w.j_b != r.lo - 1) return false;
  if (w.case_id < 1 || w.case_id > 4) return false;

  auto matched = [&](const BlockClass& b) {
    if (b.is_virtual()) return true;
    bool found = false;
    blocks_at(v, b.lo, [&](const BlockClass& c) { found = found || c == b; });
    return found;
  };
  if (!matched(l) || !matched(r)) return false;

  const auto [a, b] = kCaseValues[static_cast<std::size_t>(w.case_id - 1)];
  if (!l.is_virtual() && v.bit(0, l.lo) != a) return false;
  if (!r.is_virtual() && v.bit(0, r.hi) != b) return false;

  if (regions_differ(v, {View::Bits01, w.i_a, w.j_b})) return false;
  const bool left = regions_differ(v, {View::Full01sb, 2, w.i_a - 1});
  const bool right = regions_differ(v, {View::Full01sb, w.j_b + 1, n - 1});
  const bool asc = regions_differ(v, {View::AscendingSb, w.i_a, w.j_b});
  const bool desc = regions_differ(v, {View::DescendingSb, w.i_a, w.j_b});
  return case_holds(w.case_id, left, right, asc, desc);
}

/// One left-to-right pass deciding whether some block pair satisfies the
/// case with left block direction `a` and right block direction `b`.
///
/// The pass keeps at most two open left blocks: the first one found since
/// the last coordinate where the bits of x and y disagree, and the first
/// one among those whose left part already differs. For a fixed right
/// block every other open left block is dominated by one of these two:
/// moving a left block rightwards can only turn the left-part difference
/// on and the central differences off.
inline std::optional<AdjacencyWitness> scan_case(const PairView& v, int case_id) {
  const int n = v.n();
  const auto [a, b] = kCaseValues[static_cast<std::size_t>(case_id - 1)];

  int first_diff = n, last_diff = 1;
  for (int c = 2; c <= n - 1; ++c) {
    if (!v.same(c)) {
      first_diff = std::min(first_diff, c);
      last_diff = c;
    }
  }

  struct Open {
    BlockClass block;
    bool left_differs;
  };
  std::optional<Open> first_open, first_open_left_differs;
  int last_asc_diff = 0, last_desc_diff = 0;

  auto open_left = [&](const BlockClass& blk) {
    const Open o{blk, first_diff <= blk.hi};
    if (!first_open) first_open = o;
    if (o.left_differs && !first_open_left_differs) first_open_left_differs = o;
  };
  auto try_right = [&](const BlockClass& rb) -> std::optional<AdjacencyWitness> {
    const bool right = last_diff >= rb.lo;
    for (const auto* o : {&first_open, &first_open_left_differs}) {
      if (!*o) continue;
      const int i_a = (*o)->block.hi + 1;
      const bool asc = last_asc_diff >= i_a;
      const bool desc = last_desc_diff >= i_a;
      if (case_holds(case_id, (*o)->left_differs, right, asc, desc))
        return AdjacencyWitness{(*o)->block, rb, case_id, i_a, rb.lo - 1};
    }
    return std::nullopt;
  };

  open_left(BlockClass{BlockKind::VirtualLeft1, 1, 1});
  for (int p = 2; p <= n - 1; ++p) {
    // right blocks starting at p close a central part ending at p - 1
    std::optional<AdjacencyWitness> found;
    blocks_at(v, p, [&](const BlockClass& blk) {
      if (!found && blk.can_be_right() && v.bit(0, blk.hi) == b) found = try_right(blk);
    });
    if (found) return found;

    if (!v.same_bit(p)) {
      first_open.reset();
      first_open_left_differs.reset();
    } else if (!v.same(p)) {
      (v.bit(0, p) == 1 ? last_asc_diff : last_desc_diff) = p;
    }

    // left blocks ending at p
    auto add = [&](const BlockClass& blk) {
      if (blk.hi == p && blk.can_be_left() && v.bit(0, blk.lo) == a) open_left(blk);
    };
    blocks_at(v, p, add);
    if (p - 1 >= 2) blocks_at(v, p - 1, add);
  }
  return try_right(BlockClass{BlockKind::VirtualRightN, n, n});
}

}  // namespace detail

/// Blocks whose span starts at coordinate i (x is the upper row).
inline std::vector<BlockClass> classify_pair_at(const PsbEncoding& x, const PsbEncoding& y, int i) {
  const detail::PairView v(x, y);
  if (i < 2 || i > x.n - 1)
    throw DomainError("coordinate " + std::to_string(i) + " outside [2, " + std::to_string(x.n - 1) + "]");
  std::vector<BlockClass> out;
  detail::blocks_at(v, i, [&](const BlockClass& b) { out.push_back(b); });
  return out;
}

inline bool regions_differ(const PsbEncoding& x, const PsbEncoding& y, const RegionView& rv) {
  return detail::regions_differ(detail::PairView(x, y), rv);
}

/// True iff `w` satisfies the non-adjacency statement for (x, y).
inline bool witness_holds(const PsbEncoding& x, const PsbEncoding& y, const AdjacencyWitness& w) {
  return detail::witness_holds(detail::PairView(x, y), w);
}

/// Literal search over every (left block, right block, case) triple.
/// Returns the witness with the smallest (i, j, case), or nothing when the
/// vertices are adjacent. A nonzero `only_case` restricts the search to that case.
inline std::optional<AdjacencyWitness> nonadj_exhaustive(const PsbEncoding& x, const PsbEncoding& y,
                                                         int only_case = 0) {
  if (only_case != 0) detail::require_case(only_case);
  const detail::PairView v(x, y);
  detail::require_distinct(x, y);
  const int n = v.n();

  std::vector<BlockClass> lefts{{BlockKind::VirtualLeft1, 1, 1}}, rights;
  for (int i = 2; i <= n - 1; ++i) {
    detail::blocks_at(v, i, [&](const BlockClass& b) {
      if (b.can_be_left()) lefts.push_back(b);
      if (b.can_be_right()) rights.push_back(b);
    });
  }
  rights.push_back({BlockKind::VirtualRightN, n, n});
  // order rights by the city j they name
  std::stable_sort(rights.begin(), rights.end(),
                   [](const BlockClass& p, const BlockClass& q) { return p.hi < q.hi; });

  for (const auto& l : lefts) {
    for (const auto& r : rights) {
      if (l.hi >= r.lo) continue;
      for (int case_id = 1; case_id <= 4; ++case_id) {
        if (only_case != 0 && case_id != only_case) continue;
        const AdjacencyWitness w{l, r, case_id, l.hi + 1, r.lo - 1};
        if (detail::witness_holds(v, w)) return w;
      }
    }
  }
  return std::nullopt;
}

/// Single-pass check of one of the four cases; O(n).
inline std::optional<AdjacencyWitness> nonadj_fast_witness(const PsbEncoding& x, const PsbEncoding& y,
                                                           int case_id) {
  detail::require_case(case_id);
  const detail::PairView v(x, y);
  detail::require_distinct(x, y);
  return detail::scan_case(v, case_id);
}

inline bool nonadj_fast_condition(const PsbEncoding& x, const PsbEncoding& y, int case_id) {
  return nonadj_fast_witness(x, y, case_id).has_value();
}

/// First case (in order 1..4) for which the fast pass finds a witness.
inline std::optional<AdjacencyWitness> nonadj_fast(const PsbEncoding& x, const PsbEncoding& y) {
  const detail::PairView v(x, y);
  detail::require_distinct(x, y);
  for (int case_id = 1; case_id <= 4; ++case_id)
    if (auto w = detail::scan_case(v, case_id)) return w;
  return std::nullopt;
}

/// Linear-time adjacency test. Throws DomainError when x == y.
inline bool adjacent(const PsbEncoding& x, const PsbEncoding& y) { return !nonadj_fast(x, y).has_value(); }

}  // namespace psb
