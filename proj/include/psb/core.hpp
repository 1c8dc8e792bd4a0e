#pragma once

// Pyramidal tours with step-backs: tours, their <0,1,step-back> encoding,
// enumeration, characteristic vectors and the two symmetry transforms.
//
// Cities are labelled 1..n. An encoding carries one direction bit per city
// 2..n-1 (1 = visited on the way up from 1 to n, 0 = on the way down) plus
// the set of step-back peaks. A peak i marks the pair of coordinates
// (i-1, i): going up the tour visits i before i-1, going down it visits
// i-1 before i.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "psb/error.hpp"

namespace psb {

struct Tour {
  int n = 0;
  std::vector<int> seq;  // seq[0] == 1

  friend bool operator==(const Tour&, const Tour&) = default;
};

/// Throws DomainError unless `t` is a permutation of 1..n starting at 1.
inline void check_tour(const Tour& t) {
  if (t.n < 3) throw DomainError("tour size must be at least 3");
  if (static_cast<int>(t.seq.size()) != t.n)
    throw DomainError("tour length " + std::to_string(t.seq.size()) +
                      " does not match n = " + std::to_string(t.n));
  if (t.seq.front() != 1) throw DomainError("tour must start at city 1");
  std::vector<bool> seen(t.n + 1, false);
  for (int c : t.seq) {
    if (c < 1 || c > t.n) throw DomainError("city " + std::to_string(c) + " out of range");
    if (seen[c]) throw DomainError("city " + std::to_string(c) + " repeated");
    seen[c] = true;
  }
}

struct PsbEncoding {
  int n = 0;
  std::vector<std::uint8_t> bits;  // bits[k] is the direction of city k + 2
  std::vector<int> sb;             // sorted step-back peaks

  int bit(int city) const { return bits[static_cast<std::size_t>(city - 2)]; }
  bool is_peak(int city) const { return std::binary_search(sb.begin(), sb.end(), city); }

  // Canonical order: n, then bits lexicographically, then the sorted peak
  // list lexicographically (a proper prefix sorts first).
  friend auto operator<=>(const PsbEncoding&, const PsbEncoding&) = default;
  friend bool operator==(const PsbEncoding&, const PsbEncoding&) = default;
};

/// Role of a coordinate with respect to step-back pairs.
enum class Mark : std::uint8_t {
  Plain,
  PairFirst,   // city i-1 of the pair of peak i
  PairSecond,  // the peak itself
};

/// Per-city marks, indexed by city (entries 0, 1 and n are Plain).
inline std::vector<Mark> marks(const PsbEncoding& e) {
  std::vector<Mark> m(static_cast<std::size_t>(e.n) + 1, Mark::Plain);
  for (int p : e.sb) {
    m[p - 1] = Mark::PairFirst;
    m[p] = Mark::PairSecond;
  }
  return m;
}

/// Lists every invariant violation of `e`; empty means valid.
inline std::vector<std::string> validate_encoding(const PsbEncoding& e) {
  std::vector<std::string> out;
  if (e.n < 3) {
    out.push_back("n = " + std::to_string(e.n) + " is below the minimum 3");
    return out;
  }
  if (static_cast<int>(e.bits.size()) != e.n - 2) {
    out.push_back("bits length " + std::to_string(e.bits.size()) + " != n-2 = " +
                  std::to_string(e.n - 2));
    return out;
  }
  for (std::size_t k = 0; k < e.bits.size(); ++k)
    if (e.bits[k] > 1)
      out.push_back("bits[" + std::to_string(k + 2) + "] is not 0 or 1");
  if (!out.empty()) return out;

  for (std::size_t k = 0; k < e.sb.size(); ++k) {
    const int p = e.sb[k];
    if (k > 0 && e.sb[k - 1] >= p) {
      out.push_back("peaks not strictly increasing at " + std::to_string(p));
      continue;
    }
    if (p < 3 || p > e.n - 1) {
      out.push_back("peak " + std::to_string(p) + " outside [3, " + std::to_string(e.n - 1) + "]");
      continue;
    }
    if (e.bit(p - 1) != e.bit(p))
      out.push_back("bits[" + std::to_string(p - 1) + "] != bits[" + std::to_string(p) +
                    "] under peak " + std::to_string(p));
    if (k > 0 && e.sb[k - 1] == p - 1)
      out.push_back("overlapping peaks " + std::to_string(p - 1) + "," + std::to_string(p));
  }
  return out;
}

/// Same as above, additionally requiring the encoding to belong to size `n`.
inline std::vector<std::string> validate_encoding(int n, const PsbEncoding& e) {
  if (e.n != n) {
    PsbEncoding resized = e;
    resized.n = n;
    return validate_encoding(resized);
  }
  return validate_encoding(e);
}

inline void require_valid(const PsbEncoding& e) {
  const auto v = validate_encoding(e);
  if (!v.empty()) throw DomainError("invalid encoding: " + v.front());
}

inline void require_same_size(const PsbEncoding& x, const PsbEncoding& y) {
  if (x.n != y.n)
    throw DomainError("mismatched sizes " + std::to_string(x.n) + " and " + std::to_string(y.n));
}

/// Tour of an encoding: 1, the ascending cities, n, the descending cities.
inline Tour decode(const PsbEncoding& e) {
  require_valid(e);
  const int n = e.n;
  Tour t{n, {}};
  t.seq.reserve(static_cast<std::size_t>(n));
  t.seq.push_back(1);
  for (int c = 2; c <= n - 1; ++c) {
    if (e.bit(c) != 1) continue;
    if (c + 1 <= n - 1 && e.is_peak(c + 1)) {
      t.seq.push_back(c + 1);
      t.seq.push_back(c);
      ++c;
    } else {
      t.seq.push_back(c);
    }
  }
  t.seq.push_back(n);
  for (int c = n - 1; c >= 2; --c) {
    if (e.bit(c) != 0) continue;
    if (e.is_peak(c)) {
      t.seq.push_back(c - 1);
      t.seq.push_back(c);
      --c;
    } else {
      t.seq.push_back(c);
    }
  }
  return t;
}

namespace detail {

struct Neighbours {
  std::vector<int> succ, pred;
};

inline Neighbours neighbours(const Tour& t) {
  Neighbours nb{std::vector<int>(t.n + 1), std::vector<int>(t.n + 1)};
  for (int k = 0; k < t.n; ++k) {
    const int a = t.seq[k];
    const int b = t.seq[(k + 1) % t.n];
    nb.succ[a] = b;
    nb.pred[b] = a;
  }
  return nb;
}

inline bool is_step_back_peak(const Neighbours& nb, int i) {
  const auto& s = nb.succ;
  const auto& p = nb.pred;
  return (p[i] < i && s[i] == i - 1 && s[s[i]] > i) ||
         (p[p[i]] > i && p[i] == i - 1 && s[i] < i);
}

}  // namespace detail

/// Step-back peaks of a tour, ascending.
inline std::vector<int> step_back_peaks(const Tour& t) {
  check_tour(t);
  const auto nb = detail::neighbours(t);
  std::vector<int> out;
  for (int i = 2; i <= t.n; ++i)
    if (detail::is_step_back_peak(nb, i)) out.push_back(i);
  return out;
}

/// True iff the only peak that is not a step-back peak is city n.
inline bool is_psb_tour(const Tour& t) {
  check_tour(t);
  const auto nb = detail::neighbours(t);
  for (int i = 2; i <= t.n; ++i) {
    const bool peak = nb.pred[i] < i && nb.succ[i] < i;
    const bool proper = peak && !detail::is_step_back_peak(nb, i);
    if (proper != (i == t.n)) return false;
  }
  return true;
}

inline PsbEncoding encode(const Tour& t) {
  if (!is_psb_tour(t)) throw DomainError("tour is not a pyramidal tour with step-backs");
  PsbEncoding e{t.n, std::vector<std::uint8_t>(static_cast<std::size_t>(t.n - 2), 0), {}};
  for (int k = 1; t.seq[k] != t.n; ++k) e.bits[t.seq[k] - 2] = 1;
  e.sb = step_back_peaks(t);
  if (!validate_encoding(e).empty() || decode(e) != t)
    throw DomainError("tour is not a pyramidal tour with step-backs");
  return e;
}

inline PsbEncoding all_ones(int n) {
  if (n < 3) throw DomainError("n must be at least 3");
  return {n, std::vector<std::uint8_t>(static_cast<std::size_t>(n - 2), 1), {}};
}

inline PsbEncoding all_zeros(int n) {
  if (n < 3) throw DomainError("n must be at least 3");
  return {n, std::vector<std::uint8_t>(static_cast<std::size_t>(n - 2), 0), {}};
}

/// Calls `f(const PsbEncoding&)` for every valid encoding of size n in
/// canonical order. Memory stays O(n) apart from the peak subsets of the
/// current bit string.
template <typename F>
void for_each_encoding(int n, F&& f) {
  if (n < 3) throw DomainError("n must be at least 3");
  const int m = n - 2;
  if (m >= 63) throw DomainError("n too large to enumerate");
  PsbEncoding e{n, std::vector<std::uint8_t>(static_cast<std::size_t>(m), 0), {}};
  std::vector<int> candidates;
  std::vector<std::vector<int>> subsets;
  std::vector<int> current;

  // Non-overlapping subsets of `candidates`, in lexicographic order of the
  // sorted lists (prefixes first).
  auto collect = [&](auto&& self, std::size_t from) -> void {
    subsets.push_back(current);
    for (std::size_t k = from; k < candidates.size(); ++k) {
      if (!current.empty() && current.back() == candidates[k] - 1) continue;
      current.push_back(candidates[k]);
      self(self, k + 1);
      current.pop_back();
    }
  };

  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    // most significant bit = city 2, so numeric order is string order
    for (int k = 0; k < m; ++k) e.bits[k] = static_cast<std::uint8_t>((mask >> (m - 1 - k)) & 1U);
    candidates.clear();
    for (int p = 3; p <= n - 1; ++p)
      if (e.bit(p - 1) == e.bit(p)) candidates.push_back(p);
    subsets.clear();
    current.clear();
    collect(collect, 0);
    for (auto& s : subsets) {
      e.sb = std::move(s);
      f(static_cast<const PsbEncoding&>(e));
    }
  }
}

inline std::vector<PsbEncoding> enumerate_encodings(int n) {
  std::vector<PsbEncoding> out;
  for_each_encoding(n, [&](const PsbEncoding& e) { out.push_back(e); });
  return out;
}

/// Number of encodings of size n: tilings of the n-2 coordinates by free
/// coordinates (2 directions) and step-back pairs (2 directions), so
/// f(m) = 2 f(m-1) + 2 f(m-2) with f(0) = 1, f(1) = 2.
inline std::uint64_t count_encodings(int n) {
  if (n < 3) throw DomainError("n must be at least 3");
  std::uint64_t prev = 1, cur = 2;  // f(0), f(1)
  for (int m = 2; m <= n - 2; ++m) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    if (cur > kMax / 4 || prev > kMax / 4) throw DomainError("encoding count overflows 64 bits");
    const std::uint64_t next = 2 * cur + 2 * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Uniformly random encoding, reproducible from `seed` on every platform.
inline PsbEncoding random_encoding(int n, std::uint64_t seed) {
  if (n < 3) throw DomainError("n must be at least 3");
  const int m = n - 2;
  // ratio[r] = f(r-1) / f(r); a free coordinate opens a tiling of r cells
  // with probability 2 * ratio[r].
  std::vector<double> ratio(static_cast<std::size_t>(m) + 1, 0.0);
  ratio[1] = 0.5;
  for (int r = 2; r <= m; ++r) ratio[r] = 1.0 / (2.0 + 2.0 * ratio[r - 1]);

  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  PsbEncoding e{n, std::vector<std::uint8_t>(static_cast<std::size_t>(m), 0), {}};
  int c = 2;
  while (c <= n - 1) {
    const int remaining = n - c;  // coordinates c..n-1
    const auto b = static_cast<std::uint8_t>(rng() & 1U);
    if (remaining == 1 || unit() < 2.0 * ratio[remaining]) {
      e.bits[c - 2] = b;
      c += 1;
    } else {
      e.bits[c - 2] = b;
      e.bits[c - 1] = b;
      e.sb.push_back(c + 1);
      c += 2;
    }
  }
  return e;
}

struct CharacteristicVector {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // sorted directed edges (a, b)

  friend bool operator==(const CharacteristicVector&, const CharacteristicVector&) = default;
};

/// Position of the directed edge (a, b) among the n(n-1) edge slots.
inline std::size_t edge_slot(int n, int a, int b) {
  return static_cast<std::size_t>(a - 1) * static_cast<std::size_t>(n - 1) +
         static_cast<std::size_t>(b < a ? b - 1 : b - 2);
}

inline CharacteristicVector char_vector(const Tour& t) {
  check_tour(t);
  CharacteristicVector v{t.n, {}};
  v.edges.reserve(t.seq.size());
  for (int k = 0; k < t.n; ++k) v.edges.emplace_back(t.seq[k], t.seq[(k + 1) % t.n]);
  std::sort(v.edges.begin(), v.edges.end());
  return v;
}

/// Dense 0/1 form over the n(n-1) edge slots.
inline std::vector<std::uint8_t> dense(const CharacteristicVector& v) {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(v.n) * static_cast<std::size_t>(v.n - 1), 0);
  for (auto [a, b] : v.edges) out[edge_slot(v.n, a, b)] = 1;
  return out;
}

/// Encoding of the same tour traversed backwards.
inline PsbEncoding reverse_tour(const PsbEncoding& e) {
  require_valid(e);
  PsbEncoding r = e;
  for (auto& b : r.bits) b ^= 1U;
  return r;
}

/// The tour with city c renamed to city[c] (city[0] unused), rotated to
/// start at city 1. Direction of travel is kept.
inline Tour relabel_cities(const Tour& t, const std::vector<int>& city) {
  check_tour(t);
  if (static_cast<int>(city.size()) != t.n + 1) throw DomainError("relabelling needs n + 1 entries");
  std::vector<int> seq;
  for (int c : t.seq) seq.push_back(city.at(static_cast<std::size_t>(c)));
  const auto one = std::find(seq.begin(), seq.end(), 1);
  if (one == seq.end()) throw DomainError("relabelling does not map any city to 1");
  std::rotate(seq.begin(), one, seq.end());
  Tour out{t.n, std::move(seq)};
  check_tour(out);
  return out;
}

/// Encoding of the tour after relabelling every city i as n + 1 - i.
inline PsbEncoding relabel_mirror(const PsbEncoding& e) {
  require_valid(e);
  PsbEncoding r{e.n, std::vector<std::uint8_t>(e.bits.rbegin(), e.bits.rend()), {}};
  for (auto& b : r.bits) b ^= 1U;
  for (auto it = e.sb.rbegin(); it != e.sb.rend(); ++it) r.sb.push_back(e.n + 2 - *it);
  return r;
}

}  // namespace psb
