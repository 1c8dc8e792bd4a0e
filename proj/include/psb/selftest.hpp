#pragma once

// Whole-instance consistency checks: the three adjacency methods against
// each other, plus the encoding invariants, for one size n.

#include <optional>
#include <string>
#include <vector>

#include "psb/adjacency.hpp"
#include "psb/core.hpp"
#include "psb/literal.hpp"
#include "psb/oracle.hpp"

namespace psb {

struct EquivalenceReport {
  int n = 0;
  std::size_t pairs = 0;
  std::size_t adjacent_pairs = 0;
  std::size_t disagreements = 0;
  std::vector<std::string> samples;  // first few disagreeing pairs
};

/// Every unordered pair of distinct tours through fast, exhaustive and
/// pair-oracle adjacency.
inline EquivalenceReport check_equivalence(int n, int cap = oracle_max_n()) {
  require_within_cap(n, Method::Oracle, cap);
  auto ts = std::make_shared<const TourSet>(n);
  const PairOracle oracle(ts);
  EquivalenceReport r{n, 0, 0, 0, {}};
  const int count = static_cast<int>(ts->size());
  for (int p = 0; p < count; ++p) {
    for (int q = p + 1; q < count; ++q) {
      const auto& x = (*ts)[p];
      const auto& y = (*ts)[q];
      const bool fast = adjacent(x, y);
      const bool slow = !nonadj_exhaustive(x, y).has_value();
      const bool truth = !oracle.find_pair(p, q).has_value();
      ++r.pairs;
      if (truth) ++r.adjacent_pairs;
      if (fast != truth || slow != truth) {
        if (r.disagreements++ < 5)
          r.samples.push_back(to_literal(x) + " " + to_literal(y) + " fast=" + std::to_string(fast) +
                              " exhaustive=" + std::to_string(slow) + " oracle=" + std::to_string(truth));
      }
    }
  }
  return r;
}

/// Encoding invariants at size n; returns the failures found.
inline std::vector<std::string> check_invariants(int n) {
  std::vector<std::string> bad;
  std::uint64_t seen = 0;
  for_each_encoding(n, [&](const PsbEncoding& e) {
    ++seen;
    const auto lit = to_literal(e);
    const Tour t = decode(e);
    if (!is_psb_tour(t)) bad.push_back(lit + ": decoded tour is not PSB");
    if (encode(t) != e) bad.push_back(lit + ": encode(decode(x)) != x");
    if (parse_literal(lit) != e) bad.push_back(lit + ": literal does not round-trip");
    if (reverse_tour(reverse_tour(e)) != e) bad.push_back(lit + ": reverse_tour is not an involution");
    if (relabel_mirror(relabel_mirror(e)) != e) bad.push_back(lit + ": relabel_mirror is not an involution");
  });
  if (seen != count_encodings(n))
    bad.push_back("n=" + std::to_string(n) + ": enumeration gives " + std::to_string(seen) + " tours, count says " +
                  std::to_string(count_encodings(n)));
  return bad;
}

}  // namespace psb
