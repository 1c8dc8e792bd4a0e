#pragma once

// Minimum-cost pyramidal tour with step-backs on an asymmetric distance
// matrix, plus two brute-force baselines.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "psb/core.hpp"

namespace psb {

inline constexpr double kCostTolerance = 1e-9;
inline constexpr int kDefaultEnumMaxN = 10;
inline constexpr int kBruteForceMaxN = 10;

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(int n, std::vector<double> row_major) : n_(n), cost_(std::move(row_major)) { validate(); }
  explicit DistanceMatrix(const std::vector<std::vector<double>>& rows) : n_(static_cast<int>(rows.size())) {
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != n_) throw DomainError("distance matrix must be square");
      cost_.insert(cost_.end(), r.begin(), r.end());
    }
    validate();
  }

  int n() const { return n_; }
  double operator()(int from, int to) const {
    return cost_[static_cast<std::size_t>(from - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(to - 1)];
  }

 private:
  void validate() const {
    if (n_ < 3) throw DomainError("distance matrix needs n >= 3");
    if (cost_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_))
      throw DomainError("distance matrix must have n*n entries");
    for (int a = 1; a <= n_; ++a)
      for (int b = 1; b <= n_; ++b)
        if (a != b && !std::isfinite((*this)(a, b)))
          throw DomainError("non-finite cost on edge " + std::to_string(a) + "->" + std::to_string(b));
  }

  int n_ = 0;
  std::vector<double> cost_;  // row-major, cities 1..n
};

enum class SolveMethod : std::uint8_t { Dp, Enum, AtspBrute };

inline std::string_view solve_method_name(SolveMethod m) {
  switch (m) {
    case SolveMethod::Dp: return "dp";
    case SolveMethod::Enum: return "enum";
    case SolveMethod::AtspBrute: return "atsp-brute";
  }
  return "?";
}

inline SolveMethod parse_solve_method(std::string_view s) {
  if (s == "dp") return SolveMethod::Dp;
  if (s == "enum") return SolveMethod::Enum;
  if (s == "atsp-brute") return SolveMethod::AtspBrute;
  throw DomainError("unknown solve method '" + std::string(s) + "'");
}

struct Solution {
  Tour tour;
  std::optional<PsbEncoding> encoding;  // absent when the tour is not PSB
  double cost = 0;
  SolveMethod method = SolveMethod::Dp;
};

inline double tour_cost(const DistanceMatrix& m, const Tour& t) {
  double s = 0;
  for (auto [a, b] : char_vector(t).edges) s += m(a, b);
  return s;
}

namespace detail {

inline bool cost_eq(double a, double b) { return std::abs(a - b) <= kCostTolerance; }

/// Frontier dynamic programme over partial tours on cities 1..p.
///
/// A state records the open ends of the ascending path (grown forwards from
/// city 1) and of the descending path (grown backwards from city 1). One of
/// the two ends is the frontier: p, or p-1 when cities p-1, p were just
/// placed as a step-back pair. The other end is any smaller city, so there
/// are O(n^2) states, each with four O(1) moves: place p+1 on either path,
/// or place the pair (p+1, p+2) on either path.
class FrontierDp {
 public:
  explicit FrontierDp(const DistanceMatrix& m) : m_(m), n_(m.n()) {
    const std::size_t size = static_cast<std::size_t>(n_ + 1) * 4 * static_cast<std::size_t>(n_ + 1);
    inf_ = std::numeric_limits<double>::infinity();
    go_.assign(size, inf_);
    for (int p = n_ - 1; p >= 1; --p) {
      for_each_state(p, [&](const State& s) { go_[index(s)] = best_completion(s, nullptr); });
    }
  }

  double optimum() const { return go_[index(start())]; }

  /// Canonically smallest optimal encoding: smallest bit string first, then
  /// smallest sorted list of step-back peaks.
  PsbEncoding canonical_optimum() const {
    const double opt = optimum();
    const std::vector<std::uint8_t> bits = smallest_bits(opt);
    const std::vector<double> restricted = cost_to_go_with(bits);
    return smallest_peaks(opt, bits, restricted);
  }

 private:
  struct State {
    int p;      // highest city placed
    int asc;    // open end of the ascending path
    int desc;   // open end of the descending path
  };

  struct Move {
    int bit;    // path receiving the new cities: 1 ascending, 0 descending
    bool pair;  // step-back pair (p+1, p+2) instead of the single p+1
    State to;
    double cost;
  };

  State start() const { return {1, 1, 1}; }

  std::size_t index(const State& s) const {
    const int front = std::max(s.asc, s.desc);
    const int other = std::min(s.asc, s.desc);
    const std::size_t side = s.asc >= s.desc ? 1 : 0;
    const std::size_t pair = front == s.p - 1 ? 1 : 0;
    return ((static_cast<std::size_t>(s.p) * 2 + side) * 2 + pair) * static_cast<std::size_t>(n_ + 1) +
           static_cast<std::size_t>(other);
  }

  template <typename F>
  void for_each_state(int p, F&& f) const {
    if (p == 1) {
      f(start());
      return;
    }
    for (int pair = 0; pair <= 1; ++pair) {
      const int front = p - pair;
      if (pair == 1 && p < 3) continue;
      for (int other = 1; other < front; ++other) {
        f(State{p, front, other});
        f(State{p, other, front});
      }
    }
  }

  template <typename F>
  void for_each_move(const State& s, F&& f) const {
    const int next = s.p + 1;
    if (next > n_ - 1) return;
    f(Move{1, false, {next, next, s.desc}, m_(s.asc, next)});
    f(Move{0, false, {next, s.asc, next}, m_(next, s.desc)});
    if (next + 1 > n_ - 1) return;
    const int peak = next + 1;
    f(Move{1, true, {peak, next, s.desc}, m_(s.asc, peak) + m_(peak, next)});
    f(Move{0, true, {peak, s.asc, next}, m_(next, peak) + m_(peak, s.desc)});
  }

  double closing_cost(const State& s) const { return m_(s.asc, n_) + m_(n_, s.desc); }

  // Minimal cost to finish from s; `bits` (when given) restricts moves.
  double best_completion(const State& s, const std::vector<std::uint8_t>* bits,
                         const std::vector<double>* table = nullptr) const {
    if (s.p == n_ - 1) return closing_cost(s);
    const auto& go = table ? *table : go_;
    double best = inf_;
    for_each_move(s, [&](const Move& mv) {
      if (bits && !consistent(mv, s.p, *bits)) return;
      best = std::min(best, mv.cost + go[index(mv.to)]);
    });
    return best;
  }

  static bool consistent(const Move& mv, int p, const std::vector<std::uint8_t>& bits) {
    if (bits[p + 1 - 2] != mv.bit) return false;
    return !mv.pair || bits[p + 2 - 2] == mv.bit;
  }

  // Smallest bit string among optimal tours. `active` holds states at the
  // current position reachable through the chosen prefix on an optimal
  // path; `pending` holds states two cities ahead entered by a step-back
  // pair, which forces the next bit to repeat.
  std::vector<std::uint8_t> smallest_bits(double opt) const {
    struct Entry {
      State s;
      double prefix;
    };
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_ - 2), 0);
    std::vector<Entry> active{{start(), 0.0}};
    std::vector<std::pair<Entry, int>> pending;

    for (int c = 2; c <= n_ - 1; ++c) {
      std::vector<std::pair<Entry, int>> plain, pairs;
      for (const auto& e : active) {
        for_each_move(e.s, [&](const Move& mv) {
          const double prefix = e.prefix + mv.cost;
          if (!cost_eq(prefix + go_[index(mv.to)], opt)) return;
          (mv.pair ? pairs : plain).push_back({{mv.to, prefix}, mv.bit});
        });
      }
      int chosen = 2;
      for (const auto& [e, b] : plain) chosen = std::min(chosen, b);
      for (const auto& [e, b] : pairs) chosen = std::min(chosen, b);
      for (const auto& [e, b] : pending) chosen = std::min(chosen, b);
      if (chosen == 2) throw VerificationFailure("dynamic programme lost every optimal tour");
      bits[c - 2] = static_cast<std::uint8_t>(chosen);

      // states on an optimal path have equal prefixes, so keep one copy
      std::vector<char> seen(go_.size(), 0);
      auto fresh = [&](const Entry& e) {
        auto& f = seen[index(e.s)];
        return f ? false : (f = 1, true);
      };
      active.clear();
      for (const auto& [e, b] : plain)
        if (b == chosen && fresh(e)) active.push_back(e);
      for (const auto& [e, b] : pending)
        if (b == chosen && fresh(e)) active.push_back(e);
      pending.clear();
      for (const auto& [e, b] : pairs)
        if (b == chosen && fresh(e)) pending.emplace_back(e, b);
    }
    return bits;
  }

  std::vector<double> cost_to_go_with(const std::vector<std::uint8_t>& bits) const {
    std::vector<double> table(go_.size(), inf_);
    for (int p = n_ - 1; p >= 1; --p)
      for_each_state(p, [&](const State& s) { table[index(s)] = best_completion(s, &bits, &table); });
    return table;
  }

  // With the bits fixed, pick step-back peaks greedily: stop adding peaks
  // as soon as the all-plain completion is optimal, otherwise take the
  // smallest next peak that still admits an optimal completion.
  PsbEncoding smallest_peaks(double opt, const std::vector<std::uint8_t>& bits,
                             const std::vector<double>& go) const {
    PsbEncoding e{n_, bits, {}};
    State s = start();
    double prefix = 0;
    auto plain_move = [&](const State& from) {
      Move chosen{};
      for_each_move(from, [&](const Move& mv) {
        if (!mv.pair && consistent(mv, from.p, bits)) chosen = mv;
      });
      return chosen;
    };
    while (true) {
      State w = s;
      double cost = prefix;
      while (w.p < n_ - 1) {
        const Move mv = plain_move(w);
        cost += mv.cost;
        w = mv.to;
      }
      if (cost_eq(cost + closing_cost(w), opt)) return e;

      w = s;
      cost = prefix;
      bool advanced = false;
      while (w.p < n_ - 1 && !advanced) {
        for_each_move(w, [&](const Move& mv) {
          if (advanced || !mv.pair || !consistent(mv, w.p, bits)) return;
          if (cost_eq(cost + mv.cost + go[index(mv.to)], opt)) {
            e.sb.push_back(mv.to.p);
            s = mv.to;
            prefix = cost + mv.cost;
            advanced = true;
          }
        });
        if (!advanced) {
          const Move mv = plain_move(w);
          cost += mv.cost;
          w = mv.to;
        }
      }
      if (!advanced) throw VerificationFailure("dynamic programme lost every optimal tour");
    }
  }

  const DistanceMatrix& m_;
  int n_;
  double inf_;
  std::vector<double> go_;
};

}  // namespace detail

/// Optimal tour by dynamic programming in O(n^2) time and space.
inline Solution solve_dp(const DistanceMatrix& m) {
  if (m.n() < 3) throw DomainError("distance matrix needs n >= 3");
  const detail::FrontierDp dp(m);
  PsbEncoding e = dp.canonical_optimum();
  Tour t = decode(e);
  const double cost = tour_cost(m, t);
  if (!detail::cost_eq(cost, dp.optimum()))
    throw VerificationFailure("reconstructed tour does not reach the optimum");
  return {std::move(t), std::move(e), cost, SolveMethod::Dp};
}

/// Optimal tour by evaluating every encoding; ties go to the first in
/// canonical order.
inline Solution solve_enum(const DistanceMatrix& m, int max_n = kDefaultEnumMaxN) {
  if (m.n() > max_n)
    throw CapExceeded("enumeration solver is capped at n <= " + std::to_string(max_n));
  std::optional<Solution> best;
  for_each_encoding(m.n(), [&](const PsbEncoding& e) {
    Tour t = decode(e);
    const double cost = tour_cost(m, t);
    if (!best || cost < best->cost - kCostTolerance) best = Solution{std::move(t), e, cost, SolveMethod::Enum};
  });
  return *best;
}

/// Optimal tour over all (n-1)! directed Hamiltonian tours.
inline Solution solve_atsp_bruteforce(const DistanceMatrix& m, int max_n = kBruteForceMaxN) {
  if (m.n() > max_n) throw CapExceeded("brute force is capped at n <= " + std::to_string(max_n));
  const int n = m.n();
  Tour t{n, std::vector<int>(static_cast<std::size_t>(n))};
  std::iota(t.seq.begin(), t.seq.end(), 1);
  std::optional<Solution> best;
  do {
    const double cost = tour_cost(m, t);
    if (!best || cost < best->cost - kCostTolerance) best = Solution{t, std::nullopt, cost, SolveMethod::AtspBrute};
  } while (std::next_permutation(t.seq.begin() + 1, t.seq.end()));
  if (is_psb_tour(best->tour)) best->encoding = encode(best->tour);
  return *best;
}

inline Solution solve(const DistanceMatrix& m, SolveMethod method) {
  switch (method) {
    case SolveMethod::Dp: return solve_dp(m);
    case SolveMethod::Enum: return solve_enum(m);
    case SolveMethod::AtspBrute: return solve_atsp_bruteforce(m);
  }
  throw DomainError("unknown solve method");
}

}  // namespace psb
