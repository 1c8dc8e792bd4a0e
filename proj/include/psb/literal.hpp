#pragma once

// Compact text form of an encoding: `BITS[@P1,P2,...]`, e.g. `101101@5`.
// The instance size is implied: n = |BITS| + 2.

#include <charconv>
#include <string>
#include <string_view>

#include "psb/core.hpp"

namespace psb {

inline std::string to_literal(const PsbEncoding& e) {
  std::string s;
  s.reserve(e.bits.size() + 4 * e.sb.size());
  for (auto b : e.bits) s.push_back(b ? '1' : '0');
  for (std::size_t k = 0; k < e.sb.size(); ++k) {
    s.push_back(k == 0 ? '@' : ',');
    s += std::to_string(e.sb[k]);
  }
  return s;
}

/// Parses a literal; throws DomainError on syntax errors or when the result
/// violates an encoding invariant.
inline PsbEncoding parse_literal(std::string_view text) {
  const auto at = text.find('@');
  const std::string_view bits = text.substr(0, at);
  if (bits.empty()) throw DomainError("empty bit string in literal '" + std::string(text) + "'");

  PsbEncoding e;
  e.n = static_cast<int>(bits.size()) + 2;
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw DomainError("bad character '" + std::string(1, c) + "' in literal '" + std::string(text) + "'");
    e.bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  if (at != std::string_view::npos) {
    std::string_view rest = text.substr(at + 1);
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view tok = rest.substr(0, comma);
      int value = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
        throw DomainError("bad peak '" + std::string(tok) + "' in literal '" + std::string(text) + "'");
      e.sb.push_back(value);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  require_valid(e);
  return e;
}

}  // namespace psb
