#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ovs {

using PlaceIndex = std::size_t;
using TransitionIndex = std::size_t;
using StateId = std::size_t;

/// Token vector over the places of a net.
///
/// Plant places of a safe net only ever hold 0 or 1 tokens, so for the plant a
/// Marking is a boolean vector and doubles as an over-state (partial marking).
/// Control places produced by synthesis may hold more than one token, which is
/// why the storage is a byte per place rather than a bit.
class Marking {
 public:
  using Token = std::uint8_t;

  Marking() = default;
  explicit Marking(std::size_t places) : tokens_(places, 0) {}
  explicit Marking(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  static Marking from_support(std::size_t places, std::span<const PlaceIndex> marked) {
    Marking m(places);
    for (PlaceIndex p : marked) {
      assert(p < places);
      m.tokens_[p] = 1;
    }
    return m;
  }

  static Marking from_support(std::size_t places, std::initializer_list<PlaceIndex> marked) {
    return from_support(places, std::span<const PlaceIndex>(marked.begin(), marked.size()));
  }

  std::size_t size() const noexcept { return tokens_.size(); }
  Token operator[](PlaceIndex p) const { return tokens_[p]; }
  Token& operator[](PlaceIndex p) { return tokens_[p]; }
  bool marked(PlaceIndex p) const { return tokens_[p] != 0; }

  std::span<const Token> tokens() const noexcept { return tokens_; }

  /// Indices of the marked places, ascending.
  std::vector<PlaceIndex> support() const {
    std::vector<PlaceIndex> out;
    for (PlaceIndex p = 0; p < tokens_.size(); ++p)
      if (tokens_[p] != 0) out.push_back(p);
    return out;
  }

  std::size_t support_size() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(tokens_.begin(), tokens_.end(), [](Token t) { return t != 0; }));
  }

  bool empty_support() const noexcept {
    return std::all_of(tokens_.begin(), tokens_.end(), [](Token t) { return t == 0; });
  }

  bool is_boolean() const noexcept {
    return std::all_of(tokens_.begin(), tokens_.end(), [](Token t) { return t <= 1; });
  }

  /// First `count` components.
  Marking prefix(std::size_t count) const {
    assert(count <= tokens_.size());
    return Marking(std::vector<Token>(tokens_.begin(), tokens_.begin() + static_cast<std::ptrdiff_t>(count)));
  }

  /// Lexicographic over place index order.
  friend auto operator<=>(const Marking&, const Marking&) = default;
  friend bool operator==(const Marking&, const Marking&) = default;

 private:
  std::vector<Token> tokens_;
};

/// Partial order `a ≤ b`: componentwise. On boolean markings this is bitwise
/// implication, i.e. every place marked in `a` is marked in `b`.
inline bool leq(const Marking& a, const Marking& b) {
  assert(a.size() == b.size());
  for (PlaceIndex p = 0; p < a.size(); ++p)
    if (a[p] > b[p]) return false;
  return true;
}

inline bool strictly_less(const Marking& a, const Marking& b) {
  return a != b && leq(a, b);
}

/// Canonical order used for over-state sets in reports: fewer marked places
/// first, then lexicographic on the ascending support index list.
inline bool support_order_less(const Marking& a, const Marking& b) {
  const auto sa = a.support();
  const auto sb = b.support();
  if (sa.size() != sb.size()) return sa.size() < sb.size();
  return sa < sb;
}

struct MarkingHash {
  std::size_t operator()(const Marking& m) const noexcept {
    const auto t = m.tokens();
    return std::hash<std::string_view>{}(
        std::string_view(reinterpret_cast<const char*>(t.data()), t.size()));
  }
};

/// Renders a marking as concatenated place names ("P1P3P6"); the empty
/// marking renders as "{}". Multi-token places render as "name*k".
template <typename NameOf>
std::string format_support(const Marking& m, NameOf&& name_of) {
  std::string out;
  for (PlaceIndex p = 0; p < m.size(); ++p) {
    if (m[p] == 0) continue;
    out += name_of(p);
    if (m[p] > 1) out += "*" + std::to_string(m[p]);
  }
  return out.empty() ? std::string("{}") : out;
}

}  // namespace ovs
