#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "ovsynth/error.hpp"
#include "ovsynth/marking.hpp"
#include "ovsynth/petri_net.hpp"

namespace ovs {

/// A nonempty partial marking b. Forbidding b forbids every marking M with
/// b ≤ M.
class OverState {
 public:
  explicit OverState(Marking bits) : bits_(std::move(bits)), cardinality_(bits_.support_size()) {
    if (cardinality_ == 0) fail(ErrorCode::InvalidOverState, "over-state with empty support");
    if (!bits_.is_boolean()) fail(ErrorCode::InvalidOverState, "over-state must be a boolean vector");
  }

  const Marking& bits() const noexcept { return bits_; }
  std::size_t cardinality() const noexcept { return cardinality_; }
  std::vector<PlaceIndex> support() const { return bits_.support(); }

  /// b ≤ m: `m` marks every place of this over-state.
  bool below(const Marking& m) const { return leq(bits_, m); }

  friend bool operator==(const OverState& a, const OverState& b) { return a.bits_ == b.bits_; }

 private:
  Marking bits_;
  std::size_t cardinality_;
};

/// Canonical order: fewer places first, then lexicographic on the support.
inline bool canonical_less(const OverState& a, const OverState& b) {
  return support_order_less(a.bits(), b.bits());
}

/// Sorted canonically, duplicate-free.
using OverStateSet = std::vector<OverState>;

inline void canonicalize(OverStateSet& set) {
  std::sort(set.begin(), set.end(), canonical_less);
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

/// Linear inequality Σ_{p ∈ support} m_p ≤ |support| − 1.
struct Constraint {
  std::vector<PlaceIndex> support;
  int bound = 0;

  int weighted_sum(const Marking& m) const {
    int sum = 0;
    for (PlaceIndex p : support) sum += m[p];
    return sum;
  }
  bool violated_by(const Marking& m) const { return weighted_sum(m) > bound; }

  std::string format(const PetriNet& net) const {
    std::string out;
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (i) out += " + ";
      out += net.place(support[i]).name;
    }
    return out + " <= " + std::to_string(bound);
  }

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

inline constexpr std::size_t kDefaultSupportCap = 20;

/// All 2^n − 1 nonempty sub-supports of `m`.
inline OverStateSet over_states(const Marking& m, std::size_t support_cap = kDefaultSupportCap) {
  const auto support = m.support();
  if (support.empty()) fail(ErrorCode::InvalidOverState, "marking with empty support has no over-states");
  if (support.size() > support_cap || support.size() > 62)
    fail(ErrorCode::SupportCapExceeded,
         "state has " + std::to_string(support.size()) + " marked places, above the cap of " +
             std::to_string(support_cap) + "; raise it with --max-support");
  OverStateSet out;
  const std::uint64_t limit = std::uint64_t{1} << support.size();
  out.reserve(limit - 1);
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    Marking bits(m.size());
    for (std::size_t i = 0; i < support.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) bits[support[i]] = 1;
    out.emplace_back(std::move(bits));
  }
  canonicalize(out);
  return out;
}

/// B1: union of the over-states of every border forbidden state. The empty
/// marking contributes nothing; its cover-table column is left with Cv = 0.
inline OverStateSet build_b1(std::span<const Marking> border, std::size_t support_cap = kDefaultSupportCap) {
  std::unordered_set<Marking, MarkingHash> seen;
  OverStateSet out;
  for (const Marking& m : border)
    if (!m.empty_support())
      for (OverState& b : over_states(m, support_cap))
      if (seen.insert(b.bits()).second) out.push_back(std::move(b));
  canonicalize(out);
  return out;
}

/// b ∈ A1, tested by domination instead of materializing A1: some
/// authorized marking covers b.
inline bool dominated_by_authorized(const OverState& b, std::span<const Marking> authorized) {
  return std::any_of(authorized.begin(), authorized.end(), [&](const Marking& m) { return b.below(m); });
}

/// B2 = B1 \ A1.
inline OverStateSet build_b2(const OverStateSet& b1, std::span<const Marking> authorized) {
  OverStateSet out;
  for (const OverState& b : b1)
    if (!dominated_by_authorized(b, authorized)) out.push_back(b);
  return out;
}

/// B3: the ≤-minimal elements of B2.
inline OverStateSet minimal_elements(OverStateSet set) {
  canonicalize(set);
  OverStateSet kept;
  // Canonical order visits smaller supports first, so a non-minimal element
  // always meets one of its minimal lower bounds among `kept`.
  for (const OverState& b : set) {
    const bool dominated = std::any_of(kept.begin(), kept.end(),
                                       [&](const OverState& k) { return k.below(b.bits()); });
    if (!dominated) kept.push_back(b);
  }
  return kept;
}

/// Relation R(M_i, b_j) between over-states (rows) and border states
/// (columns), with the coverage tallies and the final selection.
struct CoverTable {
  OverStateSet rows;
  std::vector<Marking> columns;
  std::vector<std::vector<bool>> cells;  ///< [row][column]
  std::vector<int> cv;                   ///< per column, all rows
  std::vector<bool> selected;            ///< per row, membership in B4
  std::vector<int> cf;                   ///< per column, selected rows only

  std::size_t row_count() const noexcept { return rows.size(); }
  std::size_t column_count() const noexcept { return columns.size(); }

  void recompute_cf() {
    cf.assign(columns.size(), 0);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (selected[r])
        for (std::size_t c = 0; c < columns.size(); ++c) cf[c] += cells[r][c] ? 1 : 0;
  }

  OverStateSet selection() const {
    OverStateSet out;
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (selected[r]) out.push_back(rows[r]);
    return out;
  }
};

inline CoverTable build_cover_table(OverStateSet rows, std::span<const Marking> border) {
  CoverTable table;
  table.rows = std::move(rows);
  table.columns.assign(border.begin(), border.end());
  table.cells.assign(table.rows.size(), std::vector<bool>(table.columns.size(), false));
  table.cv.assign(table.columns.size(), 0);
  for (std::size_t r = 0; r < table.rows.size(); ++r)
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      if (table.rows[r].below(table.columns[c])) {
        table.cells[r][c] = true;
        ++table.cv[c];
      }
  table.selected.assign(table.rows.size(), false);
  table.recompute_cf();
  return table;
}

struct CoverCheck {
  bool holds = true;
  std::vector<std::size_t> uncovered;  ///< column indices
};

/// Every border state is covered by at least one row.
inline CoverCheck check_property3(const CoverTable& table) {
  CoverCheck out;
  for (std::size_t c = 0; c < table.column_count(); ++c)
    if (table.cv[c] < 1) out.uncovered.push_back(c);
  out.holds = out.uncovered.empty();
  return out;
}

/// Essential rows first (sole cover of some column), then repeatedly the row
/// covering the most still-uncovered columns. Ties go to the row that comes
/// first in canonical order, i.e. fewer places then lexicographic support.
inline CoverTable select_final_cover(CoverTable table) {
  if (const auto check = check_property3(table); !check.holds)
    fail(ErrorCode::Property3Violated,
         std::to_string(check.uncovered.size()) + " border state(s) covered by no over-state");
  const std::size_t rows = table.row_count();
  const std::size_t cols = table.column_count();
  table.selected.assign(rows, false);
  std::vector<bool> covered(cols, false);
  auto take = [&](std::size_t r) {
    table.selected[r] = true;
    for (std::size_t c = 0; c < cols; ++c)
      if (table.cells[r][c]) covered[c] = true;
  };

  for (std::size_t c = 0; c < cols; ++c) {
    if (table.cv[c] != 1) continue;
    for (std::size_t r = 0; r < rows; ++r)
      if (table.cells[r][c]) {
        if (!table.selected[r]) take(r);
        break;
      }
  }

  while (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    std::size_t best = rows;
    int best_gain = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (table.selected[r]) continue;
      int gain = 0;
      for (std::size_t c = 0; c < cols; ++c) gain += (table.cells[r][c] && !covered[c]) ? 1 : 0;
      if (gain > best_gain || (gain == best_gain && gain > 0 && best < rows &&
                               canonical_less(table.rows[r], table.rows[best]))) {
        best = r;
        best_gain = gain;
      }
    }
    take(best);  // cannot be `rows`: every column has cv ≥ 1
  }
  table.recompute_cf();
  return table;
}

inline constexpr std::size_t kExactCoverRowLimit = 20;

/// Minimum-cardinality cover by exhaustive search over row subsets, smallest
/// size first and lexicographic in row order within a size.
inline CoverTable select_exact_cover(CoverTable table) {
  if (table.row_count() > kExactCoverRowLimit)
    fail(ErrorCode::ExactCoverTooLarge, std::to_string(table.row_count()) + " rows exceed the exact-cover limit of " +
                                            std::to_string(kExactCoverRowLimit));
  if (const auto check = check_property3(table); !check.holds)
    fail(ErrorCode::Property3Violated,
         std::to_string(check.uncovered.size()) + " border state(s) covered by no over-state");
  const std::size_t rows = table.row_count();
  const std::size_t cols = table.column_count();
  const std::size_t words = (cols + 63) / 64;
  std::vector<std::vector<std::uint64_t>> row_bits(rows, std::vector<std::uint64_t>(words, 0));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (table.cells[r][c]) row_bits[r][c / 64] |= std::uint64_t{1} << (c % 64);
  std::vector<std::uint64_t> full(words, 0);
  for (std::size_t c = 0; c < cols; ++c) full[c / 64] |= std::uint64_t{1} << (c % 64);

  std::vector<std::size_t> pick;
  std::function<bool(std::size_t, std::size_t, std::vector<std::uint64_t>&)> search =
      [&](std::size_t from, std::size_t left, std::vector<std::uint64_t>& acc) -> bool {
    if (left == 0) return acc == full;
    for (std::size_t r = from; r + left <= rows; ++r) {
      std::vector<std::uint64_t> next = acc;
      for (std::size_t w = 0; w < words; ++w) next[w] |= row_bits[r][w];
      pick.push_back(r);
      if (search(r + 1, left - 1, next)) return true;
      pick.pop_back();
    }
    return false;
  };

  table.selected.assign(rows, false);
  for (std::size_t k = 0; k <= rows; ++k) {
    std::vector<std::uint64_t> acc(words, 0);
    pick.clear();
    if (search(0, k, acc)) {
      for (std::size_t r : pick) table.selected[r] = true;
      break;
    }
  }
  table.recompute_cf();
  return table;
}

/// Every border state is covered by the selected rows (cf ≥ 1).
inline bool check_corollary1(const CoverTable& table) {
  return std::all_of(table.cf.begin(), table.cf.end(), [](int v) { return v >= 1; });
}

inline Constraint constraint_from(const OverState& b) {
  return Constraint{b.support(), static_cast<int>(b.cardinality()) - 1};
}

inline std::vector<Constraint> constraints_from(std::span<const OverState> set) {
  std::vector<Constraint> out;
  out.reserve(set.size());
  for (const OverState& b : set) out.push_back(constraint_from(b));
  return out;
}

}  // namespace ovs
