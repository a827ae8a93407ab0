#pragma once

// Bounded-depth backtracking over all portraits of B(e,D) that pass the
// (P_k) local test against <g> at every interior vertex. This is a superset
// of the depth-D restrictions of <g>^{(P_k)}, so emptiness and lower bounds
// found here hold for the closure as well.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "treeinv/portrait.hpp"

namespace treeinv {

/// Final filter on completed portraits plus optional pruning hints. Hints
/// must be implied by `accept`: they only cut branches whose completions
/// would all be rejected.
struct Predicate {
  std::string name;
  std::optional<EdgeAction> edge_action;
  bool involutive = false;       // prune partial maps with h(h(a)) != a
  int max_order_log2 = -1;       // prune cycles longer than 2^m when >= 0
  std::function<bool(const Portrait&)> accept;
};

namespace predicates {
Predicate any();
Predicate fixes_edge();
Predicate inverts_edge();
/// order_on_ball(h, D) == 2.
Predicate involution();
/// h^2 = id on B(e,D) and h moves some vertex of B(e,D-1).
Predicate visible_involution();
/// Inverts e and order_on_ball(h, D) <= 2^m.
Predicate inversion_of_order_at_most(int log2_order);
}  // namespace predicates

struct SearchOptions {
  std::uint64_t budget = 100'000'000;  // node expansions
  int threads = 1;
  bool stop_at_first = false;
  std::size_t max_stored = 1000;       // found portraits kept in the report
};

struct SearchReport {
  int depth = 0;
  int k = 0;
  std::string predicate;
  std::uint64_t expanded = 0;
  bool exhaustive = false;
  bool budget_exhausted = false;
  std::uint64_t found_count = 0;
  std::vector<Portrait> found;  // canonical order, at most max_stored
};

/// Throws Error(BadParams) unless k >= 1, k + 1 <= depth <= g.depth() and
/// depth <= kMaxSearchDepth.
inline constexpr int kMaxSearchDepth = 10;

SearchReport enumerate_compatible(const Portrait& g, int k, int depth, const Predicate& predicate,
                                  const SearchOptions& options = {});

SearchReport search_involutions(const Portrait& g, int k, int depth, const SearchOptions& options = {});

/// Involutions that are visible below the last level, the only ones the
/// local test at radius k >= 2 can rule out inside a truncation.
SearchReport search_visible_involutions(const Portrait& g, int k, int depth,
                                        const SearchOptions& options = {});

struct MinOrderResult {
  int depth = 0;
  int k = 0;
  std::uint64_t order = 0;            // 0 if the budget ran out first
  /// Every compatible inversion has order >= lower_bound (proven by the
  /// exhaustive searches that completed).
  std::uint64_t lower_bound = 2;
  std::optional<Portrait> witness;
  /// Every smaller power of two was ruled out exhaustively.
  bool lower_bound_exhaustive = false;
  /// order == 2^{D+1}, the largest order any inversion can have on B(e,D):
  /// the truncation shows no finite-order inversion.
  bool saturated = false;
  bool budget_exhausted = false;
  std::uint64_t expanded = 0;
};

/// Least order_on_ball(h, D) over compatible inversions h. Throws
/// Error(NotAnInversion) if g fixes e's endpoints.
MinOrderResult min_inversion_order(const Portrait& g, int k, int depth, const SearchOptions& options = {});

}  // namespace treeinv
