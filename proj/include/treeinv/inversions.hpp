#pragma once

// Explicit edge inversions of T_3 and the two surgeries that turn an
// inversion into one of small finite order.

#include <cstdint>
#include <vector>

#include "treeinv/portrait.hpp"

namespace treeinv {

/// The odometer: label -> label + 1 mod 2^{n+1} on every sphere S(e,n).
/// A single cycle on each sphere.
Portrait good_inversion(int depth);

/// The odometer on levels below `n`; from level `n` on, the vertices split
/// by label bit `n` into two classes, each running its own odometer (two
/// parallel cycles of length 2^m on S(e,m)). Throws Error(BadParams) if
/// n < 1 or depth < n.
Portrait truncated_good_inversion(int n, int depth);

/// A uniformly random inversion of B(e,depth): independent random child
/// swaps at every vertex above the last level.
Portrait random_inversion(int depth, std::uint64_t seed);

/// x = g on the L half-tree and g^{-1} on the R half-tree. The result is an
/// inversion of order 2. Throws Error(NotAnInversion) if g fixes L: and R:.
Portrait half_tree_surgery(const Portrait& g);

/// Partition of B(e,D) minus B(e,n-2) into the 2^n subtrees hanging below
/// S(e,n-1). Component i is rooted at the vertex of S(e,n-1) with odometer
/// label i.
struct ComponentDecomposition {
  int n = 0;
  int depth = 0;
  std::vector<int> component;  // by vertex index; -1 inside B(e,n-2)

  int count() const { return 1 << n; }
  int component_of(const Address& a) const { return component.at(a.index()); }
  Address root(int i) const { return Address::from_label(n - 1, static_cast<std::uint32_t>(i)); }
  std::vector<Address> members(int i) const;
};

/// Throws Error(BadParams) unless 2 <= n <= depth.
ComponentDecomposition decompose_components(int n, int depth);

/// Patches g by g^{1-2^n} on the subtree below the first vertex v_0 of
/// S(e,n-1), components indexed along the g-orbit of v_0. Requires g to act
/// with order 2^{m+1} on S(e,m) for m < n and with order 2^n on S(e,n);
/// otherwise throws Error(HypothesisViolated). For n = 1 this is
/// half_tree_surgery. The result is an inversion of order exactly 2^n that
/// agrees with g on B(e,n).
Portrait component_surgery(const Portrait& g, int n);

}  // namespace treeinv
