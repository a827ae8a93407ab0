#pragma once

// Finite portraits: restrictions to B(e,D) of tree automorphisms that
// stabilise the edge e setwise.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "treeinv/tree.hpp"

namespace treeinv {

enum class EdgeAction { Fix, Swap };

/// A level-preserving, parent-compatible bijection of B(e,D), stored as the
/// image index of every vertex in canonical order.
class Portrait {
 public:
  Portrait() = default;

  static Portrait identity(int depth);

  /// Validates bijectivity, level preservation and parent compatibility.
  /// Throws Error(InvalidPortrait).
  static Portrait from_images(int depth, std::vector<std::uint32_t> images);

  int depth() const { return depth_; }
  std::size_t size() const { return images_.size(); }
  std::span<const std::uint32_t> images() const { return images_; }

  std::uint32_t image(std::size_t index) const { return images_[index]; }
  Address operator()(const Address& a) const;

  EdgeAction edge_action() const { return images_[0] == 0 ? EdgeAction::Fix : EdgeAction::Swap; }
  bool inverts_edge() const { return edge_action() == EdgeAction::Swap; }

  friend bool operator==(const Portrait&, const Portrait&) = default;

 private:
  Portrait(int depth, std::vector<std::uint32_t> images)
      : depth_(depth), images_(std::move(images)) {}

  friend Portrait compose(const Portrait&, const Portrait&);
  friend Portrait inverse(const Portrait&);
  friend Portrait power(const Portrait&, std::int64_t);
  friend Portrait truncate(const Portrait&, int);

  int depth_ = 0;
  std::vector<std::uint32_t> images_;
};

/// Restriction of a portrait to a vertex ball B(center, radius).
struct LocalMap {
  Address center;
  int radius = 0;
  std::vector<std::pair<Address, Address>> assignment;  // sorted by domain

  friend bool operator==(const LocalMap&, const LocalMap&) = default;
};

/// (f o g)(a) = f(g(a)). Throws Error(DepthMismatch).
Portrait compose(const Portrait& f, const Portrait& g);
Portrait inverse(const Portrait& h);

/// h^p for any integer p, computed from the cycle decomposition.
Portrait power(const Portrait& h, std::int64_t p);

/// Restriction to B(e, depth) for depth <= h.depth().
Portrait truncate(const Portrait& h, int depth);

/// Throws Error(TruncationExceeded) if B(u,k) is not inside B(e, depth(h)).
LocalMap restrict(const Portrait& h, const Address& u, int k);

/// Cycle lengths of the permutation induced on S(e,n), largest first.
std::vector<std::uint64_t> sphere_cycle_type(const Portrait& h, int n);

/// Order of the permutation induced on S(e,n).
std::uint64_t order_on_sphere(const Portrait& h, int n);

/// Order on B(e,n): lcm of the sphere orders for levels 0..n.
std::uint64_t order_on_ball(const Portrait& h, int n);

/// True if h fixes every vertex of S(e,n).
bool fixes_sphere(const Portrait& h, int n);

}  // namespace treeinv
