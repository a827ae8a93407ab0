#pragma once

// Addressing and metric structure of the 3-regular tree T_3 rooted at an
// edge e. The two endpoints of e are `L:` and `R:`; every other vertex is
// reached from one of them by a binary path pointing away from e.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace treeinv {

/// Largest depth for which addresses can be packed (path fits 32 bits).
inline constexpr int kMaxLevel = 30;

enum class Side : std::uint8_t { L = 0, R = 1 };

/// A vertex of T_3: the half-tree it lies in and the path from that
/// half-tree's endpoint of e. The first step is the most significant bit
/// of `path()`.
class Address {
 public:
  constexpr Address() = default;
  Address(Side side, int level, std::uint32_t path);

  static Address endpoint(Side side) { return Address(side, 0, 0); }

  /// Parses `L:0110` / `R:`. Throws Error(ParseError).
  static Address parse(std::string_view text);

  /// Inverse of index().
  static Address from_index(std::size_t index);

  /// Vertex of S(e, level) carrying odometer label `label`.
  static Address from_label(int level, std::uint32_t label);

  Side side() const { return side_; }
  int level() const { return level_; }
  std::uint32_t path() const { return path_; }

  /// Step i (0-based) of the path away from e.
  int step(int i) const { return static_cast<int>((path_ >> (level_ - 1 - i)) & 1U); }

  bool has_parent() const { return level_ > 0; }
  Address parent() const;
  Address child(int bit) const;

  /// All three neighbours in T_3; for an endpoint of e this includes the
  /// other endpoint.
  std::vector<Address> neighbors() const;

  /// Dense index in canonical order: by level, then side L before R, then
  /// path lexicographically.
  std::size_t index() const;

  /// Odometer label in Z/2^{level+1}: bit 0 is the side, bit i is step i-1.
  /// The bit-0 child of a vertex labelled j at level n-1 gets label j and
  /// the bit-1 child j + 2^n.
  std::uint32_t label() const;

  std::string str() const;

  friend bool operator==(const Address&, const Address&) = default;
  friend std::strong_ordering operator<=>(const Address& a, const Address& b) {
    return a.index() <=> b.index();
  }

 private:
  Side side_ = Side::L;
  std::uint8_t level_ = 0;
  std::uint32_t path_ = 0;
};

/// |S(e,n)| = 2^{n+1}.
constexpr std::size_t sphere_size(int n) { return std::size_t{2} << n; }

/// |B(e,D)| = 2^{D+2} - 2.
constexpr std::size_t ball_size(int depth) { return (std::size_t{4} << depth) - 2; }

/// Index of the first vertex of S(e,n).
constexpr std::size_t sphere_offset(int n) { return (std::size_t{2} << n) - 2; }

/// S(e,n) in canonical order.
std::vector<Address> sphere(int n);

/// B(e,D) in canonical order (index order).
std::vector<Address> edge_ball(int depth);

/// Graph distance in T_3.
int distance(const Address& a, const Address& b);

/// Metric ball B(u,k), sorted canonically. Throws Error(TruncationExceeded)
/// if it is not contained in B(e, depth).
std::vector<Address> ball_of_vertex(const Address& u, int k, int depth);

/// Smallest L with B(u,k) contained in B(e,L).
int enclosing_level(const Address& u, int k);

}  // namespace treeinv
