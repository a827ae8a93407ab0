#pragma once

// The (P_k) local test: does h agree with some power of g on a k-ball?

#include <cstdint>
#include <vector>

#include "treeinv/portrait.hpp"

namespace treeinv {

/// Powers of a portrait, evaluated through its cycle decomposition.
class PowerTable {
 public:
  explicit PowerTable(const Portrait& g);

  int depth() const { return depth_; }

  /// Order of g on B(e, level).
  std::uint64_t period(int level) const { return periods_.at(static_cast<std::size_t>(level)); }

  /// Index of g^p(x).
  std::uint32_t image(std::int64_t p, std::size_t index) const;

  std::uint32_t cycle_of(std::size_t index) const { return cycle_of_[index]; }
  std::uint32_t position(std::size_t index) const { return position_[index]; }
  std::uint32_t cycle_length(std::size_t index) const { return cycle_length_[cycle_of_[index]]; }

 private:
  int depth_;
  std::vector<std::uint32_t> cycle_of_;   // by vertex
  std::vector<std::uint32_t> position_;   // position within its cycle
  std::vector<std::uint32_t> cycle_start_;
  std::vector<std::uint32_t> cycle_length_;
  std::vector<std::uint32_t> members_;    // cycles laid out contiguously
  std::vector<std::uint64_t> periods_;
};

struct LocalTestResult {
  Address center;
  int radius = 0;
  /// Order of g on the smallest B(e,L) containing the ball; witnesses are
  /// residues modulo this period.
  std::uint64_t period = 1;
  std::vector<std::uint64_t> witnesses;  // ascending, in [0, period)
  bool passed = false;

  friend bool operator==(const LocalTestResult&, const LocalTestResult&) = default;
};

/// All p with h|B(u,k) = g^p|B(u,k). Throws Error(TruncationExceeded) if the
/// ball leaves the truncation of either portrait.
LocalTestResult is_locally_power(const Portrait& h, const Portrait& g, const Address& u, int k);
LocalTestResult is_locally_power(const Portrait& h, const PowerTable& g, const Address& u, int k);

/// Vertices u with B(u,k) inside B(e,depth), canonical order.
std::vector<Address> interior_vertices(int depth, int k);

/// One result per interior vertex. Throws Error(DepthMismatch).
std::vector<LocalTestResult> pk_local_check(const Portrait& h, const Portrait& g, int k);

bool all_passed(const std::vector<LocalTestResult>& results);

/// Shorthand for all_passed(pk_local_check(h, g, k)).
bool is_locally_compatible(const Portrait& h, const Portrait& g, int k);

}  // namespace treeinv
