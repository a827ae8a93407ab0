#include "treeinv/closure.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "treeinv/error.hpp"

namespace treeinv {

PowerTable::PowerTable(const Portrait& g)
    : depth_(g.depth()),
      cycle_of_(g.size()),
      position_(g.size()),
      periods_(static_cast<std::size_t>(g.depth()) + 1, 1) {
  std::vector<bool> seen(g.size(), false);
  for (std::size_t start = 0; start < g.size(); ++start) {
    if (seen[start]) continue;
    const auto id = static_cast<std::uint32_t>(cycle_start_.size());
    cycle_start_.push_back(static_cast<std::uint32_t>(members_.size()));
    std::uint32_t len = 0;
    for (auto v = static_cast<std::uint32_t>(start); !seen[v]; v = g.image(v)) {
      seen[v] = true;
      cycle_of_[v] = id;
      position_[v] = len++;
      members_.push_back(v);
    }
    cycle_length_.push_back(len);
  }
  std::uint64_t order = 1;
  for (int level = 0; level <= depth_; ++level) {
    order = std::lcm(order, order_on_sphere(g, level));
    periods_[static_cast<std::size_t>(level)] = order;
  }
}

std::uint32_t PowerTable::image(std::int64_t p, std::size_t index) const {
  const std::uint32_t c = cycle_of_[index];
  const auto len = static_cast<std::int64_t>(cycle_length_[c]);
  std::int64_t shift = (static_cast<std::int64_t>(position_[index]) + p % len) % len;
  if (shift < 0) shift += len;
  return members_[cycle_start_[c] + static_cast<std::size_t>(shift)];
}

LocalTestResult is_locally_power(const Portrait& h, const PowerTable& g, const Address& u, int k) {
  const int reach = enclosing_level(u, k);
  if (reach > h.depth() || reach > g.depth()) {
    throw Error(Errc::TruncationExceeded, "B(" + u.str() + "," + std::to_string(k) +
                                              ") leaves the truncation");
  }
  const auto ball = ball_of_vertex(u, k, reach);
  LocalTestResult out{u, k, g.period(reach), {}, false};
  for (std::uint64_t p = 0; p < out.period; ++p) {
    const bool agrees = std::all_of(ball.begin(), ball.end(), [&](const Address& x) {
      return g.image(static_cast<std::int64_t>(p), x.index()) == h.image(x.index());
    });
    if (agrees) out.witnesses.push_back(p);
  }
  out.passed = !out.witnesses.empty();
  return out;
}

LocalTestResult is_locally_power(const Portrait& h, const Portrait& g, const Address& u, int k) {
  return is_locally_power(h, PowerTable(g), u, k);
}

std::vector<Address> interior_vertices(int depth, int k) {
  std::vector<Address> out;
  if (depth - k < 0) return out;
  for (std::size_t i = 0; i < ball_size(depth - k); ++i) out.push_back(Address::from_index(i));
  return out;
}

std::vector<LocalTestResult> pk_local_check(const Portrait& h, const Portrait& g, int k) {
  if (h.depth() != g.depth()) {
    throw Error(Errc::DepthMismatch, std::to_string(h.depth()) + " vs " + std::to_string(g.depth()));
  }
  const PowerTable powers(g);
  std::vector<LocalTestResult> out;
  for (const Address& u : interior_vertices(h.depth(), k)) out.push_back(is_locally_power(h, powers, u, k));
  return out;
}

bool all_passed(const std::vector<LocalTestResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

bool is_locally_compatible(const Portrait& h, const Portrait& g, int k) {
  return all_passed(pk_local_check(h, g, k));
}

}  // namespace treeinv
