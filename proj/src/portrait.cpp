#include "treeinv/portrait.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "treeinv/error.hpp"

namespace treeinv {

namespace {

void check_depth(int depth) {
  if (depth < 0 || depth > kMaxLevel - 2) {
    throw Error(Errc::BadParams, "depth out of range: " + std::to_string(depth));
  }
}

void check_level(const Portrait& h, int n) {
  if (n < 0 || n > h.depth()) {
    throw Error(Errc::TruncationExceeded,
                "level " + std::to_string(n) + " outside B(e," + std::to_string(h.depth()) + ")");
  }
}

std::uint64_t positive_mod(std::int64_t p, std::uint64_t m) {
  const auto r = p % static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

}  // namespace

Portrait Portrait::identity(int depth) {
  check_depth(depth);
  std::vector<std::uint32_t> images(ball_size(depth));
  std::iota(images.begin(), images.end(), 0U);
  return Portrait(depth, std::move(images));
}

Portrait Portrait::from_images(int depth, std::vector<std::uint32_t> images) {
  check_depth(depth);
  const std::size_t n = ball_size(depth);
  if (images.size() != n) {
    throw Error(Errc::InvalidPortrait, "expected " + std::to_string(n) + " images, got " +
                                           std::to_string(images.size()));
  }
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = images[i];
    if (j >= n || hit[j]) throw Error(Errc::InvalidPortrait, "map is not a bijection of B(e,D)");
    hit[j] = true;
    const Address a = Address::from_index(i);
    const Address b = Address::from_index(j);
    if (a.level() != b.level()) {
      throw Error(Errc::InvalidPortrait, a.str() + " -> " + b.str() + " changes level");
    }
    if (a.has_parent() && images[a.parent().index()] != b.parent().index()) {
      throw Error(Errc::InvalidPortrait, a.str() + " -> " + b.str() + " breaks parent compatibility");
    }
  }
  return Portrait(depth, std::move(images));
}

Address Portrait::operator()(const Address& a) const {
  const std::size_t i = a.index();
  if (i >= images_.size()) {
    throw Error(Errc::TruncationExceeded, a.str() + " outside B(e," + std::to_string(depth_) + ")");
  }
  return Address::from_index(images_[i]);
}

Portrait compose(const Portrait& f, const Portrait& g) {
  if (f.depth() != g.depth()) {
    throw Error(Errc::DepthMismatch, std::to_string(f.depth()) + " vs " + std::to_string(g.depth()));
  }
  std::vector<std::uint32_t> images(g.size());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = f.images_[g.images_[i]];
  return Portrait(f.depth(), std::move(images));
}

Portrait inverse(const Portrait& h) {
  std::vector<std::uint32_t> images(h.size());
  for (std::size_t i = 0; i < images.size(); ++i) images[h.images_[i]] = static_cast<std::uint32_t>(i);
  return Portrait(h.depth(), std::move(images));
}

Portrait power(const Portrait& h, std::int64_t p) {
  std::vector<std::uint32_t> images(h.size());
  std::vector<bool> seen(h.size(), false);
  std::vector<std::uint32_t> cycle;
  for (std::size_t start = 0; start < h.size(); ++start) {
    if (seen[start]) continue;
    cycle.clear();
    for (auto v = static_cast<std::uint32_t>(start); !seen[v]; v = h.images_[v]) {
      seen[v] = true;
      cycle.push_back(v);
    }
    const std::uint64_t len = cycle.size();
    const std::uint64_t shift = positive_mod(p, len);
    for (std::uint64_t i = 0; i < len; ++i) images[cycle[i]] = cycle[(i + shift) % len];
  }
  return Portrait(h.depth(), std::move(images));
}

Portrait truncate(const Portrait& h, int depth) {
  if (depth < 0 || depth > h.depth()) {
    throw Error(Errc::TruncationExceeded, "cannot truncate depth " + std::to_string(h.depth()) +
                                              " to " + std::to_string(depth));
  }
  return Portrait(depth, std::vector<std::uint32_t>(h.images_.begin(),
                                                    h.images_.begin() + static_cast<std::ptrdiff_t>(ball_size(depth))));
}

LocalMap restrict(const Portrait& h, const Address& u, int k) {
  LocalMap out{u, k, {}};
  for (const Address& a : ball_of_vertex(u, k, h.depth())) out.assignment.emplace_back(a, h(a));
  return out;
}

std::vector<std::uint64_t> sphere_cycle_type(const Portrait& h, int n) {
  check_level(h, n);
  const std::size_t first = sphere_offset(n);
  const std::size_t count = sphere_size(n);
  std::vector<bool> seen(count, false);
  std::vector<std::uint64_t> lengths;
  for (std::size_t i = 0; i < count; ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t v = i; !seen[v]; v = h.image(first + v) - first) {
      seen[v] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return lengths;
}

std::uint64_t order_on_sphere(const Portrait& h, int n) {
  std::uint64_t order = 1;
  for (std::uint64_t len : sphere_cycle_type(h, n)) order = std::lcm(order, len);
  return order;
}

std::uint64_t order_on_ball(const Portrait& h, int n) {
  check_level(h, n);
  std::uint64_t order = 1;
  for (int m = 0; m <= n; ++m) order = std::lcm(order, order_on_sphere(h, m));
  return order;
}

bool fixes_sphere(const Portrait& h, int n) {
  check_level(h, n);
  const std::size_t first = sphere_offset(n);
  for (std::size_t i = first; i < first + sphere_size(n); ++i) {
    if (h.image(i) != i) return false;
  }
  return true;
}

}  // namespace treeinv
