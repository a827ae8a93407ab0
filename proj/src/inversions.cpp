#include "treeinv/inversions.hpp"

#include <random>
#include <string>

#include "treeinv/error.hpp"

namespace treeinv {

namespace {

template <class LabelMap>
Portrait from_label_map(int depth, LabelMap&& next_label) {
  std::vector<std::uint32_t> images(ball_size(depth));
  for (int n = 0; n <= depth; ++n) {
    for (const Address& a : sphere(n)) {
      images[a.index()] =
          static_cast<std::uint32_t>(Address::from_label(n, next_label(n, a.label())).index());
    }
  }
  return Portrait::from_images(depth, std::move(images));
}

}  // namespace

Portrait good_inversion(int depth) {
  if (depth < 0) throw Error(Errc::BadParams, "negative depth");
  return from_label_map(depth, [](int n, std::uint32_t label) {
    return (label + 1) & ((std::uint32_t{2} << n) - 1);
  });
}

Portrait truncated_good_inversion(int n, int depth) {
  if (n < 1) throw Error(Errc::BadParams, "truncation level must be >= 1");
  if (depth < n) throw Error(Errc::BadParams, "depth must be >= truncation level");
  const std::uint32_t low_mask = (std::uint32_t{1} << n) - 1;
  return from_label_map(depth, [n, low_mask](int level, std::uint32_t label) {
    if (level < n) return (label + 1) & ((std::uint32_t{2} << level) - 1);
    // Drop bit n, step the remaining level-bit odometer, put bit n back.
    const std::uint32_t cls = (label >> n) & 1U;
    const std::uint32_t packed = (label & low_mask) | ((label >> (n + 1)) << n);
    const std::uint32_t next = (packed + 1) & ((std::uint32_t{1} << level) - 1);
    return (next & low_mask) | (cls << n) | ((next >> n) << (n + 1));
  });
}

Portrait random_inversion(int depth, std::uint64_t seed) {
  if (depth < 0) throw Error(Errc::BadParams, "negative depth");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::uint32_t> images(ball_size(depth));
  std::vector<bool> flip(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    flip[i] = coin(rng);
    const Address a = Address::from_index(i);
    if (a.level() == 0) {
      images[i] = static_cast<std::uint32_t>(Address::endpoint(a.side() == Side::L ? Side::R : Side::L).index());
      continue;
    }
    const Address p = a.parent();
    const int bit = p.child(0) == a ? 0 : 1;
    const Address ip = Address::from_index(images[p.index()]);
    images[i] = static_cast<std::uint32_t>(ip.child(bit ^ static_cast<int>(flip[p.index()])).index());
  }
  return Portrait::from_images(depth, std::move(images));
}

Portrait half_tree_surgery(const Portrait& g) {
  if (!g.inverts_edge()) throw Error(Errc::NotAnInversion, "g fixes both endpoints of e");
  const Portrait g_inv = inverse(g);
  std::vector<std::uint32_t> images(g.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    images[i] = Address::from_index(i).side() == Side::L ? g.image(i) : g_inv.image(i);
  }
  return Portrait::from_images(g.depth(), std::move(images));
}

std::vector<Address> ComponentDecomposition::members(int i) const {
  std::vector<Address> out;
  for (std::size_t idx = 0; idx < component.size(); ++idx) {
    if (component[idx] == i) out.push_back(Address::from_index(idx));
  }
  return out;
}

ComponentDecomposition decompose_components(int n, int depth) {
  if (n < 2 || depth < n) {
    throw Error(Errc::BadParams, "need 2 <= N <= D, got N=" + std::to_string(n) +
                                     " D=" + std::to_string(depth));
  }
  ComponentDecomposition out{n, depth, std::vector<int>(ball_size(depth), -1)};
  const std::uint32_t mask = (std::uint32_t{1} << n) - 1;
  for (std::size_t idx = sphere_offset(n - 1); idx < out.component.size(); ++idx) {
    // Labels of descendants agree with their level-(n-1) ancestor mod 2^n.
    out.component[idx] = static_cast<int>(Address::from_index(idx).label() & mask);
  }
  return out;
}

Portrait component_surgery(const Portrait& g, int n) {
  if (n < 1) throw Error(Errc::BadParams, "N must be >= 1");
  if (g.depth() < n) throw Error(Errc::BadParams, "depth must be >= N");
  if (!g.inverts_edge()) throw Error(Errc::NotAnInversion, "g fixes both endpoints of e");
  for (int m = 0; m < n; ++m) {
    const std::uint64_t order = order_on_sphere(g, m);
    if (order != (std::uint64_t{2} << m)) {
      throw Error(Errc::HypothesisViolated, "order on S(e," + std::to_string(m) + ") is " +
                                                std::to_string(order) + ", expected " +
                                                std::to_string(std::uint64_t{2} << m));
    }
  }
  const std::uint64_t order_n = order_on_sphere(g, n);
  if (order_n != (std::uint64_t{1} << n)) {
    throw Error(Errc::HypothesisViolated, "order on S(e," + std::to_string(n) + ") is " +
                                              std::to_string(order_n) + ", expected " +
                                              std::to_string(std::uint64_t{1} << n));
  }
  if (n == 1) return half_tree_surgery(g);

  // T_0 is the subtree below v_0, the first vertex of S(e,n-1).
  const std::size_t v0 = sphere_offset(n - 1);
  std::vector<bool> in_t0(g.size(), false);
  in_t0[v0] = true;
  for (std::size_t idx = v0 + 1; idx < g.size(); ++idx) {
    const Address a = Address::from_index(idx);
    if (a.level() >= n) in_t0[idx] = in_t0[a.parent().index()];
  }
  const Portrait patch = power(g, 1 - (std::int64_t{1} << n));
  std::vector<std::uint32_t> images(g.size());
  for (std::size_t idx = 0; idx < images.size(); ++idx) {
    images[idx] = in_t0[idx] ? patch.image(idx) : g.image(idx);
  }
  return Portrait::from_images(g.depth(), std::move(images));
}

}  // namespace treeinv
