#pragma once

// Independent reference implementations used as test oracles. They work on
// vertex names and explicit maps and share no code with the library.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "treeinv/portrait.hpp"

namespace oracle {

/// Vertices of B(e,D) as names, by level, L before R, paths in lex order.
inline std::vector<std::string> vertices(int depth) {
  std::vector<std::string> out;
  for (int n = 0; n <= depth; ++n) {
    for (const char* side : {"L:", "R:"}) {
      for (std::uint32_t p = 0; p < (1U << n); ++p) {
        std::string name = side;
        for (int i = n - 1; i >= 0; --i) name += ((p >> i) & 1U) ? '1' : '0';
        out.push_back(name);
      }
    }
  }
  return out;
}

inline int level(const std::string& v) { return static_cast<int>(v.size()) - 2; }

inline std::vector<std::string> neighbors(const std::string& v, int depth) {
  std::vector<std::string> out;
  if (level(v) == 0) {
    out.push_back(v[0] == 'L' ? "R:" : "L:");
  } else {
    out.push_back(v.substr(0, v.size() - 1));
  }
  if (level(v) < depth) {
    out.push_back(v + "0");
    out.push_back(v + "1");
  }
  return out;
}

/// Breadth-first distances from v inside B(e,depth).
inline std::map<std::string, int> bfs(const std::string& v, int depth) {
  std::map<std::string, int> dist{{v, 0}};
  std::deque<std::string> queue{v};
  while (!queue.empty()) {
    const std::string x = queue.front();
    queue.pop_front();
    for (const auto& y : neighbors(x, depth)) {
      if (dist.count(y) == 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

using Map = std::map<std::string, std::string>;

inline Map explicit_map(const treeinv::Portrait& h) {
  Map m;
  for (const auto& v : vertices(h.depth())) {
    m[v] = h(treeinv::Address::parse(v)).str();
  }
  return m;
}

inline Map compose(const Map& f, const Map& g) {
  Map out;
  for (const auto& [x, y] : g) out[x] = f.at(y);
  return out;
}

inline Map identity(int depth) {
  Map out;
  for (const auto& v : vertices(depth)) out[v] = v;
  return out;
}

/// Cycle lengths on the vertices selected by `keep`, largest first.
inline std::vector<std::uint64_t> cycle_type(const Map& f, const std::function<bool(const std::string&)>& keep) {
  std::set<std::string> seen;
  std::vector<std::uint64_t> out;
  for (const auto& [x, y] : f) {
    if (!keep(x) || seen.count(x)) continue;
    std::uint64_t len = 0;
    for (std::string z = x; !seen.count(z); z = f.at(z)) {
      seen.insert(z);
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline std::vector<std::uint64_t> sphere_cycle_type(const Map& f, int n) {
  return cycle_type(f, [n](const std::string& v) { return level(v) == n; });
}

inline std::uint64_t order(const std::vector<std::uint64_t>& cycles) {
  std::uint64_t o = 1;
  for (auto c : cycles) o = std::lcm(o, c);
  return o;
}

/// A parent-compatible map of B(e,D) from an edge bit and one child-swap
/// bit per vertex above the last level (in vertex order).
inline Map from_bits(int depth, bool swap_edge, std::uint64_t bits) {
  Map m;
  m["L:"] = swap_edge ? "R:" : "L:";
  m["R:"] = swap_edge ? "L:" : "R:";
  std::map<std::string, bool> flip;
  int i = 0;
  for (const auto& v : vertices(depth - 1)) flip[v] = ((bits >> i++) & 1U) != 0;
  for (const auto& v : vertices(depth)) {
    if (level(v) == 0) continue;
    const std::string parent = v.substr(0, v.size() - 1);
    const char last = v.back();
    const bool f = flip.at(parent);
    m[v] = m.at(parent) + ((last == '1') != f ? '1' : '0');
  }
  return m;
}

inline treeinv::Portrait to_portrait(int depth, const Map& m) {
  std::vector<std::uint32_t> images(m.size());
  for (const auto& [x, y] : m) {
    images[treeinv::Address::parse(x).index()] = static_cast<std::uint32_t>(treeinv::Address::parse(y).index());
  }
  return treeinv::Portrait::from_images(depth, std::move(images));
}

/// All p in [0, period) with g^p = h on the given vertex set.
inline std::vector<std::uint64_t> witnesses(const Map& h, const Map& g, const std::vector<std::string>& ball,
                                            std::uint64_t period) {
  std::vector<std::uint64_t> out;
  Map gp;
  for (const auto& [x, y] : g) gp[x] = x;
  for (std::uint64_t p = 0; p < period; ++p) {
    bool match = true;
    for (const auto& v : ball) match = match && gp.at(v) == h.at(v);
    if (match) out.push_back(p);
    gp = compose(g, gp);
  }
  return out;
}

}  // namespace oracle
