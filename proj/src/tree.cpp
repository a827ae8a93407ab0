#include "treeinv/tree.hpp"

#include <algorithm>
#include <bit>
#include <deque>

#include "treeinv/error.hpp"

namespace treeinv {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidPortrait: return "InvalidPortrait";
    case Errc::TruncationExceeded: return "TruncationExceeded";
    case Errc::DepthMismatch: return "DepthMismatch";
    case Errc::BadParams: return "BadParams";
    case Errc::NotAnInversion: return "NotAnInversion";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::NoWitness: return "NoWitness";
  }
  return "Unknown";
}

Address::Address(Side side, int level, std::uint32_t path)
    : side_(side), level_(static_cast<std::uint8_t>(level)), path_(path) {
  if (level < 0 || level > kMaxLevel) {
    throw Error(Errc::BadParams, "address level out of range: " + std::to_string(level));
  }
  if (level < 32 && (path >> level) != 0) {
    throw Error(Errc::BadParams, "address path wider than its level");
  }
}

Address Address::parse(std::string_view text) {
  if (text.size() < 2 || (text[0] != 'L' && text[0] != 'R') || text[1] != ':') {
    throw Error(Errc::ParseError, "bad address '" + std::string(text) + "'");
  }
  const Side side = text[0] == 'L' ? Side::L : Side::R;
  const auto bits = text.substr(2);
  if (bits.size() > static_cast<std::size_t>(kMaxLevel)) {
    throw Error(Errc::ParseError, "address too deep '" + std::string(text) + "'");
  }
  std::uint32_t path = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw Error(Errc::ParseError, "bad address '" + std::string(text) + "'");
    }
    path = (path << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return Address(side, static_cast<int>(bits.size()), path);
}

Address Address::from_index(std::size_t index) {
  // sphere_offset(n) <= index < sphere_offset(n + 1)
  const int level = std::bit_width(index + 2) - 2;
  const std::size_t pos = index - sphere_offset(level);
  const std::size_t half = std::size_t{1} << level;
  return Address(pos >= half ? Side::R : Side::L, level,
                 static_cast<std::uint32_t>(pos % half));
}

Address Address::from_label(int level, std::uint32_t label) {
  std::uint32_t path = 0;
  for (int i = 1; i <= level; ++i) path = (path << 1) | ((label >> i) & 1U);
  return Address((label & 1U) ? Side::R : Side::L, level, path);
}

Address Address::parent() const {
  if (level_ == 0) throw Error(Errc::BadParams, "endpoint of e has no parent");
  return Address(side_, level_ - 1, path_ >> 1);
}

Address Address::child(int bit) const {
  return Address(side_, level_ + 1, (path_ << 1) | static_cast<std::uint32_t>(bit & 1));
}

std::vector<Address> Address::neighbors() const {
  std::vector<Address> out;
  out.reserve(3);
  if (level_ == 0) {
    out.push_back(endpoint(side_ == Side::L ? Side::R : Side::L));
  } else {
    out.push_back(parent());
  }
  out.push_back(child(0));
  out.push_back(child(1));
  return out;
}

std::size_t Address::index() const {
  return sphere_offset(level_) + (static_cast<std::size_t>(side_) << level_) + path_;
}

std::uint32_t Address::label() const {
  std::uint32_t label = static_cast<std::uint32_t>(side_);
  for (int i = 0; i < level_; ++i) {
    label |= static_cast<std::uint32_t>(step(i)) << (i + 1);
  }
  return label;
}

std::string Address::str() const {
  std::string out(side_ == Side::L ? "L:" : "R:");
  for (int i = 0; i < level_; ++i) out.push_back(step(i) ? '1' : '0');
  return out;
}

std::vector<Address> sphere(int n) {
  std::vector<Address> out;
  out.reserve(sphere_size(n));
  const std::size_t first = sphere_offset(n);
  for (std::size_t i = 0; i < sphere_size(n); ++i) out.push_back(Address::from_index(first + i));
  return out;
}

std::vector<Address> edge_ball(int depth) {
  std::vector<Address> out;
  out.reserve(ball_size(depth));
  for (std::size_t i = 0; i < ball_size(depth); ++i) out.push_back(Address::from_index(i));
  return out;
}

int distance(const Address& a, const Address& b) {
  if (a.side() != b.side()) return a.level() + b.level() + 1;
  const int shorter = std::min(a.level(), b.level());
  int common = 0;
  while (common < shorter && a.step(common) == b.step(common)) ++common;
  return a.level() + b.level() - 2 * common;
}

int enclosing_level(const Address& u, int k) { return u.level() + k; }

std::vector<Address> ball_of_vertex(const Address& u, int k, int depth) {
  if (k < 0) throw Error(Errc::BadParams, "negative radius");
  if (enclosing_level(u, k) > depth) {
    throw Error(Errc::TruncationExceeded, "B(" + u.str() + "," + std::to_string(k) +
                                              ") leaves B(e," + std::to_string(depth) + ")");
  }
  std::vector<Address> out{u};
  std::deque<std::pair<Address, int>> queue{{u, 0}};
  while (!queue.empty()) {
    auto [v, d] = queue.front();
    queue.pop_front();
    if (d == k) continue;
    for (const Address& w : v.neighbors()) {
      if (distance(w, u) == d + 1) {
        out.push_back(w);
        queue.emplace_back(w, d + 1);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace treeinv
