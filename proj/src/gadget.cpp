#include "treeinv/gadget.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <numeric>
#include <thread>

#include "treeinv/error.hpp"

namespace treeinv::gadget {

std::string_view to_string(ArcColor color) {
  switch (color) {
    case ArcColor::Internal: return "internal";
    case ArcColor::Red: return "red";
    case ArcColor::Green: return "green";
  }
  return "?";
}

std::string_view to_string(NodeColor color) { return color == NodeColor::Black ? "black" : "blue"; }

std::string role_name(int role) {
  static constexpr std::array<const char*, kNodesPerGadget> kNames{"b0", "b1", "b2", "b3", "u0", "u1"};
  return kNames.at(static_cast<std::size_t>(role));
}

namespace {

std::string display(const std::string& id) { return id.empty() ? "base" : id; }

std::string extend_id(const std::string& id, std::string_view move) {
  return id.empty() ? std::string(move) : id + "." + std::string(move);
}

std::uint64_t lcm_of(const std::vector<std::uint64_t>& lengths) {
  std::uint64_t order = 1;
  for (auto len : lengths) order = std::lcm(order, len);
  return order;
}

}  // namespace

GadgetComplex GadgetComplex::build(int radius, Anchoring anchoring) {
  if (radius < 0) throw Error(Errc::BadParams, "negative gadget radius");
  GadgetComplex c;
  c.radius_ = radius;
  c.anchoring_ = anchoring;
  c.gadgets_.push_back(Gadget{"", 0});
  auto add = [&c](const std::string& id, int distance) {
    c.gadgets_.push_back(Gadget{id, distance});
    return static_cast<int>(c.gadgets_.size()) - 1;
  };
  // Breadth-first: every gadget below the radius gets all four neighbours.
  // A gadget created by a parent move is child 0 of that parent.
  for (std::size_t i = 0; i < c.gadgets_.size(); ++i) {
    const int g = static_cast<int>(i);
    if (c.gadgets_[i].distance >= radius) continue;
    const std::string id = c.gadgets_[i].id;
    const int d = c.gadgets_[i].distance + 1;
    if (c.gadgets_[i].parent < 0) {
      const int p = add(extend_id(id, "p"), d);
      c.gadgets_[i].parent = p;
      c.gadgets_[static_cast<std::size_t>(p)].children[0] = g;
    }
    if (c.gadgets_[i].green < 0) {
      const int q = add(extend_id(id, "g"), d);
      c.gadgets_[i].green = q;
      c.gadgets_[static_cast<std::size_t>(q)].green = g;
    }
    for (int j = 0; j < 2; ++j) {
      if (c.gadgets_[i].children[static_cast<std::size_t>(j)] < 0) {
        const int ch = add(extend_id(id, j == 0 ? "c0" : "c1"), d);
        c.gadgets_[i].children[static_cast<std::size_t>(j)] = ch;
        c.gadgets_[static_cast<std::size_t>(ch)].parent = g;
      }
    }
  }

  auto arc = [&c](int from, int to, ArcColor color) { c.arcs_.push_back(Arc{from, to, color}); };
  const bool standard = anchoring == Anchoring::Standard;
  for (std::size_t i = 0; i < c.gadgets_.size(); ++i) {
    const int g = static_cast<int>(i);
    for (int r = 0; r < 4; ++r) arc(node(g, r), node(g, (r + 1) % 4), ArcColor::Internal);
    arc(node(g, kU0), node(g, standard ? kB0 : kB1), ArcColor::Internal);
    arc(node(g, kU0), node(g, standard ? kB2 : kB3), ArcColor::Internal);
    arc(node(g, kU1), node(g, standard ? kB1 : kB0), ArcColor::Internal);
    arc(node(g, kU1), node(g, standard ? kB3 : kB2), ArcColor::Internal);
  }
  for (std::size_t i = 0; i < c.gadgets_.size(); ++i) {
    const int p = static_cast<int>(i);
    for (int j = 0; j < 2; ++j) {
      const int x = c.gadgets_[i].children[static_cast<std::size_t>(j)];
      if (x < 0) continue;
      arc(node(p, j), node(x, kU0), ArcColor::Red);
      arc(node(p, j + 2), node(x, kU1), ArcColor::Red);
    }
  }
  for (std::size_t i = 0; i < c.gadgets_.size(); ++i) {
    const int a = static_cast<int>(i);
    const int b = c.gadgets_[i].green;
    if (b < a) continue;  // each pair once, smaller index first
    arc(node(a, kU0), node(b, kU0), ArcColor::Green);
    arc(node(b, kU0), node(a, kU1), ArcColor::Green);
    arc(node(a, kU1), node(b, kU1), ArcColor::Green);
    arc(node(b, kU1), node(a, kU0), ArcColor::Green);
  }

  c.out_.resize(c.node_count());
  c.in_.resize(c.node_count());
  for (std::size_t a = 0; a < c.arcs_.size(); ++a) {
    c.out_[static_cast<std::size_t>(c.arcs_[a].from)].push_back(static_cast<int>(a));
    c.in_[static_cast<std::size_t>(c.arcs_[a].to)].push_back(static_cast<int>(a));
  }
  return c;
}

bool GadgetComplex::has_arc(int from, int to, ArcColor color) const {
  for (int a : out_arcs(from)) {
    const Arc& arc = arcs_[static_cast<std::size_t>(a)];
    if (arc.to == to && arc.color == color) return true;
  }
  return false;
}

int GadgetComplex::find(std::string_view id) const {
  if (id == "base") return 0;
  for (std::size_t i = 0; i < gadgets_.size(); ++i) {
    if (gadgets_[i].id == id) return static_cast<int>(i);
  }
  throw Error(Errc::BadParams, "no gadget '" + std::string(id) + "'");
}

std::vector<int> GadgetComplex::neighbors(int g) const {
  const Gadget& x = gadget(g);
  std::vector<int> out;
  for (int n : {x.parent, x.green, x.children[0], x.children[1]}) {
    if (n >= 0) out.push_back(n);
  }
  return out;
}

std::vector<int> GadgetComplex::gadget_ball(const std::vector<int>& centers, int r) const {
  std::vector<int> dist(gadgets_.size(), -1);
  std::deque<int> queue;
  std::vector<int> out;
  for (int g : centers) {
    if (dist[static_cast<std::size_t>(g)] < 0) {
      dist[static_cast<std::size_t>(g)] = 0;
      queue.push_back(g);
      out.push_back(g);
    }
  }
  while (!queue.empty()) {
    const int g = queue.front();
    queue.pop_front();
    if (dist[static_cast<std::size_t>(g)] == r) continue;
    for (int n : neighbors(g)) {
      if (dist[static_cast<std::size_t>(n)] >= 0) continue;
      dist[static_cast<std::size_t>(n)] = dist[static_cast<std::size_t>(g)] + 1;
      queue.push_back(n);
      out.push_back(n);
    }
  }
  return out;
}

int GadgetComplex::tree_distance(int a, int b) const {
  for (int r = 0;; ++r) {
    const auto ball = gadget_ball({a}, r);
    if (std::find(ball.begin(), ball.end(), b) != ball.end()) return r;
    if (r > 2 * radius_) throw Error(Errc::BadParams, "gadgets not connected");
  }
}

std::vector<int> children(const GadgetComplex& c, int g) {
  std::vector<int> out;
  for (int r = 0; r < 4; ++r) {
    for (int a : c.out_arcs(GadgetComplex::node(g, r))) {
      const Arc& arc = c.arcs()[static_cast<std::size_t>(a)];
      if (arc.color != ArcColor::Red) continue;
      const int x = GadgetComplex::gadget_of(arc.to);
      if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
  }
  if (out.size() != 2) {
    throw Error(Errc::TruncationExceeded, "children of '" + c.gadget(g).id + "' outside the truncation");
  }
  return out;
}

std::vector<int> grandchildren(const GadgetComplex& c, int g) {
  std::vector<int> out;
  for (int x : children(c, g)) {
    for (int y : children(c, x)) out.push_back(y);
  }
  return out;
}

int ColorAutomorphism::operator()(int node) const {
  const auto it = std::lower_bound(domain.begin(), domain.end(), node);
  if (it == domain.end() || *it != node) {
    throw Error(Errc::TruncationExceeded, "node " + std::to_string(node) + " outside the map's domain");
  }
  return image[static_cast<std::size_t>(it - domain.begin())];
}

namespace {

using DegreeSignature = std::array<int, 6>;  // out by colour, then in by colour

DegreeSignature signature(const GadgetComplex& c, int node) {
  DegreeSignature sig{};
  for (int a : c.out_arcs(node)) ++sig[static_cast<std::size_t>(c.arcs()[static_cast<std::size_t>(a)].color)];
  for (int a : c.in_arcs(node)) ++sig[3 + static_cast<std::size_t>(c.arcs()[static_cast<std::size_t>(a)].color)];
  return sig;
}

// Nodes whose gadget and all of its T_4 neighbours are in the domain.
std::vector<bool> interior_nodes(const GadgetComplex& c, const std::vector<int>& domain_gadgets) {
  std::vector<bool> in_domain(c.gadget_count(), false);
  for (int g : domain_gadgets) in_domain[static_cast<std::size_t>(g)] = true;
  std::vector<bool> interior(c.node_count(), false);
  for (int g : domain_gadgets) {
    if (!c.is_full(g)) continue;
    const auto nb = c.neighbors(g);
    if (!std::all_of(nb.begin(), nb.end(), [&](int n) { return in_domain[static_cast<std::size_t>(n)]; })) continue;
    for (int r = 0; r < kNodesPerGadget; ++r) interior[static_cast<std::size_t>(GadgetComplex::node(g, r))] = true;
  }
  return interior;
}

class MapSearch {
 public:
  MapSearch(const GadgetComplex& source, const GadgetComplex& target, const MapSearchSpec& spec)
      : src_(source), dst_(target), spec_(spec) {
    if (spec.domain_gadgets.empty()) throw Error(Errc::BadParams, "empty domain");
    for (int g : spec.domain_gadgets) {
      for (int r = 0; r < kNodesPerGadget; ++r) domain_.push_back(GadgetComplex::node(g, r));
    }
    std::sort(domain_.begin(), domain_.end());
    in_domain_.assign(src_.node_count(), false);
    for (int x : domain_) in_domain_[static_cast<std::size_t>(x)] = true;
    interior_ = interior_nodes(src_, spec.domain_gadgets);
    image_.assign(src_.node_count(), -1);
    used_by_.assign(dst_.node_count(), -1);
    order_nodes();
  }

  std::uint64_t run(const std::function<bool(const ColorAutomorphism&)>& visit) {
    visit_ = &visit;
    step(0);
    return expanded_;
  }

 private:
  struct Anchor {
    int prev = -1;  // earlier node in the order, or -1 for a free start
    bool outgoing = true;  // arc prev -> node
    ArcColor color = ArcColor::Internal;
  };

  // Breadth-first order over domain arcs, so every node after the first of
  // its component has an already-mapped neighbour to take candidates from.
  void order_nodes() {
    std::vector<bool> placed(src_.node_count(), false);
    const int first = GadgetComplex::node(spec_.domain_gadgets.front(), kB0);
    std::vector<int> starts{first};
    starts.insert(starts.end(), domain_.begin(), domain_.end());
    for (int s : starts) {
      if (placed[static_cast<std::size_t>(s)]) continue;
      placed[static_cast<std::size_t>(s)] = true;
      order_.push_back(s);
      anchors_.push_back(Anchor{});
      for (std::size_t i = order_.size() - 1; i < order_.size(); ++i) {
        const int z = order_[i];
        auto consider = [&](int x, bool outgoing, ArcColor color) {
          if (!in_domain_[static_cast<std::size_t>(x)] || placed[static_cast<std::size_t>(x)]) return;
          placed[static_cast<std::size_t>(x)] = true;
          order_.push_back(x);
          anchors_.push_back(Anchor{z, outgoing, color});
        };
        for (int a : src_.out_arcs(z)) consider(src_.arcs()[static_cast<std::size_t>(a)].to, true, src_.arcs()[static_cast<std::size_t>(a)].color);
        for (int a : src_.in_arcs(z)) consider(src_.arcs()[static_cast<std::size_t>(a)].from, false, src_.arcs()[static_cast<std::size_t>(a)].color);
      }
    }
  }

  std::vector<int> candidates(std::size_t i) const {
    const Anchor& anchor = anchors_[i];
    const int x = order_[i];
    std::vector<int> out;
    if (anchor.prev < 0) {
      if (i == 0 && !spec_.first_candidates.empty()) return spec_.first_candidates;
      for (int y = 0; y < static_cast<int>(dst_.node_count()); ++y) {
        if (GadgetComplex::color(y) == GadgetComplex::color(x)) out.push_back(y);
      }
      return out;
    }
    const int fz = image_[static_cast<std::size_t>(anchor.prev)];
    const auto& arcs = anchor.outgoing ? dst_.out_arcs(fz) : dst_.in_arcs(fz);
    for (int a : arcs) {
      const Arc& arc = dst_.arcs()[static_cast<std::size_t>(a)];
      if (arc.color == anchor.color) out.push_back(anchor.outgoing ? arc.to : arc.from);
    }
    return out;
  }

  bool consistent(int x, int y) const {
    if (GadgetComplex::color(x) != GadgetComplex::color(y)) return false;
    if (used_by_[static_cast<std::size_t>(y)] >= 0) return false;
    if (spec_.allowed && !spec_.allowed(x, y)) return false;
    for (int a : src_.out_arcs(x)) {
      const Arc& arc = src_.arcs()[static_cast<std::size_t>(a)];
      const int fw = arc.to == x ? y : image_[static_cast<std::size_t>(arc.to)];
      if (in_domain_[static_cast<std::size_t>(arc.to)] && fw >= 0 && !dst_.has_arc(y, fw, arc.color)) return false;
    }
    for (int a : src_.in_arcs(x)) {
      const Arc& arc = src_.arcs()[static_cast<std::size_t>(a)];
      const int fw = image_[static_cast<std::size_t>(arc.from)];
      if (in_domain_[static_cast<std::size_t>(arc.from)] && fw >= 0 && !dst_.has_arc(fw, y, arc.color)) return false;
    }
    for (int a : dst_.out_arcs(y)) {
      const Arc& arc = dst_.arcs()[static_cast<std::size_t>(a)];
      const int w = arc.to == y ? x : used_by_[static_cast<std::size_t>(arc.to)];
      if (w >= 0 && !src_.has_arc(x, w, arc.color)) return false;
    }
    for (int a : dst_.in_arcs(y)) {
      const Arc& arc = dst_.arcs()[static_cast<std::size_t>(a)];
      const int w = used_by_[static_cast<std::size_t>(arc.from)];
      if (w >= 0 && !src_.has_arc(w, x, arc.color)) return false;
    }
    if (interior_[static_cast<std::size_t>(x)] && signature(src_, x) != signature(dst_, y)) return false;
    if (spec_.involutive) {
      if (in_domain_[static_cast<std::size_t>(y)] && image_[static_cast<std::size_t>(y)] >= 0 &&
          image_[static_cast<std::size_t>(y)] != x) {
        return false;
      }
      const int w = used_by_[static_cast<std::size_t>(x)];
      if (w >= 0 && w != y) return false;
    }
    return true;
  }

  bool step(std::size_t i) {
    if (i == order_.size()) {
      ColorAutomorphism f{domain_, {}};
      f.image.reserve(domain_.size());
      for (int x : domain_) f.image.push_back(image_[static_cast<std::size_t>(x)]);
      return (*visit_)(f);
    }
    const int x = order_[i];
    for (int y : candidates(i)) {
      ++expanded_;
      if (!consistent(x, y)) continue;
      image_[static_cast<std::size_t>(x)] = y;
      used_by_[static_cast<std::size_t>(y)] = x;
      const bool keep_going = step(i + 1);
      image_[static_cast<std::size_t>(x)] = -1;
      used_by_[static_cast<std::size_t>(y)] = -1;
      if (!keep_going) return false;
    }
    return true;
  }

  const GadgetComplex& src_;
  const GadgetComplex& dst_;
  const MapSearchSpec& spec_;
  std::vector<int> domain_;
  std::vector<bool> in_domain_;
  std::vector<bool> interior_;
  std::vector<int> order_;
  std::vector<Anchor> anchors_;
  std::vector<int> image_;
  std::vector<int> used_by_;
  const std::function<bool(const ColorAutomorphism&)>* visit_ = nullptr;
  std::uint64_t expanded_ = 0;
};

std::vector<int> blacks_of(int g) {
  return {GadgetComplex::node(g, kB0), GadgetComplex::node(g, kB1), GadgetComplex::node(g, kB2),
          GadgetComplex::node(g, kB3)};
}

void require_inside(const GadgetComplex& c, int g, int r, const char* what) {
  if (c.gadget(g).distance + r > c.radius()) {
    throw Error(Errc::TruncationExceeded, std::string(what) + " around '" + c.gadget(g).id +
                                              "' leaves the radius-" + std::to_string(c.radius()) +
                                              " truncation");
  }
}

template <class T>
void insert_sorted_unique(std::vector<T>& v, const T& x) {
  const auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || !(*it == x)) v.insert(it, x);
}

}  // namespace

std::uint64_t enumerate_maps(const GadgetComplex& source, const GadgetComplex& target,
                             const MapSearchSpec& spec,
                             const std::function<bool(const ColorAutomorphism&)>& visit) {
  MapSearch search(source, target, spec);
  return search.run(visit);
}

bool verify_color_automorphism(const GadgetComplex& c, const ColorAutomorphism& f) {
  if (f.domain.size() != f.image.size() || f.domain.empty()) return false;
  if (!std::is_sorted(f.domain.begin(), f.domain.end())) return false;
  std::vector<int> dom_gadgets;
  for (int x : f.domain) insert_sorted_unique(dom_gadgets, GadgetComplex::gadget_of(x));
  if (dom_gadgets.size() * kNodesPerGadget != f.domain.size()) return false;

  std::vector<int> map(c.node_count(), -1);
  std::vector<int> inv(c.node_count(), -1);
  for (std::size_t i = 0; i < f.domain.size(); ++i) {
    const int x = f.domain[i];
    const int y = f.image[i];
    if (y < 0 || y >= static_cast<int>(c.node_count())) return false;
    if (inv[static_cast<std::size_t>(y)] >= 0) return false;
    if (GadgetComplex::color(x) != GadgetComplex::color(y)) return false;
    map[static_cast<std::size_t>(x)] = y;
    inv[static_cast<std::size_t>(y)] = x;
  }
  for (int g : dom_gadgets) {
    const int target = GadgetComplex::gadget_of(map[static_cast<std::size_t>(GadgetComplex::node(g, 0))]);
    for (int r = 1; r < kNodesPerGadget; ++r) {
      if (GadgetComplex::gadget_of(map[static_cast<std::size_t>(GadgetComplex::node(g, r))]) != target) return false;
    }
  }
  for (const Arc& arc : c.arcs()) {
    const int fx = map[static_cast<std::size_t>(arc.from)];
    const int fy = map[static_cast<std::size_t>(arc.to)];
    if (fx >= 0 && fy >= 0 && !c.has_arc(fx, fy, arc.color)) return false;
    const int px = inv[static_cast<std::size_t>(arc.from)];
    const int py = inv[static_cast<std::size_t>(arc.to)];
    if (px >= 0 && py >= 0 && !c.has_arc(px, py, arc.color)) return false;
  }
  const auto interior = interior_nodes(c, dom_gadgets);
  for (int x : f.domain) {
    if (interior[static_cast<std::size_t>(x)] &&
        signature(c, x) != signature(c, map[static_cast<std::size_t>(x)])) {
      return false;
    }
  }
  return true;
}

std::uint64_t order_on_domain(const ColorAutomorphism& f) {
  std::vector<int> sorted_image = f.image;
  std::sort(sorted_image.begin(), sorted_image.end());
  if (sorted_image != f.domain) return 0;
  std::vector<bool> seen(f.domain.size(), false);
  std::vector<std::uint64_t> lengths;
  for (std::size_t i = 0; i < f.domain.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j];) {
      seen[j] = true;
      ++len;
      j = static_cast<std::size_t>(
          std::lower_bound(f.domain.begin(), f.domain.end(), f.image[j]) - f.domain.begin());
    }
    lengths.push_back(len);
  }
  return lcm_of(lengths);
}

std::vector<std::uint64_t> gadget_cycle_type(const ColorAutomorphism& f, const std::vector<int>& gadgets) {
  std::vector<std::uint64_t> lengths;
  std::vector<bool> seen(gadgets.size(), false);
  auto pos = [&](int g) {
    return static_cast<std::size_t>(std::find(gadgets.begin(), gadgets.end(), g) - gadgets.begin());
  };
  for (std::size_t i = 0; i < gadgets.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j];) {
      seen[j] = true;
      ++len;
      j = pos(f.gadget_image(gadgets[j]));
      if (j == gadgets.size()) return {};
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return lengths;
}

bool BlueSwapReport::holds() const {
  const std::vector<std::vector<std::uint64_t>> four{{4}};
  const bool rotations_ok = std::all_of(blue_fix_rotations.begin(), blue_fix_rotations.end(),
                                        [](int r) { return r == 0 || r == 2; });
  return blue_swap_maps > 0 && black_cycle_types == four &&
         grandchildren_orders == std::vector<std::uint64_t>{4} && children_swapped && rotations_ok &&
         blue_fix_consistent && identity_seen;
}

BlueSwapReport local_blue_swap_analysis(const GadgetComplex& c, int g) {
  require_inside(c, g, 2, "radius-2 ball");
  BlueSwapReport report;
  report.gadget = display(c.gadget(g).id);
  const auto kids = children(c, g);
  const auto grand = grandchildren(c, g);

  MapSearchSpec spec;
  spec.domain_gadgets = c.gadget_ball({g}, 2);
  spec.first_candidates = blacks_of(g);
  spec.allowed = [g](int x, int y) {
    return (GadgetComplex::gadget_of(x) == g) == (GadgetComplex::gadget_of(y) == g);
  };
  report.expanded = enumerate_maps(c, spec, [&](const ColorAutomorphism& f) {
    ++report.maps;
    const bool swapped = GadgetComplex::role_of(f(GadgetComplex::node(g, kU0))) == kU1;
    if (swapped) {
      ++report.blue_swap_maps;
      std::vector<int> black_perm;
      for (int r = 0; r < 4; ++r) black_perm.push_back(GadgetComplex::role_of(f(GadgetComplex::node(g, r))));
      std::vector<std::uint64_t> cycles;
      std::vector<bool> seen(4, false);
      for (int r = 0; r < 4; ++r) {
        if (seen[static_cast<std::size_t>(r)]) continue;
        std::uint64_t len = 0;
        for (int s = r; !seen[static_cast<std::size_t>(s)]; s = black_perm[static_cast<std::size_t>(s)]) {
          seen[static_cast<std::size_t>(s)] = true;
          ++len;
        }
        cycles.push_back(len);
      }
      std::sort(cycles.begin(), cycles.end(), std::greater<>());
      insert_sorted_unique(report.black_cycle_types, cycles);
      insert_sorted_unique(report.grandchildren_orders, lcm_of(gadget_cycle_type(f, grand)));
      report.children_swapped = report.children_swapped && f.gadget_image(kids[0]) == kids[1] &&
                                f.gadget_image(kids[1]) == kids[0];
    } else {
      ++report.blue_fix_maps;
      const int rotation = GadgetComplex::role_of(f(GadgetComplex::node(g, kB0)));
      insert_sorted_unique(report.blue_fix_rotations, rotation);
      for (int x : kids) {
        const bool child_fixed = f.gadget_image(x) == x;
        const bool child_blues_swapped = GadgetComplex::role_of(f(GadgetComplex::node(x, kU0))) == kU1;
        if (!child_fixed || child_blues_swapped != (rotation == 2)) report.blue_fix_consistent = false;
      }
      bool identity = true;
      for (std::size_t i = 0; i < f.domain.size(); ++i) identity = identity && f.domain[i] == f.image[i];
      report.identity_seen = report.identity_seen || identity;
    }
    return true;
  });
  return report;
}

bool EdgeSwapReport::holds() const {
  if (edge_color == ArcColor::Red) return maps == 0;
  return maps > 0 && orders == std::vector<std::uint64_t>{4};
}

namespace {

ArcColor edge_color_between(const GadgetComplex& c, int a, int b) {
  const Gadget& ga = c.gadget(a);
  const Gadget& gb = c.gadget(b);
  if (ga.green == b) return ArcColor::Green;
  if (ga.parent == b || gb.parent == a) return ArcColor::Red;
  throw Error(Errc::BadParams, "'" + ga.id + "' and '" + gb.id + "' are not adjacent");
}

MapSearchSpec edge_swap_spec(const GadgetComplex& c, int a, int b, bool involutive) {
  MapSearchSpec spec;
  spec.domain_gadgets = c.gadget_ball({a, b}, 1);
  spec.first_candidates = blacks_of(b);
  spec.allowed = [a, b](int x, int y) {
    const int gx = GadgetComplex::gadget_of(x);
    const int gy = GadgetComplex::gadget_of(y);
    if (gx == a) return gy == b;
    if (gx == b) return gy == a;
    return gy != a && gy != b;
  };
  spec.involutive = involutive;
  return spec;
}

}  // namespace

EdgeSwapReport edge_swap_analysis(const GadgetComplex& c, int a, int b) {
  EdgeSwapReport report;
  report.first = display(c.gadget(a).id);
  report.second = display(c.gadget(b).id);
  report.edge_color = edge_color_between(c, a, b);
  require_inside(c, a, 1, "edge neighbourhood");
  require_inside(c, b, 1, "edge neighbourhood");
  const MapSearchSpec spec = edge_swap_spec(c, a, b, false);
  std::vector<int> ring;
  for (int g : spec.domain_gadgets) {
    if (g != a && g != b) ring.push_back(g);
  }
  report.expanded = enumerate_maps(c, spec, [&](const ColorAutomorphism& f) {
    ++report.maps;
    insert_sorted_unique(report.orders, lcm_of(gadget_cycle_type(f, ring)));
    return true;
  });
  return report;
}

ColorAutomorphism transitivity_witness(const GadgetComplex& c, int g1, int g2) {
  const int reach = c.radius() - std::max(c.gadget(g1).distance, c.gadget(g2).distance);
  if (reach < 1) {
    throw Error(Errc::TruncationExceeded, "'" + c.gadget(g1).id + "' and '" + c.gadget(g2).id +
                                              "' are not both interior");
  }
  MapSearchSpec spec;
  spec.domain_gadgets = c.gadget_ball({g1}, reach);
  spec.first_candidates = blacks_of(g2);
  std::optional<ColorAutomorphism> found;
  enumerate_maps(c, spec, [&](const ColorAutomorphism& f) {
    found = f;
    return false;
  });
  if (!found) {
    throw Error(Errc::NoWitness, "no colour automorphism maps '" + c.gadget(g1).id + "' to '" +
                                     c.gadget(g2).id + "'");
  }
  return *found;
}

std::uint64_t TorsionReport::involution_candidates() const {
  std::uint64_t total = 0;
  for (const auto& v : {std::cref(vertex_cases), std::cref(edge_cases)}) {
    for (const auto& t : v.get()) total += t.involutions;
  }
  return total;
}

std::uint64_t TorsionReport::min_order() const {
  std::uint64_t best = 0;
  for (const auto& v : {std::cref(vertex_cases), std::cref(edge_cases)}) {
    for (const auto& t : v.get()) {
      if (t.maps > 0 && (best == 0 || t.min_order < best)) best = t.min_order;
    }
  }
  return best;
}

namespace {

TorsionCenter run_torsion_case(const GadgetComplex& c, const std::string& name,
                               const std::function<MapSearchSpec(bool)>& make_spec) {
  TorsionCenter out;
  out.center = name;
  const MapSearchSpec all = make_spec(false);
  out.expanded += enumerate_maps(c, all, [&](const ColorAutomorphism& f) {
    ++out.maps;
    const std::uint64_t order = order_on_domain(f);
    if (out.min_order == 0 || order < out.min_order) out.min_order = order;
    return true;
  });
  const MapSearchSpec involutions = make_spec(true);
  out.expanded += enumerate_maps(c, involutions, [&](const ColorAutomorphism& f) {
    if (order_on_domain(f) == 2) ++out.involutions;
    return true;
  });
  return out;
}

}  // namespace

TorsionReport torsion_search(const GadgetComplex& c, int threads) {
  TorsionReport report;
  report.radius = c.radius();

  using Job = std::function<TorsionCenter()>;
  std::vector<Job> vertex_jobs;
  std::vector<Job> edge_jobs;
  for (int g = 0; g < static_cast<int>(c.gadget_count()); ++g) {
    if (c.gadget(g).distance + 2 > c.radius()) continue;
    vertex_jobs.push_back([&c, g] {
      return run_torsion_case(c, display(c.gadget(g).id), [&c, g](bool involutive) {
        MapSearchSpec spec;
        spec.domain_gadgets = c.gadget_ball({g}, 2);
        spec.first_candidates = blacks_of(g);
        spec.allowed = [g](int x, int y) {
          if (x == GadgetComplex::node(g, kU0)) return y == GadgetComplex::node(g, kU1);
          return (GadgetComplex::gadget_of(x) == g) == (GadgetComplex::gadget_of(y) == g);
        };
        spec.involutive = involutive;
        return spec;
      });
    });
  }
  for (int a = 0; a < static_cast<int>(c.gadget_count()); ++a) {
    const int b = c.gadget(a).green;
    if (b < a || c.gadget(a).distance + 1 > c.radius() || c.gadget(b).distance + 1 > c.radius()) continue;
    edge_jobs.push_back([&c, a, b] {
      return run_torsion_case(c, display(c.gadget(a).id) + "|" + display(c.gadget(b).id),
                              [&c, a, b](bool involutive) { return edge_swap_spec(c, a, b, involutive); });
    });
  }

  std::vector<Job> jobs = vertex_jobs;
  jobs.insert(jobs.end(), edge_jobs.begin(), edge_jobs.end());
  std::vector<TorsionCenter> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) results[j] = jobs[j]();
  };
  const auto n_threads = static_cast<std::size_t>(std::max(1, threads));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < std::min(n_threads, jobs.size()); ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  report.vertex_cases.assign(results.begin(), results.begin() + static_cast<std::ptrdiff_t>(vertex_jobs.size()));
  report.edge_cases.assign(results.begin() + static_cast<std::ptrdiff_t>(vertex_jobs.size()), results.end());
  for (const auto& r : results) report.expanded += r.expanded;
  return report;
}

std::optional<ColorAutomorphism> anchoring_isomorphism(int radius) {
  const GadgetComplex standard = GadgetComplex::build(radius, Anchoring::Standard);
  const GadgetComplex swapped = GadgetComplex::build(radius, Anchoring::Swapped);
  MapSearchSpec spec;
  for (int g = 0; g < static_cast<int>(standard.gadget_count()); ++g) spec.domain_gadgets.push_back(g);
  spec.first_candidates = blacks_of(0);
  std::optional<ColorAutomorphism> found;
  enumerate_maps(standard, swapped, spec, [&](const ColorAutomorphism& f) {
    found = f;
    return false;
  });
  return found;
}

}  // namespace treeinv::gadget
