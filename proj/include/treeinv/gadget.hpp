#pragma once

// The coloured directed graph obtained from T_4 by replacing every vertex
// with a six-node gadget (a directed 4-cycle of black nodes b0..b3 and two
// blue nodes u0 -> {b0,b2}, u1 -> {b1,b3}), joined to neighbouring gadgets
// by red arcs (black -> blue, parent to child) and green arcs (a directed
// 4-cycle on the blue nodes of a matched pair). Built to finite radius
// around a base gadget.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace treeinv::gadget {

enum class NodeColor : std::uint8_t { Black, Blue };
enum class ArcColor : std::uint8_t { Internal, Red, Green };

/// Node roles inside a gadget.
enum Role : int { kB0 = 0, kB1 = 1, kB2 = 2, kB3 = 3, kU0 = 4, kU1 = 5 };
inline constexpr int kNodesPerGadget = 6;

/// Which blue node is attached to which pair of opposite black nodes.
enum class Anchoring { Standard, Swapped };

struct Gadget {
  std::string id;  // moves from the base: "g", "p", "c0", "c1" joined by '.'
  int distance = 0;
  int parent = -1;
  int green = -1;
  std::array<int, 2> children{-1, -1};
};

struct Arc {
  int from = 0;
  int to = 0;
  ArcColor color = ArcColor::Internal;
};

class GadgetComplex {
 public:
  /// All gadgets within T_4-distance `radius` of the base. Throws
  /// Error(BadParams) for negative radius.
  static GadgetComplex build(int radius, Anchoring anchoring = Anchoring::Standard);

  int radius() const { return radius_; }
  Anchoring anchoring() const { return anchoring_; }

  std::size_t gadget_count() const { return gadgets_.size(); }
  std::size_t node_count() const { return gadgets_.size() * kNodesPerGadget; }
  const std::vector<Gadget>& gadgets() const { return gadgets_; }
  const Gadget& gadget(int g) const { return gadgets_.at(static_cast<std::size_t>(g)); }
  const std::vector<Arc>& arcs() const { return arcs_; }

  static int node(int gadget, int role) { return gadget * kNodesPerGadget + role; }
  static int gadget_of(int node) { return node / kNodesPerGadget; }
  static int role_of(int node) { return node % kNodesPerGadget; }
  static NodeColor color(int node) { return role_of(node) < 4 ? NodeColor::Black : NodeColor::Blue; }

  /// Indices into arcs(), sorted.
  const std::vector<int>& out_arcs(int node) const { return out_[static_cast<std::size_t>(node)]; }
  const std::vector<int>& in_arcs(int node) const { return in_[static_cast<std::size_t>(node)]; }
  bool has_arc(int from, int to, ArcColor color) const;

  /// Gadget with the given id ("base" or "" for the base). Throws Error(BadParams) if absent.
  int find(std::string_view id) const;

  /// T_4 neighbours present in the truncation, in the order parent, green,
  /// child 0, child 1.
  std::vector<int> neighbors(int g) const;

  /// True if all four T_4 neighbours are present.
  bool is_full(int g) const { return gadget(g).distance < radius_; }

  /// Distance in T_4 between two gadgets of the truncation.
  int tree_distance(int a, int b) const;

  /// Gadgets within T_4-distance r of any gadget in `centers`.
  std::vector<int> gadget_ball(const std::vector<int>& centers, int r) const;

 private:
  int radius_ = 0;
  Anchoring anchoring_ = Anchoring::Standard;
  std::vector<Gadget> gadgets_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

/// Gadgets reached from g by forward red arcs (from g's black nodes).
/// Throws Error(TruncationExceeded) if g has no children in the truncation.
std::vector<int> children(const GadgetComplex& c, int g);
std::vector<int> grandchildren(const GadgetComplex& c, int g);

/// A colour-preserving map defined on a set of whole gadgets. Constraints
/// are enforced on arcs inside the domain; nodes whose gadget and all its
/// neighbours lie in the domain (interior nodes) must also keep their full
/// coloured degree.
struct ColorAutomorphism {
  std::vector<int> domain;  // node ids, ascending
  std::vector<int> image;   // parallel to domain

  int operator()(int node) const;
  /// Gadget images, from the black node b0 of each domain gadget.
  int gadget_image(int g) const { return GadgetComplex::gadget_of((*this)(GadgetComplex::node(g, kB0))); }
};

/// Independent check of every ColorAutomorphism condition, including that
/// gadgets map onto gadgets.
bool verify_color_automorphism(const GadgetComplex& c, const ColorAutomorphism& f);

/// Order of f as a permutation, or 0 if f does not map its domain onto itself.
std::uint64_t order_on_domain(const ColorAutomorphism& f);

/// Cycle lengths of the permutation f induces on a set of gadgets, largest
/// first; empty if the set is not mapped onto itself.
std::vector<std::uint64_t> gadget_cycle_type(const ColorAutomorphism& f, const std::vector<int>& gadgets);

struct MapSearchSpec {
  std::vector<int> domain_gadgets;
  /// Allowed images of the first node (b0 of domain_gadgets[0]); empty
  /// means any node of the same colour.
  std::vector<int> first_candidates;
  /// Optional per-node filter on images.
  std::function<bool(int node, int image)> allowed;
  bool involutive = false;
};

/// Enumerates colour-preserving maps from `spec.domain_gadgets` in `source`
/// into `target`, in canonical order. `visit` returns false to stop.
/// Returns the number of node expansions.
std::uint64_t enumerate_maps(const GadgetComplex& source, const GadgetComplex& target,
                             const MapSearchSpec& spec,
                             const std::function<bool(const ColorAutomorphism&)>& visit);

inline std::uint64_t enumerate_maps(const GadgetComplex& c, const MapSearchSpec& spec,
                                    const std::function<bool(const ColorAutomorphism&)>& visit) {
  return enumerate_maps(c, c, spec, visit);
}

struct BlueSwapReport {
  std::string gadget;
  std::uint64_t maps = 0;
  std::uint64_t blue_swap_maps = 0;
  std::uint64_t blue_fix_maps = 0;
  std::vector<std::vector<std::uint64_t>> black_cycle_types;    // distinct, under blue swap
  std::vector<std::uint64_t> grandchildren_orders;              // distinct, under blue swap
  bool children_swapped = true;       // every blue swap swaps the two children
  std::vector<int> blue_fix_rotations;                          // distinct rotations of b0..b3
  bool blue_fix_consistent = true;    // rotation 2 <=> every child's blues swapped
  bool identity_seen = false;
  std::uint64_t expanded = 0;

  bool holds() const;
};

/// All colour automorphisms of the T_4-ball of radius 2 around g that map g
/// to itself. Throws Error(TruncationExceeded) unless that ball is inside
/// the truncation.
BlueSwapReport local_blue_swap_analysis(const GadgetComplex& c, int g);

struct EdgeSwapReport {
  std::string first;
  std::string second;
  ArcColor edge_color = ArcColor::Green;
  std::uint64_t maps = 0;                // automorphisms swapping the pair
  std::vector<std::uint64_t> orders;     // distinct orders on the distance-1 gadgets
  std::uint64_t expanded = 0;

  /// Green pair: some swap exists and every swap has order 4 on the six
  /// gadgets at distance 1 from the edge. Red pair: no swap exists.
  bool holds() const;
};

/// Colour automorphisms of the gadgets within distance 1 of the edge
/// {a, b} that swap a and b. Throws Error(BadParams) if a and b are not
/// T_4-adjacent and Error(TruncationExceeded) if the neighbourhood is cut.
EdgeSwapReport edge_swap_analysis(const GadgetComplex& c, int a, int b);

/// A colour automorphism defined on the ball of radius
/// R - max(dist(base,g1), dist(base,g2)) around g1 that maps g1 to g2.
/// Throws Error(NoWitness) if the search fails.
ColorAutomorphism transitivity_witness(const GadgetComplex& c, int g1, int g2);

struct TorsionCenter {
  std::string center;          // gadget id, or "a|b" for an edge
  std::uint64_t maps = 0;      // all maps of the case
  std::uint64_t min_order = 0; // smallest order among them
  std::uint64_t involutions = 0;
  std::uint64_t expanded = 0;
};

struct TorsionReport {
  int radius = 0;
  std::uint64_t expanded = 0;
  bool exhaustive = true;
  std::vector<TorsionCenter> vertex_cases;  // fix a gadget, swap its blues
  std::vector<TorsionCenter> edge_cases;    // swap a green pair
  std::uint64_t involution_candidates() const;
  std::uint64_t min_order() const;
};

/// Exhaustive search for involutions among colour automorphisms that fix a
/// gadget and swap its blue nodes (on the radius-2 ball) or swap a green
/// pair (on the radius-1 neighbourhood of the edge), for every centre whose
/// neighbourhood fits inside the truncation. `threads` only changes speed.
TorsionReport torsion_search(const GadgetComplex& c, int threads = 1);

/// Finds an isomorphism between the complexes built with the two
/// anchorings of the blue nodes, mapping base gadget to base gadget.
std::optional<ColorAutomorphism> anchoring_isomorphism(int radius);

std::string_view to_string(ArcColor color);
std::string_view to_string(NodeColor color);
std::string role_name(int role);

}  // namespace treeinv::gadget
