#include "treeinv/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <thread>

#include "treeinv/closure.hpp"
#include "treeinv/error.hpp"

namespace treeinv {

namespace predicates {

Predicate any() { return {"any", std::nullopt, false, -1, [](const Portrait&) { return true; }}; }

Predicate fixes_edge() {
  return {"fixes-edge", EdgeAction::Fix, false, -1, [](const Portrait&) { return true; }};
}

Predicate inverts_edge() {
  return {"inverts-edge", EdgeAction::Swap, false, -1, [](const Portrait&) { return true; }};
}

Predicate involution() {
  return {"involution", std::nullopt, true, 1,
          [](const Portrait& h) { return order_on_ball(h, h.depth()) == 2; }};
}

Predicate visible_involution() {
  return {"visible-involution", std::nullopt, true, 1, [](const Portrait& h) {
            if (order_on_ball(h, h.depth()) != 2) return false;
            for (std::size_t i = 0; i < ball_size(h.depth() - 1); ++i) {
              if (h.image(i) != i) return true;
            }
            return false;
          }};
}

Predicate inversion_of_order_at_most(int log2_order) {
  return {"inversion-order<=2^" + std::to_string(log2_order), EdgeAction::Swap, false, log2_order,
          [log2_order](const Portrait& h) {
            return order_on_ball(h, h.depth()) <= (std::uint64_t{1} << log2_order);
          }};
}

}  // namespace predicates

namespace {

constexpr std::int32_t kUnset = -1;

// Precomputed, read-only data shared by every search task.
struct Problem {
  int depth = 0;
  int k = 0;
  const Predicate* predicate = nullptr;
  std::size_t vertices = 0;
  std::size_t words = 0;  // bitset words per ball mask
  std::vector<std::uint32_t> first_child;
  std::vector<std::vector<std::uint32_t>> balls_of;  // interior balls containing a vertex
  std::size_t ball_count = 0;
  std::vector<std::uint32_t> cycle_of;
  std::vector<std::uint32_t> position;
  std::vector<std::uint32_t> cycle_length;
  // residue[len][j]: bitset of p in [0,P) with p = j mod len, len a power of two.
  std::vector<std::vector<std::uint64_t>> residue_patterns;
  std::size_t decisions = 0;               // 1 + |B(e,D-1)|
  std::uint64_t limit_cycle = 0;           // 2^max_order_log2, or 0 for none

  const std::uint64_t* pattern(std::uint32_t len, std::uint32_t j) const {
    const auto log2 = static_cast<std::size_t>(std::countr_zero(len));
    return residue_patterns[log2].data() + static_cast<std::size_t>(j) * words;
  }
};

Problem make_problem(const Portrait& g_full, int k, int depth, const Predicate& predicate) {
  Problem pb;
  pb.depth = depth;
  pb.k = k;
  pb.predicate = &predicate;
  const Portrait g = truncate(g_full, depth);
  const PowerTable powers(g);
  pb.vertices = g.size();
  const std::uint64_t period = powers.period(depth);
  pb.words = static_cast<std::size_t>((period + 63) / 64);

  pb.first_child.resize(pb.vertices, 0);
  for (std::size_t i = 0; i < ball_size(depth - 1); ++i) {
    pb.first_child[i] = static_cast<std::uint32_t>(Address::from_index(i).child(0).index());
  }

  pb.balls_of.resize(pb.vertices);
  const auto centers = interior_vertices(depth, k);
  pb.ball_count = centers.size();
  for (std::size_t b = 0; b < centers.size(); ++b) {
    for (const Address& x : ball_of_vertex(centers[b], k, depth)) {
      pb.balls_of[x.index()].push_back(static_cast<std::uint32_t>(b));
    }
  }

  pb.cycle_of.resize(pb.vertices);
  pb.position.resize(pb.vertices);
  pb.cycle_length.resize(pb.vertices);
  for (std::size_t i = 0; i < pb.vertices; ++i) {
    pb.cycle_of[i] = powers.cycle_of(i);
    pb.position[i] = powers.position(i);
    pb.cycle_length[i] = powers.cycle_length(i);
  }

  for (std::uint64_t len = 1; len <= period; len <<= 1) {
    std::vector<std::uint64_t> table(static_cast<std::size_t>(len) * pb.words, 0);
    for (std::uint64_t p = 0; p < period; ++p) {
      table[static_cast<std::size_t>(p % len) * pb.words + static_cast<std::size_t>(p / 64)] |=
          std::uint64_t{1} << (p % 64);
    }
    pb.residue_patterns.push_back(std::move(table));
  }

  pb.decisions = 1 + ball_size(depth - 1);
  pb.limit_cycle = predicate.max_order_log2 >= 0 ? (std::uint64_t{1} << predicate.max_order_log2) : 0;
  return pb;
}

struct TaskResult {
  std::uint64_t expanded = 0;
  bool budget_hit = false;
  std::uint64_t found_count = 0;
  std::vector<Portrait> found;
};

// Mutable search state: a partial portrait plus, for every interior ball,
// the set of powers of g still consistent with it.
class Engine {
 public:
  explicit Engine(const Problem& pb)
      : pb_(pb),
        image_(pb.vertices, kUnset),
        pre_(pb.vertices, kUnset),
        masks_(pb.ball_count * pb.words, 0) {
    const std::uint64_t* all = pb_.pattern(1, 0);
    for (std::size_t b = 0; b < pb_.ball_count; ++b) {
      std::copy(all, all + pb_.words, masks_.begin() + static_cast<std::ptrdiff_t>(b * pb_.words));
    }
  }

  // Applies decision d with branch bit. Returns false if the result is
  // pruned; the decision must be undone either way.
  bool apply(std::size_t d, int bit) {
    marks_.push_back({assigned_.size(), trail_balls_.size()});
    if (d == 0) {
      const auto l = static_cast<std::uint32_t>(Address::endpoint(Side::L).index());
      const auto r = static_cast<std::uint32_t>(Address::endpoint(Side::R).index());
      return assign(l, bit ? r : l) && assign(r, bit ? l : r);
    }
    const std::size_t a = d - 1;
    const std::uint32_t c0 = pb_.first_child[a];
    const std::uint32_t h0 = pb_.first_child[static_cast<std::size_t>(image_[a])];
    return assign(c0, h0 + static_cast<std::uint32_t>(bit)) &&
           assign(c0 + 1, h0 + static_cast<std::uint32_t>(1 - bit));
  }

  void undo() {
    const auto [assigned_mark, trail_mark] = marks_.back();
    marks_.pop_back();
    while (trail_balls_.size() > trail_mark) {
      const std::uint32_t b = trail_balls_.back();
      trail_balls_.pop_back();
      const std::size_t src = trail_words_.size() - pb_.words;
      std::copy(trail_words_.begin() + static_cast<std::ptrdiff_t>(src), trail_words_.end(),
                masks_.begin() + static_cast<std::ptrdiff_t>(b * pb_.words));
      trail_words_.resize(src);
    }
    while (assigned_.size() > assigned_mark) {
      const std::uint32_t x = assigned_.back();
      assigned_.pop_back();
      pre_[static_cast<std::size_t>(image_[x])] = kUnset;
      image_[x] = kUnset;
    }
  }

  bool edge_allowed(int bit) const {
    const auto& want = pb_.predicate->edge_action;
    if (!want) return true;
    return (*want == EdgeAction::Swap) == (bit == 1);
  }

  Portrait portrait() const {
    std::vector<std::uint32_t> images(image_.begin(), image_.end());
    return Portrait::from_images(pb_.depth, std::move(images));
  }

 private:
  bool assign(std::uint32_t x, std::uint32_t y) {
    image_[x] = static_cast<std::int32_t>(y);
    pre_[y] = static_cast<std::int32_t>(x);
    assigned_.push_back(x);

    const auto& balls = pb_.balls_of[x];
    if (!balls.empty()) {
      if (pb_.cycle_of[x] != pb_.cycle_of[y]) return false;
      const std::uint32_t len = pb_.cycle_length[x];
      const std::uint32_t j = (pb_.position[y] + len - pb_.position[x]) % len;
      const std::uint64_t* pattern = pb_.pattern(len, j);
      for (std::uint32_t b : balls) {
        std::uint64_t* mask = masks_.data() + b * pb_.words;
        trail_balls_.push_back(b);
        trail_words_.insert(trail_words_.end(), mask, mask + pb_.words);
        std::uint64_t any = 0;
        for (std::size_t w = 0; w < pb_.words; ++w) {
          mask[w] &= pattern[w];
          any |= mask[w];
        }
        if (any == 0) return false;
      }
    }

    if (pb_.predicate->involutive) {
      if (image_[y] != kUnset && image_[y] != static_cast<std::int32_t>(x)) return false;
      if (pre_[x] != kUnset && pre_[x] != static_cast<std::int32_t>(y)) return false;
    }
    if (pb_.limit_cycle != 0 && !cycle_within_limit(x)) return false;
    return true;
  }

  bool cycle_within_limit(std::uint32_t x) const {
    std::uint64_t count = 1;
    for (std::int32_t v = image_[x]; v != kUnset; v = image_[static_cast<std::size_t>(v)]) {
      if (v == static_cast<std::int32_t>(x)) return count <= pb_.limit_cycle;
      if (++count > pb_.limit_cycle) return false;
    }
    for (std::int32_t v = pre_[x]; v != kUnset; v = pre_[static_cast<std::size_t>(v)]) {
      if (++count > pb_.limit_cycle) return false;
    }
    return true;
  }

  const Problem& pb_;
  std::vector<std::int32_t> image_;
  std::vector<std::int32_t> pre_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::uint32_t> assigned_;
  std::vector<std::uint32_t> trail_balls_;
  std::vector<std::uint64_t> trail_words_;
  std::vector<std::pair<std::size_t, std::size_t>> marks_;
};

// Depth-first search over decisions [from, to). `on_leaf` is called at
// depth `to` and returns false to stop the whole search.
class Walker {
 public:
  Walker(Engine& engine, std::uint64_t cap) : engine_(engine), cap_(cap) {}

  template <class OnLeaf>
  bool run(std::size_t d, std::size_t to, OnLeaf&& on_leaf) {
    if (d == to) return on_leaf();
    for (int bit = 0; bit < 2; ++bit) {
      if (d == 0 && !engine_.edge_allowed(bit)) continue;
      if (expanded_ >= cap_) {
        budget_hit_ = true;
        return false;
      }
      ++expanded_;
      path_.push_back(static_cast<std::uint8_t>(bit));
      const bool ok = engine_.apply(d, bit);
      bool keep_going = true;
      if (ok) keep_going = run(d + 1, to, on_leaf);
      engine_.undo();
      path_.pop_back();
      if (!keep_going) return false;
    }
    return true;
  }

  std::uint64_t expanded() const { return expanded_; }
  bool budget_hit() const { return budget_hit_; }
  /// Branch bits from the walk's starting decision to the current node.
  const std::vector<std::uint8_t>& path() const { return path_; }

 private:
  Engine& engine_;
  std::uint64_t cap_;
  std::vector<std::uint8_t> path_;
  std::uint64_t expanded_ = 0;
  bool budget_hit_ = false;
};

constexpr std::size_t kSplitDecisions = 12;
constexpr std::size_t kBatchSize = 64;

TaskResult run_task(const Problem& pb, const std::vector<std::uint8_t>& prefix, std::uint64_t cap,
                    const SearchOptions& options) {
  Engine engine(pb);
  for (std::size_t d = 0; d < prefix.size(); ++d) engine.apply(d, prefix[d]);
  TaskResult result;
  Walker walker(engine, cap);
  walker.run(prefix.size(), pb.decisions, [&] {
    Portrait h = engine.portrait();
    if (!pb.predicate->accept(h)) return true;
    ++result.found_count;
    if (result.found.size() < options.max_stored) result.found.push_back(std::move(h));
    return !options.stop_at_first;
  });
  result.expanded = walker.expanded();
  result.budget_hit = walker.budget_hit();
  return result;
}

void check_search_params(const Portrait& g, int k, int depth) {
  if (k < 1) throw Error(Errc::BadParams, "radius k must be >= 1");
  if (depth < k + 1) throw Error(Errc::BadParams, "depth must be >= k + 1");
  if (depth > g.depth()) throw Error(Errc::BadParams, "depth exceeds the generator's truncation");
  if (depth > kMaxSearchDepth) {
    throw Error(Errc::BadParams, "search depth above " + std::to_string(kMaxSearchDepth));
  }
}

}  // namespace

SearchReport enumerate_compatible(const Portrait& g, int k, int depth, const Predicate& predicate,
                                  const SearchOptions& options) {
  check_search_params(g, k, depth);
  const Problem pb = make_problem(g, k, depth, predicate);

  SearchReport report;
  report.depth = depth;
  report.k = k;
  report.predicate = predicate.name;

  // Split the tree at a fixed decision depth; the task list and the batch
  // boundaries do not depend on the thread count, so neither does the report.
  const std::size_t split = std::min(kSplitDecisions, pb.decisions - 1);
  std::vector<std::vector<std::uint8_t>> prefixes;
  {
    Engine engine(pb);
    Walker walker(engine, options.budget);
    walker.run(0, split, [&] {
      prefixes.push_back(walker.path());
      return true;
    });
    report.expanded = walker.expanded();
    if (walker.budget_hit()) {
      report.budget_exhausted = true;
      return report;
    }
  }

  // Tasks run speculatively in parallel batches, then merge in prefix order
  // as if they had run one after another under a single global budget. A
  // task that crosses the remaining budget is re-run with the exact cap, so
  // the report never depends on the thread count.
  std::uint64_t remaining = options.budget - report.expanded;
  const auto threads = static_cast<std::size_t>(std::max(1, options.threads));
  const std::size_t batch = threads == 1 ? 1 : 4 * threads;
  bool done = false;
  for (std::size_t begin = 0; begin < prefixes.size() && !done; begin += batch) {
    const std::size_t end = std::min(prefixes.size(), begin + batch);
    std::vector<TaskResult> results(end - begin);
    std::atomic<std::size_t> next{begin};
    auto worker = [&] {
      for (std::size_t t = next++; t < end; t = next++) {
        results[t - begin] = run_task(pb, prefixes[t], remaining, options);
      }
    };
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t i = 0; i < std::min(threads, end - begin); ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    for (std::size_t t = begin; t < end && !done; ++t) {
      TaskResult r = std::move(results[t - begin]);
      if (r.budget_hit || r.expanded > remaining) r = run_task(pb, prefixes[t], remaining, options);
      remaining -= r.expanded;
      report.expanded += r.expanded;
      report.found_count += r.found_count;
      for (auto& h : r.found) {
        if (report.found.size() < options.max_stored) report.found.push_back(std::move(h));
      }
      if (r.budget_hit) {
        report.budget_exhausted = true;
        done = true;
      }
      if (options.stop_at_first && report.found_count > 0) done = true;
    }
  }
  const bool cut_short = options.stop_at_first && report.found_count > 0;
  report.exhaustive = !report.budget_exhausted && !cut_short;
  return report;
}

SearchReport search_involutions(const Portrait& g, int k, int depth, const SearchOptions& options) {
  return enumerate_compatible(g, k, depth, predicates::involution(), options);
}

SearchReport search_visible_involutions(const Portrait& g, int k, int depth,
                                        const SearchOptions& options) {
  return enumerate_compatible(g, k, depth, predicates::visible_involution(), options);
}

MinOrderResult min_inversion_order(const Portrait& g, int k, int depth, const SearchOptions& options) {
  if (!g.inverts_edge()) throw Error(Errc::NotAnInversion, "g fixes both endpoints of e");
  MinOrderResult out;
  out.depth = depth;
  out.k = k;
  out.lower_bound_exhaustive = true;
  SearchOptions first = options;
  first.stop_at_first = true;
  first.max_stored = 1;
  for (int m = 1; m <= depth + 1; ++m) {
    SearchOptions step = first;
    step.budget = options.budget > out.expanded ? options.budget - out.expanded : 0;
    const SearchReport report =
        enumerate_compatible(g, k, depth, predicates::inversion_of_order_at_most(m), step);
    out.expanded += report.expanded;
    if (report.budget_exhausted) {
      out.budget_exhausted = true;
      out.lower_bound_exhaustive = false;
      return out;
    }
    if (report.found_count > 0) {
      out.order = std::uint64_t{1} << m;
      out.lower_bound = out.order;
      out.witness = report.found.front();
      out.saturated = m == depth + 1;
      return out;
    }
    out.lower_bound = std::uint64_t{2} << m;
  }
  // truncate(g, depth) is itself a compatible inversion of order <= 2^{D+1}.
  throw Error(Errc::NoWitness, "no compatible inversion found; search is inconsistent");
}

}  // namespace treeinv
