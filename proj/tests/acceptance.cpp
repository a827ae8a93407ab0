// Acceptance checks. Prints one PASS/FAIL line per criterion; with an
// argument, runs only that criterion. Exit status is nonzero if any
// selected criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "treeinv/cli.hpp"
#include "treeinv/closure.hpp"
#include "treeinv/gadget.hpp"
#include "treeinv/inversions.hpp"
#include "treeinv/io.hpp"
#include "treeinv/search.hpp"

using namespace treeinv;

namespace {

// Wall-clock limits in seconds.
constexpr double kLimit1 = 1.0;
constexpr double kLimit2 = 1.0;
constexpr double kLimit3 = 5.0;
constexpr double kLimit4 = 600.0;
constexpr double kLimit5 = 600.0;
constexpr double kLimit6 = 600.0;
constexpr double kLimit7 = 60.0;
constexpr double kLimit8 = 600.0;
constexpr std::uint64_t kNodeCap = 100'000'000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double limit;
  std::function<Outcome()> run;
};

Outcome good_inversion_spheres() {
  const Portrait g = good_inversion(10);
  for (int n = 0; n <= 10; ++n) {
    if (sphere_cycle_type(g, n) != std::vector<std::uint64_t>{sphere_size(n)}) {
      return {false, "level " + std::to_string(n) + " is not a single cycle"};
    }
  }
  return {true, "single cycle of length 2^{n+1} on S(e,n), n = 0..10"};
}

Outcome fixing_law() {
  const Portrait g = good_inversion(8);
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> level(0, 8);
  std::uniform_int_distribution<std::int64_t> small(-4096, 4096);
  int fixed = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = level(rng);
    // Half the samples are multiples of the sphere size so both sides of the law get exercised.
    const std::int64_t q = i % 2 == 0 ? small(rng) * static_cast<std::int64_t>(sphere_size(n)) : small(rng);
    const bool divides = q % static_cast<std::int64_t>(sphere_size(n)) == 0;
    const bool fixes = fixes_sphere(power(g, q), n);
    if (fixes != divides) return {false, "n=" + std::to_string(n) + " q=" + std::to_string(q)};
    fixed += fixes;
  }
  return {true, "200 samples, " + std::to_string(fixed) + " fixing"};
}

Outcome half_tree_surgery_order_two() {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Portrait g = random_inversion(6, seed);
    const Portrait x = half_tree_surgery(g);
    if (compose(x, x) != Portrait::identity(6)) return {false, "seed " + std::to_string(seed) + ": x^2 != id"};
    if (!is_locally_compatible(x, g, 1)) return {false, "seed " + std::to_string(seed) + ": local test fails"};
  }
  return {true, "50 random inversions at D=6: x^2 = id, k=1 local test passes everywhere"};
}

SearchOptions capped(int threads = 1) {
  SearchOptions o;
  o.budget = kNodeCap;
  o.threads = threads;
  return o;
}

Outcome no_involutions_literal() {
  const auto r = search_involutions(good_inversion(5), 2, 5, capped());
  std::string d = "found " + std::to_string(r.found_count) + ", exhaustive " + (r.exhaustive ? "true" : "false") +
                  ", expanded " + std::to_string(r.expanded);
  if (r.found_count > 0) {
    bool all_kernel = true;
    for (const auto& h : r.found) all_kernel = all_kernel && truncate(h, 4) == Portrait::identity(4);
    d += all_kernel ? "; every one is trivial on B(e,4)" : "";
  }
  return {r.found_count == 0 && r.exhaustive, d};
}

Outcome no_involutions_visible() {
  const auto r = search_visible_involutions(good_inversion(5), 2, 5, capped());
  return {r.found_count == 0 && r.exhaustive,
          "h^2 = id on B(e,5) and nontrivial on B(e,4): found " + std::to_string(r.found_count) + ", exhaustive " +
              (r.exhaustive ? "true" : "false")};
}

Outcome exact_minimal_order() {
  std::string d;
  for (int n = 1; n <= 4; ++n) {
    const std::uint64_t target = std::uint64_t{1} << n;
    const auto m = min_inversion_order(truncated_good_inversion(n, n + 2), 2, n + 2, capped());
    if (m.order != target || !m.lower_bound_exhaustive) {
      return {false, "N=" + std::to_string(n) + ": least order " + std::to_string(m.order)};
    }
    const Portrait g = truncated_good_inversion(n, n + 4);
    const Portrait x = component_surgery(g, n);
    if (order_on_ball(x, n + 4) != target || !x.inverts_edge() || !is_locally_compatible(x, g, 2)) {
      return {false, "N=" + std::to_string(n) + ": surgery order " + std::to_string(order_on_ball(x, n + 4))};
    }
    d += (d.empty() ? "" : ", ") + std::to_string(target);
  }
  return {true, "least orders " + d + " for N = 1..4; surgeries match and pass k=2"};
}

Outcome rigidity() {
  SearchOptions o = capped();
  o.max_stored = SIZE_MAX;
  const auto r = enumerate_compatible(good_inversion(4), 2, 4, predicates::inverts_edge(), o);
  if (!r.exhaustive || r.found.size() != r.found_count) return {false, "search incomplete"};
  for (const auto& h : r.found) {
    for (int n = 0; n <= 2; ++n) {
      if (sphere_cycle_type(h, n).size() != 1) return {false, "multi-cycle level " + std::to_string(n)};
    }
  }
  return {true, std::to_string(r.found_count) + " compatible inversions, all single cycles on S(e,0..2)"};
}

Outcome gadget_local() {
  const auto c = gadget::GadgetComplex::build(3);
  int blue = 0;
  int green = 0;
  int red = 0;
  for (int g = 0; g < static_cast<int>(c.gadget_count()); ++g) {
    const auto& x = c.gadget(g);
    if (x.distance <= 1) {
      if (!gadget::local_blue_swap_analysis(c, g).holds()) return {false, "blue swap at " + io::gadget_name(c, g)};
      ++blue;
    }
    if (x.distance <= 2 && x.green > g && c.gadget(x.green).distance <= 2) {
      if (!gadget::edge_swap_analysis(c, g, x.green).holds()) return {false, "green swap at " + io::gadget_name(c, g)};
      ++green;
    }
    if (x.distance <= 2 && x.parent >= 0 && c.gadget(x.parent).distance <= 2) {
      if (!gadget::edge_swap_analysis(c, x.parent, g).holds()) return {false, "red swap at " + io::gadget_name(c, g)};
      ++red;
    }
  }
  return {true, std::to_string(blue) + " blue-swap centres, " + std::to_string(green) + " green pairs, " +
                    std::to_string(red) + " red pairs"};
}

Outcome gadget_transitive_torsion_free() {
  const auto c = gadget::GadgetComplex::build(3);
  int pairs = 0;
  for (int a = 0; a < static_cast<int>(c.gadget_count()); ++a) {
    for (int b = 0; b < static_cast<int>(c.gadget_count()); ++b) {
      if (!c.is_full(a) || !c.is_full(b)) continue;
      const auto f = gadget::transitivity_witness(c, a, b);
      if (!gadget::verify_color_automorphism(c, f) || f.gadget_image(a) != b) {
        return {false, io::gadget_name(c, a) + " -> " + io::gadget_name(c, b)};
      }
      ++pairs;
    }
  }
  const auto t = gadget::torsion_search(c);
  return {t.involution_candidates() == 0,
          std::to_string(pairs) + " interior pairs linked; " + std::to_string(t.vertex_cases.size()) +
              " vertex and " + std::to_string(t.edge_cases.size()) + " edge cases, " +
              std::to_string(t.involution_candidates()) + " involution candidates"};
}

std::string reports(int threads) {
  const std::string t = std::to_string(threads);
  const std::vector<std::vector<std::string>> commands{
      {"verify", "thm2", "--depth", "5", "--threads", t},
      {"verify", "thm2", "--depth", "5", "--scope", "visible", "--threads", t},
      {"verify", "thm3", "--n", "1", "--depth", "3", "--threads", t},
      {"verify", "thm3", "--n", "2", "--depth", "4", "--threads", t},
      {"verify", "thm3", "--n", "3", "--depth", "5", "--threads", t},
      {"verify", "thm3", "--n", "4", "--depth", "6", "--threads", t},
      {"verify", "corollary-good-inv", "--depth", "4", "--threads", t},
      {"gadget", "verify-local", "--radius", "3"},
      {"gadget", "verify-transitive", "--radius", "3"},
      {"gadget", "torsion-search", "--radius", "3", "--threads", t},
  };
  std::ostringstream all;
  std::ostringstream err;
  for (const auto& args : commands) {
    all << cli::run(args, all, err) << "\n";
  }
  return all.str();
}

Outcome determinism() {
  const std::string a = reports(1);
  const std::string b = reports(1);
  const std::string c = reports(8);
  const bool pass = a == b && a == c;
  return {pass, std::to_string(a.size()) + " bytes of reports; repeat " + (a == b ? "identical" : "differs") +
                    ", 8 threads " + (a == c ? "identical" : "differs")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"1", "good inversion is a single cycle on every sphere, D=10", kLimit1, good_inversion_spheres},
      {"2", "g^q fixes S(e,n) iff 2^{n+1} divides q, D=8", kLimit2, fixing_law},
      {"3", "half-tree surgery gives order-2 locally compatible inversions", kLimit3, half_tree_surgery_order_two},
      {"4", "no involution compatible with the good inversion, k=2, D=5", kLimit4, no_involutions_literal},
      {"4v", "no visible involution compatible with the good inversion, k=2, D=5", kLimit4, no_involutions_visible},
      {"5", "least compatible inversion order for g_N is 2^N, N=1..4", kLimit5, exact_minimal_order},
      {"6", "compatible inversions of the good inversion are single cycles on S(e,0..2)", kLimit6, rigidity},
      {"7", "gadget blue, green and red swap lemmas at R=3", kLimit7, gadget_local},
      {"8", "gadget transitivity and no involutions at R=3", kLimit8, gadget_transitive_torsion_free},
      {"9", "reports identical across runs and thread counts", kLimit4 + kLimit5 + kLimit6 + kLimit8, determinism},
  };
  const std::string only = argc > 1 ? argv[1] : "";
  bool all_pass = true;
  bool ran = false;
  for (const auto& c : criteria) {
    if (!only.empty() && only != c.id) continue;
    ran = true;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(c.limit)) + " s limit";
    }
    std::printf("criterion %-2s %s  %s: %s (%.2f s)\n", c.id.c_str(), o.pass ? "PASS" : "FAIL", c.title.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  if (!ran) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 3;
  }
  return all_pass ? 0 : 1;
}
