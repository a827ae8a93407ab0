#include "treeinv/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "treeinv/closure.hpp"
#include "treeinv/error.hpp"
#include "treeinv/gadget.hpp"
#include "treeinv/inversions.hpp"
#include "treeinv/io.hpp"
#include "treeinv/search.hpp"

namespace treeinv::cli {

using io::Json;

void RunConfig::validate() const {
  if (depth > kMaxDepth) {
    throw Error(Errc::BadParams, "--depth " + std::to_string(depth) + " exceeds " + std::to_string(kMaxDepth));
  }
  if (radius > kMaxRadius) {
    throw Error(Errc::BadParams, "--radius " + std::to_string(radius) + " exceeds " + std::to_string(kMaxRadius));
  }
  if (k < 1) throw Error(Errc::BadParams, "--k must be at least 1");
  if (threads < 1) throw Error(Errc::BadParams, "--threads must be at least 1");
  if (budget == 0) throw Error(Errc::BadParams, "--budget must be positive");
}

namespace {

std::string resolve_out(const std::string& path) {
  if (path.empty()) return path;
  const char* dir = std::getenv("TREEINV_OUT_DIR");
  if (dir == nullptr || *dir == '\0' || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(dir) / path).string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::BadParams, "cannot write '" + path + "'");
  f << text;
}

// The JSON report goes to --out when given, otherwise to stdout.
void emit(const RunConfig& cfg, const Json& report, const std::string& summary, std::ostream& out) {
  if (cfg.out.empty()) {
    out << io::dump(report);
  } else {
    write_file(resolve_out(cfg.out), io::dump(report));
    out << summary;
  }
}

SearchOptions search_options(const RunConfig& cfg) {
  SearchOptions opt;
  opt.budget = cfg.budget;
  opt.threads = cfg.threads;
  return opt;
}

int search_exit(const SearchReport& r) {
  if (r.found_count > 0) return kCounterexample;
  return r.exhaustive ? kVerified : kBudget;
}

int build_inversion(const RunConfig& cfg, int truncated, bool csv, std::ostream& out) {
  const Portrait g = truncated > 0 ? truncated_good_inversion(truncated, cfg.depth) : good_inversion(cfg.depth);
  if (!cfg.out.empty()) write_file(resolve_out(cfg.out), io::dump(io::to_json(g)));
  out << (csv ? io::cycle_type_csv(g) : io::cycle_type_text(g));
  return kVerified;
}

int verify_no_involutions(const RunConfig& cfg, const std::string& scope, std::ostream& out) {
  const Portrait g = good_inversion(cfg.depth);
  const SearchReport r = scope == "visible" ? search_visible_involutions(g, cfg.k, cfg.depth, search_options(cfg))
                                            : search_involutions(g, cfg.k, cfg.depth, search_options(cfg));
  Json j = io::to_json(r);
  j["scope"] = scope;
  // Local witnesses are powers of g, so every compatible map must fix e setwise.
  bool all_fix_edge = true;
  for (const auto& h : r.found) all_fix_edge = all_fix_edge && !h.inverts_edge();
  j["found_fix_edge"] = all_fix_edge;
  emit(cfg, j, "thm2 scope=" + scope + " depth=" + std::to_string(cfg.depth) + " found=" +
                   std::to_string(r.found_count) + " exhaustive=" + (r.exhaustive ? "true" : "false") + "\n",
       out);
  return search_exit(r);
}

int verify_min_order(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n < 1) throw Error(Errc::BadParams, "--n is required and must be at least 1");
  const Portrait g = truncated_good_inversion(cfg.n, cfg.depth);
  const std::uint64_t target = std::uint64_t{1} << cfg.n;
  const MinOrderResult m = min_inversion_order(g, cfg.k, cfg.depth, search_options(cfg));
  const Portrait x = component_surgery(g, cfg.n);
  const std::uint64_t surgery_order = order_on_ball(x, cfg.depth);
  const bool surgery_local = cfg.depth > cfg.k && is_locally_compatible(x, g, cfg.k);

  Json j{{"n", cfg.n}, {"target_order", target}, {"min_order", io::to_json(m)}};
  j["surgery"] = Json{{"order", surgery_order},
                      {"inverts_edge", x.inverts_edge()},
                      {"locally_compatible", surgery_local},
                      {"portrait", io::to_json(x)}};
  emit(cfg, j, "thm3 n=" + std::to_string(cfg.n) + " depth=" + std::to_string(cfg.depth) + " min_order=" +
                   std::to_string(m.order) + " surgery_order=" + std::to_string(surgery_order) + "\n",
       out);
  const bool surgery_ok = surgery_order == target && x.inverts_edge() && surgery_local;
  if (m.order != 0 && (m.order != target || !surgery_ok)) return kCounterexample;
  if (!surgery_ok) return kCounterexample;
  return m.order == 0 ? kBudget : kVerified;
}

Json half_tree_case(const Portrait& g, bool with_portrait, bool& ok) {
  const Portrait x = half_tree_surgery(g);
  const bool squares = compose(x, x) == Portrait::identity(g.depth());
  std::vector<std::string> failures;
  for (const auto& t : pk_local_check(x, g, 1)) {
    if (!t.passed) failures.push_back(t.center.str());
  }
  ok = squares && x.inverts_edge() && failures.empty();
  Json j{{"order", order_on_ball(x, g.depth())},
         {"inverts_edge", x.inverts_edge()},
         {"squares_to_identity", squares},
         {"local_failures", failures}};
  if (with_portrait) j["witness"] = io::to_json(x);
  return j;
}

int verify_half_tree(const RunConfig& cfg, int samples, std::ostream& out) {
  if (cfg.depth < 1) throw Error(Errc::BadParams, "--depth must be at least 1");
  bool all_ok = true;
  bool ok = false;
  Json j{{"depth", cfg.depth}, {"k", 1}};
  j["good_inversion"] = half_tree_case(good_inversion(cfg.depth), true, ok);
  all_ok = all_ok && ok;
  Json random = Json::array();
  for (int s = 0; s < samples; ++s) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(s);
    Json c = half_tree_case(random_inversion(cfg.depth, seed), false, ok);
    c["seed"] = seed;
    random.push_back(std::move(c));
    all_ok = all_ok && ok;
  }
  j["random_inversions"] = std::move(random);
  j["verified"] = all_ok;
  emit(cfg, j, std::string("prop1 depth=") + std::to_string(cfg.depth) + " verified=" + (all_ok ? "true" : "false") + "\n",
       out);
  return all_ok ? kVerified : kCounterexample;
}

int verify_rigidity(const RunConfig& cfg, std::ostream& out) {
  const Portrait g = good_inversion(cfg.depth);
  const int forced = cfg.depth - cfg.k;
  Predicate p = predicates::inverts_edge();
  p.name = "inverting, not a single cycle on some S(e,n), n <= " + std::to_string(forced);
  p.accept = [forced](const Portrait& h) {
    if (!h.inverts_edge()) return false;
    for (int n = 0; n <= forced; ++n) {
      if (sphere_cycle_type(h, n).size() != 1) return true;
    }
    return false;
  };
  const SearchReport r = enumerate_compatible(g, cfg.k, cfg.depth, p, search_options(cfg));
  Json j = io::to_json(r);
  j["forced_levels"] = forced;
  emit(cfg, j, "corollary-good-inv depth=" + std::to_string(cfg.depth) + " counterexamples=" +
                   std::to_string(r.found_count) + " exhaustive=" + (r.exhaustive ? "true" : "false") + "\n",
       out);
  return search_exit(r);
}

int gadget_build(const RunConfig& cfg, const std::string& dot, std::ostream& out) {
  const auto c = gadget::GadgetComplex::build(cfg.radius);
  if (!dot.empty()) write_file(resolve_out(dot), io::to_dot(c));
  const std::string summary = "radius " + std::to_string(cfg.radius) + ": " + std::to_string(c.gadget_count()) +
                              " gadgets, " + std::to_string(c.node_count()) + " nodes, " +
                              std::to_string(c.arcs().size()) + " arcs\n";
  if (cfg.out.empty()) {
    out << summary;
  } else {
    write_file(resolve_out(cfg.out), io::dump(io::to_json(c)));
    out << summary;
  }
  return kVerified;
}

int gadget_verify_local(const RunConfig& cfg, std::ostream& out) {
  if (cfg.radius < 2) throw Error(Errc::BadParams, "verify-local needs --radius >= 2");
  const auto c = gadget::GadgetComplex::build(cfg.radius);
  bool ok = true;
  Json blue = Json::array();
  Json green = Json::array();
  Json red = Json::array();
  for (int g = 0; g < static_cast<int>(c.gadget_count()); ++g) {
    if (c.gadget(g).distance + 2 > cfg.radius) continue;
    const auto r = gadget::local_blue_swap_analysis(c, g);
    ok = ok && r.holds();
    blue.push_back(io::to_json(r));
  }
  for (int a = 0; a < static_cast<int>(c.gadget_count()); ++a) {
    if (c.gadget(a).distance + 1 > cfg.radius) continue;
    const auto& x = c.gadget(a);
    if (x.green > a && c.gadget(x.green).distance + 1 <= cfg.radius) {
      const auto r = gadget::edge_swap_analysis(c, a, x.green);
      ok = ok && r.holds();
      green.push_back(io::to_json(r));
    }
    if (x.parent >= 0 && c.gadget(x.parent).distance + 1 <= cfg.radius) {
      const auto r = gadget::edge_swap_analysis(c, x.parent, a);
      ok = ok && r.holds();
      red.push_back(io::to_json(r));
    }
  }
  Json j{{"radius", cfg.radius}, {"verified", ok}, {"blue_swap", blue}, {"green_swap", green}, {"red_swap", red}};
  emit(cfg, j, std::string("verify-local radius=") + std::to_string(cfg.radius) + " verified=" + (ok ? "true" : "false") + "\n",
       out);
  return ok ? kVerified : kCounterexample;
}

int gadget_verify_transitive(const RunConfig& cfg, std::ostream& out) {
  if (cfg.radius < 1) throw Error(Errc::BadParams, "verify-transitive needs --radius >= 1");
  const auto c = gadget::GadgetComplex::build(cfg.radius);
  std::vector<int> interior;
  for (int g = 0; g < static_cast<int>(c.gadget_count()); ++g) {
    if (c.is_full(g)) interior.push_back(g);
  }
  bool ok = true;
  Json pairs = Json::array();
  for (int g1 : interior) {
    for (int g2 : interior) {
      bool found = false;
      try {
        const auto f = gadget::transitivity_witness(c, g1, g2);
        found = verify_color_automorphism(c, f) && f.gadget_image(g1) == g2;
      } catch (const Error& e) {
        if (e.code() != Errc::NoWitness) throw;
      }
      ok = ok && found;
      pairs.push_back(Json{{"from", io::gadget_name(c, g1)},
                           {"to", io::gadget_name(c, g2)},
                           {"domain_radius", cfg.radius - std::max(c.gadget(g1).distance, c.gadget(g2).distance)},
                           {"found", found}});
    }
  }
  const bool iso = gadget::anchoring_isomorphism(cfg.radius).has_value();
  ok = ok && iso;
  Json j{{"radius", cfg.radius},
         {"verified", ok},
         {"interior_gadgets", interior.size()},
         {"anchorings_isomorphic", iso},
         {"pairs", pairs}};
  emit(cfg, j, std::string("verify-transitive radius=") + std::to_string(cfg.radius) + " verified=" + (ok ? "true" : "false") + "\n",
       out);
  return ok ? kVerified : kCounterexample;
}

int gadget_torsion(const RunConfig& cfg, std::ostream& out) {
  if (cfg.radius < 3) throw Error(Errc::BadParams, "torsion-search needs --radius >= 3");
  const auto c = gadget::GadgetComplex::build(cfg.radius);
  const auto r = gadget::torsion_search(c, cfg.threads);
  emit(cfg, io::to_json(r), "torsion-search radius=" + std::to_string(cfg.radius) + " involution_candidates=" +
                                std::to_string(r.involution_candidates()) + "\n",
       out);
  return r.involution_candidates() == 0 ? kVerified : kCounterexample;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-depth checks of tree automorphism constructions", "treeinv"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* b = std::getenv("TREEINV_BUDGET"); b != nullptr && *b != '\0') {
    try {
      cfg.budget = std::stoull(b);
    } catch (const std::exception&) {
      err << "error: TREEINV_BUDGET is not a number\n";
      return kUsage;
    }
  }

  auto depth_opt = [&cfg](CLI::App* a, bool required) {
    auto* o = a->add_option("--depth,-D", cfg.depth, "truncation depth D");
    if (required) o->required();
    o->check(CLI::NonNegativeNumber);
  };
  auto search_opts = [&cfg](CLI::App* a) {
    a->add_option("--k", cfg.k, "local test radius")->capture_default_str();
    a->add_option("--budget", cfg.budget, "node expansion budget")->capture_default_str();
    a->add_option("--threads", cfg.threads, "worker threads")->capture_default_str();
  };
  auto out_opt = [&cfg](CLI::App* a) { a->add_option("--out", cfg.out, "report file"); };

  auto* build = app.add_subcommand("build-inversion", "write an inversion and print its sphere cycle types");
  bool good = false;
  int truncated = 0;
  bool csv = false;
  auto* good_flag = build->add_flag("--good", good, "the odometer");
  auto* trunc_opt = build->add_option("--truncated", truncated, "truncated odometer g_N")->check(CLI::PositiveNumber);
  good_flag->excludes(trunc_opt);
  depth_opt(build, true);
  out_opt(build);
  build->add_flag("--csv", csv, "CSV cycle-type table");

  auto* verify = app.add_subcommand("verify", "check a construction against its claim");
  verify->require_subcommand(1);
  auto* no_inv = verify->add_subcommand("thm2", "no order-2 elements compatible with the odometer");
  std::string scope = "literal";
  depth_opt(no_inv, true);
  search_opts(no_inv);
  out_opt(no_inv);
  no_inv->add_option("--scope", scope, "literal: h^2 = id on B(e,D); visible: also nontrivial on B(e,D-1)")
      ->check(CLI::IsMember({"literal", "visible"}))
      ->capture_default_str();
  auto* min_order = verify->add_subcommand("thm3", "least inversion order compatible with g_N");
  min_order->add_option("--n,-N", cfg.n, "N")->required()->check(CLI::PositiveNumber);
  depth_opt(min_order, true);
  search_opts(min_order);
  out_opt(min_order);
  auto* half_tree = verify->add_subcommand("prop1", "half-tree surgery gives an order-2 inversion");
  int samples = 0;
  depth_opt(half_tree, true);
  out_opt(half_tree);
  half_tree->add_option("--samples", samples, "also check this many random inversions")->check(CLI::NonNegativeNumber);
  half_tree->add_option("--seed", cfg.seed, "seed for --samples")->capture_default_str();
  auto* rigidity = verify->add_subcommand("corollary-good-inv", "compatible inversions are single cycles low down");
  depth_opt(rigidity, true);
  search_opts(rigidity);
  out_opt(rigidity);

  auto* gad = app.add_subcommand("gadget", "the gadget complex built from T_4");
  gad->require_subcommand(1);
  auto radius_opt = [&cfg](CLI::App* a) {
    a->add_option("--radius,-R", cfg.radius, "truncation radius")->required()->check(CLI::NonNegativeNumber);
  };
  auto* gbuild = gad->add_subcommand("build", "build the complex; JSON via --out, DOT via --dot");
  std::string dot;
  radius_opt(gbuild);
  out_opt(gbuild);
  gbuild->add_option("--dot", dot, "Graphviz output file");
  auto* glocal = gad->add_subcommand("verify-local", "blue-swap, green-swap and red-swap lemmas");
  radius_opt(glocal);
  out_opt(glocal);
  auto* gtrans = gad->add_subcommand("verify-transitive", "colour automorphisms between all interior gadgets");
  radius_opt(gtrans);
  out_opt(gtrans);
  auto* gtors = gad->add_subcommand("torsion-search", "no involutions fixing a gadget or swapping a green pair");
  radius_opt(gtors);
  out_opt(gtors);
  gtors->add_option("--threads", cfg.threads, "worker threads")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kVerified;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kVerified;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  for (const CLI::App* a = &app; !a->get_subcommands().empty();) {
    a = a->get_subcommands().front();
    cfg.command += (cfg.command.empty() ? "" : " ") + a->get_name();
  }
  try {
    cfg.validate();
    if (build->parsed()) {
      if (!good && truncated == 0) throw Error(Errc::BadParams, "give --good or --truncated N");
      return build_inversion(cfg, truncated, csv, out);
    }
    if (no_inv->parsed()) return verify_no_involutions(cfg, scope, out);
    if (min_order->parsed()) return verify_min_order(cfg, out);
    if (half_tree->parsed()) return verify_half_tree(cfg, samples, out);
    if (rigidity->parsed()) return verify_rigidity(cfg, out);
    if (gbuild->parsed()) return gadget_build(cfg, dot, out);
    if (glocal->parsed()) return gadget_verify_local(cfg, out);
    if (gtrans->parsed()) return gadget_verify_transitive(cfg, out);
    if (gtors->parsed()) return gadget_torsion(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << "error: no command\n";
  return kUsage;
}

}  // namespace treeinv::cli
