#pragma once

// JSON reports, portrait files, CSV cycle-type tables and DOT export.

#include <string>
#include <vector>

#include <json.hpp>

#include "treeinv/closure.hpp"
#include "treeinv/gadget.hpp"
#include "treeinv/portrait.hpp"
#include "treeinv/search.hpp"

namespace treeinv::io {

using Json = nlohmann::ordered_json;

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

/// { "depth": D, "map": { "<address>": "<address>", ... } } in canonical order.
Json to_json(const Portrait& h);

/// Validates the full portrait invariants. Throws Error(ParseError) for
/// malformed documents and Error(InvalidPortrait) for maps that are not
/// level-preserving, parent-compatible bijections of B(e,D).
Portrait portrait_from_json(const Json& j);
Portrait portrait_from_string(const std::string& text);

Json to_json(const SearchReport& r);
Json to_json(const MinOrderResult& r);
Json to_json(const LocalTestResult& r);

/// One row per level: "n: c1,c2,..." lines, or CSV with a header.
std::vector<std::vector<std::uint64_t>> cycle_type_table(const Portrait& h);
std::string cycle_type_text(const Portrait& h);
std::string cycle_type_csv(const Portrait& h);

Json to_json(const gadget::GadgetComplex& c);
std::string to_dot(const gadget::GadgetComplex& c);
Json to_json(const gadget::GadgetComplex& c, const gadget::ColorAutomorphism& f);
Json to_json(const gadget::BlueSwapReport& r);
Json to_json(const gadget::EdgeSwapReport& r);
Json to_json(const gadget::TorsionReport& r);

/// "b0@c0.p" style node names; the base gadget is "base".
std::string node_name(const gadget::GadgetComplex& c, int node);
std::string gadget_name(const gadget::GadgetComplex& c, int g);

}  // namespace treeinv::io
