#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pblocks/blocks1.hpp"
#include "pblocks/blocks2.hpp"
#include "pblocks/cayley.hpp"
#include "pblocks/planar.hpp"
#include "pblocks/symmetry.hpp"

namespace pblocks {

// Edge-list text: one "u v" pair per line, '#' comments, and an optional
// "vertices: n" line declaring ids 0..n-1 (for isolated vertices).
// ParseError names the offending line; loops raise MalformedInput.
Graph parse_edge_list(std::string_view text);
std::string format_edge_list(const Graph &g);

using Json = nlohmann::json;

Json to_json(const Graph &g);
Json to_json(const Separation &s);
Json to_json(const Reduction &r);
Json to_json(const NestedFamily &f, const StructureTree &t);
Json to_json(const BlockCutTree &b);
Json to_json(const TriBlockTree &t);
Json to_json(const PlanarityResult &r);
Json to_json(const AutGroup &h);
Json to_json(const QuotientGraph &q);
Json to_json(const Presentation &pr);

std::string to_dot(const Graph &g, std::string_view name = "G");
std::string to_dot(const BlockCutTree &b);
std::string to_dot(const TriBlockTree &t);

} // namespace pblocks
