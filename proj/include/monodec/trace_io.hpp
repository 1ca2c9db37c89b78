#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "monodec/model.hpp"

namespace monodec {

// Trace file format (UTF-8 JSON):
//
//   { "entities": { "<id>": "<name>", ... },            // optional
//     "functionalities": {
//       "<name>": { "traces": [
//         { "id": <int>, "accesses": <ITEMS> } ] } } }
//
//   ITEMS := [ ITEM* ]
//   ITEM  := [ <entityId:int>, "R"|"W" ]                // single access
//          | [ <count:int>=1, ITEMS ]                   // repeat block
//
// A legacy flat form { "<name>": { "traces": [...] } } is accepted; it is
// detected by the absence of the "functionalities" key.
Monolith parse_trace_file(std::string_view text);

// Flat, ordered expansion of a compressed ITEMS list. Nested repeat blocks
// expand depth-first. Nesting deeper than 32 or expansions beyond 16M
// accesses raise LimitError.
std::vector<Access> expand_compressed_accesses(const nlohmann::json& items);

// Canonical serialization: uncompressed accesses, sorted object keys,
// unnamed entities omitted from the entities map. parse(serialize(m)) == m.
std::string serialize_monolith(const Monolith& m);

// Decomposition file: { "clusters": { "<name>": [entityId, ...] } }.
Decomposition parse_decomposition(std::string_view text);
std::string serialize_decomposition(const Decomposition& d);

} // namespace monodec
