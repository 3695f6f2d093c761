#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "lpplab/dlpp.hpp"
#include "lpplab/env.hpp"
#include "lpplab/landscape.hpp"
#include "lpplab/lpp.hpp"
#include "lpplab/pitman.hpp"

namespace lpplab {

using Json = nlohmann::json;

// Parses text, raising a Parse error that names the line and column.
Json parse_json(const std::string& text, const std::string& origin = "input");
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// {"grid": [...], "lines": [[...], ...], "config": {...}}. Doubles are written
// in shortest round-trip form, so reading back gives bitwise-equal values.
Json json_of(const Environment& env, const Json& config = Json::object());
Environment environment_from_json(const Json& j);
void save_environment(const Environment& env, const std::string& path,
                      const Json& config = Json::object());
Environment load_environment(const std::string& path);

// {"starts": [[time, line], ...], "ends": [[time, line], ...]}
Json json_of(const EndpointTuple& e);
EndpointTuple endpoints_from_json(const Json& j);

Json json_of(const JumpPath& p);
Json json_of(const DisjointTuple& t);

// {"columns": m, "rows": n, "entries": row-major list}
Json json_of(const LatticeArray& g);
LatticeArray array_from_json(const Json& j);

Json json_of(const GTPattern& x);

Json json_of(const Permutation& p);
Permutation permutation_from_json(const Json& j);

Json json_of(LppValue v);

// Columns y, A(y), g1(y), g2(y).
void write_profile_csv(std::ostream& out, const DifferenceProfile& profile);
// Columns y, M1(y), M2(y), H(y).
void write_two_wedge_csv(std::ostream& out, const TwoWedgeResult& result);

}  // namespace lpplab
