#pragma once

#include <string>

#include <json.hpp>

#include "pvrh/asymptotics.hpp"
#include "pvrh/char_variety.hpp"
#include "pvrh/mono_core.hpp"

namespace pvrh {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0.0";
const char* schema_version();

// Complex scalars are [re, im]; plain numbers are accepted on input.
Json to_json(cplx z);
cplx cplx_from_json(const Json& j, const std::string& where = "");

Json to_json(const Mat2C& m);
Mat2C mat_from_json(const Json& j, const std::string& where = "");

Json to_json(const ThetaTriple& th);
ThetaTriple theta_from_json(const Json& j);

// {"theta":[...],"m0":[[..],[..]],"m1":[[..],[..]]}
Json to_json(const MonodromyPair& p);
MonodromyPair pair_from_json(const Json& j);

Json to_json(const AsymptoticDescriptor& d);
AsymptoticDescriptor descriptor_from_json(const Json& j);

Json to_json(const CharVarPoint& p);

// Deterministic text: insertion-ordered keys, numbers at 17 significant
// digits, two-space indent.
std::string dump_json(const Json& j, int indent = 2);

// Inline JSON text, "-" for stdin, or a file path.
Json load_json_arg(const std::string& arg);

}  // namespace pvrh
