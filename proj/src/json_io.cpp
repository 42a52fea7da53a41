#include "pvrh/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace pvrh {

namespace {

[[noreturn]] void malformed(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::MalformedInput,
              where.empty() ? what : where + ": " + what);
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) malformed(where, "expected a number");
  return j.get<double>();
}

std::string fmt_number(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_rec(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad(indent * (depth + 1), ' ');
  const std::string pad_close(indent * depth, ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + Json(it.key()).dump() + (indent > 0 ? ": " : ":");
        dump_rec(it.value(), indent, depth + 1, out);
      }
      out += nl + pad_close + "}";
      return;
    }
    case Json::value_t::array: {
      // short numeric arrays (complex scalars, matrix rows) stay on one line
      bool flat = j.size() <= 4;
      for (const auto& e : j)
        if (!e.is_number() && !(e.is_array() && e.size() == 2 && e[0].is_number()))
          flat = false;
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      if (flat) {
        for (size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_rec(j[i], 0, 0, out);
        }
        out += "]";
        return;
      }
      out += nl;
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) {
          out += ",";
          out += nl;
        }
        out += pad;
        dump_rec(j[i], indent, depth + 1, out);
      }
      out += nl + pad_close + "]";
      return;
    }
    case Json::value_t::number_float:
      out += fmt_number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

const char* schema_version() { return kSchemaVersion; }

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2)
    return {number(j[0], where), number(j[1], where)};
  malformed(where, "expected a number or [re, im]");
}

Json to_json(const Mat2C& m) {
  return Json::array({Json::array({to_json(m.m11), to_json(m.m12)}),
                      Json::array({to_json(m.m21), to_json(m.m22)})});
}

Mat2C mat_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
      !j[1].is_array() || j[1].size() != 2)
    malformed(where, "expected a 2x2 matrix [[a, b], [c, d]]");
  return {cplx_from_json(j[0][0], where), cplx_from_json(j[0][1], where),
          cplx_from_json(j[1][0], where), cplx_from_json(j[1][1], where)};
}

Json to_json(const ThetaTriple& th) {
  return Json::array({to_json(th.theta0), to_json(th.theta1), to_json(th.thetaInf)});
}

ThetaTriple theta_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) malformed("theta", "expected three entries");
  return {cplx_from_json(j[0], "theta"), cplx_from_json(j[1], "theta"),
          cplx_from_json(j[2], "theta")};
}

Json to_json(const MonodromyPair& p) {
  Json j;
  j["theta"] = to_json(p.theta);
  j["m0"] = to_json(p.m0);
  j["m1"] = to_json(p.m1);
  return j;
}

MonodromyPair pair_from_json(const Json& j) {
  if (!j.is_object()) malformed("pair", "expected an object");
  for (const char* k : {"theta", "m0", "m1"})
    if (!j.contains(k)) malformed("pair", std::string("missing key ") + k);
  MonodromyPair p;
  p.theta = theta_from_json(j["theta"]);
  p.m0 = mat_from_json(j["m0"], "m0");
  p.m1 = mat_from_json(j["m1"], "m1");
  if (j.contains("tol")) p.tol = number(j["tol"], "tol");
  return p;
}

Json to_json(const AsymptoticDescriptor& d) {
  Json j;
  j["variant"] = variant_name(d.variant);
  j["theta"] = to_json(d.theta);
  Json params = Json::object();
  for (const auto& [k, v] : d.params) params[k] = to_json(v);
  j["params"] = params;
  j["sector"] = {{"arg_min", d.sector.arg_min},
                 {"arg_max", d.sector.arg_max},
                 {"min_closed", d.sector.min_closed},
                 {"max_closed", d.sector.max_closed}};
  if (d.variant == Variant::NonGeneric) {
    j["case"] = d.ng_case;
    j["branch"] = d.ng_branch;
  }
  if (!d.family.empty()) j["family"] = d.family;
  return j;
}

AsymptoticDescriptor descriptor_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("variant") || !j["variant"].is_string())
    malformed("descriptor", "expected an object with a variant");
  AsymptoticDescriptor d;
  d.variant = parse_variant(j["variant"].get<std::string>());
  if (!j.contains("theta")) malformed("descriptor", "missing theta");
  d.theta = theta_from_json(j["theta"]);
  if (j.contains("params")) {
    if (!j["params"].is_object()) malformed("params", "expected an object");
    for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
      d.params[it.key()] = cplx_from_json(it.value(), "params." + it.key());
  }
  if (j.contains("sector")) {
    const Json& s = j["sector"];
    d.sector.arg_min = number(s.at("arg_min"), "sector");
    d.sector.arg_max = number(s.at("arg_max"), "sector");
    d.sector.min_closed = s.value("min_closed", false);
    d.sector.max_closed = s.value("max_closed", false);
  }
  d.ng_case = j.value("case", 0);
  d.ng_branch = j.value("branch", 0);
  d.family = j.value("family", std::string());
  return d;
}

Json to_json(const CharVarPoint& p) {
  Json j;
  j["point"] = Json::array({to_json(p.x0), to_json(p.x1), to_json(p.x2)});
  j["ambient"] = Json::array({to_json(p.ambient.trM0), to_json(p.ambient.trM1),
                              to_json(p.ambient.expNegPiIThetaInf)});
  return j;
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, out);
  return out;
}

Json load_json_arg(const std::string& arg) {
  std::string text;
  if (arg == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) malformed(arg, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    malformed(arg == "-" ? "stdin" : arg, e.what());
  }
}

}  // namespace pvrh
