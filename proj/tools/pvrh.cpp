// pvrh command-line driver: JSON in, JSON out.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pvrh/asymptotics.hpp"
#include "pvrh/boutroux.hpp"
#include "pvrh/char_variety.hpp"
#include "pvrh/json_io.hpp"
#include "pvrh/mono_core.hpp"
#include "pvrh/oracle.hpp"
#include "pvrh/rh_dispatch.hpp"
#include "pvrh/sampling.hpp"

using namespace pvrh;

namespace {

struct Globals {
  std::string pair_arg;
  bool random = false;
  std::uint64_t seed = 20240229;
  std::optional<double> tol;
  std::string plot;
};

Globals g;

struct Outcome {
  Json body = Json::object();
  int status = 0;
};

[[noreturn]] void bad(const std::string& msg) {
  throw Error(ErrorCode::MalformedInput, msg);
}

double default_tol() {
  if (g.tol) return *g.tol;
  if (const char* env = std::getenv("PVRH_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || !(v > 0)) bad("PVRH_TOL must be a positive number");
    return v;
  }
  return 1e-10;
}

std::vector<double> split_numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str()) bad("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

cplx parse_point(const std::string& s) {
  auto v = split_numbers(s);
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() != 2) bad("expected re,im");
  return {v[0], v[1]};
}

ThetaTriple parse_theta(const std::string& s) {
  if (!s.empty() && s[0] == '[') return theta_from_json(Json::parse(s));
  auto v = split_numbers(s);
  if (v.size() != 3) bad("theta needs three comma-separated values");
  return {v[0], v[1], v[2]};
}

MonodromyPair input_pair() {
  MonodromyPair p;
  if (!g.pair_arg.empty()) {
    p = pair_from_json(load_json_arg(g.pair_arg));
  } else if (g.random) {
    std::mt19937_64 rng(g.seed);
    p = random_pair(rng);
  } else {
    bad("a pair is required (--pair or --random)");
  }
  p.tol = default_tol();
  return p;
}

Json residuals_json(const ValidationReport& rep) {
  Json r = Json::object();
  for (const auto& res : rep.residuals) r[res.name] = res.value;
  return r;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path);
  out << header << "\n";
  char buf[40];
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i] == 0.0 ? 0.0 : row[i]);
      out << (i ? "," : "") << buf;
    }
    out << "\n";
  }
}

Json boutroux_json(const BoutrouxSolution& s) {
  Json j;
  j["phi"] = s.phi;
  j["A"] = to_json(s.A);
  j["omegaA"] = to_json(s.omegaA);
  j["omegaB"] = to_json(s.omegaB);
  j["residuals"] = {{"a", s.residual_a},
                    {"b", s.residual_b},
                    {"quadrature", s.quadrature_error}};
  return j;
}

Json element_json(const FamilyElement& e) {
  Json j;
  j["family"] = e.family == Family::Plain ? "plain" : "hat";
  j["index"] = e.index;
  j["pair"] = to_json(e.pair);
  return j;
}

// ---------------------------------------------------------------------------

struct ClassifyOpts {
  double zero_tol = 0.0;
};

Outcome cmd_classify(const ClassifyOpts& o) {
  MonodromyPair p = input_pair();
  Outcome out;
  ValidationReport rep = validate_pair(p);
  out.body["valid"] = rep.valid;
  out.body["non_unique_fiber"] = rep.non_unique_fiber;
  out.body["residuals"] = residuals_json(rep);
  if (!rep.valid) {
    out.status = 2;
    return out;
  }
  Region r = classify_region(p, o.zero_tol);
  out.body["region"] = region_name(r.tag);
  Json coords = Json::object();
  for (const auto& [k, v] : r.coords) coords[k] = to_json(v);
  out.body["coords"] = coords;
  out.body["normalized"] = to_json(gauge_normalize(p, o.zero_tol).pair);
  return out;
}

Outcome cmd_fricke() {
  MonodromyPair p = input_pair();
  CharVarPoint c = char_coords(p);
  Outcome out;
  Json cj = to_json(c);
  out.body["point"] = cj["point"];
  out.body["residual"] = to_json(fricke_residual(c));
  out.body["relative_residual"] = fricke_relative_residual(c);
  out.body["ambient"] = cj["ambient"];
  return out;
}

struct BoutrouxOpts {
  double phi = 0.0;
  int grid = 0;
};

Outcome cmd_boutroux(const BoutrouxOpts& o) {
  Outcome out;
  std::vector<std::vector<double>> rows;
  if (o.grid > 0) {
    Json samples = Json::array();
    for (int i = 0; i < o.grid; ++i) {
      double phi = o.grid == 1 ? 0.0 : -kPi / 2 + kPi * i / (o.grid - 1);
      BoutrouxSolution s = solve_boutroux(phi);
      samples.push_back(boutroux_json(s));
      rows.push_back({phi, s.A.real(), s.A.imag()});
    }
    out.body["samples"] = samples;
  } else {
    BoutrouxSolution s = solve_boutroux(o.phi);
    Json j = boutroux_json(s);
    for (auto& [k, v] : j.items()) out.body[k] = v;
    rows.push_back({o.phi, s.A.real(), s.A.imag()});
  }
  if (!g.plot.empty()) write_csv(g.plot, "phi,reA,imA", rows);
  return out;
}

struct PhaseOpts {
  double phi = 0.0;
};

Outcome cmd_phase_shift(const PhaseOpts& o) {
  MonodromyPair p = input_pair();
  if (!validate_pair(p).valid) {
    Outcome bad_out;
    bad_out.body["valid"] = false;
    bad_out.status = 2;
    return bad_out;
  }
  AsymptoticDescriptor d = elliptic_on_sheet(p, o.phi);
  BoutrouxSolution s = solve_boutroux(o.phi);
  Outcome out;
  out.body["phi"] = o.phi;
  out.body["x0"] = to_json(d.param("x0"));
  out.body["A"] = to_json(s.A);
  out.body["omegaA"] = to_json(s.omegaA);
  out.body["omegaB"] = to_json(s.omegaB);
  out.body["descriptor"] = to_json(d);
  return out;
}

struct EvalOpts {
  std::string kind;
  std::string descriptor;
  std::string at = "60";
  double phi = 0.0;
  bool phi_set = false;
  int order = 8;
  std::string trig_form = "auto";
  double delta0 = 0.1;
  std::string ray;  // r0,r1 for the plot
  int samples = 200;
};

AsymptoticDescriptor input_descriptor(const std::string& arg, double phi,
                                      bool phi_set) {
  if (!arg.empty()) return descriptor_from_json(load_json_arg(arg));
  MonodromyPair p = input_pair();
  if (!phi_set) bad("--phi is required when the descriptor comes from a pair");
  if (std::abs(phi) < kPi / 2) return solve_rh(p, phi);
  return elliptic_on_sheet(p, phi);
}

bool is_trunc_kind(Variant v) {
  return v != Variant::Elliptic && v != Variant::Trig;
}

PointValue evaluate(const AsymptoticDescriptor& d, cplx x, const EvalOpts& o) {
  return eval_descriptor(d, x, {o.order, parse_trig_form(o.trig_form), o.delta0});
}

Outcome cmd_eval(const EvalOpts& o) {
  AsymptoticDescriptor d = input_descriptor(o.descriptor, o.phi, o.phi_set);
  if (!o.kind.empty()) {
    bool ok = (o.kind == "elliptic" && d.variant == Variant::Elliptic) ||
              (o.kind == "trig" && d.variant == Variant::Trig) ||
              (o.kind == "trunc" && is_trunc_kind(d.variant));
    if (o.kind != "elliptic" && o.kind != "trig" && o.kind != "trunc")
      bad("--kind must be elliptic, trig or trunc");
    if (!ok)
      throw Error(ErrorCode::WrongFamily,
                  std::string("descriptor variant ") + variant_name(d.variant) +
                      " does not match --kind " + o.kind);
  }
  const cplx x = parse_point(o.at);
  PointValue v = evaluate(d, x, o);
  Outcome out;
  out.body["variant"] = variant_name(d.variant);
  out.body["x"] = to_json(x);
  out.body["y"] = to_json(v.y);
  out.body["yprime"] = to_json(v.yprime);
  out.body["zfrak"] = to_json(v.zfrak);
  if (!g.plot.empty()) {
    auto r = o.ray.empty() ? std::vector<double>{std::abs(x) / 2, std::abs(x)}
                           : split_numbers(o.ray);
    if (r.size() != 2 || o.samples < 2) bad("--ray needs r0,r1 and --samples >= 2");
    const cplx dir = std::exp(kI * std::arg(x));
    std::vector<std::vector<double>> rows;
    int skipped = 0;
    for (int i = 0; i < o.samples; ++i) {
      cplx xi = dir * (r[0] + (r[1] - r[0]) * i / (o.samples - 1));
      try {
        cplx y = evaluate(d, xi, o).y;
        rows.push_back({xi.real(), xi.imag(), y.real(), y.imag()});
      } catch (const Error&) {
        ++skipped;
      }
    }
    write_csv(g.plot, "x_re,x_im,y_re,y_im", rows);
    out.body["plot_skipped"] = skipped;
  }
  return out;
}

struct SolveOpts {
  double phi = 0.0;
  double zero_tol = 0.0;
};

Outcome cmd_solve(const SolveOpts& o) {
  MonodromyPair p = input_pair();
  ValidationReport rep = validate_pair(p);
  Outcome out;
  if (!rep.valid) {
    out.body["valid"] = false;
    out.body["residuals"] = residuals_json(rep);
    out.status = 2;
    return out;
  }
  out.body["region"] = region_name(classify_region(p, o.zero_tol).tag);
  out.body["descriptor"] = to_json(solve_rh(p, o.phi, o.zero_tol));
  return out;
}

struct ContinueOpts {
  double from = 0.0;
  double to = 0.0;
};

Outcome cmd_continue(const ContinueOpts& o) {
  MonodromyPair p = input_pair();
  ContinuationPlan plan = continuation_plan(p, o.from, o.to);
  Outcome out;
  out.body["from"] = plan.from_arg;
  out.body["to"] = plan.to_arg;
  Json steps = Json::array();
  for (const auto& s : plan.steps) {
    Json e = element_json(s.after);
    Json step;
    step["op"] = op_name(s.op);
    for (auto& [k, v] : e.items()) step[k] = v;
    steps.push_back(step);
  }
  out.body["steps"] = steps;
  out.body["result"] = element_json(plan.result);
  out.body["reciprocal"] = plan.reciprocal;
  out.body["inf_negated"] = plan.inf_negated;
  if (plan.elliptic)
    out.body["descriptor"] = to_json(*plan.elliptic);
  else
    out.body["descriptor"] = nullptr;
  if (!plan.elliptic_note.empty()) out.body["note"] = plan.elliptic_note;
  return out;
}

struct OrbitOpts {
  std::string ops = "m";
  int steps = 0;
  double zero_tol = 0.0;
};

Outcome cmd_orbit(const OrbitOpts& o) {
  MonodromyPair p = input_pair();
  std::vector<OpTag> ops;
  std::stringstream ss(o.ops);
  std::string name;
  while (std::getline(ss, name, ',')) ops.push_back(parse_op(name));
  if (ops.empty()) bad("--ops is empty");
  const int n = o.steps > 0 ? o.steps : static_cast<int>(ops.size());
  FamilyElement cur = family_member(p, Family::Plain, 0);
  Json seq = Json::array();
  for (int i = 0; i < n; ++i) {
    OpTag op = ops[i % ops.size()];
    cur = apply_operator(op, cur, p);
    Json e;
    e["step"] = i + 1;
    e["op"] = op_name(op);
    e["family"] = cur.family == Family::Plain ? "plain" : "hat";
    e["index"] = cur.index;
    e["pair"] = to_json(gauge_normalize(cur.pair, o.zero_tol).pair);
    seq.push_back(e);
  }
  Outcome out;
  out.body["orbit"] = seq;
  return out;
}

struct VerifyOpts {
  std::string seed;
  std::string at = "60";
  double phi = 0.0;
  bool phi_set = false;
  int order = 8;
  std::string xs;
  double delta0 = 0.1;
  std::string expected;
};

Outcome cmd_verify(const VerifyOpts& o) {
  AsymptoticDescriptor d = input_descriptor(o.seed, o.phi, o.phi_set);
  const cplx at = parse_point(o.at);
  EvalOpts eo;
  eo.order = o.order;
  eo.delta0 = o.delta0;
  PointValue v = evaluate(d, at, eo);
  PvSeed seed = seed_from_y(at, v.y, v.yprime, d.theta);

  std::vector<cplx> xs;
  if (o.xs.empty()) {
    xs = {at, at * (11.0 / 12.0), at * (10.0 / 12.0)};
  } else {
    const cplx dir = std::exp(kI * std::arg(at));
    for (double r : split_numbers(o.xs)) xs.push_back(dir * r);
  }
  DriftReport dr = isomonodromy_drift(d.theta, seed, xs);
  const DirectMonodromyResult& first = dr.results.front();

  Outcome out;
  out.body["variant"] = variant_name(d.variant);
  out.body["at"] = to_json(at);
  out.body["pair"] = to_json(first.pair);
  out.body["normalized"] = to_json(dr.normalized.front());
  MonodromyPair checked = first.pair;
  checked.tol = 1e-3;
  ValidationReport rep = validate_pair(checked);
  Json res;
  res["trace0"] = first.trace_residual0;
  res["trace1"] = first.trace_residual1;
  res["det"] = first.det_residual;
  res["frame_defect"] = first.frame_defect;
  res["validation"] = rep.max_residual();
  std::optional<MonodromyPair> expected;
  if (!o.expected.empty()) expected = pair_from_json(load_json_arg(o.expected));
  else if (!g.pair_arg.empty() || g.random) expected = input_pair();
  if (expected) {
    MonodromyPair en = gauge_normalize(*expected, 1e-9).pair;
    res["distance_to_expected"] = pair_distance(en, dr.normalized.front());
  }
  out.body["residuals"] = res;
  out.body["drift"] = dr.drift;
  Json xj = Json::array();
  for (cplx x : dr.xs) xj.push_back(to_json(x));
  out.body["xs"] = xj;
  if (!rep.valid) out.status = 2;

  if (!g.plot.empty()) {
    cplx far = xs.front();
    for (cplx x : xs)
      if (std::abs(x - at) > std::abs(far - at)) far = x;
    IntegrateOptions io;
    io.samples = 201;
    ODETrajectory tr = integrate_pv(d.theta, seed, far, io);
    std::vector<std::vector<double>> rows;
    for (const auto& s : tr.samples)
      rows.push_back({s.x.real(), s.x.imag(), s.y.real(), s.y.imag(),
                      s.zfrak.real(), s.zfrak.imag()});
    write_csv(g.plot, "x_re,x_im,y_re,y_im,z_re,z_im", rows);
  }
  return out;
}

struct ConditionsOpts {
  std::string theta;
};

Outcome cmd_conditions(const ConditionsOpts& o) {
  ThetaTriple th;
  if (!o.theta.empty())
    th = parse_theta(o.theta);
  else
    th = input_pair().theta;
  ThetaConditionReport r = theta_conditions(th);
  Outcome out;
  out.body["theta"] = to_json(th);
  out.body["conditions"] = {{"theta1", r.theta1},
                            {"theta2", r.theta2},
                            {"theta3", r.theta3},
                            {"theta4", r.theta4}};
  out.body["all_hold"] = r.all_hold();
  out.body["integers"] = {{"theta0_integer", r.theta0_integer},
                          {"theta1_integer", r.theta1_integer},
                          {"theta0_in_N", r.theta0_in_N},
                          {"theta1_in_N", r.theta1_in_N},
                          {"theta0_in_negN0", r.theta0_in_negN0},
                          {"theta1_in_negN0", r.theta1_in_negN0},
                          {"diagonal_resonance", r.diagonal_resonance}};
  if (!r.theta0_integer && !r.theta1_integer) {
    RegionEmptiness e = region_emptiness(th);
    Json notes = Json::array();
    for (const auto& n : e.notes) notes.push_back(n);
    out.body["emptiness"] = {{"R3plus", e.r3plus_empty},
                             {"R3minus", e.r3minus_empty},
                             {"R4minus", e.r4minus_empty},
                             {"R4plus", e.r4plus_empty},
                             {"R5_present", e.r5_present},
                             {"notes", notes}};
  }
  return out;
}

int emit_error(const std::string& code, const std::string& message,
               const std::string& location, int status) {
  Json j;
  j["schema"] = schema_version();
  j["error"] = {{"code", code}, {"message", message}, {"location", location}};
  std::cout << dump_json(j) << std::endl;
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemann-Hilbert toolkit for Painleve V"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--pair", g.pair_arg, "pair JSON: inline, file path or - for stdin");
  app.add_flag("--random", g.random, "use a random valid pair instead of --pair");
  app.add_option("--seed-rng", g.seed, "seed for --random");
  app.add_option("--tol", g.tol, "validation tolerance (overrides PVRH_TOL)");
  app.add_option("--emit-plot", g.plot, "write CSV plot data to this path");

  std::function<Outcome()> run;
  std::string name;
  auto sub = [&](const char* n, const char* desc) {
    CLI::App* s = app.add_subcommand(n, desc);
    return s;
  };

  ClassifyOpts co;
  auto* s_classify = sub("classify", "validate and classify a pair");
  s_classify->add_option("--zero-tol", co.zero_tol, "entries below this count as zero");
  s_classify->callback([&] { name = "classify"; run = [&] { return cmd_classify(co); }; });

  auto* s_fricke = sub("fricke", "character-variety coordinates and Fricke residual");
  s_fricke->callback([&] { name = "fricke"; run = [&] { return cmd_fricke(); }; });

  BoutrouxOpts bo;
  auto* s_bout = sub("boutroux", "solve the Boutroux equations");
  s_bout->add_option("--phi", bo.phi, "direction arg x in radians");
  s_bout->add_option("--grid", bo.grid, "sample n directions in [-pi/2, pi/2]");
  s_bout->callback([&] { name = "boutroux"; run = [&] { return cmd_boutroux(bo); }; });

  PhaseOpts po;
  auto* s_phase = sub("phase-shift", "elliptic phase shift in a direction");
  s_phase->add_option("--phi", po.phi, "direction on the universal cover")->required();
  s_phase->callback([&] { name = "phase-shift"; run = [&] { return cmd_phase_shift(po); }; });

  EvalOpts eo;
  auto* s_eval = sub("eval", "evaluate an asymptotic representation");
  s_eval->add_option("--kind", eo.kind, "elliptic, trig or trunc");
  s_eval->add_option("--descriptor", eo.descriptor, "descriptor JSON (default: solve the pair)");
  s_eval->add_option("--at", eo.at, "point re,im");
  auto* eval_phi = s_eval->add_option("--phi", eo.phi, "direction used when solving the pair");
  s_eval->add_option("--order", eo.order, "formal series order");
  s_eval->add_option("--trig-form", eo.trig_form, "auto, case1, case1_plus, case1_minus, case2, case2_low, case2_high");
  s_eval->add_option("--delta0", eo.delta0, "radius of the excluded pole disks");
  s_eval->add_option("--ray", eo.ray, "r0,r1 radii of the plotted ray");
  s_eval->add_option("--samples", eo.samples, "points on the plotted ray");
  s_eval->callback([&] {
    name = "eval";
    eo.phi_set = eval_phi->count() > 0;
    run = [&] { return cmd_eval(eo); };
  });

  SolveOpts so;
  auto* s_solve = sub("solve", "asymptotic descriptor for a pair");
  s_solve->add_option("--phi", so.phi, "direction, |phi| < pi/2");
  s_solve->add_option("--zero-tol", so.zero_tol, "entries below this count as zero");
  s_solve->callback([&] { name = "solve"; run = [&] { return cmd_solve(so); }; });

  ContinueOpts cto;
  auto* s_cont = sub("continue", "continuation across sheets by multiples of pi");
  s_cont->add_option("--from", cto.from, "start arg x");
  s_cont->add_option("--to", cto.to, "end arg x")->required();
  s_cont->callback([&] { name = "continue"; run = [&] { return cmd_continue(cto); }; });

  OrbitOpts oo;
  auto* s_orbit = sub("orbit", "apply a cyclic sequence of operators");
  s_orbit->add_option("--ops", oo.ops, "comma separated from m, minv, s0, s1, shat0, shat1");
  s_orbit->add_option("--steps", oo.steps, "number of operator applications");
  s_orbit->add_option("--zero-tol", oo.zero_tol, "zero tolerance for normalization");
  s_orbit->callback([&] { name = "orbit"; run = [&] { return cmd_orbit(oo); }; });

  VerifyOpts vo;
  auto* s_verify = sub("verify", "direct monodromy of a seeded solution");
  s_verify->add_option("--seed", vo.seed, "descriptor JSON");
  s_verify->add_option("--at", vo.at, "seed radius");
  auto* verify_phi = s_verify->add_option("--phi", vo.phi, "seed direction");
  s_verify->add_option("--order", vo.order, "formal series order of the seed");
  s_verify->add_option("--xs", vo.xs, "radii for the drift measurement");
  s_verify->add_option("--delta0", vo.delta0, "radius of the excluded pole disks");
  s_verify->add_option("--expected", vo.expected, "pair JSON to compare against");
  s_verify->callback([&] {
    name = "verify";
    vo.phi_set = verify_phi->count() > 0;
    run = [&] { return cmd_verify(vo); };
  });

  ConditionsOpts cdo;
  auto* s_cond = sub("conditions", "theta conditions and region emptiness");
  s_cond->add_option("--theta", cdo.theta, "t0,t1,tInf");
  s_cond->callback([&] { name = "conditions"; run = [&] { return cmd_conditions(cdo); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return emit_error("MalformedInput", e.what(), "argv", 1);
  }

  try {
    Outcome r = run();
    Json out;
    out["schema"] = schema_version();
    out["command"] = name;
    for (auto& [k, v] : r.body.items()) out[k] = v;
    std::cout << dump_json(out) << std::endl;
    return r.status;
  } catch (const Error& e) {
    int status = e.code() == ErrorCode::MalformedInput ? 1
                 : is_numeric_failure(e.code())       ? 3
                                                      : 2;
    return emit_error(error_name(e.code()), e.what(), name, status);
  } catch (const Json::exception& e) {
    return emit_error("MalformedInput", e.what(), name, 1);
  } catch (const std::exception& e) {
    return emit_error("MalformedInput", e.what(), name, 1);
  }
}
