#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pvrh/json_io.hpp"
#include "pvrh/oracle.hpp"
#include "pvrh/rh_dispatch.hpp"
#include "pvrh/sampling.hpp"

namespace py = pybind11;
using namespace pvrh;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

Mat2C to_mat(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != 2 || a.shape(1) != 2)
    throw Error(ErrorCode::MalformedInput, "expected a 2x2 array");
  auto r = a.unchecked<2>();
  return {r(0, 0), r(0, 1), r(1, 0), r(1, 1)};
}

CArray from_mat(const Mat2C& m) {
  CArray a({2, 2});
  auto w = a.mutable_unchecked<2>();
  w(0, 0) = m.m11;
  w(0, 1) = m.m12;
  w(1, 0) = m.m21;
  w(1, 1) = m.m22;
  return a;
}

ThetaTriple to_theta(const std::vector<cplx>& t) {
  if (t.size() != 3) throw Error(ErrorCode::MalformedInput, "theta needs three entries");
  return {t[0], t[1], t[2]};
}

std::vector<cplx> from_theta(const ThetaTriple& t) { return {t.theta0, t.theta1, t.thetaInf}; }

py::object json_to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Json py_to_json(const py::object& o) {
  std::string text = py::module_::import("json").attr("dumps")(o).cast<std::string>();
  return Json::parse(text);
}

AsymptoticDescriptor to_descriptor(const py::object& o) {
  return descriptor_from_json(py_to_json(o));
}

py::dict element_dict(const FamilyElement& e) {
  py::dict d;
  d["family"] = e.family == Family::Plain ? "plain" : "hat";
  d["index"] = e.index;
  d["pair"] = e.pair;
  return d;
}

}  // namespace

PYBIND11_MODULE(_pvrh, m) {
  m.doc() = "Monodromy data, asymptotics and direct monodromy checks for Painleve V";

  static py::exception<Error> exc(m, "PvrhError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      exc((std::string(error_name(e.code())) + ": " + e.what()).c_str());
    }
  });

  py::class_<MonodromyPair>(m, "Pair")
      .def(py::init([](const std::vector<cplx>& theta, const CArray& m0, const CArray& m1,
                       double tol) {
             MonodromyPair p;
             p.theta = to_theta(theta);
             p.m0 = to_mat(m0);
             p.m1 = to_mat(m1);
             p.tol = tol;
             return p;
           }),
           py::arg("theta"), py::arg("m0"), py::arg("m1"), py::arg("tol") = 1e-10)
      .def_property(
          "theta", [](const MonodromyPair& p) { return from_theta(p.theta); },
          [](MonodromyPair& p, const std::vector<cplx>& t) { p.theta = to_theta(t); })
      .def_property(
          "m0", [](const MonodromyPair& p) { return from_mat(p.m0); },
          [](MonodromyPair& p, const CArray& a) { p.m0 = to_mat(a); })
      .def_property(
          "m1", [](const MonodromyPair& p) { return from_mat(p.m1); },
          [](MonodromyPair& p, const CArray& a) { p.m1 = to_mat(a); })
      .def_readwrite("tol", &MonodromyPair::tol)
      .def("to_json", [](const MonodromyPair& p) { return dump_json(to_json(p)); })
      .def_static("from_json",
                  [](const std::string& text) { return pair_from_json(load_json_arg(text)); })
      .def("__repr__", [](const MonodromyPair& p) { return dump_json(to_json(p), 0); });

  m.def("random_pair", [](unsigned long long seed) {
    std::mt19937_64 rng(seed);
    return random_pair(rng);
  }, py::arg("seed") = 20240229ULL, "random valid pair with generic Stokes data");

  m.def("validate", [](const MonodromyPair& p) {
    ValidationReport rep = validate_pair(p);
    py::dict d, res;
    for (const auto& r : rep.residuals) res[r.name.c_str()] = r.value;
    d["valid"] = rep.valid;
    d["non_unique_fiber"] = rep.non_unique_fiber;
    d["residuals"] = res;
    return d;
  });

  m.def("classify", [](const MonodromyPair& p, double zero_tol) {
    Region r = classify_region(p, zero_tol);
    py::dict d;
    d["region"] = region_name(r.tag);
    d["coords"] = r.coords;
    return d;
  }, py::arg("pair"), py::arg("zero_tol") = 0.0);

  m.def("normalize", [](const MonodromyPair& p, double zero_tol) {
    GaugeNormalForm n = gauge_normalize(p, zero_tol);
    return py::make_tuple(n.pair, n.scale);
  }, py::arg("pair"), py::arg("zero_tol") = 0.0);

  m.def("gauge", &gauge_transform, py::arg("pair"), py::arg("c"));

  m.def("char_coords", [](const MonodromyPair& p) {
    CharVarPoint c = char_coords(p);
    return py::make_tuple(c.x0, c.x1, c.x2);
  });
  m.def("fricke_residual", [](const MonodromyPair& p) {
    return fricke_residual(char_coords(p));
  });

  m.def("monodromy_shift", &monodromy_shift, py::arg("pair"), py::arg("p"));
  m.def("stokes_hat", &stokes_hat);
  m.def("stokes_check", &stokes_check);
  m.def("stokes", [](const MonodromyPair& p) {
    StokesMatrices s = stokes_from_pair(p);
    return py::make_tuple(s.s1, s.s2);
  });

  m.def("orbit", [](const MonodromyPair& base, const std::vector<std::string>& ops) {
    FamilyElement cur = family_member(base, Family::Plain, 0);
    py::list out;
    for (const auto& op : ops) {
      cur = apply_operator(parse_op(op), cur, base);
      out.append(element_dict(cur));
    }
    return out;
  }, py::arg("pair"), py::arg("ops"));

  m.def("continuation", [](const MonodromyPair& p, double from_arg, double to_arg) {
    ContinuationPlan plan = continuation_plan(p, from_arg, to_arg);
    py::dict d;
    py::list ops;
    for (const auto& s : plan.steps) ops.append(op_name(s.op));
    d["ops"] = ops;
    d["result"] = element_dict(plan.result);
    d["reciprocal"] = plan.reciprocal;
    d["inf_negated"] = plan.inf_negated;
    d["elliptic"] = plan.elliptic ? json_to_py(to_json(*plan.elliptic)) : py::none();
    return d;
  }, py::arg("pair"), py::arg("from_arg"), py::arg("to_arg"));

  m.def("solve_boutroux", [](double phi) {
    BoutrouxSolution s = solve_boutroux(phi);
    py::dict d;
    d["phi"] = s.phi;
    d["A"] = s.A;
    d["omegaA"] = s.omegaA;
    d["omegaB"] = s.omegaB;
    d["residuals"] = py::make_tuple(s.residual_a, s.residual_b);
    return d;
  });
  m.def("jacobi_sn", &jacobi_sn, py::arg("u"), py::arg("k"));
  m.def("sn_derivative", &sn_derivative, py::arg("u"), py::arg("k"));
  m.def("gamma", &complex_gamma);

  m.def("formal_series", [](const std::string& tag, const std::vector<cplx>& theta, int order) {
    return formal_series_pv(parse_series_tag(tag), to_theta(theta), order).coeffs;
  }, py::arg("tag"), py::arg("theta"), py::arg("order"));

  m.def("theta_conditions", [](const std::vector<cplx>& theta) {
    ThetaConditionReport r = theta_conditions(to_theta(theta));
    py::dict d;
    d["theta1"] = r.theta1;
    d["theta2"] = r.theta2;
    d["theta3"] = r.theta3;
    d["theta4"] = r.theta4;
    d["all_hold"] = r.all_hold();
    return d;
  });

  m.def("solve_rh", [](const MonodromyPair& p, double phi, double zero_tol) {
    return json_to_py(to_json(solve_rh(p, phi, zero_tol)));
  }, py::arg("pair"), py::arg("phi"), py::arg("zero_tol") = 0.0);

  m.def("elliptic_on_sheet", [](const MonodromyPair& p, double psi) {
    return json_to_py(to_json(elliptic_on_sheet(p, psi)));
  }, py::arg("pair"), py::arg("psi"));

  m.def("build_trunc_family", [](const std::string& variant, cplx c0,
                                 const std::vector<cplx>& theta, cplx utilde) {
    auto [p, d] = build_trunc_family(parse_variant(variant), c0, to_theta(theta), utilde);
    return py::make_tuple(p, json_to_py(to_json(d)));
  }, py::arg("variant"), py::arg("c0"), py::arg("theta"), py::arg("utilde") = cplx(1.0));

  m.def("evaluate", [](const py::object& desc, cplx x, int order, const std::string& trig_form,
                       double delta0) {
    PointValue v = eval_descriptor(to_descriptor(desc), x,
                                   {order, parse_trig_form(trig_form), delta0});
    return py::make_tuple(v.y, v.yprime, v.zfrak);
  }, py::arg("descriptor"), py::arg("x"), py::arg("order") = 8,
        py::arg("trig_form") = "auto", py::arg("delta0") = 0.1,
        "(y, y', zfrak) of a descriptor at x");

  m.def("verify", [](const py::object& desc, cplx at, int order, std::vector<cplx> xs) {
    AsymptoticDescriptor d = to_descriptor(desc);
    PointValue v = eval_descriptor(d, at, {order, TrigForm::Auto, 0.1});
    PvSeed seed = seed_from_y(at, v.y, v.yprime, d.theta);
    if (xs.empty()) xs = {at, at * (11.0 / 12.0), at * (10.0 / 12.0)};
    DriftReport dr;
    {
      py::gil_scoped_release release;
      dr = isomonodromy_drift(d.theta, seed, xs);
    }
    const DirectMonodromyResult& r = dr.results.front();
    py::dict out;
    out["pair"] = r.pair;
    out["normalized"] = dr.normalized.front();
    out["trace_residuals"] = py::make_tuple(r.trace_residual0, r.trace_residual1);
    out["det_residual"] = r.det_residual;
    out["frame_defect"] = r.frame_defect;
    out["drift"] = dr.drift;
    return out;
  }, py::arg("descriptor"), py::arg("at") = cplx(60.0), py::arg("order") = 8,
        py::arg("xs") = std::vector<cplx>{},
        "direct monodromy of the solution seeded from the descriptor at `at`");

  m.def("pair_distance", &pair_distance);
  m.attr("schema_version") = schema_version();
}
