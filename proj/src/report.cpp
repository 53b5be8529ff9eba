#include "milnor/report.hpp"

#include <sstream>

namespace milnor {

namespace {

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json strings(const std::vector<std::string>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(s);
  return out;
}

std::string monomial_text(const Monomial& m, const RingPtr& ring) { return to_string(Polynomial(ring, m)); }

Json degree_list(const std::vector<std::pair<std::string, DegreeReport>>& degrees, const RingPtr& ring) {
  Json out = Json::array();
  for (const auto& [label, r] : degrees) {
    Json e;
    e["germ"] = label;
    e["report"] = to_json(r, ring);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json to_json(const OracleConfig& c) {
  Json j;
  j["epsilon"] = c.epsilon;
  j["eta"] = optional_json(c.eta);
  j["grid"] = c.grid;
  j["newton_tol"] = c.newton_tol;
  j["dedupe_radius"] = c.dedupe_radius;
  j["cells"] = c.cells;
  j["circle_samples"] = c.circle_samples;
  j["eta_slice"] = optional_json(c.eta_slice);
  j["slice_offset"] = optional_json(c.slice_offset);
  j["slice_level"] = optional_json(c.slice_level);
  j["seed_scales"] = c.seed_scales;
  j["max_newton_iter"] = c.max_newton_iter;
  j["max_shrinks"] = c.max_shrinks;
  return j;
}

Json to_json(const DegreeReport& r, const RingPtr& ring) {
  Json j;
  j["degree"] = r.degree;
  j["method"] = to_string(r.method);
  j["algebra_dim"] = r.algebra_dim;
  if (r.certificate) {
    const auto& c = *r.certificate;
    Json cert;
    cert["inertia"] = {{"n_plus", c.inertia.n_plus}, {"n_minus", c.inertia.n_minus}, {"n_zero", c.inertia.n_zero}};
    cert["functional_monomial"] =
        c.functional_monomial ? Json(monomial_text(*c.functional_monomial, ring)) : Json(nullptr);
    cert["functional"] = to_json(c.functional.coefficients);
    cert["hessian_class"] = to_json(c.hessian_class);
    Json form = Json::array();
    for (const auto& row : c.form) form.push_back(to_json(row));
    cert["form"] = std::move(form);
    j["certificate"] = std::move(cert);
  } else {
    j["certificate"] = nullptr;
  }
  j["evidence"] = strings(r.evidence);
  return j;
}

Json to_json(const NumericDegree& d) {
  Json j;
  j["degree"] = d.degree;
  j["method"] = to_string(DegreeMethod::numeric_oracle);
  j["epsilon"] = d.epsilon;
  j["eta"] = d.eta;
  j["stability_counts"] = d.stability_counts;
  j["boundary_min_gradient"] = d.boundary_min_gradient;
  j["fitted_exponent"] = d.fitted_exponent;
  Json pts = Json::array();
  for (const auto& p : d.points)
    pts.push_back({{"x", to_json(p.x)}, {"jacobian_sign", p.jacobian_sign}, {"residual", p.residual}});
  j["points"] = std::move(pts);
  j["log"] = strings(d.log);
  return j;
}

Json to_json(const EulerReport& r, const RingPtr& ring) {
  Json j;
  j["n"] = r.n;
  j["chi_fibre_pos"] = r.chi_fibre_pos;
  j["chi_fibre_neg"] = r.chi_fibre_neg;
  j["chi_link_le"] = optional_json(r.chi_link_le);
  j["chi_link_ge"] = optional_json(r.chi_link_ge);
  j["chi_link_eq"] = optional_json(r.chi_link_eq);
  Json trace = Json::array();
  for (const auto& t : r.formula_trace) {
    Json inputs = Json::object();
    for (const auto& [k, v] : t.inputs) inputs[k] = v;
    trace.push_back({{"formula", t.formula}, {"inputs", std::move(inputs)}});
  }
  j["formula_trace"] = std::move(trace);
  j["degrees"] = degree_list(r.degrees, ring);
  j["parity_relations_hold"] = parity_relations_hold(r);
  j["mayer_vietoris_holds"] = mayer_vietoris_holds(r);
  return j;
}

Json to_json(const IsolationEvidence& e) {
  Json j;
  j["isolated"] = e.isolated;
  Json minima = Json::array();
  for (const auto& [r, m] : e.sphere_minima) minima.push_back({{"radius", r}, {"min_gradient", m}});
  j["sphere_minima"] = std::move(minima);
  Json w = Json::array();
  for (const auto& x : e.witnesses) w.push_back(to_json(x));
  j["witnesses"] = std::move(w);
  j["note"] = e.note;
  return j;
}

Json to_json(const IdentityCheck& c) {
  return {{"identity", c.identity}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}, {"enforced", c.enforced}};
}

Json to_json(const PolarIndexReport& r) {
  Json j;
  j["n"] = r.n;
  j["direction"] = to_json(r.direction);
  j["lambda_plus"] = r.lambda_plus;
  j["lambda_minus"] = r.lambda_minus;
  j["gamma_pp"] = optional_json(r.gamma_pp);
  j["gamma_pm"] = optional_json(r.gamma_pm);
  j["gamma_mp"] = optional_json(r.gamma_mp);
  j["gamma_mm"] = optional_json(r.gamma_mm);
  j["gamma_plus"] = optional_json(r.gamma_plus);
  j["gamma_minus"] = optional_json(r.gamma_minus);
  j["chi_fibre_pos"] = r.chi_fibre_pos;
  j["chi_fibre_neg"] = r.chi_fibre_neg;
  j["chi_link"] = optional_json(r.chi_link);
  j["critical_dim"] = r.critical_dim;
  Json br = Json::array();
  for (const auto& b : r.branches) {
    Json pts = Json::array();
    for (const auto& p : b.points) pts.push_back(to_json(p));
    br.push_back({{"sign_fx1", b.sign_fx1}, {"sign_x1", b.sign_x1}, {"sigma", b.sigma}, {"points", std::move(pts)}});
  }
  j["branches"] = std::move(br);
  Json cb = Json::array();
  for (const auto& b : r.critical_branches) {
    Json pts = Json::array();
    for (const auto& p : b.points) pts.push_back(to_json(p));
    cb.push_back({{"sign_x1", b.sign_x1},
                  {"tau", b.tau},
                  {"tau_exact", optional_json(b.tau_exact)},
                  {"points", std::move(pts)}});
  }
  j["critical_branches"] = std::move(cb);
  if (r.slices) {
    j["slices"] = {{"offset", r.slices->offset},
                   {"level", r.slices->level},
                   {"eta_slice", r.slices->eta_slice},
                   {"log", strings(r.slices->log)}};
  } else {
    j["slices"] = nullptr;
  }
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = std::move(checks);
  j["genericity_log"] = strings(r.genericity_log);
  return j;
}

Json to_json(const LeIomdineReport& r) {
  Json j;
  j["polar"] = to_json(r.polar);
  j["n0"] = r.n0;
  j["scanned"] = r.scanned;
  Json cases = Json::array();
  for (const auto& c : r.cases) {
    Json e;
    e["k"] = c.k;
    e["g"] = to_string(c.g);
    e["isolation"] = to_json(c.isolation);
    e["degree"] = to_json(c.degree, c.g.ring());
    e["oracle_degree"] = optional_json(c.oracle_degree);
    e["oracle_note"] = c.oracle_note;
    e["chi_g_neg"] = c.chi_g_neg;
    e["chi_g_pos"] = c.chi_g_pos;
    Json checks = Json::array();
    for (const auto& ch : c.checks) checks.push_back(to_json(ch));
    e["checks"] = std::move(checks);
    cases.push_back(std::move(e));
  }
  j["cases"] = std::move(cases);
  j["all_pass"] = r.all_pass;
  return j;
}

Json to_json(const SzafraniecPair& p, const Weights& w) {
  Json j;
  j["weights"] = {{"d_i", w.d_i}, {"d", w.d}};
  j["p"] = p.p;
  j["a_i"] = p.a_i;
  j["omega"] = to_string(p.omega);
  j["g1"] = to_string(p.g1);
  j["g2"] = to_string(p.g2);
  return j;
}

Json make_report(const std::string& command, const Json& input, const Json& results,
                 const std::vector<std::string>& evidence, std::optional<double> timing) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["input"] = input;
  j["command"] = command;
  j["results"] = results;
  j["evidence"] = strings(evidence);
  if (timing) j["timing"] = {{"seconds", *timing}};
  return j;
}

Json make_error_report(const std::string& command, const Json& input, int exit_code, const std::string& kind,
                       const std::string& message) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["input"] = input;
  j["command"] = command;
  j["error"] = {{"exit_code", exit_code}, {"kind", kind}, {"message", message}};
  return j;
}

namespace {

void render_scalars(std::ostringstream& os, const Json& obj, const std::string& indent) {
  for (const auto& [k, v] : obj.items()) {
    if (v.is_primitive() && !v.is_null()) os << indent << k << ": " << v.dump() << "\n";
  }
}

void render_checks(std::ostringstream& os, const Json& checks, const std::string& indent) {
  for (const auto& c : checks) {
    os << indent << (c["holds"].get<bool>() ? "ok   " : "FAIL ") << c["identity"].get<std::string>() << "  ("
       << c["lhs"].dump() << " vs " << c["rhs"].dump() << ")" << (c["enforced"].get<bool>() ? "" : " [unenforced]")
       << "\n";
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream os;
  os << "command: " << report["command"].get<std::string>() << "\n";
  os << "germ: " << report["input"]["germ"].get<std::string>() << "\n";
  if (report.contains("error")) {
    os << "error (" << report["error"]["kind"].get<std::string>()
       << "): " << report["error"]["message"].get<std::string>() << "\n";
    return os.str();
  }
  const Json& r = report["results"];
  const std::string cmd = report["command"];
  if (cmd == "degree") {
    os << "degree: " << r["elk"]["degree"].dump() << " (elk, algebra dim " << r["elk"]["algebra_dim"].dump() << ")\n";
    if (r.contains("oracle")) {
      os << "degree: " << r["oracle"]["degree"].dump() << " (numeric oracle)\n";
      os << "agree: " << r["agree"].dump() << "\n";
    }
  } else if (cmd == "chi" || cmd == "szafraniec") {
    if (cmd == "szafraniec") {
      os << "g1: " << r["pair"]["g1"].get<std::string>() << "\n";
      os << "g2: " << r["pair"]["g2"].get<std::string>() << "\n";
    }
    const Json& e = r["euler"];
    render_scalars(os, e, "");
    for (const auto& t : e["formula_trace"]) {
      os << "  " << t["formula"].get<std::string>();
      for (const auto& [k, v] : t["inputs"].items()) os << "  " << k << "=" << v.dump();
      os << "\n";
    }
    if (r.contains("oracle")) render_scalars(os, r["oracle"], "oracle ");
  } else if (cmd == "polar") {
    render_scalars(os, r, "");
    render_checks(os, r["checks"], "  ");
  } else if (cmd == "le-iomdine") {
    render_scalars(os, r["polar"], "polar ");
    render_scalars(os, r, "");
    for (const auto& c : r["cases"]) {
      os << "k = " << c["k"].dump() << ": g = " << c["g"].get<std::string>() << ", deg = " << c["degree"]["degree"].dump()
         << ", chi_g = (" << c["chi_g_neg"].dump() << ", " << c["chi_g_pos"].dump() << ")\n";
      render_checks(os, c["checks"], "  ");
    }
  }
  return os.str();
}

}  // namespace milnor
