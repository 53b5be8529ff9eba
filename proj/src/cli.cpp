#include "milnor/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "milnor/parser.hpp"

namespace milnor {

namespace {

/// The command does not apply to this germ (exit code 2).
class NotApplicableError : public Error {
 public:
  using Error::Error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ConfigError("config key '" + key + "' expects a number, got '" + v + "'");
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const int x = std::stoi(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ConfigError("config key '" + key + "' expects an integer, got '" + v + "'");
}

Json direction_json(const std::optional<RationalVector>& v) { return v ? to_json(*v) : Json(nullptr); }

Json parameters_json(const RunConfig& cfg) {
  Json j;
  j["oracle"] = cfg.oracle;
  j["direction"] = direction_json(cfg.direction);
  j["k"] = cfg.k ? Json(*cfg.k) : Json(nullptr);
  j["d"] = cfg.d ? Json(*cfg.d) : Json(nullptr);
  j["cap"] = cfg.cap;
  j["oracle_config"] = to_json(cfg.oracle_cfg);
  return j;
}

std::vector<std::string> variables_for(const RunConfig& cfg) {
  return cfg.variables.empty() ? infer_variables(cfg.germ) : cfg.variables;
}

Json input_json(const std::string& germ, const std::vector<std::string>& vars, const RunConfig& cfg) {
  Json j;
  j["germ"] = germ;
  j["variables"] = vars;
  j["parameters"] = parameters_json(cfg);
  return j;
}

void append(std::vector<std::string>& out, const std::vector<std::string>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

void append_degree_evidence(std::vector<std::string>& out, const std::string& label, const DegreeReport& r) {
  for (const auto& e : r.evidence) out.push_back(label + ": " + e);
}

struct Outcome {
  int exit_code = kExitOk;
  Json results;
  std::vector<std::string> evidence;
};

Outcome cmd_degree(const Polynomial& f, const RunConfig& cfg) {
  Outcome o;
  const DegreeReport elk = elk_degree(f, cfg.cap);
  o.results["elk"] = to_json(elk, f.ring());
  append_degree_evidence(o.evidence, "elk", elk);
  if (cfg.oracle) {
    const NumericDegree nd = numeric_degree(PolynomialField(f), cfg.oracle_cfg);
    o.results["oracle"] = to_json(nd);
    o.results["agree"] = nd.degree == elk.degree;
    for (const auto& e : nd.log) o.evidence.push_back("oracle: " + e);
    if (nd.degree != elk.degree) {
      o.evidence.push_back("oracle degree " + std::to_string(nd.degree) + " differs from elk degree " +
                           std::to_string(elk.degree));
      o.exit_code = kExitExhausted;
    }
  }
  return o;
}

/// Numeric degrees of the germs an EulerReport was built from.
Json oracle_cross_check(const std::vector<std::pair<std::string, Polynomial>>& germs, const EulerReport& r,
                        const OracleConfig& oc, Outcome& o) {
  Json out = Json::array();
  for (std::size_t i = 0; i < germs.size(); ++i) {
    const auto& [label, g] = germs[i];
    long elk = 0;
    for (const auto& [l, d] : r.degrees)
      if (l == label) elk = d.degree;
    const NumericDegree nd = numeric_degree(PolynomialField(g), oc);
    const bool agree = nd.degree == elk;
    out.push_back({{"germ", label}, {"polynomial", to_string(g)}, {"elk", elk}, {"oracle", nd.degree}, {"agree", agree}});
    for (const auto& e : nd.log) o.evidence.push_back("oracle " + label + ": " + e);
    if (!agree) o.exit_code = kExitExhausted;
  }
  return out;
}

void euler_evidence(const EulerReport& r, Outcome& o) {
  for (const auto& [label, d] : r.degrees) append_degree_evidence(o.evidence, label, d);
  if (!parity_relations_hold(r)) o.evidence.push_back("parity relations between fibres and links fail");
  if (!mayer_vietoris_holds(r)) o.evidence.push_back("Mayer-Vietoris closure fails");
}

Outcome cmd_chi(const Polynomial& f, const RunConfig& cfg) {
  Outcome o;
  std::vector<std::pair<std::string, Polynomial>> germs;
  EulerReport r;
  if (cfg.d) {
    const auto [gp, gm] = radial_pair(f, *cfg.d);
    const DegreeReport dp = elk_degree(gp, cfg.cap);
    const DegreeReport dm = elk_degree(gm, cfg.cap);
    r = chi_from_pair_degrees(f.nvars(), dp.degree, dm.degree);
    r.degrees = {{"g1", dp}, {"g2", dm}};
    germs = {{"g1", gp}, {"g2", gm}};
    o.results["route"] = "radial_pair";
    o.results["d"] = *cfg.d;
    o.evidence.push_back("g+- = +-f - (sum x_i^2)^" + std::to_string(*cfg.d) +
                         "; d is user supplied and not checked to be large enough");
  } else if (const auto w = detect_weights(f)) {
    r = chi_weighted_homogeneous(f, *w, cfg.cap);
    const SzafraniecPair p = build_pair(f, *w);
    germs = {{"g1", p.g1}, {"g2", p.g2}};
    o.results["route"] = "weighted_homogeneous";
    o.results["weights"] = {{"d_i", w->d_i}, {"d", w->d}};
  } else {
    try {
      r = chi_isolated(f, cfg.cap);
    } catch (const InconclusiveError& e) {
      if (e.reason() != InconclusiveError::Reason::not_zero_dimensional) throw;
      throw NotApplicableError(
          "germ is neither weighted homogeneous nor an isolated critical point; use the polar command");
    }
    germs = {{"f", f}};
    o.results["route"] = "isolated";
  }
  o.results["euler"] = to_json(r, f.ring());
  euler_evidence(r, o);
  if (cfg.oracle) o.results["oracle"] = oracle_cross_check(germs, r, cfg.oracle_cfg, o);
  return o;
}

Outcome cmd_szafraniec(const Polynomial& f, const RunConfig& cfg) {
  Outcome o;
  const auto w = detect_weights(f);
  if (!w) throw NotApplicableError("germ is not weighted homogeneous; use chi or polar");
  const SzafraniecPair p = build_pair(f, *w);
  const EulerReport r = chi_weighted_homogeneous(f, *w, cfg.cap);
  o.results["pair"] = to_json(p, *w);
  o.results["euler"] = to_json(r, f.ring());
  euler_evidence(r, o);
  if (cfg.oracle) o.results["oracle"] = oracle_cross_check({{"g1", p.g1}, {"g2", p.g2}}, r, cfg.oracle_cfg, o);
  return o;
}

void polar_evidence(const PolarIndexReport& r, Outcome& o) {
  append(o.evidence, r.genericity_log);
  if (r.slices) append(o.evidence, r.slices->log);
}

Outcome cmd_polar(const Polynomial& f, const RunConfig& cfg) {
  Outcome o;
  const PolarIndexReport r = polar_indices(f, cfg.direction, cfg.oracle_cfg);
  o.results = to_json(r);
  polar_evidence(r, o);
  return o;
}

Outcome cmd_le_iomdine(const Polynomial& f, const RunConfig& cfg) {
  Outcome o;
  const LeIomdineReport r = le_iomdine(f, cfg.direction, cfg.k, cfg.oracle_cfg, cfg.cap);
  o.results = to_json(r);
  polar_evidence(r.polar, o);
  for (const auto& c : r.cases) {
    append_degree_evidence(o.evidence, "k=" + std::to_string(c.k), c.degree);
    if (!c.oracle_note.empty()) o.evidence.push_back("k=" + std::to_string(c.k) + " oracle: " + c.oracle_note);
  }
  if (!r.all_pass) o.exit_code = kExitHypothesis;
  return o;
}

std::string hex64(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace

void RunConfig::validate() const {
  bool known = false;
  for (const auto& c : commands()) known = known || c == command;
  if (!known) throw ConfigError("unknown command '" + command + "'");
  if (cap < 1) throw ConfigError("cap must be positive");
  if (k && *k < 1) throw ConfigError("k must be positive");
  if (d && *d < 1) throw ConfigError("d must be positive");
  try {
    oracle_cfg.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

RationalVector parse_direction(const std::string& text) {
  RationalVector v;
  for (const auto& part : split(text, ',')) {
    if (part.empty()) throw ConfigError("empty entry in direction '" + text + "'");
    Rational q;
    if (q.set_str(part, 10) != 0) throw ConfigError("direction entry '" + part + "' is not a rational number");
    if (q.get_den() == 0) throw ConfigError("direction entry '" + part + "' has a zero denominator");
    q.canonicalize();
    v.push_back(q);
  }
  if (v.empty()) throw ConfigError("direction is empty");
  bool zero = true;
  for (const auto& q : v) zero = zero && q == 0;
  if (zero) throw ConfigError("direction must be nonzero");
  return v;
}

void apply_config_text(const std::string& text, RunConfig& cfg) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + " has no '='");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto& oc = cfg.oracle_cfg;
    if (key == "epsilon") oc.epsilon = parse_double(key, value);
    else if (key == "eta") oc.eta = parse_double(key, value);
    else if (key == "grid") oc.grid = parse_int(key, value);
    else if (key == "newton_tol") oc.newton_tol = parse_double(key, value);
    else if (key == "dedupe_radius") oc.dedupe_radius = parse_double(key, value);
    else if (key == "cells") oc.cells = parse_int(key, value);
    else if (key == "circle_samples") oc.circle_samples = parse_int(key, value);
    else if (key == "eta_slice") oc.eta_slice = parse_double(key, value);
    else if (key == "slice_offset") oc.slice_offset = parse_double(key, value);
    else if (key == "slice_level") oc.slice_level = parse_double(key, value);
    else if (key == "seed_scales") oc.seed_scales = parse_int(key, value);
    else if (key == "max_newton_iter") oc.max_newton_iter = parse_int(key, value);
    else if (key == "max_shrinks") oc.max_shrinks = parse_int(key, value);
    else if (key == "cap") cfg.cap = parse_int(key, value);
    else if (key == "cache_dir") cfg.cache_dir = value;
    else if (key == "direction") cfg.direction = parse_direction(value);
    else throw ConfigError("unknown config key '" + key + "' on line " + std::to_string(lineno));
  }
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_config_text(ss.str(), cfg);
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string cache_key_text(const RunConfig& cfg, const std::string& canonical_germ) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["germ"] = canonical_germ;
  j["variables"] = variables_for(cfg);
  j["command"] = cfg.command;
  j["parameters"] = parameters_json(cfg);
  return j.dump();
}

RunResult execute(const RunConfig& cfg) {
  std::vector<std::string> vars;
  Json input = input_json(cfg.germ, vars, cfg);
  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    return RunResult{code, make_error_report(cfg.command, input, code, kind, msg)};
  };
  try {
    cfg.validate();
    vars = variables_for(cfg);
    input = input_json(cfg.germ, vars, cfg);
    const Polynomial f = parse(cfg.germ, vars);
    if (cfg.direction && cfg.direction->size() != f.nvars())
      throw ConfigError("direction has " + std::to_string(cfg.direction->size()) + " entries for " +
                        std::to_string(f.nvars()) + " variables");
    input = input_json(to_string(f), vars, cfg);
    Outcome o;
    if (cfg.command == "degree") o = cmd_degree(f, cfg);
    else if (cfg.command == "chi") o = cmd_chi(f, cfg);
    else if (cfg.command == "szafraniec") o = cmd_szafraniec(f, cfg);
    else if (cfg.command == "polar") o = cmd_polar(f, cfg);
    else o = cmd_le_iomdine(f, cfg);
    return {o.exit_code, make_report(cfg.command, input, o.results, o.evidence)};
  } catch (const ParseError& e) {
    return fail(kExitInput, "parse", e.what());
  } catch (const ConfigError& e) {
    return fail(kExitInput, "config", e.what());
  } catch (const InconclusiveError& e) {
    if (e.reason() == InconclusiveError::Reason::not_zero_dimensional)
      return fail(kExitHypothesis, "not_isolated", e.what());
    return fail(kExitExhausted, "cap_exhausted", e.what());
  } catch (const DegenerateFormError& e) {
    return fail(kExitHypothesis, "degenerate_form", e.what());
  } catch (const UnsupportedGermError& e) {
    return fail(kExitHypothesis, "unsupported_germ", e.what());
  } catch (const NotApplicableError& e) {
    return fail(kExitHypothesis, "not_applicable", e.what());
  } catch (const GenericityError& e) {
    return fail(kExitExhausted, "genericity", e.what());
  } catch (const ExhaustedError& e) {
    return fail(kExitExhausted, "exhausted", e.what());
  } catch (const OracleError& e) {
    return fail(kExitExhausted, "oracle", e.what());
  } catch (const Error& e) {
    return fail(kExitInput, "input", e.what());
  }
}

std::optional<std::string> effective_cache_dir(const RunConfig& cfg) {
  if (const char* env = std::getenv("MILNOR_KIT_CACHE"); env && *env) return std::string(env);
  return cfg.cache_dir;
}

RunResult execute_cached(const RunConfig& cfg) {
  const auto dir = effective_cache_dir(cfg);
  if (cfg.no_cache || !dir) return execute(cfg);
  std::string key;
  try {
    key = cache_key_text(cfg, to_string(parse(cfg.germ, variables_for(cfg))));
  } catch (const Error&) {
    return execute(cfg);
  }
  namespace fs = std::filesystem;
  const fs::path file = fs::path(*dir) / (hex64(fnv1a(key)) + ".json");
  if (std::ifstream in(file); in) {
    try {
      const Json entry = Json::parse(in);
      if (entry.at("key").get<std::string>() == key)
        return {entry.at("exit_code").get<int>(), entry.at("report")};
    } catch (const std::exception&) {
    }
  }
  RunResult r = execute(cfg);
  if (r.exit_code == kExitInput) return r;
  std::error_code ec;
  fs::create_directories(*dir, ec);
  if (ec) return r;
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return r;
    Json entry;
    entry["key"] = key;
    entry["exit_code"] = r.exit_code;
    entry["report"] = r.report;
    out << entry.dump();
    if (!out) return r;
  }
  fs::rename(tmp, file, ec);
  if (ec) fs::remove(tmp, ec);
  return r;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topological invariants of real polynomial singularities", "milnor-kit"};
  std::string command, germ, config_path, direction, vars;
  int k = 0, d = 0, cap = 0;
  RunConfig cfg;
  app.add_option("command", command, "degree | chi | polar | le-iomdine | szafraniec")
      ->required()
      ->check(CLI::IsMember(commands()));
  app.add_option("polynomial", germ, "Germ at the origin, e.g. \"x^2*y - y^4\"")->required();
  app.add_flag("--oracle", cfg.oracle, "Cross-check degrees with the numeric oracle");
  app.add_flag("--json", cfg.json, "Print the JSON report");
  app.add_option("--config", config_path, "File of key = value lines");
  app.add_option("--direction", direction, "Rational direction v, e.g. \"1,2,3\"");
  app.add_option("--k", k, "Le-Iomdine exponent");
  app.add_option("--d", d, "Radial exponent for chi via g+- = +-f - (sum x_i^2)^d");
  app.add_option("--cap", cap, "Degree cap for standard bases");
  app.add_option("--vars", vars, "Comma separated variable order");
  app.add_flag("--timing", cfg.timing, "Add wall-clock timing to the report");
  app.add_flag("--no-cache", cfg.no_cache, "Bypass the result cache");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  cfg.command = command;
  cfg.germ = germ;
  try {
    if (!config_path.empty()) apply_config_file(config_path, cfg);
    if (!direction.empty()) cfg.direction = parse_direction(direction);
    if (app.count("--k")) cfg.k = k;
    if (app.count("--d")) cfg.d = d;
    if (app.count("--cap")) cfg.cap = cap;
    if (!vars.empty()) cfg.variables = split(vars, ',');
  } catch (const ConfigError& e) {
    const Json input = input_json(cfg.germ, cfg.variables, cfg);
    const Json rep = make_error_report(cfg.command, input, kExitInput, "config", e.what());
    if (cfg.json) out << rep.dump(2) << "\n";
    else err << render_text(rep);
    return kExitInput;
  }
  const auto t0 = std::chrono::steady_clock::now();
  RunResult r = execute_cached(cfg);
  if (cfg.timing)
    r.report["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  if (cfg.json) out << r.report.dump(2) << "\n";
  else if (r.report.contains("error")) err << render_text(r.report);
  else out << render_text(r.report);
  return r.exit_code;
}

}  // namespace milnor
