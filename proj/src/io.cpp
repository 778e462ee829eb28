#include "expgm/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "expgm/error.hpp"

namespace expgm {

namespace {

TPoly parse_tpoly(const std::string& text) {
  const RatFun f = parse_ratfun(text);
  if (!f.is_polynomial()) throw Error(ErrorCode::ParseError, "expected a polynomial in t: '" + text + "'");
  return f.num();
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  double x = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, x);
  if (ec != std::errc() || ptr != end) throw Error(ErrorCode::ParseError, "bad number for " + key + ": '" + text + "'");
  return x;
}

}  // namespace

void to_json(json& j, const ProblemSpec& s) {
  j = {{"fiber", to_string(s.fiber)}, {"g", s.g.to_string()}, {"label", s.label}};
}

void from_json(const json& j, ProblemSpec& s) {
  s.fiber = parse_fiber(j.at("fiber").get<std::string>());
  s.g = parse_laurent(j.at("g").get<std::string>());
  s.label = j.value("label", "");
}

void to_json(json& j, const CohomologyBasis& b) {
  j = {{"rank", b.rank}, {"exponents", b.exponents}};
}

void from_json(const json& j, CohomologyBasis& b) {
  j.at("rank").get_to(b.rank);
  j.at("exponents").get_to(b.exponents);
}

void to_json(json& j, const ConnectionMatrix& a) {
  j = json::array();
  for (const auto& row : a.a) {
    json r = json::array();
    for (const auto& x : row) r.push_back(x.to_string());
    j.push_back(r);
  }
}

void from_json(const json& j, ConnectionMatrix& a) {
  a.a.clear();
  for (const auto& row : j) {
    RatVector r;
    for (const auto& x : row) r.push_back(parse_ratfun(x.get<std::string>()));
    a.a.push_back(std::move(r));
  }
}

void to_json(json& j, const ScalarODE& ode) {
  json coeffs = json::array();
  for (const auto& c : ode.coefficients) coeffs.push_back(c.to_string());
  j = {{"order", ode.order()}, {"equation", ode.to_string()}, {"coefficients", coeffs}};
}

void from_json(const json& j, ScalarODE& ode) {
  ode.coefficients.clear();
  for (const auto& c : j.at("coefficients")) ode.coefficients.push_back(parse_tpoly(c.get<std::string>()));
}

void to_json(json& j, const SingularSet& s) {
  json defining = json::array();
  for (const auto& d : s.defining)
    defining.push_back({{"polynomial", d.poly.to_string()}, {"provenance", to_string(d.provenance)}});
  json points = json::array();
  for (const auto& p : s.points) {
    json prov = json::array();
    for (auto v : p.provenance) prov.push_back(to_string(v));
    points.push_back({{"center", p.center}, {"radius", p.radius}, {"provenance", prov}});
  }
  j = {{"defining", defining}, {"points", points}};
}

void from_json(const json& j, SingularSet& s) {
  s.defining.clear();
  s.points.clear();
  for (const auto& d : j.at("defining"))
    s.defining.push_back({parse_tpoly(d.at("polynomial").get<std::string>()),
                          parse_provenance(d.at("provenance").get<std::string>())});
  for (const auto& p : j.at("points")) {
    SingularPoint pt;
    p.at("center").get_to(pt.center);
    p.at("radius").get_to(pt.radius);
    for (const auto& v : p.at("provenance")) pt.provenance.push_back(parse_provenance(v.get<std::string>()));
    s.points.push_back(std::move(pt));
  }
}

void to_json(json& j, const EndTag& e) {
  j = {{"kind", to_string(e.kind)}, {"sector", e.sector}, {"angle", e.angle}};
}

void from_json(const json& j, EndTag& e) {
  e.kind = parse_end_kind(j.at("kind").get<std::string>());
  j.at("sector").get_to(e.sector);
  j.at("angle").get_to(e.angle);
}

void to_json(json& j, const RapidDecayCycle& c) {
  j = {{"nodes", c.nodes},       {"start", c.start},   {"finish", c.finish},
       {"closed", c.closed},     {"r_infinity", c.r_infinity}, {"r_zero", c.r_zero},
       {"interior_radius", c.interior_radius}};
}

void from_json(const json& j, RapidDecayCycle& c) {
  j.at("nodes").get_to(c.nodes);
  j.at("start").get_to(c.start);
  j.at("finish").get_to(c.finish);
  j.at("closed").get_to(c.closed);
  j.at("r_infinity").get_to(c.r_infinity);
  j.at("r_zero").get_to(c.r_zero);
  j.at("interior_radius").get_to(c.interior_radius);
}

void to_json(json& j, const CycleBasis& b) { j = {{"t", b.t}, {"cycles", b.cycles}}; }

void from_json(const json& j, CycleBasis& b) {
  j.at("t").get_to(b.t);
  j.at("cycles").get_to(b.cycles);
}

void to_json(json& j, const PeriodValue& v) {
  j = {{"value", v.value}, {"error_estimate", v.error_estimate}, {"truncation_bound", v.truncation_bound}};
}

void from_json(const json& j, PeriodValue& v) {
  j.at("value").get_to(v.value);
  j.at("error_estimate").get_to(v.error_estimate);
  j.at("truncation_bound").get_to(v.truncation_bound);
}

void to_json(json& j, const PeriodMatrix& p) { j = {{"t", p.t}, {"entries", p.entries}}; }

void from_json(const json& j, PeriodMatrix& p) {
  j.at("t").get_to(p.t);
  j.at("entries").get_to(p.entries);
}

void to_json(json& j, const CheckRecord& r) {
  j = {{"name", r.name},         {"inputs", r.inputs}, {"measured", r.measured}, {"threshold", r.threshold},
       {"relation", r.relation}, {"pass", r.pass},     {"details", r.details}};
}

void from_json(const json& j, CheckRecord& r) {
  j.at("name").get_to(r.name);
  r.inputs = j.at("inputs");
  j.at("measured").get_to(r.measured);
  j.at("threshold").get_to(r.threshold);
  j.at("relation").get_to(r.relation);
  j.at("pass").get_to(r.pass);
  r.details = j.at("details");
}

void to_json(json& j, const VerificationReport& r) {
  j = {{"label", r.label}, {"overall", r.overall()}, {"records", r.records}};
}

void from_json(const json& j, VerificationReport& r) {
  j.at("label").get_to(r.label);
  j.at("records").get_to(r.records);
}

SpecFile parse_spec_file(const std::string& text) {
  SpecFile out;
  std::optional<std::string> fiber;
  std::optional<std::string> g;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "fiber") fiber = value;
    else if (key == "g") g = value;
    else if (key == "label") out.spec.label = value;
    else if (key == "tol") out.tol = parse_double(key, value);
    else if (key == "ode_tol") out.verify.ode_tol = parse_double(key, value);
    else if (key == "stokes_tol") out.verify.stokes_tol = parse_double(key, value);
    else if (key == "monodromy_tol") out.verify.monodromy_tol = parse_double(key, value);
    else if (key == "duality_floor") out.verify.duality_floor = parse_double(key, value);
    else throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  if (!fiber) throw Error(ErrorCode::ParseError, "missing key 'fiber'");
  if (!g) throw Error(ErrorCode::ParseError, "missing key 'g'");
  out.spec.fiber = parse_fiber(*fiber);
  out.spec.g = parse_laurent(*g);
  out.spec.validate();
  return out;
}

SpecFile load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_file(buf.str());
}

std::complex<double> parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_double("complex", trim(text)), 0.0};
  return {parse_double("complex", trim(text.substr(0, comma))), parse_double("complex", trim(text.substr(comma + 1)))};
}

}  // namespace expgm
