#pragma once

#include <complex>
#include <optional>
#include <string>

#include "json.hpp"
#include "expgm/cohomology.hpp"
#include "expgm/cycles.hpp"
#include "expgm/quadrature.hpp"
#include "expgm/singular.hpp"
#include "expgm/verify.hpp"

// Complex numbers serialize as {"re": x, "im": y}.
namespace nlohmann {
template <>
struct adl_serializer<std::complex<double>> {
  static void to_json(json& j, const std::complex<double>& z) { j = {{"re", z.real()}, {"im", z.imag()}}; }
  static void from_json(const json& j, std::complex<double>& z) {
    z = {j.at("re").get<double>(), j.at("im").get<double>()};
  }
};
}  // namespace nlohmann

namespace expgm {

using nlohmann::json;

void to_json(json& j, const ProblemSpec& s);
void from_json(const json& j, ProblemSpec& s);
void to_json(json& j, const CohomologyBasis& b);
void from_json(const json& j, CohomologyBasis& b);
void to_json(json& j, const ConnectionMatrix& a);
void from_json(const json& j, ConnectionMatrix& a);
void to_json(json& j, const ScalarODE& ode);
void from_json(const json& j, ScalarODE& ode);
void to_json(json& j, const SingularSet& s);
void from_json(const json& j, SingularSet& s);
void to_json(json& j, const EndTag& e);
void from_json(const json& j, EndTag& e);
void to_json(json& j, const RapidDecayCycle& c);
void from_json(const json& j, RapidDecayCycle& c);
void to_json(json& j, const CycleBasis& b);
void from_json(const json& j, CycleBasis& b);
void to_json(json& j, const PeriodValue& v);
void from_json(const json& j, PeriodValue& v);
void to_json(json& j, const PeriodMatrix& p);
void from_json(const json& j, PeriodMatrix& p);
void to_json(json& j, const CheckRecord& r);
void from_json(const json& j, CheckRecord& r);
void to_json(json& j, const VerificationReport& r);
void from_json(const json& j, VerificationReport& r);

/// Contents of a .spec file: `key = value` lines, '#' starts a comment.
/// Keys: fiber, g (required), label, tol, ode_tol, stokes_tol,
/// monodromy_tol, duality_floor.
struct SpecFile {
  ProblemSpec spec;
  std::optional<double> tol;
  VerifyOptions verify;
};

/// Throws ParseError on malformed lines or unknown keys, InvalidSpec when g is
/// not admissible.
SpecFile parse_spec_file(const std::string& text);
SpecFile load_spec_file(const std::string& path);

/// Parses "re,im" (or a bare real number).
std::complex<double> parse_complex(const std::string& text);

}  // namespace expgm
