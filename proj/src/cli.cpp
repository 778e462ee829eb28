#include "expgm/cli.hpp"

#include <iomanip>

#include "CLI11.hpp"
#include "expgm/error.hpp"
#include "expgm/io.hpp"
#include "expgm/model.hpp"

namespace expgm {

namespace {

constexpr double kDefaultTol = 1e-12;

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json derive_json(const Model& m) {
  json j = {{"spec", m.spec}, {"rank", m.rank()}, {"basis", m.basis}, {"connection", m.connection}};
  if (m.rank() == 0) {
    j["ode"] = nullptr;
    j["note"] = "rank zero";
  } else {
    j["ode"] = cyclic_ode(m.connection, 0);
  }
  return j;
}

void derive_text(std::ostream& out, const Model& m) {
  out << "rank: " << m.rank() << '\n';
  out << "basis:";
  for (int e : m.basis.exponents) out << " u^" << e << " du";
  out << '\n';
  if (m.rank() == 0) {
    out << "rank zero\n";
    return;
  }
  out << "A(t):\n";
  for (const auto& row : m.connection.a) {
    out << "  [";
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? ", " : "") << row[j].to_string();
    out << "]\n";
  }
  out << "ode: " << cyclic_ode(m.connection, 0).to_string() << " = 0\n";
}

std::complex<double> default_basepoint(const Model& m, std::size_t index) {
  const auto& pts = m.sigma.points;
  const std::complex<double> c = pts[index].center;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < pts.size(); ++k)
    if (k != index) gap = std::min(gap, std::abs(pts[k].center - c));
  return c + (std::isfinite(gap) ? gap / 2 : 1.0);
}

void write_samples(std::ostream& out, const Model& m, std::complex<double> from, std::complex<double> to, int steps,
                   std::size_t cycle, double tol) {
  out << "t_re,t_im";
  for (int e : m.basis.exponents) out << ",re_" << e << ",im_" << e << ",err_" << e;
  out << '\n';
  out << std::setprecision(17);
  if (m.rank() == 0) return;
  PeriodSnapshot snap = periods_at(m, from, tol);
  if (cycle >= snap.cycles.cycles.size()) throw Error(ErrorCode::InvalidSpec, "cycle index out of range");
  for (int k = 0; k <= steps; ++k) {
    const std::complex<double> t = from + (to - from) * (static_cast<double>(k) / steps);
    if (k > 0) {
      const std::array<std::complex<double>, 2> seg{snap.cycles.t, t};
      snap = periods_tracked(m, snap.cycles, seg, tol);
    }
    out << t.real() << ',' << t.imag();
    for (const PeriodValue& v : snap.periods.entries[cycle])
      out << ',' << v.value.real() << ',' << v.value.imag() << ',' << v.error_estimate + v.truncation_bound;
    out << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exponential Gauss-Manin systems of product families"};
  app.name("expgm");
  app.require_subcommand(1);

  std::string spec_path;
  std::string t_text = "1,0";
  std::string from_text;
  std::string to_text;
  double tol = 0.0;
  int steps = 100;
  std::size_t cycle = 0;
  std::size_t around = 0;
  std::uint64_t seed = VerifyOptions{}.seed;
  bool text = false;

  auto* derive = app.add_subcommand("derive", "basis, connection matrix and scalar ODE");
  auto* singular = app.add_subcommand("singular", "singular parameter set");
  auto* cycles = app.add_subcommand("cycles", "rapid-decay cycle basis at t");
  auto* periods = app.add_subcommand("periods", "period matrix at t");
  auto* samples = app.add_subcommand("samples", "CSV samples of periods along a segment");
  auto* verify = app.add_subcommand("verify", "run all numerical checks at t");
  auto* mono = app.add_subcommand("monodromy", "monodromy around one singular point");
  for (auto* sub : {derive, singular, cycles, periods, samples, verify, mono})
    sub->add_option("spec", spec_path, "problem spec file")->required();
  derive->add_flag("--text", text, "human-readable output");
  for (auto* sub : {cycles, periods, verify}) sub->add_option("--t", t_text, "parameter as re,im");
  for (auto* sub : {periods, samples}) sub->add_option("--tol", tol, "relative tolerance");
  samples->add_option("--from", from_text, "start as re,im")->required();
  samples->add_option("--to", to_text, "end as re,im")->required();
  samples->add_option("--steps", steps, "number of intervals")->check(CLI::PositiveNumber);
  samples->add_option("--cycle", cycle, "cycle index");
  verify->add_option("--seed", seed, "seed for random test forms");
  mono->add_option("--around", around, "index into the singular set")->required();
  auto* mono_t = mono->add_option("--t", t_text, "basepoint as re,im");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const SpecFile file = load_spec_file(spec_path);
    const Model model = Model::build(file.spec);
    const double quad_tol = tol > 0 ? tol : file.tol.value_or(kDefaultTol);

    if (derive->parsed()) {
      if (text) derive_text(out, model);
      else write_json(out, derive_json(model));
      return 0;
    }
    if (singular->parsed()) {
      write_json(out, {{"spec", model.spec}, {"singular_set", model.sigma}});
      return 0;
    }
    if (cycles->parsed()) {
      const auto t = parse_complex(t_text);
      if (!model.sigma.admissible(t)) throw Error(ErrorCode::SingularProximity, "t lies inside a singular ball");
      write_json(out, cycle_basis(model.spec, t, valley_config(model.spec, t)));
      return 0;
    }
    if (periods->parsed()) {
      const auto t = parse_complex(t_text);
      const PeriodSnapshot s = periods_at(model, t, quad_tol);
      write_json(out, {{"spec", model.spec}, {"basis", model.basis}, {"periods", s.periods}});
      return 0;
    }
    if (samples->parsed()) {
      write_samples(out, model, parse_complex(from_text), parse_complex(to_text), steps, cycle, quad_tol);
      return 0;
    }
    VerifyOptions opts = file.verify;
    if (verify->parsed()) {
      opts.seed = seed;
      const VerificationReport report = verify_all(model, parse_complex(t_text), opts);
      write_json(out, report);
      return report.overall() ? 0 : exit_code(ErrorCode::CheckFailed);
    }
    if (around >= model.sigma.points.size())
      throw Error(ErrorCode::InvalidSpec, "no singular point with index " + std::to_string(around));
    const auto t0 = mono_t->count() ? parse_complex(t_text) : default_basepoint(model, around);
    VerificationReport report;
    report.label = model.spec.label;
    report.records.push_back(monodromy(model, around, t0, opts).record);
    write_json(out, report);
    return report.overall() ? 0 : exit_code(ErrorCode::CheckFailed);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.code());
  }
}

}  // namespace expgm
