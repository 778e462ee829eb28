#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "expgm/cohomology.hpp"
#include "expgm/singular.hpp"

namespace expgm {

/// Angular sector where Re g_t -> -infinity (at u = infinity or u = 0).
struct Sector {
  double center = 0.0;      // in [0, 2pi)
  double half_width = 0.0;  // pi / (2 * degree)
  int degree = 0;
  std::complex<double> lc;  // leading coefficient of g_t at this end
};

struct ValleyConfig {
  std::complex<double> t;
  std::vector<Sector> at_infinity;  // sorted by center
  std::vector<Sector> at_zero;      // punctured line only
};

ValleyConfig valley_config(const ProblemSpec& spec, std::complex<double> t);

enum class EndKind { Interior, ValleyInfinity, ValleyZero };

std::string to_string(EndKind kind);
EndKind parse_end_kind(const std::string& text);

/// End of a cycle. For valley ends `sector` is the label assigned at the
/// construction basepoint and `angle` the continuously tracked direction
/// (not reduced mod 2pi).
struct EndTag {
  EndKind kind = EndKind::Interior;
  int sector = -1;
  double angle = 0.0;

  friend bool operator==(const EndTag&, const EndTag&) = default;
};

/// Piecewise-linear path in the u-plane carrying e^{g_t}.
struct RapidDecayCycle {
  std::vector<std::complex<double>> nodes;
  EndTag start;
  EndTag finish;
  bool closed = false;
  double r_infinity = 0.0;  // truncation radius at infinity (0 if unused)
  double r_zero = 0.0;      // truncation radius at zero (0 if unused)
  double interior_radius = 1.0;

  friend bool operator==(const RapidDecayCycle&, const RapidDecayCycle&) = default;
};

struct CycleBasis {
  std::complex<double> t;
  std::vector<RapidDecayCycle> cycles;

  friend bool operator==(const CycleBasis&, const CycleBasis&) = default;
};

struct CycleOptions {
  /// Target for |e^{g_t}| at the truncation radii.
  double truncation_tol = 1e-30;
  double margin = 50.0;
};

/// Builds the geometric cycle with the given ends at parameter t.
RapidDecayCycle realize_cycle(const ProblemSpec& spec, std::complex<double> t, const EndTag& start, const EndTag& finish,
                              bool closed, const CycleOptions& options = {});

/// Basis of rapid-decay cycles at t (empty when the rank is zero).
CycleBasis cycle_basis(const ProblemSpec& spec, std::complex<double> t, const ValleyConfig& cfg,
                       const CycleOptions& options = {});

/// Continues the cycles along the polyline `path` (which must start at
/// basis.t) by following the valley directions continuously.
CycleBasis track_cycles(const ProblemSpec& spec, const CycleBasis& basis, std::span<const std::complex<double>> path,
                        const SingularSet& sigma, const CycleOptions& options = {});

/// Critical points of g_t in the fiber (numerical).
std::vector<std::complex<double>> critical_points(const ProblemSpec& spec, std::complex<double> t);

}  // namespace expgm
