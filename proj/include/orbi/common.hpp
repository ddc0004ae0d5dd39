#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace orbi {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Tolerance for all group-element equality and fixed-point tests (max norm).
/// A single global tolerance keeps closure, isotropy classification and
/// stratification mutually consistent.
inline constexpr double kGroupTol = 1e-9;

/// Default cap on the size of a group closure.
inline constexpr int kGroupCap = 512;

/// Error conditions surfaced to callers.
enum class errc {
  not_orthogonal,
  closure_exceeds_cap,
  not_effective,
  ambiguous_isotropy,
  not_in_any_component,
  outside_overlap,
  different_components,
  tube_too_tight,
  sigma1_collision,
  path_blocked,
  step_too_large,
  winding_ambiguous,
  no_equivariant_match,
  ambiguous_match,
  outside_all_charts,
  invalid_scenario,
  unsupported,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::not_orthogonal: return "NotOrthogonal";
    case errc::closure_exceeds_cap: return "ClosureExceedsCap";
    case errc::not_effective: return "NotEffective";
    case errc::ambiguous_isotropy: return "AmbiguousIsotropy";
    case errc::not_in_any_component: return "NotInAnyComponent";
    case errc::outside_overlap: return "OutsideOverlap";
    case errc::different_components: return "DifferentComponents";
    case errc::tube_too_tight: return "TubeTooTight";
    case errc::sigma1_collision: return "Sigma1Collision";
    case errc::path_blocked: return "PathBlocked";
    case errc::step_too_large: return "StepTooLarge";
    case errc::winding_ambiguous: return "WindingAmbiguous";
    case errc::no_equivariant_match: return "NoEquivariantMatch";
    case errc::ambiguous_match: return "AmbiguousMatch";
    case errc::outside_all_charts: return "OutsideAllCharts";
    case errc::invalid_scenario: return "InvalidScenario";
    case errc::unsupported: return "Unsupported";
  }
  return "Unknown";
}

/// Exit classification used by the CLI: 1 scenario input problems,
/// 2 mathematical failures, 3 internal invariant violations.
inline int errc_exit_class(errc c) {
  switch (c) {
    case errc::invalid_scenario: return 1;
    case errc::outside_all_charts: return 3;
    default: return 2;
  }
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

/// Deterministic RNG used everywhere randomness is called for.
using Rng = std::mt19937_64;

inline double uniform_in(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wrap an angle into [0, 2*pi).
inline double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

/// Principal difference b - a in (-pi, pi].
inline double angle_diff(double b, double a) {
  double d = std::fmod(b - a, kTwoPi);
  if (d <= -std::numbers::pi) d += kTwoPi;
  if (d > std::numbers::pi) d -= kTwoPi;
  return d;
}

}  // namespace orbi
