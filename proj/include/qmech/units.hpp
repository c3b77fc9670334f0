#pragma once

#include <numbers>

// Static spectra are E/h in GHz. Dynamics run in angular units (rad/ns) so
// that a Hamiltonian H generates exp(-i H t) with t in ns; a cyclic
// frequency f in GHz enters dynamics as 2*pi*f.
namespace qmech::units {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Superconducting flux quantum h/2e in Wb.
inline constexpr double kFluxQuantum = 2.067833848e-15;
inline constexpr double kPlanck = 6.62607015e-34;
inline constexpr double kHbar = kPlanck / kTwoPi;

constexpr double angular(double ghz) { return kTwoPi * ghz; }
constexpr double cyclic(double rad_per_ns) { return rad_per_ns / kTwoPi; }
constexpr double mhz(double value) { return 1e-3 * value; }
constexpr double khz(double value) { return 1e-6 * value; }

}  // namespace qmech::units
