#pragma once

namespace chargeq::constants {

// CODATA 2018 exact values (SI).
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double planck = 6.62607015e-34;              // J s
inline constexpr double boltzmann = 1.380649e-23;             // J / K
inline constexpr double two_pi = 6.28318530717958647692528676655900577;
inline constexpr double pi = two_pi / 2.0;
inline constexpr double hbar = planck / two_pi;
inline constexpr double flux_quantum = planck / (2.0 * elementary_charge);  // Wb

}  // namespace chargeq::constants
