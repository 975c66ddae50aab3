#pragma once

// CODATA 2018 exact values.
namespace rfqlink::constants {

inline constexpr double k_boltzmann = 1.380649e-23;       // J/K
inline constexpr double planck = 6.62607015e-34;          // J*s
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double t0_reference = 290.0;             // K, standard noise reference

}  // namespace rfqlink::constants
