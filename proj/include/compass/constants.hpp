#pragma once

namespace compass {

inline constexpr const char* version_string = "0.1.0";

inline constexpr double pi = 3.14159265358979323846;

/// Wigner convention used throughout: W is real, integrates to 1 over the
/// (x, y) plane with z = x + iy, and the vacuum peaks at W(0) = 2/pi.
inline constexpr double vacuum_wigner_peak = 2.0 / pi;

/// Smallest admissible normalization bracket (squared norm of the raw
/// four-ket superposition). Below this the state is treated as null.
/// Small enough to admit strongly degenerate but physical parameter sets
/// (the one-photon-subtracted compass at |alpha| = 1e-3 has bracket
/// 8|alpha|^6/3 ~ 2.7e-18) while still rejecting exact null states, whose
/// stabilized bracket evaluates below ~1e-30.
inline constexpr double epsilon_null = 1e-20;

/// Smallest mean photon number for which Q and g2 are reported.
inline constexpr double epsilon_vacuum = 1e-30;

} // namespace compass
