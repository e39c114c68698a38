#pragma once

#include <numbers>

namespace hugperch {

inline constexpr double kGravity = 9.81;  // m/s^2
inline constexpr double kPi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

constexpr double mm_to_m(double mm) { return mm / 1000.0; }
constexpr double m_to_mm(double m) { return m * 1e3; }

// N·mm/deg -> N·m/rad
constexpr double nmm_per_deg_to_nm_per_rad(double k) { return k * 1e-3 * 180.0 / kPi; }

}  // namespace hugperch
