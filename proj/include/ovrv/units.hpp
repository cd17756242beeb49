#pragma once

namespace ovrv::units {

inline constexpr double kMetersPerSecondPerMph = 0.44704;
inline constexpr double kKmhPerMetersPerSecond = 3.6;

constexpr double mph_to_mps(double mph) { return mph * kMetersPerSecondPerMph; }
constexpr double mps_to_mph(double mps) { return mps / kMetersPerSecondPerMph; }
constexpr double mps_to_kmh(double mps) { return mps * kKmhPerMetersPerSecond; }

}  // namespace ovrv::units
