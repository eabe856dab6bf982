#pragma once

namespace elastica {

inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

// Absolute tolerance for mean-zero / sum-zero flag checks.
inline constexpr double kMeanZeroTol = 1e-9;

// Edges shorter than kEdgeGuardRel * max(1, total length) are degenerate.
inline constexpr double kEdgeGuardRel = 1e-8;

// Point-on-segment and segment-overlap tolerance for planar predicates.
inline constexpr double kGeomTol = 1e-12;

// Landmark pairs closer than kLandmarkGuardRel * configuration diameter
// are degenerate.
inline constexpr double kLandmarkGuardRel = 1e-8;

}  // namespace elastica
