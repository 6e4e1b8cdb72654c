#pragma once

// Calibrated regression constants for the two-sided collar estimates. The underlying
// statements are only up to bounded factors; these values were measured once on the
// grids named below, widened by 5%, and frozen. They are not exact constants.

namespace parabolic::calibration {

// lambda * e^{l/2} for the nonstandard half-collar, l_gamma = inf, l in [2, 20] step 0.25.
// observed lower bound in [0.012207, 0.074231], upper bound in [0.63666, 1.16187]
inline constexpr double kHalfLowerBandLo = 0.0116;
inline constexpr double kHalfLowerBandHi = 0.078;
inline constexpr double kHalfUpperBandLo = 0.60;
inline constexpr double kHalfUpperBandHi = 1.22;

// lower bound * e^{l/4} for the glued collar, t = 1/2, l_gamma = l_gamma' = inf, l in [4, 16] step 0.25.
// observed in [0.0073492, 0.0129194]
inline constexpr double kHalfTwistBandLo = 0.0070;
inline constexpr double kHalfTwistBandHi = 0.0136;

// glued lower / (2 * standard lambda) >= l e^{|t| l / 2} / K on l in {8, 12, 16}, t in {0, 1/4, 1/2}.
// observed worst K = 544.28
inline constexpr double kTwistGainK = 572.0;

// nonstandard lower / standard lambda >= l / K on l in {8, 12, 16, 20}, l_gamma = inf.
// observed worst K = 163.84
inline constexpr double kHalfGainK = 172.0;

// vertical modulus of the h1/h2 envelope <= c * (max of the four exponentials) on
// l in {4, 8, 16}, t in {0, 0.1, ..., 0.5}. observed worst c = 6.1367
inline constexpr double kFourTermC = 6.45;

}  // namespace parabolic::calibration
