#pragma once

#include <cmath>
#include <numbers>

namespace linefields {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Principal value in (-pi, pi].  Depends only on a mod 2*pi.
inline double principal(double a) {
  double r = std::remainder(a, kTwoPi);  // in [-pi, pi]
  if (r <= -kPi) r = kPi;
  return r;
}

// Wrap into [0, 2*pi).
inline double wrap_two_pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// True when a principal increment sits within `margin` of the +-pi branch
// point, where the representative choice is ambiguous.
inline bool near_branch(double increment, double margin) {
  return std::abs(std::abs(increment) - kPi) <= margin;
}

}  // namespace linefields
