#include "bellsim/angle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bellsim {

double canonicalize_deg(double degrees) {
  if (!std::isfinite(degrees)) {
    throw std::invalid_argument("angle must be finite");
  }
  double r = std::fmod(degrees, 180.0);
  if (r < 0.0) {
    r += 180.0;
  }
  if (r == 180.0) {
    // fmod is exact, but adding 180 to a tiny negative remainder can round up
    // to exactly 180; fold it back to the canonical representative.
    r = 0.0;
  }
  return r + 0.0;  // normalize -0
}

Angle::Angle(double degrees) : deg_(canonicalize_deg(degrees)) {}

double Angle::rad() const { return deg_ * (std::numbers::pi / 180.0); }

Angle relative_angle(Angle a, Angle b) {
  double d = std::fabs(a.deg() - b.deg());  // in [0, 180)
  if (d > 90.0) {
    d = 180.0 - d;  // exact: Sterbenz subtraction for d in [90, 180]
  }
  return Angle(d);
}

Angle rotated(Angle a, double delta_deg) { return Angle(a.deg() + delta_deg); }

}  // namespace bellsim
