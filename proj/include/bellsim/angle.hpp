#pragma once

namespace bellsim {

/// Polarization direction in the detector plane. Axes are unoriented, so an
/// angle and its half-turn are the same physical direction; values are stored
/// canonically in [0, 180) degrees.
class Angle {
 public:
  constexpr Angle() = default;
  explicit Angle(double degrees);

  double deg() const { return deg_; }
  double rad() const;

  friend bool operator==(const Angle&, const Angle&) = default;

 private:
  double deg_ = 0.0;
};

/// Reduce an arbitrary degree value into [0, 180). Exact for inputs that are
/// exact in binary (integers, quarter degrees), so axis arithmetic on such
/// grids never picks up rounding noise.
double canonicalize_deg(double degrees);

/// Smallest separation between two axes, in [0, 90] degrees.
Angle relative_angle(Angle a, Angle b);

/// Axis rotated by delta degrees (canonicalized).
Angle rotated(Angle a, double delta_deg);

namespace literals {
inline Angle operator""_deg(long double d) { return Angle(static_cast<double>(d)); }
inline Angle operator""_deg(unsigned long long d) { return Angle(static_cast<double>(d)); }
}  // namespace literals

}  // namespace bellsim
