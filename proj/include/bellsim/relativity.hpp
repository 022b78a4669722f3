#pragma once

#include <string>
#include <string_view>

namespace bellsim {

/// Unit convention: positions in meters, times in seconds, boosts along the
/// shared x axis as beta = v/c. Default light speed is 3e8 m/s exactly, which
/// keeps the round-number worked examples exact; pass kLightSpeedSi for the
/// defined SI value.
inline constexpr double kDefaultLightSpeed = 3.0e8;
inline constexpr double kLightSpeedSi = 299792458.0;

struct SpacetimeEvent {
  double x = 0.0;  // meters
  double t = 0.0;  // seconds
  std::string label;
};

/// Frame moving at velocity beta * c along +x relative to the lab frame.
class InertialFrame {
 public:
  explicit InertialFrame(double beta);  // requires |beta| < 1

  double beta() const { return beta_; }
  double gamma() const;

 private:
  double beta_ = 0.0;
};

/// A signal crossing delta_x in lab time delta_t, so u = delta_x / delta_t.
/// u_over_c is +-infinity for an instantaneous link (delta_t == 0).
struct SignalLink {
  double u_over_c = 0.0;
  double delta_x = 0.0;  // meters
  double delta_t = 0.0;  // seconds

  static SignalLink from_speed(double u_over_c, double delta_x,
                               double c = kDefaultLightSpeed);
  static SignalLink from_displacement(double delta_x, double delta_t,
                                      double c = kDefaultLightSpeed);
  static SignalLink instantaneous(double delta_x);
};

enum class IntervalClass { timelike, lightlike, spacelike };

enum class CausalRelation {
  event1_causes_event2,
  event2_causes_event1,
  unrelated,
  symmetric_entangled,  // spacelike but correlated: each precedes the other in some frame
};

enum class EventOrdering { event1_first, event2_first, simultaneous };

std::string_view to_string(IntervalClass c);
std::string_view to_string(CausalRelation r);
std::string_view to_string(EventOrdering o);

/// Boost an event's coordinates into the given frame:
/// t' = gamma (t - beta x / c), x' = gamma (x - beta c t).
SpacetimeEvent lorentz_transform(const SpacetimeEvent& event, const InertialFrame& frame,
                                 double c = kDefaultLightSpeed);

/// Elapsed time of a signal link in the boosted frame:
/// gamma * delta_t * (1 - u_over_c * beta), or -gamma * beta * delta_x / c
/// for an instantaneous link. Negative values mean the boosted frame sees the
/// signal arrive before it was sent (possible only when |u| > c).
double delta_t_prime(const SignalLink& link, const InertialFrame& frame,
                     double c = kDefaultLightSpeed);

/// Signed boost threshold c (t2 - t1) / (x1 - x2) at which the two events'
/// time order flips. The order is reversed in frames whose -beta lies
/// strictly beyond the threshold in its own direction (see
/// boost_reverses_order); at equality the events are simultaneous. Magnitudes
/// below 1 exist only for spacelike pairs; a timelike pair yields a magnitude
/// above 1, i.e. no physical frame reverses it. Requires x1 != x2.
double reversal_threshold_beta(const SpacetimeEvent& event1, const SpacetimeEvent& event2,
                               double c = kDefaultLightSpeed);

/// Direction-aware reversal test for a threshold returned by
/// reversal_threshold_beta: true when a frame at beta sees the events in the
/// opposite time order from the lab frame.
bool boost_reverses_order(double threshold_beta, double beta);

/// Sign of c^2 dt^2 - dx^2 with a 1e-12 relative tolerance around lightlike.
IntervalClass classify_interval(const SpacetimeEvent& event1, const SpacetimeEvent& event2,
                                double c = kDefaultLightSpeed);

struct CausalClassification {
  CausalRelation relation = CausalRelation::unrelated;
  EventOrdering ordering = EventOrdering::simultaneous;  // in the queried frame
};

/// Timelike or lightlike pairs get a fixed cause fixed by invariant time
/// order; spacelike pairs are either unrelated or, when flagged entangled,
/// symmetric: the correlation has no frame-independent direction. The
/// ordering field reports which event precedes in the queried frame.
CausalClassification classify_causal_relation(const SpacetimeEvent& event1,
                                              const SpacetimeEvent& event2, bool entangled,
                                              const InertialFrame& frame,
                                              double c = kDefaultLightSpeed);

}  // namespace bellsim
