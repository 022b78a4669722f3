#include "bellsim/relativity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bellsim {

namespace {

void require_light_speed(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("light speed must be positive and finite");
  }
}

}  // namespace

InertialFrame::InertialFrame(double beta) : beta_(beta) {
  if (!std::isfinite(beta) || std::fabs(beta) >= 1.0) {
    throw std::invalid_argument("frame velocity must satisfy |beta| < 1");
  }
}

double InertialFrame::gamma() const {
  return 1.0 / std::sqrt((1.0 - beta_) * (1.0 + beta_));
}

SignalLink SignalLink::from_speed(double u_over_c, double delta_x, double c) {
  require_light_speed(c);
  if (std::isinf(u_over_c)) {
    return instantaneous(delta_x);
  }
  if (u_over_c == 0.0) {
    throw std::invalid_argument("a signal link needs a nonzero speed");
  }
  return {u_over_c, delta_x, delta_x / (u_over_c * c)};
}

SignalLink SignalLink::from_displacement(double delta_x, double delta_t, double c) {
  require_light_speed(c);
  if (delta_t == 0.0) {
    return instantaneous(delta_x);
  }
  return {delta_x / (delta_t * c), delta_x, delta_t};
}

SignalLink SignalLink::instantaneous(double delta_x) {
  const double sign = delta_x < 0.0 ? -1.0 : 1.0;
  return {sign * std::numeric_limits<double>::infinity(), delta_x, 0.0};
}

SpacetimeEvent lorentz_transform(const SpacetimeEvent& event, const InertialFrame& frame,
                                 double c) {
  require_light_speed(c);
  const double g = frame.gamma();
  const double b = frame.beta();
  return {g * (event.x - b * c * event.t), g * (event.t - b * event.x / c), event.label};
}

double delta_t_prime(const SignalLink& link, const InertialFrame& frame, double c) {
  require_light_speed(c);
  if (std::isinf(link.u_over_c)) {
    return -frame.gamma() * frame.beta() * link.delta_x / c;
  }
  return frame.gamma() * link.delta_t * (1.0 - link.u_over_c * frame.beta());
}

double reversal_threshold_beta(const SpacetimeEvent& event1, const SpacetimeEvent& event2,
                               double c) {
  require_light_speed(c);
  if (event1.x == event2.x) {
    throw std::invalid_argument("reversal threshold undefined for events at the same position");
  }
  return c * (event2.t - event1.t) / (event1.x - event2.x);
}

bool boost_reverses_order(double threshold_beta, double beta) {
  // The flipping boosts point opposite to the threshold's sign: -beta must
  // lie strictly beyond the threshold in the threshold's own direction.
  if (threshold_beta > 0.0) {
    return -beta > threshold_beta;
  }
  if (threshold_beta < 0.0) {
    return -beta < threshold_beta;
  }
  // Simultaneous events: any boost along x splits them one way or the other.
  return beta != 0.0;
}

IntervalClass classify_interval(const SpacetimeEvent& event1, const SpacetimeEvent& event2,
                                double c) {
  require_light_speed(c);
  const double dt = c * (event2.t - event1.t);  // meters
  const double dx = event2.x - event1.x;
  const double s2 = dt * dt - dx * dx;
  const double scale = std::max(dt * dt, dx * dx);
  if (std::fabs(s2) <= 1e-12 * scale) {
    return IntervalClass::lightlike;
  }
  return s2 > 0.0 ? IntervalClass::timelike : IntervalClass::spacelike;
}

CausalClassification classify_causal_relation(const SpacetimeEvent& event1,
                                              const SpacetimeEvent& event2, bool entangled,
                                              const InertialFrame& frame, double c) {
  const IntervalClass interval = classify_interval(event1, event2, c);
  const double t1 = lorentz_transform(event1, frame, c).t;
  const double t2 = lorentz_transform(event2, frame, c).t;
  CausalClassification result;
  result.ordering = t1 < t2   ? EventOrdering::event1_first
                    : t2 < t1 ? EventOrdering::event2_first
                              : EventOrdering::simultaneous;
  if (interval != IntervalClass::spacelike) {
    // Invariant time order; every frame agrees, so the unboosted order rules.
    if (event1.t < event2.t) {
      result.relation = CausalRelation::event1_causes_event2;
    } else if (event2.t < event1.t) {
      result.relation = CausalRelation::event2_causes_event1;
    } else {
      result.relation = CausalRelation::unrelated;  // coincident events
    }
    return result;
  }
  result.relation = entangled ? CausalRelation::symmetric_entangled : CausalRelation::unrelated;
  return result;
}

std::string_view to_string(IntervalClass c) {
  switch (c) {
    case IntervalClass::timelike: return "timelike";
    case IntervalClass::lightlike: return "lightlike";
    case IntervalClass::spacelike: return "spacelike";
  }
  throw std::invalid_argument("unknown interval class");
}

std::string_view to_string(CausalRelation r) {
  switch (r) {
    case CausalRelation::event1_causes_event2: return "event1_causes_event2";
    case CausalRelation::event2_causes_event1: return "event2_causes_event1";
    case CausalRelation::unrelated: return "unrelated";
    case CausalRelation::symmetric_entangled: return "symmetric_entangled";
  }
  throw std::invalid_argument("unknown causal relation");
}

std::string_view to_string(EventOrdering o) {
  switch (o) {
    case EventOrdering::event1_first: return "event1_first";
    case EventOrdering::event2_first: return "event2_first";
    case EventOrdering::simultaneous: return "simultaneous";
  }
  throw std::invalid_argument("unknown ordering");
}

}  // namespace bellsim
