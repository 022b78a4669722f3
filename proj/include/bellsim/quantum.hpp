#pragma once

#include <optional>

#include "bellsim/angle.hpp"
#include "bellsim/rng.hpp"
#include "bellsim/series.hpp"

namespace bellsim {

/// Photon pair carrying one shared, definite polarization. The first
/// measurement collapses the pair: onto the measuring polarizer's axis when
/// the photon passes, onto that axis + 90 degrees when it is blocked. The
/// partner photon is then measured against the collapsed direction.
struct PairState {
  Angle shared_polarization;
  std::optional<Angle> collapsed;
};

/// Joint outcome distribution for one pair, cells keyed by (bit_a, bit_b).
struct JointProbabilities {
  double p11 = 0.0;
  double p10 = 0.0;
  double p01 = 0.0;
  double p00 = 0.0;

  double mismatch_mass() const { return p10 + p01; }
  double sum() const { return p11 + p10 + p01 + p00; }
};

/// Malus's law: cos^2 of the separation between polarization and axis.
/// Exactly 1 for aligned axes and exactly 0 for perpendicular ones, so
/// degenerate trials sample deterministically.
double malus_pass_probability(Angle photon_polarization, Angle polarizer_axis);

/// Measure both photons of one pair, first measurement collapsing the shared
/// polarization as described on PairState. Throws std::logic_error if the
/// pair was already measured.
TrialOutcome sample_trial_qm(PairState& pair, Angle axis_a, Angle axis_b,
                             bool measure_a_first, TrialRng& rng);

/// Closed-form mismatch probability sin^2(theta) for polarizers separated by
/// theta. Input is reduced to [0, 90] degrees first.
double analytic_mismatch_qm(Angle theta_rel);

/// Exact four-cell outcome distribution for a pair with known polarization
/// phi. Order matters cell by cell; the mismatch mass p10 + p01 does not.
JointProbabilities joint_probabilities_qm(Angle phi, Angle axis_a, Angle axis_b,
                                          bool measure_a_first);

}  // namespace bellsim
