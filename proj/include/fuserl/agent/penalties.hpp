#pragma once

#include "fuserl/core/types.hpp"
#include "fuserl/explore/exploration.hpp"

namespace fuserl::agent {

struct ActorLossConfig {
  double eta = 1.2;     // bound-penalty weight in the actor objective
  double lambda = 0.2;  // critic-consistency weight
  double omega = 1.0;   // bound-penalty scale
  double beta = 0.3;    // bound-penalty exponent sharpness
  void validate() const;
};

struct CriticLossConfig {
  double varpi = 1.0;  // gate scale
  double zeta = 3.0;   // gate exponent offset
  double gamma = 0.9;  // discount used in the TD target
  bool gateEnabled = true;
  void validate() const;
};

/// Actor bound penalty, summed over action dimensions: zero strictly inside
/// the exploration box, omega * exp(deviation / (beta * boxWidth)) on dims at
/// or past a bound. Discontinuous at the boundary by construction.
double boundPenalty(const FusionAction& action, const ExplorationBounds& bounds,
                    const ActorLossConfig& cfg);

/// d(penalty)/d(action) per dimension; the boundary discontinuity keeps the
/// one-sided derivative of the owning branch.
Vector boundPenaltyGrad(const FusionAction& action, const ExplorationBounds& bounds,
                        const ActorLossConfig& cfg);

/// Bootstrap gate, multiplied over action dimensions: 1 strictly inside the
/// box, varpi / exp(zeta + deviation / boxWidth) on violating dims.
double bootstrapGate(const FusionAction& action, const ExplorationBounds& bounds,
                     const CriticLossConfig& cfg);

}  // namespace fuserl::agent
