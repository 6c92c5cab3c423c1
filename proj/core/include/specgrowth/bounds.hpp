// bounds.hpp — closed-form upper bounds for the bottom of the (essential)
// spectrum in terms of an exponential volume-growth rate mu and the jump
// size of the metric that produced it.
//
// `halved` selects the variant for metrics adapted in the full convention
// (no 1/2 in front of the weighted sum); all bounds are then divided by 2.
// An infinite rate propagates: brooks/jump return infinity (the statements
// carry no information there); normalized_bound returns its limit 1, which
// is the trivially true bound for the normalized operator.
#pragma once

#include <string>

#include "specgrowth/metrics.hpp"

namespace specgrowth {

// mu^2 / 4   (mu^2 / 8 when halved). Requires mu >= 0.
double brooks_bound(double mu, bool halved = false);

// 2 (e^{mu/2} - 1)^2 / (delta^2 e^mu + 1), computed via expm1 so the small-mu
// regime keeps full precision. Requires mu >= 0 and delta in [0, 1]; jump
// sizes above 1 must be rescaled by the caller (see make_bound_set).
double jump_bound(double mu, double delta, bool halved = false);

// 1 - 2 e^{mu/2} / (1 + e^mu)  ==  (e^{mu/2} - 1)^2 / (1 + e^mu), for the
// normalized operator (m = n) under the natural metric. Equals
// jump_bound(mu, 1)/2 exactly. Requires mu >= 0; value in [0, 1].
double normalized_bound(double mu);

struct BoundSet {
  double brooks = 0.0;
  double jump_refined = 0.0;
  double normalized = 0.0;
  bool halved = false;
  double mu = 0.0;            // rate the set was computed from (unscaled)
  std::string rate_label;     // "mu" or "mu_tilde"
  double delta = 0.0;         // jump lower bound fed to jump_bound
  double delta_scale = 1.0;   // rescale factor applied when delta_max > 1
};

// Assembles all three bounds from a rate estimate and the metric's jump size.
// Negative rate estimates (finite-window artifacts) are clamped to 0. When
// jump.delta_max > 1 the refined bound is evaluated at the rescaled pair
// (mu * delta_max, delta_min / delta_max); brooks/normalized keep mu as is.
BoundSet make_bound_set(double mu, std::string rate_label, JumpSize jump, bool halved);

}  // namespace specgrowth
