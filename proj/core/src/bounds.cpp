#include "specgrowth/bounds.hpp"

#include <cmath>
#include <sstream>

#include "specgrowth/errors.hpp"
#include "specgrowth/util.hpp"

namespace specgrowth {

namespace {

void require_rate(double mu, const char* fn) {
  if (std::isnan(mu) || mu < 0.0) {
    std::ostringstream os;
    os << fn << " needs a rate mu >= 0, got " << mu;
    throw validation_error(os.str());
  }
}

}  // namespace

double brooks_bound(double mu, bool halved) {
  require_rate(mu, "brooks_bound");
  double v = mu * mu / 4.0;
  return halved ? v / 2.0 : v;
}

double jump_bound(double mu, double delta, bool halved) {
  require_rate(mu, "jump_bound");
  if (std::isnan(delta) || delta < 0.0 || delta > 1.0) {
    std::ostringstream os;
    os << "jump_bound needs delta in [0, 1], got " << delta
       << " (rescale the metric so the largest jump is 1 first)";
    throw validation_error(os.str());
  }
  if (std::isinf(mu)) return kInf;
  double em = std::expm1(mu / 2.0);  // e^{mu/2} - 1 without cancellation
  double v = 2.0 * em * em / (delta * delta * std::exp(mu) + 1.0);
  return halved ? v / 2.0 : v;
}

double normalized_bound(double mu) {
  require_rate(mu, "normalized_bound");
  if (std::isinf(mu)) return 1.0;
  double em = std::expm1(mu / 2.0);
  return em * em / (1.0 + std::exp(mu));
}

BoundSet make_bound_set(double mu, std::string rate_label, JumpSize jump, bool halved) {
  BoundSet set;
  set.mu = mu < 0.0 ? 0.0 : mu;
  set.rate_label = std::move(rate_label);
  set.halved = halved;
  set.brooks = brooks_bound(set.mu, halved);
  set.normalized = normalized_bound(set.mu);
  if (jump.delta_max > 1.0) {
    set.delta_scale = jump.delta_max;
    set.delta = jump.delta_min / jump.delta_max;
    set.jump_refined = std::isinf(set.mu)
                           ? kInf
                           : jump_bound(set.mu * jump.delta_max, set.delta, halved);
  } else {
    set.delta = jump.delta_min;
    set.jump_refined = jump_bound(set.mu, set.delta, halved);
  }
  return set;
}

}  // namespace specgrowth
