#pragma once

// Adaptive stepping to an exact endpoint with a persistent step guess.

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "dplab/errors.hpp"

namespace dplab::detail {

namespace odeint = boost::numeric::odeint;

template <class Stepper, class System, class State>
void advance_to(Stepper& stepper, System&& system, State& state, double from, double to,
                double& dt, std::size_t max_steps = 1000000) {
  const double direction = to >= from ? 1.0 : -1.0;
  const double span = std::abs(to - from);
  if (span == 0.0) return;
  const double min_step = 1e-14 * std::max(1.0, std::max(std::abs(from), std::abs(to)));
  double t = from;
  dt = direction * std::min(std::abs(dt), span);
  std::size_t steps = 0;
  for (;;) {
    const bool last = direction * (t + dt - to) >= 0.0;
    if (last) dt = to - t;
    const auto result = stepper.try_step(system, state, t, dt);
    if (++steps > max_steps) throw NumericalError("ODE step budget exhausted");
    if (result == odeint::fail) {
      if (std::abs(dt) < min_step) {
        std::ostringstream msg;
        msg << "step-size underflow at x=" << t;
        throw NumericalError(msg.str());
      }
      continue;
    }
    // try_step leaves its proposal for the next step in dt.
    if (last) return;
  }
}

}  // namespace dplab::detail
