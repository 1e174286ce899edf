#pragma once

#include "swarmgrad/core/objective.hpp"
#include "swarmgrad/core/rng.hpp"
#include "swarmgrad/core/vec.hpp"

namespace swarmgrad {

/// Two-point simultaneous-perturbation gradient estimate
///   g_i = [f(x + c*delta) - f(x - c*delta)] / (2 c delta_i)
/// with a caller-supplied Rademacher (+-1) perturbation. Consumes exactly
/// two evaluations.
Vec spsa_gradient(Objective &f, const Vec &x, double c_perturb,
                  const Vec &delta);

/// Same, drawing the +-1 perturbation entries from stream.
Vec spsa_gradient(Objective &f, const Vec &x, double c_perturb,
                  RngStream &stream);

/// Standard SPSA gain schedules over iteration t (0-based):
/// perturbation c_t = c0 / (t+1)^0.101, step a_t = a0 / (t+1)^0.602.
double spsa_perturbation_at(double c0, long t);
double spsa_step_at(double a0, long t);

} // namespace swarmgrad
