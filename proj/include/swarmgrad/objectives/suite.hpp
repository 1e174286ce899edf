#pragma once

#include "swarmgrad/core/objective.hpp"

#include <string>
#include <vector>

namespace swarmgrad {

enum class Differentiability
{
    smooth,            ///< analytic gradient provided
    piecewise_constant,///< gradient is the zero vector by convention
    noisy,             ///< gradient of the deterministic part
    smooth_but_use_fd  ///< smooth, but gradients via finite differences
};

struct SuiteEntry
{
    std::string name;
    Differentiability differentiability;
    std::vector<int> default_dims;
};

/// The five-function De Jong test suite, in its classic form:
///   f1_sphere      sum x_i^2                       on [-5.12, 5.12]^D
///   f2_rosenbrock  sum 100(x_{i+1}-x_i^2)^2+(1-x_i)^2  on [-2.048, 2.048]^D
///   f3_step        sum floor(x_i)                  on [-5.12, 5.12]^D
///   f4_quartic     sum i*x_i^4 + N(0,1) noise      on [-1.28, 1.28]^D
///   f5_foxholes    Shekel's foxholes, fixed 2-D    on [-65.536, 65.536]^2
const std::vector<SuiteEntry> &dejong_suite();

/// Names accepted by make_objective, sorted.
std::vector<std::string> objective_names();

bool is_known_objective(const std::string &name);

/// Builds a fresh handle; throws std::invalid_argument on an unknown name
/// or an unsupported dimension (f5 is fixed at D = 2, f2 needs D >= 2).
/// f4 is created with live unit-Gaussian noise seeded with noise_seed;
/// disable or reseed via the handle.
Objective make_objective(const std::string &name, int dim,
                         std::uint64_t noise_seed = 0);

/// Default success threshold for harness runs: known optimum + 1e-3 for
/// f1..f4, 0.999 absolute for f5.
double default_success_threshold(const std::string &name, int dim);

} // namespace swarmgrad
