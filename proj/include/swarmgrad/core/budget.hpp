#pragma once

#include <cstdint>

namespace swarmgrad {

/// Evaluation budget shared by all engines. max_evals is the primary
/// fairness unit (function evaluations); max_iters is a secondary cap.
/// Engines stop at or before whichever limit is hit first.
struct EvalBudget
{
    long long max_evals = 0;
    long long max_iters = 1'000'000;
};

} // namespace swarmgrad
