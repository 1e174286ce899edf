#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace swarmgrad {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline bool all_finite(const Vec &v)
{
    return v.allFinite();
}

/// Throws std::domain_error when any entry of v is NaN or infinite.
inline void require_finite(const Vec &v, const char *what)
{
    if (!v.allFinite())
        throw std::domain_error(std::string("non-finite vector in ") + what);
}

inline void require_finite(double x, const char *what)
{
    if (!std::isfinite(x))
        throw std::domain_error(std::string("non-finite value in ") + what);
}

inline void require_same_dim(const Vec &a, const Vec &b, const char *what)
{
    if (a.size() != b.size())
        throw std::invalid_argument(std::string("dimension mismatch in ") + what);
}

/// Component-wise clamp of v into [lo, hi].
inline Vec clamp_to_box(Vec v, const Vec &lo, const Vec &hi)
{
    return v.cwiseMax(lo).cwiseMin(hi);
}

/// Component-wise clamp into [-limit, limit]; limit entries must be >= 0.
inline Vec clamp_symmetric(Vec v, const Vec &limit)
{
    return v.cwiseMax(-limit).cwiseMin(limit);
}

} // namespace swarmgrad
