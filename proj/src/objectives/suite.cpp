#include "swarmgrad/objectives/suite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swarmgrad {

namespace {

Vec constant_bounds(int dim, double half_range)
{
    return Vec::Constant(dim, half_range);
}

Objective make_sphere(int dim)
{
    Objective f(
        "f1_sphere", -constant_bounds(dim, 5.12), constant_bounds(dim, 5.12),
        [](const Vec &x) { return x.squaredNorm(); },
        [](const Vec &x) { return Vec(2.0 * x); },
        [](const Vec &x) {
            return Mat(2.0 * Mat::Identity(x.size(), x.size()));
        });
    f.set_known_optimum(0.0, Vec::Zero(dim));
    return f;
}

Objective make_rosenbrock(int dim)
{
    Objective f(
        "f2_rosenbrock", -constant_bounds(dim, 2.048),
        constant_bounds(dim, 2.048),
        [](const Vec &x) {
            double v = 0;
            for (int i = 0; i + 1 < x.size(); ++i)
            {
                double a = x[i + 1] - x[i] * x[i];
                double b = 1.0 - x[i];
                v += 100.0 * a * a + b * b;
            }
            return v;
        },
        [](const Vec &x) {
            Vec g = Vec::Zero(x.size());
            for (int i = 0; i + 1 < x.size(); ++i)
            {
                double a = x[i + 1] - x[i] * x[i];
                g[i] += -400.0 * x[i] * a - 2.0 * (1.0 - x[i]);
                g[i + 1] += 200.0 * a;
            }
            return g;
        },
        [](const Vec &x) {
            const int d = static_cast<int>(x.size());
            Mat h = Mat::Zero(d, d);
            for (int i = 0; i + 1 < d; ++i)
            {
                h(i, i) += 1200.0 * x[i] * x[i] - 400.0 * x[i + 1] + 2.0;
                h(i + 1, i + 1) += 200.0;
                h(i, i + 1) += -400.0 * x[i];
                h(i + 1, i) += -400.0 * x[i];
            }
            return h;
        });
    f.set_known_optimum(0.0, Vec::Ones(dim));
    return f;
}

Objective make_step(int dim)
{
    Objective f(
        "f3_step", -constant_bounds(dim, 5.12), constant_bounds(dim, 5.12),
        [](const Vec &x) {
            double v = 0;
            for (int i = 0; i < x.size(); ++i)
                v += std::floor(x[i]);
            return v;
        },
        // Piecewise constant: the gradient is the zero vector by convention.
        [](const Vec &x) { return Vec(Vec::Zero(x.size())); });
    f.set_known_optimum(-6.0 * dim, Vec::Constant(dim, -5.12));
    return f;
}

Objective make_quartic(int dim, std::uint64_t noise_seed)
{
    Objective f(
        "f4_quartic", -constant_bounds(dim, 1.28), constant_bounds(dim, 1.28),
        [](const Vec &x) {
            double v = 0;
            for (int i = 0; i < x.size(); ++i)
            {
                double sq = x[i] * x[i];
                v += (i + 1.0) * sq * sq;
            }
            return v;
        },
        // Gradient of the deterministic part only.
        [](const Vec &x) {
            Vec g(x.size());
            for (int i = 0; i < x.size(); ++i)
                g[i] = 4.0 * (i + 1.0) * x[i] * x[i] * x[i];
            return g;
        });
    f.set_known_optimum(0.0, Vec::Zero(dim));
    f.configure_noise(1.0, noise_seed);
    return f;
}

// Value of the foxholes function at the (-32, -32) grid node, pinned so the
// known-optimum contract can be checked tightly.
constexpr double kFoxholesOptimum = 0.99800383881864918;

Objective make_foxholes()
{
    Objective f(
        "f5_foxholes", -constant_bounds(2, 65.536), constant_bounds(2, 65.536),
        [](const Vec &x) {
            // 25 foxholes on the {-32,-16,0,16,32}^2 grid, c_j = j.
            static const double grid[5] = {-32.0, -16.0, 0.0, 16.0, 32.0};
            double sum = 0.002;
            for (int j = 0; j < 25; ++j)
            {
                double d0 = x[0] - grid[j % 5];
                double d1 = x[1] - grid[j / 5];
                double p0 = d0 * d0 * d0;
                double p1 = d1 * d1 * d1;
                sum += 1.0 / ((j + 1.0) + p0 * p0 + p1 * p1);
            }
            return 1.0 / sum;
        });
    Vec loc(2);
    loc << -32.0, -32.0;
    f.set_known_optimum(kFoxholesOptimum, loc);
    return f;
}

} // namespace

const std::vector<SuiteEntry> &dejong_suite()
{
    static const std::vector<SuiteEntry> suite = {
        {"f1_sphere", Differentiability::smooth, {10, 20, 30}},
        {"f2_rosenbrock", Differentiability::smooth, {10, 20, 30}},
        {"f3_step", Differentiability::piecewise_constant, {10, 20, 30}},
        {"f4_quartic", Differentiability::noisy, {10, 20, 30}},
        {"f5_foxholes", Differentiability::smooth_but_use_fd, {2}},
    };
    return suite;
}

std::vector<std::string> objective_names()
{
    std::vector<std::string> names;
    for (const auto &e : dejong_suite())
        names.push_back(e.name);
    std::sort(names.begin(), names.end());
    return names;
}

bool is_known_objective(const std::string &name)
{
    for (const auto &e : dejong_suite())
        if (e.name == name)
            return true;
    return false;
}

Objective make_objective(const std::string &name, int dim,
                         std::uint64_t noise_seed)
{
    if (dim < 1)
        throw std::invalid_argument("objective dimension must be >= 1");
    if (name == "f1_sphere")
        return make_sphere(dim);
    if (name == "f2_rosenbrock")
    {
        if (dim < 2)
            throw std::invalid_argument("f2_rosenbrock needs dim >= 2");
        return make_rosenbrock(dim);
    }
    if (name == "f3_step")
        return make_step(dim);
    if (name == "f4_quartic")
        return make_quartic(dim, noise_seed);
    if (name == "f5_foxholes")
    {
        if (dim != 2)
            throw std::invalid_argument("f5_foxholes is fixed at dim = 2");
        return make_foxholes();
    }
    throw std::invalid_argument("unknown objective: " + name);
}

double default_success_threshold(const std::string &name, int dim)
{
    if (name == "f5_foxholes")
        return 0.999;
    Objective f = make_objective(name, dim);
    return f.optimum_value() + 1e-3;
}

} // namespace swarmgrad
