#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swarmgrad/core/rng.hpp"
#include "swarmgrad/gradsearch/descent.hpp"
#include "swarmgrad/gradsearch/line_search.hpp"
#include "swarmgrad/gradsearch/local_search.hpp"
#include "swarmgrad/gradsearch/spsa.hpp"
#include "swarmgrad/objectives/suite.hpp"

#include <cmath>
#include <stdexcept>

using namespace swarmgrad;

static Objective square_1d()
{
    Vec lo = Vec::Constant(1, -100.0), hi = Vec::Constant(1, 100.0);
    return Objective("sq", lo, hi, [](const Vec &x) { return x[0] * x[0]; });
}

static Mat random_pd(int d, RngStream &s)
{
    Mat m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m(i, j) = s.next_gaussian();
    return Mat(m.transpose() * m + Mat::Identity(d, d));
}

static Vec random_vec(int d, RngStream &s, double scale = 1.0)
{
    Vec v(d);
    for (int i = 0; i < d; ++i)
        v[i] = scale * s.next_gaussian();
    return v;
}

TEST_CASE("armijo accepts the half step on the square hand example")
{
    Objective f = square_1d();
    Vec x = Vec::Constant(1, 3.0);
    Vec d = Vec::Constant(1, -6.0);
    Vec g = Vec::Constant(1, 6.0);
    ArmijoResult r = armijo_backtrack(f, x, d, g, 9.0, {});
    CHECK(r.sufficient);
    CHECK(r.eta == 0.5); // eta=1 lands at f=9, rejected; eta=0.5 lands at 0
    CHECK(r.backtracks == 1);
    CHECK(r.f_new == 0.0);
    CHECK(r.evals_used == 2);
}

TEST_CASE("armijo accepts eta0 on affine decrease")
{
    Vec lo = Vec::Constant(1, -100.0), hi = Vec::Constant(1, 100.0);
    Objective f("affine", lo, hi, [](const Vec &x) { return 3.0 * x[0]; });
    Vec x = Vec::Zero(1);
    Vec d = Vec::Constant(1, -3.0);
    Vec g = Vec::Constant(1, 3.0);
    ArmijoResult r = armijo_backtrack(f, x, d, g, 0.0, {});
    CHECK(r.sufficient);
    CHECK(r.eta == 1.0);
    CHECK(r.backtracks == 0);
    CHECK(r.evals_used == 1);
}

TEST_CASE("armijo rejects non-descent directions")
{
    Objective f = square_1d();
    Vec x = Vec::Constant(1, 3.0);
    Vec g = Vec::Constant(1, 6.0);
    CHECK_THROWS_AS(armijo_backtrack(f, x, Vec(g), g, 9.0, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(armijo_backtrack(f, x, Vec(Vec::Zero(1)), g, 9.0, {}),
                    std::invalid_argument);
}

TEST_CASE("armijo reports failure after max_backtracks shrinks")
{
    Objective f = square_1d();
    Vec x = Vec::Constant(1, 3.0);
    Vec d = Vec::Constant(1, -6.0);
    Vec g = Vec::Constant(1, 6.0);
    LineSearchParams p;
    p.armijo_c = 0.999999; // quadratic overshoot never satisfies this
    p.max_backtracks = 5;
    ArmijoResult r = armijo_backtrack(f, x, d, g, 9.0, p);
    CHECK(!r.sufficient);
    CHECK(r.backtracks == 5);
    CHECK(r.eta == 1.0 * std::pow(0.5, 5));
    CHECK(r.evals_used == 5);
}

TEST_CASE("armijo stops at its evaluation cap")
{
    Objective f = square_1d();
    Vec x = Vec::Constant(1, 3.0);
    Vec d = Vec::Constant(1, -6.0);
    Vec g = Vec::Constant(1, 6.0);
    ArmijoResult r = armijo_backtrack(f, x, d, g, 9.0, {}, 1);
    CHECK(!r.sufficient);
    CHECK(r.evals_used == 1);
}

TEST_CASE("steepest descent step arithmetic")
{
    Vec x(2);
    x << 1.0, 2.0;
    Vec g(2);
    g << 2.0, 4.0;
    Vec next = steepest_descent_step(x, g, 0.5);
    CHECK(next[0] == 0.0);
    CHECK(next[1] == 0.0);

    Vec zero = Vec::Zero(2);
    CHECK(steepest_descent_step(x, zero, 0.7) == x);

    Vec x1 = Vec::Constant(1, 1.0);
    Vec g1 = Vec::Constant(1, 2.0);
    CHECK(steepest_descent_step(x1, g1, 0.1)[0] == doctest::Approx(0.8));

    CHECK_THROWS_AS(steepest_descent_step(x, g, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(steepest_descent_step(x, Vec(Vec::Zero(3)), 0.1),
                    std::invalid_argument);
}

TEST_CASE("newton step solves diagonal quadratics in one shot")
{
    Vec x(2);
    x << 1.0, 1.0;
    Vec g(2);
    g << 2.0, 4.0;
    Mat h = Mat::Zero(2, 2);
    h(0, 0) = 2.0;
    h(1, 1) = 4.0;
    Vec next = newton_step(x, g, h);
    CHECK(std::abs(next[0]) < 1e-14);
    CHECK(std::abs(next[1]) < 1e-14);

    Vec y(2);
    y << 3.0, 4.0;
    Vec gy = 2.0 * y;
    Mat id2 = 2.0 * Mat::Identity(2, 2);
    Vec next2 = newton_step(y, gy, id2);
    CHECK(next2.lpNorm<Eigen::Infinity>() < 1e-14);

    Vec half = newton_step(x, g, h, 0.5);
    CHECK(half[0] == doctest::Approx(0.5));
    CHECK(half[1] == doctest::Approx(0.5));
}

TEST_CASE("unusable hessians are rejected")
{
    Vec x(2);
    x << 1.0, 1.0;
    Vec g(2);
    g << 2.0, 4.0;
    CHECK_THROWS_AS(newton_step(x, g, Mat(Mat::Zero(2, 2))), HessianUnusable);

    Mat indef = Mat::Identity(2, 2);
    indef(0, 0) = -1.0;
    CHECK_THROWS_AS(newton_step(x, g, indef), HessianUnusable);
    CHECK(!try_newton_direction(g, Mat(Mat::Zero(2, 2))).has_value());
    CHECK(!try_newton_direction(g, indef).has_value());

    CHECK_THROWS_AS(newton_step(x, g, Mat(Mat::Zero(3, 3))),
                    std::invalid_argument);
    CHECK_THROWS_AS(newton_step(x, g, Mat(Mat::Identity(2, 2)), 0.0),
                    std::invalid_argument);
}

TEST_CASE("newton one-shot on random positive-definite quadratics")
{
    RngStream s(101);
    for (int trial = 0; trial < 50; ++trial)
    {
        int d = 2 + static_cast<int>(s.next_uniform() * 9); // D in [2, 10]
        Mat a = random_pd(d, s);
        Vec b = random_vec(d, s, 3.0);
        Vec x0 = random_vec(d, s, 2.0);
        Vec grad = a * x0 + b;
        Vec minimizer = a.ldlt().solve(-b);
        Vec landed = newton_step(x0, grad, a);
        CHECK((landed - minimizer).lpNorm<Eigen::Infinity>() < 1e-10);
    }
}

TEST_CASE("bfgs update is the identity when s equals y")
{
    QuasiNewtonState qn(2);
    Vec x0 = Vec::Zero(2);
    Vec g0(2);
    g0 << 1.0, 1.0;
    qn = bfgs_update(std::move(qn), x0, g0);
    Vec x1(2);
    x1 << 1.0, 0.0;
    Vec g1(2);
    g1 << 2.0, 1.0; // y = g1 - g0 = (1,0) = s
    qn = bfgs_update(std::move(qn), x1, g1);
    CHECK(!qn.last_update_skipped);
    CHECK(qn.inv_hessian.isApprox(Mat::Identity(2, 2), 1e-14));
}

TEST_CASE("bfgs resets to identity on failed curvature")
{
    QuasiNewtonState qn(2);
    Vec x0 = Vec::Zero(2);
    Vec g0(2);
    g0 << 1.0, 2.0;
    qn = bfgs_update(std::move(qn), x0, g0);
    Vec x1(2);
    x1 << 1.0, 0.0;
    qn = bfgs_update(std::move(qn), x1, g0); // y = 0
    CHECK(qn.last_update_skipped);
    CHECK(qn.inv_hessian == Mat::Identity(2, 2));
    CHECK(qn.prev_x == x1);
}

TEST_CASE("bfgs secant identity holds along a rosenbrock descent")
{
    Objective f = make_objective("f2_rosenbrock", 2);
    Vec x(2);
    x << -1.2, 1.0;
    double fx = f.evaluate(x);
    QuasiNewtonState qn(2);
    int accepted = 0;
    for (int iter = 0; iter < 80; ++iter)
    {
        Vec g = f.gradient(x);
        if (g.lpNorm<Eigen::Infinity>() < 1e-10)
            break;
        bool had_prev = qn.has_prev;
        Vec prev_x = qn.prev_x, prev_g = qn.prev_grad;
        qn = bfgs_update(std::move(qn), x, g);
        if (had_prev && !qn.last_update_skipped)
        {
            Vec s = x - prev_x;
            Vec y = g - prev_g;
            CHECK((qn.inv_hessian * y - s).lpNorm<Eigen::Infinity>() < 1e-12);
            CHECK((qn.inv_hessian - qn.inv_hessian.transpose())
                      .lpNorm<Eigen::Infinity>() < 1e-10);
            ++accepted;
        }
        Vec d = -(qn.inv_hessian * g);
        if (!(g.dot(d) < 0))
            d = -g;
        ArmijoResult step = armijo_backtrack(f, x, d, g, fx, {});
        if (!step.sufficient)
            break;
        x += step.eta * d;
        fx = step.f_new;
    }
    CHECK(accepted >= 10);
}

TEST_CASE("cg takes the steepest direction first and blends after")
{
    CgState st;
    Vec g1(2);
    g1 << 2.0, 0.0;
    auto [p1, st1] = cg_direction(std::move(st), g1);
    CHECK(p1[0] == -2.0);
    CHECK(p1[1] == 0.0);
    CHECK(st1.prev_grad_sqnorm == 4.0);

    Vec g2(2);
    g2 << 0.0, 1.0; // beta = 1/4
    auto [p2, st2] = cg_direction(std::move(st1), g2);
    CHECK(p2[0] == doctest::Approx(-0.5));
    CHECK(p2[1] == doctest::Approx(-1.0));

    // dim = 2, so the third call restarts
    Vec g3(2);
    g3 << 1.0, 1.0;
    auto [p3, st3] = cg_direction(std::move(st2), g3);
    CHECK(p3 == Vec(-g3));
    CHECK(st3.iters_since_restart == 1);
}

TEST_CASE("cg falls back to steepest descent on non-descent blends")
{
    CgState st;
    st.prev_direction = Vec(2);
    st.prev_direction << 100.0, 0.0;
    st.prev_grad_sqnorm = 1e-6; // huge beta pushes p uphill
    st.iters_since_restart = 1;
    Vec g(2);
    g << 1.0, 0.0;
    auto [p, st2] = cg_direction(std::move(st), g);
    CHECK(p == Vec(-g));
}

TEST_CASE("cg with the exact step solves the diagonal example in two iterations")
{
    Mat a = Mat::Zero(2, 2);
    a(0, 0) = 2.0;
    a(1, 1) = 20.0; // f = x1^2 + 10 x2^2
    Vec b = Vec::Zero(2);
    Vec x0(2);
    x0 << 1.0, 1.0;
    auto [x, iters] = cg_minimize_quadratic(a, b, x0, 10, 1e-10);
    CHECK(iters <= 2);
    CHECK((a * x + b).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("cg finite termination on random quadratics at dimension ten")
{
    RngStream s(202);
    for (int trial = 0; trial < 25; ++trial)
    {
        Mat a = random_pd(10, s);
        Vec b = random_vec(10, s, 2.0);
        Vec x0 = random_vec(10, s, 2.0);
        auto [x, iters] = cg_minimize_quadratic(a, b, x0, 12, 1e-8);
        CHECK(iters <= 12);
        CHECK((a * x + b).lpNorm<Eigen::Infinity>() < 1e-8);
    }
}

TEST_CASE("quadratic exact step arithmetic and guards")
{
    Vec g(2);
    g << 2.0, 0.0;
    Vec p = -g;
    Mat a = 2.0 * Mat::Identity(2, 2);
    CHECK(quadratic_exact_step(g, p, a) == doctest::Approx(0.5));
    CHECK_THROWS_AS(quadratic_exact_step(g, p, Mat(Mat::Zero(2, 2))),
                    std::invalid_argument);
}

TEST_CASE("spsa is exact on affine functions")
{
    // In one dimension the two-point estimate recovers the slope for either
    // perturbation sign.
    Vec lo1 = Vec::Constant(1, -10.0), hi1 = Vec::Constant(1, 10.0);
    Objective f1("affine1", lo1, hi1,
                 [](const Vec &x) { return 3.0 * x[0] + 2.0; });
    Vec x1 = Vec::Constant(1, 0.5);
    for (double sign : {1.0, -1.0})
    {
        Vec delta = Vec::Constant(1, sign);
        Vec g = spsa_gradient(f1, x1, 0.3, delta);
        CHECK(g[0] == doctest::Approx(3.0).epsilon(1e-12));
    }

    // In higher dimensions single estimates carry cross terms
    // (g_i = a_i + sum_{j != i} a_j d_j / d_i), but the average over the
    // perturbation patterns is exactly the slope vector.
    Vec lo = Vec::Constant(2, -10.0), hi = Vec::Constant(2, 10.0);
    Objective f("affine2", lo, hi,
                [](const Vec &x) { return 3.0 * x[0] + 5.0 * x[1] + 2.0; });
    Vec x(2);
    x << 0.5, -0.25;
    Vec dpp(2), dpm(2);
    dpp << 1.0, 1.0;
    dpm << 1.0, -1.0;
    Vec gpp = spsa_gradient(f, x, 0.3, dpp);
    Vec gpm = spsa_gradient(f, x, 0.3, dpm);
    CHECK(gpp[0] == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(gpp[1] == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(gpm[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(gpm[1] == doctest::Approx(2.0).epsilon(1e-12));
    Vec mean = 0.5 * (gpp + gpm);
    CHECK(mean[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(mean[1] == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("spsa hand example on the sphere")
{
    Objective f = make_objective("f1_sphere", 2);
    Vec x(2);
    x << 1.0, 0.0;
    Vec delta(2);
    delta << 1.0, 1.0;
    long long before = f.eval_count();
    Vec g = spsa_gradient(f, x, 0.1, delta);
    CHECK(f.eval_count() - before == 2);
    // f(1.1, 0.1) - f(0.9, -0.1) = 1.22 - 0.82 = 0.40, over 2c = 0.2
    CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(g[1] == doctest::Approx(2.0).epsilon(1e-12));

    Vec origin = Vec::Zero(2);
    Vec g0 = spsa_gradient(f, origin, 0.1, delta);
    CHECK(g0[0] == 0.0);
    CHECK(g0[1] == 0.0);
}

TEST_CASE("spsa stream overload draws a Rademacher perturbation")
{
    Objective f = make_objective("f1_sphere", 2);
    Vec x(2);
    x << 1.0, 0.0;
    RngStream s1(42), s2(42);
    Vec a = spsa_gradient(f, x, 0.1, s1);
    Vec b = spsa_gradient(f, x, 0.1, s2);
    CHECK(a == b);
    CHECK_THROWS_AS(spsa_gradient(f, x, 0.0, s1), std::invalid_argument);
}

TEST_CASE("spsa gain schedules")
{
    CHECK(spsa_perturbation_at(0.5, 0) == 0.5);
    CHECK(spsa_step_at(0.1, 0) == 0.1);
    CHECK(spsa_perturbation_at(0.5, 9) ==
          doctest::Approx(0.5 / std::pow(10.0, 0.101)));
    CHECK(spsa_step_at(0.1, 9) == doctest::Approx(0.1 / std::pow(10.0, 0.602)));
    CHECK(spsa_perturbation_at(0.5, 5) > spsa_perturbation_at(0.5, 6));
}

TEST_CASE("local search solves the sphere from the classic start")
{
    Objective f = make_objective("f1_sphere", 2);
    Vec x0(2);
    x0 << 3.0, 4.0;
    LocalResult r = local_search(LocalMethod::bfgs, f, x0, {1000, 100000});
    CHECK(r.x.norm() < 1e-8);
    CHECK(r.converged);
}

TEST_CASE("local search under a zero budget returns the start")
{
    Objective f = make_objective("f2_rosenbrock", 2);
    Vec x0(2);
    x0 << -1.2, 1.0;
    LocalResult r = local_search(LocalMethod::bfgs, f, x0, {0, 100000});
    CHECK(r.x == x0);
    CHECK(r.value == doctest::Approx(24.2));
    CHECK(r.evals_used == 1); // the initial evaluation is the returned value
    CHECK(r.iterations == 0);
}

TEST_CASE("bfgs solves rosenbrock from the classic start within 300 evals")
{
    Objective f = make_objective("f2_rosenbrock", 2);
    Vec x0(2);
    x0 << -1.2, 1.0;
    LocalResult r = local_search(LocalMethod::bfgs, f, x0, {300, 100000});
    CHECK(r.value < 1e-6);
    CHECK(r.evals_used <= 300);
}

TEST_CASE("every method returns a point no worse than its start")
{
    RngStream s(77);
    for (auto method : {LocalMethod::sd, LocalMethod::newton, LocalMethod::bfgs,
                        LocalMethod::cg})
    {
        for (int trial = 0; trial < 5; ++trial)
        {
            Objective f = make_objective("f2_rosenbrock", 4);
            Vec x0(4);
            for (int i = 0; i < 4; ++i)
                x0[i] = -2.048 + 4.096 * s.next_uniform();
            double fx0 = 0;
            {
                Objective probe = make_objective("f2_rosenbrock", 4);
                fx0 = probe.evaluate(x0);
            }
            LocalResult r = local_search(method, f, x0, {60, 100000});
            CHECK(r.value <= fx0);
            CHECK(r.evals_used <= 60);
        }
    }
}

TEST_CASE("local search respects budgets on finite-difference objectives")
{
    Objective f = make_objective("f5_foxholes", 2);
    Vec x0(2);
    x0 << 10.0, -20.0;
    for (long long budget : {5LL, 17LL, 100LL})
    {
        f.reset_eval_count();
        LocalResult r = local_search(LocalMethod::bfgs, f, x0, {budget, 100000});
        CHECK(r.evals_used <= budget);
        CHECK(r.evals_used == f.eval_count());
    }
}

TEST_CASE("local search stops immediately at a stationary point")
{
    Objective f = make_objective("f2_rosenbrock", 2);
    Vec opt = Vec::Ones(2);
    LocalResult r = local_search(LocalMethod::bfgs, f, opt, {100, 100000});
    CHECK(r.converged);
    CHECK(r.iterations == 0);
    CHECK(r.value == 0.0);
}

TEST_CASE("newton local search descends on rosenbrock")
{
    Objective f = make_objective("f2_rosenbrock", 2);
    Vec x0(2);
    x0 << -1.2, 1.0;
    LocalResult r = local_search(LocalMethod::newton, f, x0, {300, 100000});
    CHECK(r.value < 1e-6);
}
