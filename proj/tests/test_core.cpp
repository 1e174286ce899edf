#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swarmgrad/core/budget.hpp"
#include "swarmgrad/core/objective.hpp"
#include "swarmgrad/core/rng.hpp"
#include "swarmgrad/core/vec.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

using namespace swarmgrad;

TEST_CASE("uniform draws are deterministic per seed")
{
    RngStream a(42), b(42);
    for (int i = 0; i < 1000; ++i)
        CHECK(a.next_uniform() == b.next_uniform());
}

TEST_CASE("uniform draws stay in [0,1)")
{
    for (std::uint64_t seed : {0ull, 1ull, 42ull, 123456789ull})
    {
        RngStream s(seed);
        for (int i = 0; i < 10000; ++i)
        {
            double d = s.next_uniform();
            CHECK(d >= 0.0);
            CHECK(d < 1.0);
        }
    }
}

TEST_CASE("golden first uniforms")
{
    RngStream s0(0);
    CHECK(s0.next_uniform() == 0.15979336337046079);
    CHECK(s0.next_uniform() == 0.99214520962982877);

    RngStream s42(42);
    CHECK(s42.next_uniform() == 0.75515553295453897);
    CHECK(s42.next_uniform() == 0.63903139385469743);
    CHECK(s42.next_uniform() == 0.7521452007480266);
}

TEST_CASE("consecutive draws differ")
{
    RngStream s(5);
    double d1 = s.next_uniform();
    double d2 = s.next_uniform();
    CHECK(d1 != d2);
}

TEST_CASE("derived substreams are deterministic and independent")
{
    RngStream p1 = RngStream(7).derive(std::uint64_t{0});
    RngStream p2 = RngStream(7).derive(std::uint64_t{0});
    for (int i = 0; i < 100; ++i)
        CHECK(p1.next_uniform() == p2.next_uniform());

    RngStream a = RngStream(7).derive(std::uint64_t{0});
    RngStream b = RngStream(7).derive(std::uint64_t{1});
    RngStream c = RngStream(8).derive(std::uint64_t{0});
    CHECK(a.next_uniform() == 0.77243979075306268);
    CHECK(b.next_uniform() == 0.26951077918227384);
    CHECK(c.next_uniform() == 0.032499484269284951);
}

TEST_CASE("derive depends on the seed, not the parent's draw position")
{
    RngStream fresh(19);
    RngStream advanced(19);
    for (int i = 0; i < 37; ++i)
        advanced.next_uniform();
    RngStream c1 = fresh.derive(std::uint64_t{4});
    RngStream c2 = advanced.derive(std::uint64_t{4});
    for (int i = 0; i < 20; ++i)
        CHECK(c1.next_uniform() == c2.next_uniform());
}

TEST_CASE("label-derived substreams are deterministic and distinct")
{
    RngStream a = RngStream(42).derive("standard_pso");
    CHECK(a.next_uniform() == 0.64156321009488537);

    RngStream b1 = RngStream(42).derive("two_phase");
    RngStream b2 = RngStream(42).derive("two_phase");
    CHECK(b1.next_uniform() == b2.next_uniform());

    RngStream c = RngStream(42).derive("standard_pso");
    RngStream d = RngStream(42).derive("grpso");
    CHECK(c.next_uniform() != d.next_uniform());
}

TEST_CASE("gaussian draws are reproducible with the requested moments")
{
    RngStream g(0);
    CHECK(g.next_gaussian() == 0.58937880373630924);
    CHECK(g.next_gaussian() == -0.23249007105176506);

    RngStream m(3);
    CHECK(m.next_gaussian(5.0, 2.0) == 5.8550675771483265);

    RngStream big(11);
    double sum = 0.0, sumsq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i)
    {
        double z = big.next_gaussian();
        sum += z;
        sumsq += z * z;
    }
    double mean = sum / n;
    double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("sign draws are Rademacher")
{
    RngStream s(42);
    int expected[8] = {-1, -1, -1, -1, 1, -1, -1, -1};
    for (int e : expected)
        CHECK(s.next_sign() == e);

    RngStream t(9);
    int plus = 0, minus = 0;
    for (int i = 0; i < 1000; ++i)
    {
        int v = t.next_sign();
        CHECK((v == 1 || v == -1));
        (v == 1 ? plus : minus)++;
    }
    CHECK(plus > 400);
    CHECK(minus > 400);
}

TEST_CASE("eval budget defaults")
{
    EvalBudget b;
    CHECK(b.max_evals == 0);
    CHECK(b.max_iters == 1'000'000);
    EvalBudget c{500, 50};
    CHECK(c.max_evals == 500);
    CHECK(c.max_iters == 50);
}

TEST_CASE("finiteness guards reject NaN and infinity")
{
    Vec ok(2);
    ok << 1.0, 2.0;
    CHECK_NOTHROW(require_finite(ok, "test"));
    CHECK(all_finite(ok));

    Vec bad(2);
    bad << 1.0, std::nan("");
    CHECK(!all_finite(bad));
    CHECK_THROWS_AS(require_finite(bad, "test"), std::domain_error);

    Vec inf(1);
    inf << INFINITY;
    CHECK_THROWS_AS(require_finite(inf, "test"), std::domain_error);
    CHECK_THROWS_AS(require_finite(std::nan(""), "test"), std::domain_error);
}

TEST_CASE("dimension guard")
{
    Vec a(2), b(3);
    a.setZero();
    b.setZero();
    CHECK_THROWS_AS(require_same_dim(a, b, "test"), std::invalid_argument);
    CHECK_NOTHROW(require_same_dim(a, a, "test"));
}

TEST_CASE("box and symmetric clamps")
{
    Vec lo = Vec::Constant(2, -1.0);
    Vec hi = Vec::Constant(2, 1.0);
    Vec v(2);
    v << -3.0, 0.5;
    Vec c = clamp_to_box(v, lo, hi);
    CHECK(c[0] == -1.0);
    CHECK(c[1] == 0.5);

    Vec lim = Vec::Constant(2, 2.0);
    Vec w(2);
    w << 5.0, -0.25;
    Vec s = clamp_symmetric(w, lim);
    CHECK(s[0] == 2.0);
    CHECK(s[1] == -0.25);
}

static Objective quadratic_handle()
{
    Vec lo = Vec::Constant(2, -10.0);
    Vec hi = Vec::Constant(2, 10.0);
    return Objective(
        "quad", lo, hi, [](const Vec &x) { return x.squaredNorm(); },
        [](const Vec &x) { return Vec(2.0 * x); });
}

TEST_CASE("eval counter increments by exactly one per evaluation")
{
    Objective f = quadratic_handle();
    Vec x = Vec::Zero(2);
    CHECK(f.eval_count() == 0);
    f.evaluate(x);
    CHECK(f.eval_count() == 1);
    f.evaluate(x);
    f.evaluate(x);
    CHECK(f.eval_count() == 3);

    f.gradient(x); // analytic: free
    CHECK(f.eval_count() == 3);
    CHECK(f.gradient_eval_cost() == 0);

    f.fd_gradient(x, 1e-6); // central differences: 2 per dimension
    CHECK(f.eval_count() == 7);

    f.reset_eval_count();
    CHECK(f.eval_count() == 0);
}

TEST_CASE("objective rejects non-finite values")
{
    Objective f = quadratic_handle();
    Vec bad(2);
    bad << std::nan(""), 0.0;
    CHECK_THROWS_AS(f.evaluate(bad), std::domain_error);
    CHECK_THROWS_AS(f.gradient(bad), std::domain_error);

    Vec lo = Vec::Constant(1, -1.0), hi = Vec::Constant(1, 1.0);
    Objective nan_out("nan_out", lo, hi,
                      [](const Vec &) { return std::nan(""); });
    Vec x = Vec::Zero(1);
    CHECK_THROWS_AS(nan_out.evaluate(x), std::domain_error);
}

TEST_CASE("objective rejects dimension mismatches and bad bounds")
{
    Objective f = quadratic_handle();
    Vec wrong = Vec::Zero(3);
    CHECK_THROWS_AS(f.evaluate(wrong), std::invalid_argument);
    CHECK_THROWS_AS(f.gradient(wrong), std::invalid_argument);
    CHECK_THROWS_AS(f.fd_gradient(wrong, 1e-6), std::invalid_argument);

    Vec lo = Vec::Constant(2, 1.0), hi = Vec::Constant(2, -1.0);
    CHECK_THROWS_AS(Objective("bad", lo, hi, [](const Vec &) { return 0.0; }),
                    std::invalid_argument);
}

TEST_CASE("copied handles own independent counters")
{
    Objective f = quadratic_handle();
    Vec x = Vec::Zero(2);
    f.evaluate(x);
    Objective g = f;
    g.evaluate(x);
    g.evaluate(x);
    CHECK(f.eval_count() == 1);
    CHECK(g.eval_count() == 3);
}
