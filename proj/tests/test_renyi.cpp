#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gleak/renyi.hpp"
#include "testutil.hpp"

using namespace gleak;

namespace {

// Independent straight-line Shannon implementations used as the order-one
// oracle; kept free of the library's log-sum-exp machinery.
double shannon_entropy(const Distribution& p) {
    double h = 0.0;
    for (double v : p.probs)
        if (v > 0.0) h -= v * std::log(v);
    return h;
}

double shannon_kl(const Distribution& p, const Distribution& q) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.probs[i] > 0.0) d += p.probs[i] * std::log(p.probs[i] / q.probs[i]);
    return d;
}

double shannon_cond_entropy(const JointSource& j) {
    double h = 0.0;
    for (std::size_t y = 0; y < j.ny(); ++y) {
        if (j.py[y] <= 0.0) continue;
        for (double post : j.posteriors[y])
            if (post > 0.0) h -= j.py[y] * post * std::log(post);
    }
    return h;
}

} // namespace

TEST_CASE("order construction") {
    CHECK(Order::of(1.0).is_one());
    CHECK(Order::of(std::numeric_limits<double>::infinity()).is_infinity());
    CHECK(Order::of(2.0).alpha_value() == 2.0);
    CHECK_THROWS_AS(Order::alpha(0.0), validation_error);
    CHECK_THROWS_AS(Order::alpha(-1.0), validation_error);
    CHECK_THROWS_AS(Order::alpha(1.0), validation_error);
}

TEST_CASE("divergence closed cases") {
    auto u = make_distribution({"a", "b"}, {0.5, 0.5});
    auto q = make_distribution({"a", "b"}, {0.25, 0.75});
    auto pm = make_distribution({"a", "b"}, {1.0, 0.0});

    for (double a : {0.5, 2.0, 5.0}) {
        CHECK(renyi_divergence(u, u, Order::of(a)).value() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(renyi_divergence(q, q, Order::of(a)).value() == doctest::Approx(0.0).epsilon(1e-12));
    }
    CHECK(renyi_divergence(u, u, Order::one()).value() == 0.0);
    CHECK(renyi_divergence(u, u, Order::infinity()).value() == 0.0);

    // max-ratio form of the order-infinity divergence
    CHECK(renyi_divergence(u, q, Order::infinity()).value() ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));

    // missing mass at order > 1 is infinite
    CHECK(renyi_divergence(u, pm, Order::of(2.0)).is_infinite());
    CHECK(renyi_divergence(u, pm, Order::one()).is_infinite());
    CHECK(renyi_divergence(u, pm, Order::infinity()).is_infinite());

    // disjoint supports at order < 1: vanishing sum, infinite divergence
    auto left = make_distribution({"a", "b"}, {1.0, 0.0});
    auto right = make_distribution({"a", "b"}, {0.0, 1.0});
    CHECK(renyi_divergence(left, right, Order::of(0.5)).is_infinite());

    CHECK_THROWS_AS(
        renyi_divergence(u, make_distribution({"z", "b"}, {0.5, 0.5}), Order::of(2.0)),
        label_error);
}

TEST_CASE("entropy closed cases") {
    auto u4 = make_distribution({"a", "b", "c", "d"}, {0.25, 0.25, 0.25, 0.25});
    for (double a : {0.3, 0.5, 2.0, 7.0})
        CHECK(renyi_entropy(u4, Order::of(a)) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(renyi_entropy(u4, Order::one()) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(renyi_entropy(u4, Order::infinity()) == doctest::Approx(std::log(4.0)).epsilon(1e-12));

    // half-order entropy of (1/4, 3/4)
    auto p = make_distribution({"a", "b"}, {0.25, 0.75});
    double expected = 2.0 * std::log(0.5 + std::sqrt(3.0) / 2.0);
    CHECK(renyi_entropy(p, Order::of(0.5)) == doctest::Approx(expected).epsilon(1e-12));

    auto pm = make_distribution({"a", "b"}, {1.0, 0.0});
    CHECK(renyi_entropy(pm, Order::of(0.5)) == 0.0);
    CHECK(renyi_entropy(pm, Order::one()) == 0.0);
    CHECK(renyi_entropy(pm, Order::infinity()) == 0.0);
}

TEST_CASE("arimoto conditional entropy closed cases") {
    // independent joint: conditioning changes nothing
    auto indep = make_joint({"a", "b"}, {"u", "v"}, {{0.21, 0.09}, {0.49, 0.21}});
    auto px = marginal_x(indep);
    for (double a : {0.5, 2.0})
        CHECK(arimoto_cond_entropy(indep, Order::of(a)) ==
              doctest::Approx(renyi_entropy(px, Order::of(a))).epsilon(1e-12));

    // Y = X: nothing left to guess
    auto diag = make_joint({"a", "b"}, {"u", "v"}, {{0.4, 0.0}, {0.0, 0.6}});
    CHECK(arimoto_cond_entropy(diag, Order::of(0.5)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(arimoto_cond_entropy(diag, Order::one()) == doctest::Approx(0.0).epsilon(1e-12));

    // hand evaluation for the erasure source at half order: posteriors are
    // (1,0), (1/2,1/2), (0,1) so the weighted inner norms sum to 3/2
    auto bes = erasure_source(0.5);
    CHECK(arimoto_cond_entropy(bes, Order::of(0.5)) ==
          doctest::Approx(std::log(1.5)).epsilon(1e-12));

    // mutual information composes the two pieces
    CHECK(arimoto_mi(bes, Order::of(0.5)) ==
          doctest::Approx(std::log(2.0) - std::log(1.5)).epsilon(1e-12));
    CHECK(arimoto_mi(indep, Order::of(0.5)) == doctest::Approx(0.0).epsilon(1e-12));

    auto diag_u = make_joint({"a", "b", "c"}, {"u", "v", "w"},
                             {{1.0 / 3, 0.0, 0.0}, {0.0, 1.0 / 3, 0.0}, {0.0, 0.0, 1.0 / 3}});
    CHECK(arimoto_mi(diag_u, Order::of(0.5)) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("order-one matches the Shannon oracle") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        auto p = testutil::random_distribution(rng, 2 + t % 4);
        auto q = testutil::random_distribution(rng, p.size());
        CHECK(renyi_entropy(p, Order::one()) == doctest::Approx(shannon_entropy(p)).epsilon(1e-12));
        CHECK(renyi_divergence(p, q, Order::one()).value() ==
              doctest::Approx(shannon_kl(p, q)).epsilon(1e-12));

        auto j = testutil::random_joint(rng, 2 + t % 3, 2 + t % 3);
        CHECK(arimoto_cond_entropy(j, Order::one()) ==
              doctest::Approx(shannon_cond_entropy(j)).epsilon(1e-12));
    }
}

TEST_CASE("divergence nonnegativity and identity of indiscernibles") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 200; ++t) {
        auto p = testutil::random_distribution(rng, 2 + t % 4);
        auto q = testutil::random_distribution(rng, p.size());
        for (double a : {0.3, 0.7, 1.5, 3.0}) {
            auto d = renyi_divergence(p, q, Order::of(a));
            CHECK(d.value() >= -1e-10);
        }
        CHECK(renyi_divergence(p, p, Order::of(0.7)).value() <= 1e-10);
        // distinct distributions have strictly positive divergence
        double tv = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p.probs[i] - q.probs[i]);
        if (tv > 1e-3) CHECK(renyi_divergence(p, q, Order::of(2.0)).value() > 1e-10);
    }
}

TEST_CASE("divergence is nondecreasing in the order") {
    std::mt19937_64 rng(17);
    const double grid[] = {0.1, 0.35, 0.7, 0.999, 1.0, 1.001, 2.0, 5.0, 10.0};
    for (int t = 0; t < 60; ++t) {
        auto p = testutil::random_distribution(rng, 2 + t % 4);
        auto q = testutil::random_distribution(rng, p.size());
        double prev = -1e300;
        for (double a : grid) {
            double d = renyi_divergence(p, q, Order::of(a)).value();
            CHECK(d >= prev - 1e-10);
            prev = d;
        }
        CHECK(renyi_divergence(p, q, Order::infinity()).value() >= prev - 1e-10);
    }
}

TEST_CASE("entropy is nonincreasing in the order and bounded") {
    std::mt19937_64 rng(19);
    const double grid[] = {0.1, 0.5, 0.999, 1.0, 1.001, 2.0, 10.0};
    for (int t = 0; t < 60; ++t) {
        auto p = testutil::random_distribution(rng, 2 + t % 5);
        double prev = 1e300;
        for (double a : grid) {
            double h = renyi_entropy(p, Order::of(a));
            CHECK(h <= prev + 1e-10);
            CHECK(h >= -1e-12);
            CHECK(h <= std::log(static_cast<double>(p.size())) + 1e-12);
            prev = h;
        }
        CHECK(renyi_entropy(p, Order::infinity()) <= prev + 1e-10);
    }
}

TEST_CASE("continuity at the order-one and order-infinity extensions") {
    // The slope of the divergence in the order is about half the variance of
    // log P/Q, so a 1e-3 window at +-1e-3 from order one needs masses bounded
    // away from zero; random pairs are smoothed halfway toward uniform.
    std::mt19937_64 rng(23);
    for (int t = 0; t < 40; ++t) {
        auto p = testutil::random_distribution(rng, 2 + t % 3);
        auto q = testutil::random_distribution(rng, p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            p.probs[i] = 0.5 * p.probs[i] + 0.5 / static_cast<double>(p.size());
            q.probs[i] = 0.5 * q.probs[i] + 0.5 / static_cast<double>(q.size());
        }
        double d1 = renyi_divergence(p, q, Order::one()).value();
        CHECK(std::abs(renyi_divergence(p, q, Order::of(0.999)).value() - d1) < 1e-3);
        CHECK(std::abs(renyi_divergence(p, q, Order::of(1.001)).value() - d1) < 1e-3);
    }

    // Near-infinity check: the gap to D_inf scales like |log P(x*)|/alpha,
    // so the family keeps a heavy ratio maximizer to make 1e-3 meaningful
    // at alpha = 1000.
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int t = 0; t < 40; ++t) {
        double p0 = 0.45 + 0.15 * unif(rng);
        double q0 = 0.15 + 0.10 * unif(rng);
        auto p = make_distribution({"a", "b"}, {p0, 1.0 - p0});
        auto q = make_distribution({"a", "b"}, {q0, 1.0 - q0});
        double dinf = renyi_divergence(p, q, Order::infinity()).value();
        double dbig = renyi_divergence(p, q, Order::of(1000.0)).value();
        CHECK(std::abs(dbig - dinf) < 1e-3);
    }
}
