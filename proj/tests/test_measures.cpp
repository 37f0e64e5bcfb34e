#include "doctest.h"

#include <cmath>

#include "nclt/error.hpp"
#include "nclt/measures.hpp"
#include "oracles.hpp"

using namespace nclt;

namespace {

CircleMeasure random_circle(int atoms)
{
    std::vector<CircleAtom> a;
    double total = 0.0;
    for (int i = 0; i < atoms; ++i) {
        a.push_back({oracle::uniform(-pi, pi), oracle::uniform(0.1, 1.0)});
        total += a.back().weight;
    }
    for (auto& x : a)
        x.weight /= total;
    return CircleMeasure::atomic(a);
}

LineMeasure random_line(int atoms)
{
    std::vector<LineAtom> a;
    double total = 0.0;
    for (int i = 0; i < atoms; ++i) {
        a.push_back({oracle::uniform(-2.0, 2.0), oracle::uniform(0.1, 1.0)});
        total += a.back().weight;
    }
    for (auto& x : a)
        x.weight /= total;
    return LineMeasure::atomic(a);
}

const CircleMeasure bern = CircleMeasure::atomic({{0.0, 0.5}, {pi, 0.5}});

} // namespace

TEST_CASE("construction validates and canonicalizes")
{
    const auto mu = CircleMeasure::atomic({{3 * pi / 2, 0.25}, {-pi / 2, 0.25}, {pi, 0.5}});
    REQUIRE(mu.atoms().size() == 2);
    CHECK(mu.atoms()[0].angle == doctest::Approx(-pi / 2));
    CHECK(mu.atoms()[0].weight == doctest::Approx(0.5));
    CHECK(mu.atoms()[1].angle == pi);

    // -pi and pi are the same point
    CHECK(CircleMeasure::atomic({{-pi, 1.0}}).atoms()[0].angle == pi);

    CHECK_THROWS_AS(CircleMeasure::atomic({{0.0, 0.5}}), error);
    CHECK_THROWS_AS(CircleMeasure::atomic({{0.0, -0.5}, {1.0, 1.5}}), error);
    CHECK_THROWS_AS(LineMeasure::atomic({{0.0, 0.7}}), error);

    const auto nu = LineMeasure::atomic({{1.0, 0.5}, {-1.0, 0.25}, {1.0 + 1e-12, 0.25}});
    REQUIRE(nu.atoms().size() == 2);
    CHECK(nu.atoms()[0].position == -1.0);
    CHECK(nu.atoms()[1].weight == doctest::Approx(0.75));
}

TEST_CASE("fourier coefficients")
{
    for (int p = -5; p <= 5; ++p)
        CHECK(std::abs(fourier(bern, p) - (p % 2 ? 0.0 : 1.0)) < 1e-15);
    CHECK(fourier(CircleMeasure::haar(), 3) == cplx(0.0));
    CHECK(fourier(CircleMeasure::haar(), 0) == cplx(1.0));
    const cplx lambda = std::polar(1.0, pi / 3);
    CHECK(std::abs(fourier(CircleMeasure::point(pi / 3), 2) - lambda * lambda) < 1e-15);
}

TEST_CASE("moment lists")
{
    const auto mu = random_circle(4);
    const MomentList m = moments(mu, 8);
    CHECK(m.order() == 8);
    CHECK(m(0) == cplx(1.0));
    for (int p = 1; p <= 8; ++p) {
        CHECK(m(-p) == std::conj(m(p)));
        CHECK(std::abs(m(p)) <= 1.0 + 1e-15);
    }
    const MomentList h = MomentList::haar(6);
    for (int p = 1; p <= 6; ++p)
        CHECK(h(p) == cplx(0.0));
    CHECK_THROWS_AS(MomentList({0.5, 0.1}), error);
}

TEST_CASE("moment distance")
{
    const auto m = moments(bern, 8);
    CHECK(moment_distance(m, m, 8) == 0.0);
    CHECK(moment_distance(m, MomentList::haar(8), 4) == doctest::Approx(1.0));
    CHECK(moment_distance(moments(CircleMeasure::point(0.0), 1), moments(CircleMeasure::point(pi), 1), 1) ==
          doctest::Approx(2.0));
}

TEST_CASE("levy distance")
{
    const auto a = random_line(3);
    CHECK(levy_distance(a, a) == 0.0);
    CHECK(levy_distance(LineMeasure::point(0.0), LineMeasure::point(0.5)) == doctest::Approx(0.5));
    CHECK(levy_distance(LineMeasure::point(0.0), LineMeasure::point(1.0)) == doctest::Approx(1.0));
    CHECK(levy_distance(LineMeasure::point(0.0), LineMeasure::point(3.0)) == doctest::Approx(1.0));
}

// Brute force: scan h on a fine grid and test the sandwich at many x.
TEST_CASE("levy distance against a grid search")
{
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_line(3), b = random_line(2);
        auto ok = [&](double h) {
            for (double x = -5.0; x <= 5.0; x += 0.001)
                if (a.cdf(x - h) - h > b.cdf(x) + 1e-12 || b.cdf(x) > a.cdf(x + h) + h + 1e-12)
                    return false;
            return true;
        };
        double h = 0.0;
        while (!ok(h))
            h += 0.001;
        // the grid over-estimates by at most its step (and may miss narrow gaps)
        CHECK(levy_distance(a, b) <= h + 1e-9);
        CHECK(levy_distance(a, b) >= h - 0.002);
    }
}

TEST_CASE("levy distance is a metric on small random measures")
{
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_line(1 + trial % 4), b = random_line(1 + (trial / 4) % 4),
                   c = random_line(1 + (trial / 16) % 4);
        CHECK(levy_distance(a, b) == levy_distance(b, a));
        CHECK(levy_distance(a, c) <= levy_distance(a, b) + levy_distance(b, c) + 1e-12);
        CHECK(levy_distance(a, b) >= 0.0);
    }
}

TEST_CASE("rotation and shift")
{
    const double theta = 0.7;
    const cplx lambda = std::polar(1.0, theta);
    const auto r = rotate(CircleMeasure::point(theta), lambda);
    CHECK(std::abs(r.atoms()[0].angle) < 1e-15);
    CHECK(rotate(CircleMeasure::haar(), lambda).is_haar());

    const auto s = shift(LineMeasure::atomic({{-0.1, 0.5}, {0.3, 0.5}}), 0.1);
    CHECK(s.atoms()[0].position == doctest::Approx(-0.2));
    CHECK(s.atoms()[1].position == doctest::Approx(0.2));

    for (int trial = 0; trial < 20; ++trial) {
        const auto mu = random_circle(3);
        const cplx l = std::polar(1.0, oracle::uniform(-pi, pi));
        const auto rot = rotate(mu, l);
        for (int p = -8; p <= 8; ++p)
            CHECK(std::abs(fourier(rot, p) * std::pow(l, p) - fourier(mu, p)) <= 1e-12);
    }
}

TEST_CASE("positive measures")
{
    const PositiveCircleMeasure s({{0.5, 2.0}, {0.5 + 1e-12, 1.0}, {1.0, 0.0}});
    CHECK(s.atoms().size() == 1);
    CHECK(s.total_mass() == doctest::Approx(3.0));
    CHECK(PositiveCircleMeasure().empty());
    CHECK_THROWS_AS(PositiveLineMeasure({{0.0, -1.0}}), error);
}

TEST_CASE("integer powers of unit complex numbers")
{
    const double c = 1.0 - 2.0 / 32;
    CHECK(int_pow(c, 1024) == std::pow(c, 1024.0));
    const cplx z = std::polar(1.0, 0.3);
    CHECK(std::abs(int_pow(z, 40) - std::polar(1.0, 12.0)) < 1e-13);
}
