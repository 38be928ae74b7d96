#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "mkt/rng.hpp"

using mkt::rng::counter_hash;
using mkt::rng::gaussian;
using mkt::rng::to_unit;

TEST_SUITE_BEGIN("rng");

TEST_CASE("unit values stay strictly inside (0, 1)") {
    for (std::uint64_t h : {0ULL, 1ULL, ~0ULL, 0x8000000000000000ULL}) {
        const double u = to_unit(h);
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("gaussian stream has standard moments") {
    const std::size_t n = 1'000'000;
    double sum = 0, sq = 0, cube = 0, quad = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = gaussian(7, i, 0, 0);
        sum += z;
        sq += z * z;
        cube += z * z * z;
        quad += z * z * z * z;
    }
    const double dn = static_cast<double>(n);
    const double mean = sum / dn;
    const double var = sq / dn - mean * mean;
    const double skew = cube / dn;   // ~N(0, 15/n) for a standard normal
    const double kurt = quad / dn;   // expect 3
    CHECK(std::fabs(mean) < 5.0 / std::sqrt(dn));
    CHECK(std::fabs(var - 1.0) < 5.0 * std::sqrt(2.0 / dn));
    CHECK(std::fabs(skew) < 5.0 * std::sqrt(15.0 / dn));
    CHECK(std::fabs(kurt - 3.0) < 5.0 * std::sqrt(96.0 / dn));
}

TEST_CASE("adjacent counters are uncorrelated") {
    const std::size_t n = 200'000;
    double saa = 0, sbb = 0, sab = 0, sa = 0, sb = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = gaussian(11, i, 3, 1);
        const double b = gaussian(11, i + 1, 3, 1);
        sa += a;
        sb += b;
        saa += a * a;
        sbb += b * b;
        sab += a * b;
    }
    const double dn = static_cast<double>(n);
    const double cov = sab / dn - (sa / dn) * (sb / dn);
    const double va = saa / dn - (sa / dn) * (sa / dn);
    const double vb = sbb / dn - (sb / dn) * (sb / dn);
    CHECK(std::fabs(cov / std::sqrt(va * vb)) < 5.0 / std::sqrt(dn));
}

TEST_CASE("different seeds give different streams, same seed repeats") {
    CHECK(counter_hash(1, 2, 3, 4, 0) == counter_hash(1, 2, 3, 4, 0));
    CHECK(counter_hash(1, 2, 3, 4, 0) != counter_hash(2, 2, 3, 4, 0));
    CHECK(counter_hash(1, 2, 3, 4, 0) != counter_hash(1, 2, 3, 4, 1));
    CHECK(gaussian(5, 0, 0, 0) == gaussian(5, 0, 0, 0));
    CHECK(gaussian(5, 0, 0, 0) != gaussian(6, 0, 0, 0));
}

TEST_CASE("argument positions are not interchangeable") {
    // (a, b) and (b, a) index different cells and must not collide.
    CHECK(counter_hash(9, 1, 2, 0, 0) != counter_hash(9, 2, 1, 0, 0));
    CHECK(counter_hash(9, 0, 5, 7, 0) != counter_hash(9, 5, 0, 7, 0));
}

TEST_SUITE_END();
