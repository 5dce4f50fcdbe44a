#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "taum/hecke_core.hpp"

using namespace taum;
using Catch::Approx;

namespace {

// First coefficients of q prod(1-q^n)^24, long since hand-checked; the n <= 3
// prefix is a direct expansion of q (1-q)^24 (1-q^2)^24 (1-q^3)^24.
const long long kKnownTau[] = {1,       -24,     252,      -1472,    4830,
                               -6048,   -16744,  84480,    -113643,  -115920,
                               534612,  -370944, -577738,  401856,   1217160,
                               987136,  -6905934, 2727432, 10661420, -7109760};

const CoefficientTable& oracle_table_2000() {
    static const CoefficientTable t = build_coefficient_table(2000, Backend::oracle);
    return t;
}

const CoefficientTable& fast_table_90k() {
    static const CoefficientTable t = build_coefficient_table(90'000, Backend::fast);
    return t;
}

}  // namespace

TEST_CASE("form spec admits only weight 12, level 1", "[hecke]") {
    REQUIRE_NOTHROW(FormSpec(12, 1));
    REQUIRE_THROWS_AS(FormSpec(10, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(FormSpec(12, 5), std::invalid_argument);
}

TEST_CASE("oracle backend small prefixes", "[hecke]") {
    const auto t1 = build_coefficient_table(1, Backend::oracle);
    REQUIRE(t1.coefficient(1) == 1);

    const auto t3 = build_coefficient_table(3, Backend::oracle);
    REQUIRE(t3.coefficient(1) == 1);
    REQUIRE(t3.coefficient(2) == -24);
    REQUIRE(t3.coefficient(3) == 252);

    const auto& t = oracle_table_2000();
    for (size_t i = 0; i < std::size(kKnownTau); ++i)
        REQUIRE(t.coefficient(i + 1) == i128(kKnownTau[i]));
}

TEST_CASE("fast and oracle backends agree exactly", "[hecke]") {
    const auto fast = build_coefficient_table(2000, Backend::fast);
    const auto& oracle = oracle_table_2000();
    for (uint64_t n = 1; n <= 2000; ++n)
        REQUIRE(fast.coefficient(n) == oracle.coefficient(n));
}

TEST_CASE("coefficients are multiplicative at the integer level", "[hecke]") {
    // tau(1000) = tau(8) tau(125); tau(125) = tau(5)(tau(25) - 5^11),
    // tau(25) = tau(5)^2 - 5^11. All in exact integer arithmetic.
    const auto& t = oracle_table_2000();
    const i128 p11 = i128(48828125);  // 5^11
    const i128 tau25 = t.coefficient(5) * t.coefficient(5) - p11;
    REQUIRE(t.coefficient(25) == tau25);
    const i128 tau125 = t.coefficient(5) * tau25 - p11 * t.coefficient(5);
    REQUIRE(t.coefficient(125) == tau125);
    REQUIRE(t.coefficient(1000) == t.coefficient(8) * tau125);
}

TEST_CASE("backend bounds are enforced", "[hecke]") {
    REQUIRE_THROWS_AS(build_coefficient_table(0, Backend::fast), std::invalid_argument);
    REQUIRE_THROWS_AS(build_coefficient_table(10'001, Backend::oracle),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(build_coefficient_table(3'000'001, Backend::fast),
                      std::invalid_argument);
}

TEST_CASE("table construction validates the leading coefficient", "[hecke]") {
    std::vector<i128> raw = {0, 2, 5};
    REQUIRE_THROWS_AS(CoefficientTable(FormSpec{}, 2, std::move(raw), Backend::fast),
                      std::invalid_argument);
}

TEST_CASE("eigenvalue normalization and Hecke relation instances", "[hecke]") {
    const auto& t = oracle_table_2000();
    REQUIRE(eigenvalue(t, 1) == 1.0);

    const double l2 = -24.0 / std::pow(2.0, 5.5);
    const double l3 = 252.0 / std::pow(3.0, 5.5);
    REQUIRE(eigenvalue(t, 2) == Approx(l2).epsilon(1e-14));
    REQUIRE(eigenvalue(t, 4) == Approx(l2 * l2 - 1.0).margin(1e-12));
    REQUIRE(eigenvalue(t, 6) == Approx(l2 * l3).margin(1e-12));
}

TEST_CASE("eigenvalue recurrence path matches the exact path", "[hecke]") {
    const auto small = build_coefficient_table(10, Backend::oracle);
    const auto& big = oracle_table_2000();
    for (uint64_t n : {12, 16, 18, 36, 100, 144, 1000}) {
        const double via_recurrence = eigenvalue(small, n);  // n > 10 forces it
        const double via_exact = eigenvalue(big, n);
        REQUIRE(via_recurrence ==
                Approx(via_exact).epsilon(1e-9).margin(1e-12));
    }
}

TEST_CASE("eigenvalue rejects unreachable primes", "[hecke]") {
    const auto small = build_coefficient_table(10, Backend::oracle);
    REQUIRE_THROWS_AS(eigenvalue(small, 13), std::out_of_range);
    REQUIRE_THROWS_AS(eigenvalue(small, 26), std::out_of_range);  // 2 * 13
    REQUIRE_THROWS_AS(eigenvalue(small, 0), std::invalid_argument);
}

TEST_CASE("prime local data", "[hecke]") {
    const auto& t = oracle_table_2000();

    const auto d2 = prime_local_data(t, 2);
    REQUIRE(d2.lambda_p == Approx(-24.0 / std::pow(2.0, 5.5)).epsilon(1e-14));
    REQUIRE(d2.theta_p == Approx(1.8391714154092523).margin(1e-12));
    REQUIRE(2.0 * std::cos(d2.theta_p) == Approx(d2.lambda_p).margin(1e-12));

    const auto d3 = prime_local_data(t, 3);
    REQUIRE(2.0 * std::cos(d3.theta_p) == Approx(d3.lambda_p).margin(1e-12));
    REQUIRE(std::abs(d3.alpha) == Approx(1.0).margin(1e-14));
    REQUIRE((d3.alpha * d3.beta).real() == Approx(1.0).margin(1e-14));
    REQUIRE((d3.alpha * d3.beta).imag() == Approx(0.0).margin(1e-14));

    REQUIRE_THROWS_AS(prime_local_data(t, 4), std::invalid_argument);
    REQUIRE_THROWS_AS(prime_local_data(t, 1), std::invalid_argument);
}

TEST_CASE("vanishing eigenvalue maps to the right angle", "[hecke]") {
    REQUIRE(detail::angle_from_lambda(0.0) == Approx(std::numbers::pi / 2).margin(1e-15));
    REQUIRE(detail::angle_from_lambda(2.0) == Approx(0.0).margin(1e-7));
    REQUIRE_THROWS_AS(detail::angle_from_lambda(2.1), std::domain_error);
}

TEST_CASE("hecke identity report", "[hecke]") {
    const auto& t = fast_table_90k();

    const auto trivial = check_hecke_identities(t, 1);
    REQUIRE(trivial.max_hecke_residual == 0.0);
    REQUIRE(trivial.max_deligne_slack == 0.0);  // |lambda(1)| - d(1)
    REQUIRE(trivial.max_angle_residual == 0.0);

    const auto rep = check_hecke_identities(t, 300);
    REQUIRE(rep.max_hecke_residual <= 1e-9);
    REQUIRE(rep.max_deligne_slack <= 0.0);
    REQUIRE(rep.max_angle_residual <= 1e-9);

    REQUIRE_THROWS_AS(check_hecke_identities(t, 301), std::invalid_argument);
}

TEST_CASE("multiplicativity on coprime pairs", "[hecke]") {
    const auto& t = fast_table_90k();
    uint64_t seed = 0x9e3779b97f4a7c15ULL;
    const auto next = [&seed]() {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        return seed;
    };
    int checked = 0;
    while (checked < 500) {
        const uint64_t m = 2 + next() % 298;
        const uint64_t n = 2 + next() % (t.x_bound() / m - 1);
        if (std::gcd(m, n) != 1) continue;
        const double lhs = eigenvalue(t, m * n);
        const double rhs = eigenvalue(t, m) * eigenvalue(t, n);
        REQUIRE(std::abs(lhs - rhs) <= 1e-9);
        ++checked;
    }
}

TEST_CASE("recurrence matches the angle formula for prime powers", "[hecke]") {
    const auto& t = oracle_table_2000();
    for (uint64_t p = 2; p <= 100; ++p) {
        if (!detail::is_prime_u64(p)) continue;
        const auto data = prime_local_data(t, p);
        const double s = std::sin(data.theta_p);
        if (s < 1e-6) continue;
        for (int nu = 1; nu <= 6; ++nu) {
            const double via_rec = eigenvalue_prime_power(t, p, nu);
            const double via_angle = std::sin((nu + 1) * data.theta_p) / s;
            REQUIRE(via_rec == Approx(via_angle).margin(1e-9));
        }
    }
}

TEST_CASE("exact divisor bound holds on the table", "[hecke]") {
    REQUIRE(deligne_exact_violations(fast_table_90k(), 90'000) == 0);
    REQUIRE(deligne_exact_violations(oracle_table_2000(), 2000) == 0);
    REQUIRE_THROWS_AS(deligne_exact_violations(oracle_table_2000(), 2001),
                      std::out_of_range);
}

TEST_CASE("divisor sieve", "[hecke]") {
    const auto d = divisor_count_sieve(12);
    REQUIRE(d[1] == 1);
    REQUIRE(d[6] == 4);
    REQUIRE(d[12] == 6);
}

TEST_CASE("128-bit string conversions round-trip", "[hecke]") {
    REQUIRE(i128_to_string(0) == "0");
    REQUIRE(i128_to_string(-24) == "-24");
    const i128 big = i128_from_string("-170141183460469231731687303715884105728");
    REQUIRE(i128_to_string(big) == "-170141183460469231731687303715884105728");
    REQUIRE_THROWS_AS(i128_from_string("170141183460469231731687303715884105728"),
                      std::overflow_error);
    REQUIRE_THROWS_AS(i128_from_string("12x"), std::invalid_argument);
}
