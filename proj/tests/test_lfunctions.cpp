#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "taum/hecke_core.hpp"
#include "taum/lfunctions.hpp"

using namespace taum;
using Catch::Approx;

namespace {

double eval_poly(const IntPolynomial& p, double x) {
    double v = 0.0;
    for (int k = p.degree(); k >= 0; --k) v = v * x + double(p.coeff(k));
    return v;
}

IntPolynomial poly_add_scaled(const IntPolynomial& a, const IntPolynomial& b,
                              long long s) {
    IntPolynomial r;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = a.coeff(int(i)) + s * b.coeff(int(i));
    r.trim();
    return r;
}

}  // namespace

TEST_CASE("trace polynomials match the recurrence list", "[lfunctions]") {
    REQUIRE(trace_polynomial(0) == IntPolynomial{{1}});
    REQUIRE(trace_polynomial(2) == IntPolynomial{{-1, 0, 1}});
    REQUIRE(trace_polynomial(4) == IntPolynomial{{1, 0, -3, 0, 1}});
    REQUIRE(trace_polynomial(6) == IntPolynomial{{-1, 0, 6, 0, -5, 0, 1}});
    REQUIRE(trace_polynomial(8) == IntPolynomial{{1, 0, -10, 0, 15, 0, -7, 0, 1}});
    REQUIRE_THROWS_AS(trace_polynomial(3), std::invalid_argument);
    REQUIRE_THROWS_AS(trace_polynomial(10), std::invalid_argument);
}

TEST_CASE("trace polynomials evaluate the sine ratio", "[lfunctions]") {
    for (int m = 0; m <= 8; m += 2) {
        const auto t = trace_polynomial(m);
        for (double theta : {0.3, 0.7, 1.1, 1.9, 2.8}) {
            REQUIRE(eval_poly(t, 2.0 * std::cos(theta)) ==
                    Approx(std::sin((m + 1) * theta) / std::sin(theta)).margin(1e-10));
        }
    }
}

TEST_CASE("power-to-trace rows", "[lfunctions]") {
    REQUIRE(power_to_trace_basis(0) == std::vector<long long>{1});
    REQUIRE(power_to_trace_basis(1) == std::vector<long long>{1, 1});
    REQUIRE(power_to_trace_basis(2) == std::vector<long long>{2, 3, 1});
    REQUIRE(power_to_trace_basis(3) == std::vector<long long>{5, 9, 5, 1});
    REQUIRE(power_to_trace_basis(4) == std::vector<long long>{14, 28, 20, 7, 1});
    REQUIRE_THROWS_AS(power_to_trace_basis(5), std::invalid_argument);
}

TEST_CASE("basis rows reconstruct the even powers exactly", "[lfunctions]") {
    for (int j = 0; j <= 4; ++j) {
        const auto row = power_to_trace_basis(j);
        IntPolynomial sum;
        for (int i = 0; i <= j; ++i)
            sum = poly_add_scaled(sum, trace_polynomial(2 * i), row[i]);
        IntPolynomial expected;
        expected.c.assign(2 * j + 1, 0);
        expected.c[2 * j] = 1;
        REQUIRE(sum == expected);
    }
}

TEST_CASE("symmetric-power local factors", "[lfunctions]") {
    const auto zeta = sym_local_factor(1.234, 0, 5);
    for (int n = 0; n <= 5; ++n) REQUIRE(zeta.c[n] == Approx(1.0).margin(1e-14));

    const auto halfpi = sym_local_factor(std::numbers::pi / 2, 2, 2);
    REQUIRE(halfpi.c[0] == Approx(1.0).margin(1e-14));
    REQUIRE(halfpi.c[1] == Approx(-1.0).margin(1e-12));  // T_2(0)

    for (double theta : {0.2, 0.9, 1.7, 2.6}) {
        const auto s = sym_local_factor(theta, 4, 1);
        REQUIRE(s.c[1] ==
                Approx(eval_poly(trace_polynomial(4), 2.0 * std::cos(theta))).margin(1e-12));
    }

    double worst_imag = 0.0;
    for (int m = 2; m <= 8; m += 2) {
        for (int k = 1; k < 40; ++k) {
            double imag = 0.0;
            sym_local_factor(std::numbers::pi * k / 40.0, m, 6, &imag);
            worst_imag = std::max(worst_imag, imag);
        }
    }
    REQUIRE(worst_imag <= 1e-12);

    REQUIRE_THROWS_AS(sym_local_factor(0.5, 9, 4), std::invalid_argument);
    REQUIRE_THROWS_AS(sym_local_factor(-0.1, 2, 4), std::domain_error);
    REQUIRE_THROWS_AS(sym_local_factor(0.5, 2, 0), std::invalid_argument);
}

TEST_CASE("local factor degree-1 coefficients are the trace sums", "[lfunctions]") {
    // degree-1 of the power series sum_nu lambda(p^nu)^{2j} T^nu equals
    // m_j + sum_i e_i T_{2i}(2 cos theta) with (m_j; e_i) the basis row.
    for (int j = 1; j <= 4; ++j) {
        const auto row = power_to_trace_basis(j);
        for (int k = 1; k < 1000; ++k) {
            const double theta = std::numbers::pi * k / 1000.0;
            const double x = 2.0 * std::cos(theta);
            double rhs = double(row[0]);
            for (int i = 1; i <= j; ++i)
                rhs += double(row[i]) * eval_poly(trace_polynomial(2 * i), x);
            REQUIRE(std::pow(x, 2 * j) == Approx(rhs).margin(1e-10));
        }
    }
}

TEST_CASE("decomposition residuals vanish at degree one", "[lfunctions]") {
    for (double theta : {0.15, 0.7, 1.3, 2.1, 2.95}) {
        for (int j = 1; j <= 4; ++j) {
            const auto h = decomposition_residual(theta, j, 6);
            REQUIRE(h.c[0] == Approx(1.0).margin(1e-12));
            REQUIRE(std::abs(h.c[1]) <= 1e-9);
        }
    }

    // Angle of p = 2: lambda = -24 / 2^{11/2}.
    const double lambda2 = -24.0 / std::pow(2.0, 5.5);
    const double theta2 = std::acos(lambda2 / 2.0);
    REQUIRE(std::abs(decomposition_residual(theta2, 4, 6).c[1]) <= 1e-9);

    const auto h3 = decomposition_residual(std::numbers::pi / 2, 3, 6);
    REQUIRE(std::abs(h3.c[1]) <= 1e-12);
    REQUIRE(std::isfinite(h3.c[2]));  // reported as data, not asserted

    REQUIRE_THROWS_AS(decomposition_residual(0.5, 0, 6), std::invalid_argument);
    REQUIRE_THROWS_AS(decomposition_residual(0.5, 2, 1), std::invalid_argument);
}

TEST_CASE("degenerate angles use the limit eigenvalues", "[lfunctions]") {
    // theta = 0: lambda(p^nu) = nu + 1; theta = pi: (-1)^nu (nu + 1).
    const auto h0 = decomposition_residual(0.0, 1, 4);
    REQUIRE(std::abs(h0.c[1]) <= 1e-9);
    const auto hpi = decomposition_residual(std::numbers::pi, 1, 4);
    REQUIRE(std::abs(hpi.c[1]) <= 1e-9);
}

TEST_CASE("residuals on table angles for p <= 100", "[lfunctions]") {
    const auto table = build_coefficient_table(100, Backend::oracle);
    double worst = 0.0;
    for (uint64_t p = 2; p <= 100; ++p) {
        if (!detail::is_prime_u64(p)) continue;
        const double theta = prime_local_data(table, p).theta_p;
        for (int j = 1; j <= 4; ++j)
            worst = std::max(worst, std::abs(decomposition_residual(theta, j, 6).c[1]));
    }
    REQUIRE(worst <= 1e-9);
}

TEST_CASE("residual CSV layout", "[lfunctions]") {
    const auto table = build_coefficient_table(10, Backend::oracle);
    const std::string csv = residual_csv(table, 5, 3);
    REQUIRE(csv.find("p,j,depth,c1,c2,c3\n") == 0);
    REQUIRE(csv.find("\n2,1,3,") != std::string::npos);
    REQUIRE(csv.find("\n5,4,3,") != std::string::npos);
}
