// End-to-end verification suite. Each criterion prints one PASS/FAIL line;
// the CLI's `verify-all` and the acceptance test binary both run this.

#ifndef TAUM_VERIFY_HPP
#define TAUM_VERIFY_HPP

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "taum/envelope.hpp"
#include "taum/hecke_core.hpp"
#include "taum/lfunctions.hpp"
#include "taum/sums.hpp"

namespace taum {

struct VerifyOptions {
    uint64_t max_x = 1'000'000;  // scale for the data-driven criteria
    int grid = 100'000;          // envelope sign-check grid
    int depth = 6;               // local decomposition depth
    int bins = 50;               // angle histogram bins
    double optimizer_step = 1e-3;
    unsigned threads = 0;
};

struct CriterionOutcome {
    int id;
    std::string name;
    bool pass;
    double seconds;
    std::string detail;
};

struct VerifySummary {
    std::vector<CriterionOutcome> outcomes;
    bool pass = true;
    double seconds = 0.0;
};

namespace detail {

// Reference exponent table, 4-decimal values, rows r = 0, 0.5, ..., 4 and
// columns (delta_minus, rho_minus, theta, rho_plus, delta_plus).
inline constexpr double kReferenceExponents[9][6] = {
    {0.0, -0.5000, -0.3333, 0.0000, 0.0000, 0.0000},
    {0.5, -0.2929, -0.2113, -0.1512, -0.1185, -0.0652},
    {1.0, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000},
    {1.5, 0.4142, 0.3660, 0.3581, 0.3502, 0.2899},
    {2.0, 1.0000, 1.0000, 1.0000, 1.0000, 1.0000},
    {2.5, 1.8284, 2.0981, 2.1043, 2.1115, 2.5266},
    {3.0, 3.0000, 4.0000, 4.0000, 4.0000, 5.6667},
    {3.5, 4.6569, 7.2942, 7.2781, 7.2576, 12.0177},
    {4.0, 7.0000, 13.0000, 13.0000, 13.0000, 24.7778},
};

inline std::string format_detail(const char* fmt, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, ap);
    va_end(ap);
    return buf;
}

inline double round4(double v) { return std::round(v * 1e4) / 1e4; }

}  // namespace detail

inline VerifySummary run_verification_suite(const VerifyOptions& opts, std::ostream& log) {
    using Clock = std::chrono::steady_clock;
    if (opts.max_x < 100'000)
        throw std::invalid_argument("verification suite: needs max_x >= 100000");

    VerifySummary summary;
    const auto suite_start = Clock::now();

    const auto run = [&](int id, const std::string& name, auto&& body) {
        const auto t0 = Clock::now();
        bool pass = false;
        std::string detail;
        try {
            detail = body(pass);
        } catch (const std::exception& e) {
            pass = false;
            detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        summary.outcomes.push_back({id, name, pass, secs, detail});
        summary.pass &= pass;
        char line[512];
        std::snprintf(line, sizeof(line), "%s %2d %-24s %7.2fs  %s\n",
                      pass ? "PASS" : "FAIL", id, name.c_str(), secs, detail.c_str());
        log << line << std::flush;
    };

    // Shared data.
    log << "building coefficient table (fast backend, X = " << opts.max_x << ") ...\n";
    const CoefficientTable table = build_coefficient_table(opts.max_x, Backend::fast, opts.threads);
    const std::vector<uint32_t> spf = smallest_prime_factor_sieve(opts.max_x);
    const std::vector<uint64_t> checkpoints = default_checkpoints(opts.max_x);

    run(1, "exponent-table", [&](bool& pass) {
        const auto t0 = Clock::now();
        double worst = 0.0;
        for (const auto& row : detail::kReferenceExponents) {
            const ExponentSet e = exponents(row[0]);
            const double vals[5] = {e.delta_minus, e.rho_minus, e.theta, e.rho_plus,
                                    e.delta_plus};
            for (int c = 0; c < 5; ++c)
                worst = std::max(worst, std::abs(detail::round4(vals[c]) - row[c + 1]));
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        pass = worst <= 5e-5 + 1e-12 && secs < 1.0;
        return detail::format_detail("45 values, worst 4dp deviation %.2e", worst);
    });

    run(2, "integer-coincidences", [&](bool& pass) {
        const double targets[4] = {0.0, 1.0, 4.0, 13.0};
        double worst = 0.0;
        for (int r = 1; r <= 4; ++r) {
            const ExponentSet e = exponents(r);
            worst = std::max({worst, std::abs(e.rho_minus - targets[r - 1]),
                              std::abs(e.theta - targets[r - 1]),
                              std::abs(e.rho_plus - targets[r - 1])});
            for (Family f : {Family::minus, Family::plus}) {
                const double rho = rho_from_coefficients(envelope_coefficients(r, f));
                worst = std::max(worst, std::abs(rho - targets[r - 1]));
            }
        }
        pass = worst <= 1e-10;
        return detail::format_detail("rho/theta at r=1..4, worst |dev| %.2e", worst);
    });

    run(3, "envelope-validity", [&](bool& pass) {
        const auto t0 = Clock::now();
        const double rs[] = {0.1, 0.5, 0.9, 1.5, 2.5, 3.5, 5.0};
        pass = true;
        double worst_value = 0.0, worst_deriv = 0.0;
        for (double r : rs) {
            for (Family f : {Family::minus, Family::plus}) {
                pass &= verify_envelope(r, f, opts.grid, 1e-12).pass;
                const auto c = envelope_coefficients(r, f);
                const double at_one = f == Family::plus ? envelope_gap(1.0, c) : 0.0;
                for (double t : {c.params.kappa, c.params.eta}) {
                    worst_value = std::max(worst_value,
                                           std::abs(envelope_gap(t, c) - at_one));
                    const double h = 1e-6;
                    const double d =
                        (envelope_gap(t + h, c) - envelope_gap(t - h, c)) / (2 * h);
                    worst_deriv = std::max(worst_deriv, std::abs(d));
                }
            }
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        pass &= worst_value <= 1e-10 && worst_deriv <= 1e-5 && secs < 5.0;
        return detail::format_detail("contact values %.2e, derivatives %.2e", worst_value,
                                     worst_deriv);
    });

    run(4, "exponent-consistency", [&](bool& pass) {
        double worst = 0.0;
        for (int k = 1; k <= 50; ++k) {
            const double r = 6.0 * k / 50.0;
            const ExponentSet e = exponents(r);
            worst = std::max(
                worst, std::abs(rho_from_coefficients(envelope_coefficients(r, Family::minus)) -
                                e.rho_minus));
            worst = std::max(
                worst, std::abs(rho_from_coefficients(envelope_coefficients(r, Family::plus)) -
                                e.rho_plus));
        }
        pass = worst <= 1e-9;
        return detail::format_detail("50 r-values, worst |dev| %.2e", worst);
    });

    run(5, "oracle-equivalence", [&](bool& pass) {
        const auto t0 = Clock::now();
        const CoefficientTable oracle = build_coefficient_table(5000, Backend::oracle);
        uint64_t mismatches = 0;
        for (uint64_t n = 1; n <= 5000; ++n)
            mismatches += (oracle.coefficient(n) != table.coefficient(n));
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        pass = mismatches == 0 && secs < 30.0;
        return detail::format_detail("n <= 5000, %llu mismatches",
                                     (unsigned long long)mismatches);
    });

    run(6, "hecke-deligne", [&](bool& pass) {
        const auto rep = check_hecke_identities(table, 300);
        const uint64_t violations = deligne_exact_violations(table, opts.max_x);
        pass = rep.max_hecke_residual <= 1e-9 && rep.max_deligne_slack <= 0.0 &&
               violations == 0;
        return detail::format_detail("hecke residual %.2e, slack %.2e, exact violations %llu",
                                     rep.max_hecke_residual, rep.max_deligne_slack,
                                     (unsigned long long)violations);
    });

    run(7, "trace-identities", [&](bool& pass) {
        const std::vector<IntPolynomial> expected_traces = {
            {{1}},                           // T_0
            {{-1, 0, 1}},                    // T_2
            {{1, 0, -3, 0, 1}},              // T_4
            {{-1, 0, 6, 0, -5, 0, 1}},       // T_6
            {{1, 0, -10, 0, 15, 0, -7, 0, 1}}};  // T_8
        const std::vector<std::vector<long long>> expected_rows = {
            {1}, {1, 1}, {2, 3, 1}, {5, 9, 5, 1}, {14, 28, 20, 7, 1}};
        pass = true;
        for (int m = 0; m <= 8; m += 2)
            pass &= (trace_polynomial(m) == expected_traces[m / 2]);
        for (int j = 0; j <= 4; ++j)
            pass &= (power_to_trace_basis(j) == expected_rows[j]);
        return std::string("trace polynomials and basis rows, exact integer equality");
    });

    run(8, "local-decomposition", [&](bool& pass) {
        double worst = 0.0;
        for (uint64_t p = 2; p <= 100; ++p) {
            if (spf[p] != p) continue;
            const double theta = prime_local_data(table, p).theta_p;
            for (int j = 1; j <= 4; ++j)
                worst = std::max(worst,
                                 std::abs(decomposition_residual(theta, j, opts.depth).c[1]));
        }
        pass = worst <= 1e-9;
        return detail::format_detail("p <= 100, j = 1..4, worst |c1| %.2e", worst);
    });

    run(9, "sandwich", [&](bool& pass) {
        pass = true;
        uint64_t violations = 0;
        double worst_order = -std::numeric_limits<double>::infinity();
        std::string breakdown;
        const auto termwise_cp = default_checkpoints(10'000);
        for (double r : {0.5, 1.5, 2.5, 3.5}) {
            const auto rep = sandwich_check(table, spf, r, termwise_cp);
            violations += rep.violations;
            breakdown += detail::format_detail("%sr=%.1f:%llu", breakdown.empty() ? "" : " ",
                                               r, (unsigned long long)rep.violations);
            const auto lower = envelope_summatory(table, spf, r, EnvelopeRole::lower, checkpoints);
            const auto star = power_sum_series(table, r, checkpoints);
            const auto upper = envelope_summatory(table, spf, r, EnvelopeRole::upper, checkpoints);
            for (size_t i = 0; i < checkpoints.size(); ++i) {
                const double slack = 1e-9 * double(checkpoints[i]);
                worst_order = std::max({worst_order, lower.value[i] - star.value[i],
                                        star.value[i] - upper.value[i]});
                pass &= lower.value[i] <= star.value[i] + slack &&
                        star.value[i] <= upper.value[i] + slack;
            }
        }
        pass &= violations == 0;
        return detail::format_detail("termwise violations [%s], worst ordering gap %.2e",
                                     breakdown.c_str(), worst_order);
    });

    run(10, "growth-fits", [&](bool& pass) {
        std::vector<uint64_t> window;
        for (uint64_t x : checkpoints)
            if (x >= 10'000) window.push_back(x);
        const FitResult f1 = fit_exponent(power_sum_series(table, 1.0, window));
        const FitResult f2 = fit_exponent(power_sum_series(table, 2.0, window));
        pass = f1.rho_hat >= -0.15 && f1.rho_hat <= 0.15 && f2.rho_hat >= 0.6 &&
               f2.rho_hat <= 1.4;
        return detail::format_detail("rho_hat(r=1) %.4f in [-0.15,0.15], rho_hat(r=2) %.4f in [0.6,1.4]",
                                     f1.rho_hat, f2.rho_hat);
    });

    run(11, "sato-tate", [&](bool& pass) {
        const auto st = sato_tate_stats(table, spf, opts.max_x, opts.bins);
        pass = st.ks <= 0.05;
        return detail::format_detail("%llu primes, ks %.5f <= 0.05",
                                     (unsigned long long)st.prime_count, st.ks);
    });

    run(12, "sign-diagnostics", [&](bool& pass) {
        const auto ratios = theorem2_ratio(table, checkpoints);
        bool finite = true;
        for (double v : ratios.value) finite &= std::isfinite(v) && v >= 0.0;
        const auto cor = corollary_diagnostic(table, checkpoints);
        const auto counts = sign_counts(table, checkpoints);
        const double x = double(opts.max_x);
        const double floor_count =
            0.3 * x / std::pow(std::log(x), 1.0 - 1.0 / std::sqrt(3.0));
        const double np = counts.plus.value.back();
        const double nm = counts.minus.value.back();
        pass = finite && cor.pass && np >= floor_count && nm >= floor_count;
        return detail::format_detail(
            "ratios finite, CS slack %.2e, counts %.0f/%.0f >= floor %.0f", cor.worst_slack,
            np, nm, floor_count);
    });

    run(13, "optimizer", [&](bool& pass) {
        const auto m = optimize_parameters(0.5, Family::minus, opts.optimizer_step, 1000,
                                           1e-10, opts.threads);
        const auto p = optimize_parameters(0.5, Family::plus, opts.optimizer_step, 1000,
                                           1e-10, opts.threads);
        const EnvelopeParams ref_p = default_params(Family::plus);
        pass = std::abs(m.kappa - 0.25) <= 2e-3 && std::abs(m.eta - 0.75) <= 2e-3 &&
               std::abs(p.kappa - ref_p.kappa) <= 2e-3 &&
               std::abs(p.eta - ref_p.eta) <= 2e-3;
        return detail::format_detail("minus (%.4f, %.4f), plus (%.4f, %.4f)", m.kappa, m.eta,
                                     p.kappa, p.eta);
    });

    summary.seconds = std::chrono::duration<double>(Clock::now() - suite_start).count();

    {
        // Criterion 14: the whole run, at defaults, within ten minutes.
        const bool pass = summary.pass && summary.seconds <= 600.0;
        char line[256];
        std::snprintf(line, sizeof(line), "%s %2d %-24s %7.2fs  all criteria green within 600 s\n",
                      pass ? "PASS" : "FAIL", 14, "end-to-end", summary.seconds);
        log << line << std::flush;
        summary.outcomes.push_back(
            {14, "end-to-end", pass, summary.seconds,
             detail::format_detail("total %.1f s", summary.seconds)});
        summary.pass = pass;
    }
    return summary;
}

}  // namespace taum

#endif  // TAUM_VERIFY_HPP
