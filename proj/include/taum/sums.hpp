// Summatory functions over the coefficient table: power sums of |lambda(n)|,
// the signed sum, sign counts, the multiplicative envelope summatories with
// their termwise sandwich check, log-power growth fits, and the eigenvalue
// angle statistics against the semicircle-squared law.
//
// Every sum is accumulated serially in long double in index order, so results
// are reproducible bit-for-bit regardless of thread configuration.

#ifndef TAUM_SUMS_HPP
#define TAUM_SUMS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "taum/envelope.hpp"
#include "taum/hecke_core.hpp"

namespace taum {

inline std::vector<uint32_t> smallest_prime_factor_sieve(uint64_t n) {
    std::vector<uint32_t> spf(n + 1, 0);
    if (n >= 1) spf[1] = 1;
    for (uint64_t i = 2; i <= n; ++i) {
        if (spf[i] != 0) continue;
        for (uint64_t j = i; j <= n; j += i)
            if (spf[j] == 0) spf[j] = uint32_t(i);
    }
    return spf;
}

// Geometric checkpoint grid x = 10^2, 10^2.25, ... capped at max_x, with max_x
// itself appended so every series ends at the full range.
inline std::vector<uint64_t> default_checkpoints(uint64_t max_x) {
    std::vector<uint64_t> xs;
    for (int k = 0;; ++k) {
        const uint64_t x = uint64_t(std::llround(std::pow(10.0, 2.0 + 0.25 * k)));
        if (x > max_x) break;
        if (xs.empty() || x > xs.back()) xs.push_back(x);
    }
    if (xs.empty() || xs.back() != max_x) xs.push_back(max_x);
    return xs;
}

enum class SumKind {
    power_sum,
    signed_sum,
    sign_count_plus,
    sign_count_minus,
    envelope_lower,
    envelope_upper,
};

struct SumSeries {
    SumKind kind;
    double r = 0.0;  // meaningful for power_sum and envelope kinds
    std::vector<uint64_t> x;
    std::vector<double> value;
};

namespace detail {

inline void require_checkpoints(const std::vector<uint64_t>& xs, uint64_t bound) {
    if (xs.empty()) throw std::invalid_argument("checkpoints: empty");
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < 1 || (i > 0 && xs[i] <= xs[i - 1]))
            throw std::invalid_argument("checkpoints: must be ascending and >= 1");
    }
    if (xs.back() > bound)
        throw std::out_of_range("checkpoints: max checkpoint exceeds table bound");
}

inline double lambda_of(const CoefficientTable& t, uint64_t n) {
    return static_cast<double>(t.coefficient(n)) / std::pow(double(n), 5.5);
}

// Streams term(n) over n <= xs.back(), capturing partial sums at checkpoints.
template <typename TermFn>
std::vector<double> checkpoint_sums(const std::vector<uint64_t>& xs, TermFn term) {
    std::vector<double> out;
    out.reserve(xs.size());
    long double acc = 0.0L;
    size_t next = 0;
    for (uint64_t n = 1; n <= xs.back(); ++n) {
        acc += term(n);
        while (next < xs.size() && xs[next] == n) {
            out.push_back(double(acc));
            ++next;
        }
    }
    return out;
}

}  // namespace detail

// S*(x; r) = sum_{n<=x} |lambda(n)|^{2r}. Convention at r = 0: vanishing
// eigenvalues contribute 0, so the series counts n with lambda(n) != 0.
inline SumSeries power_sum_series(const CoefficientTable& table, double r,
                                  const std::vector<uint64_t>& checkpoints) {
    if (r < 0.0) throw std::domain_error("power_sum_series: r must be >= 0");
    detail::require_checkpoints(checkpoints, table.x_bound());
    auto values = detail::checkpoint_sums(checkpoints, [&](uint64_t n) -> double {
        if (r == 0.0) return table.coefficient(n) != 0 ? 1.0 : 0.0;
        return std::pow(std::abs(detail::lambda_of(table, n)), 2.0 * r);
    });
    return SumSeries{SumKind::power_sum, r, checkpoints, std::move(values)};
}

inline SumSeries signed_sum_series(const CoefficientTable& table,
                                   const std::vector<uint64_t>& checkpoints) {
    detail::require_checkpoints(checkpoints, table.x_bound());
    auto values = detail::checkpoint_sums(
        checkpoints, [&](uint64_t n) { return detail::lambda_of(table, n); });
    return SumSeries{SumKind::signed_sum, 0.0, checkpoints, std::move(values)};
}

struct SignCounts {
    SumSeries plus;
    SumSeries minus;
    std::vector<uint64_t> zeros;  // #{n <= x : tau(n) = 0}, exact integer test
};

inline SignCounts sign_counts(const CoefficientTable& table,
                              const std::vector<uint64_t>& checkpoints) {
    detail::require_checkpoints(checkpoints, table.x_bound());
    SignCounts out{SumSeries{SumKind::sign_count_plus, 0.0, checkpoints, {}},
                   SumSeries{SumKind::sign_count_minus, 0.0, checkpoints, {}},
                   {}};
    uint64_t np = 0, nm = 0, nz = 0;
    size_t next = 0;
    for (uint64_t n = 1; n <= checkpoints.back(); ++n) {
        const i128 t = table.coefficient(n);
        if (t > 0)
            ++np;
        else if (t < 0)
            ++nm;
        else
            ++nz;
        while (next < checkpoints.size() && checkpoints[next] == n) {
            out.plus.value.push_back(double(np));
            out.minus.value.push_back(double(nm));
            out.zeros.push_back(nz);
            ++next;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Envelope summatories
// ---------------------------------------------------------------------------

enum class EnvelopeRole { lower, upper };

// Which family minorizes |lambda|^{2r} at this r. On the shared boundary
// r in {1,2,3,4} both assignments are valid; minus is designated lower.
inline Family role_family(double r, EnvelopeRole role) {
    const bool minus_is_lower = region_minus_contains(r);
    if (role == EnvelopeRole::lower) return minus_is_lower ? Family::minus : Family::plus;
    return minus_is_lower ? Family::plus : Family::minus;
}

// Termwise values of the multiplicative envelope function for the given role:
//   at p:        the quartic prime value,
//   at p^nu>=2:  0 for the minorant role, |lambda(p^nu)|^{2r} for the majorant.
// Evaluated for all n <= max_n through the smallest-prime-factor sieve.
inline std::vector<double> envelope_term_values(const CoefficientTable& table,
                                                const std::vector<uint32_t>& spf,
                                                double r, EnvelopeRole role,
                                                uint64_t max_n) {
    if (max_n > table.x_bound() || max_n + 1 > spf.size())
        throw std::out_of_range("envelope_term_values: range exceeds table or sieve");
    const Family family = role_family(r, role);
    const EnvelopeCoefficients coeffs = envelope_coefficients(r, family);

    std::vector<double> prime_value(max_n + 1, 0.0);
    for (uint64_t p = 2; p <= max_n; ++p)
        if (spf[p] == p)
            prime_value[p] = envelope_at_prime(detail::lambda_of(table, p), coeffs);

    std::vector<double> v(max_n + 1, 0.0);
    if (max_n >= 1) v[1] = 1.0;
    for (uint64_t n = 2; n <= max_n; ++n) {
        const uint64_t p = spf[n];
        uint64_t rest = n;
        int nu = 0;
        while (rest % p == 0) {
            rest /= p;
            ++nu;
        }
        double w;
        if (nu == 1) {
            w = prime_value[p];
        } else if (role == EnvelopeRole::lower) {
            w = 0.0;
        } else {
            const double lam_pnu = detail::eigenvalue_prime_power_from(
                detail::lambda_of(table, p), nu);
            w = std::pow(std::abs(lam_pnu), 2.0 * r);
        }
        v[n] = v[rest] * w;
    }
    return v;
}

inline SumSeries envelope_summatory(const CoefficientTable& table,
                                    const std::vector<uint32_t>& spf, double r,
                                    EnvelopeRole role,
                                    const std::vector<uint64_t>& checkpoints) {
    detail::require_checkpoints(checkpoints, table.x_bound());
    const auto v = envelope_term_values(table, spf, r, role, checkpoints.back());
    auto values = detail::checkpoint_sums(checkpoints, [&](uint64_t n) { return v[n]; });
    return SumSeries{role == EnvelopeRole::lower ? SumKind::envelope_lower
                                                 : SumKind::envelope_upper,
                     r, checkpoints, std::move(values)};
}

struct SandwichReport {
    double r;
    uint64_t max_n;
    double worst_lower_margin;  // max of lower_n - |lambda(n)|^{2r}; <= slack expected
    double worst_upper_margin;  // max of |lambda(n)|^{2r} - upper_n
    uint64_t violations;        // terms breaching either side at the given slack
    double slack;
    SumSeries lower, star, upper;
};

inline SandwichReport sandwich_check(const CoefficientTable& table,
                                     const std::vector<uint32_t>& spf, double r,
                                     const std::vector<uint64_t>& checkpoints,
                                     double slack = 1e-9) {
    detail::require_checkpoints(checkpoints, table.x_bound());
    const uint64_t max_n = checkpoints.back();
    const auto lower = envelope_term_values(table, spf, r, EnvelopeRole::lower, max_n);
    const auto upper = envelope_term_values(table, spf, r, EnvelopeRole::upper, max_n);

    SandwichReport rep{r, max_n, -std::numeric_limits<double>::infinity(),
                       -std::numeric_limits<double>::infinity(), 0, slack,
                       SumSeries{SumKind::envelope_lower, r, checkpoints, {}},
                       SumSeries{SumKind::power_sum, r, checkpoints, {}},
                       SumSeries{SumKind::envelope_upper, r, checkpoints, {}}};

    long double acc_lower = 0.0L, acc_star = 0.0L, acc_upper = 0.0L;
    size_t next = 0;
    for (uint64_t n = 1; n <= max_n; ++n) {
        const double star = std::pow(std::abs(detail::lambda_of(table, n)), 2.0 * r);
        rep.worst_lower_margin = std::max(rep.worst_lower_margin, lower[n] - star);
        rep.worst_upper_margin = std::max(rep.worst_upper_margin, star - upper[n]);
        if (lower[n] > star + slack || star > upper[n] + slack) ++rep.violations;
        acc_lower += lower[n];
        acc_star += star;
        acc_upper += upper[n];
        while (next < checkpoints.size() && checkpoints[next] == n) {
            rep.lower.value.push_back(double(acc_lower));
            rep.star.value.push_back(double(acc_star));
            rep.upper.value.push_back(double(acc_upper));
            ++next;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Growth fits and diagnostics
// ---------------------------------------------------------------------------

struct FitResult {
    double rho_hat;
    double intercept;
    double residual;  // max absolute regression residual
};

// Least-squares fit of log(S(x)/x) = rho * log(log x) + c over the series
// checkpoints with x >= 100.
inline FitResult fit_exponent(const SumSeries& series) {
    std::vector<double> us, ys;
    for (size_t i = 0; i < series.x.size(); ++i) {
        if (series.x[i] < 100) continue;
        if (!(series.value[i] > 0.0))
            throw std::domain_error("fit_exponent: nonpositive series value");
        us.push_back(std::log(std::log(double(series.x[i]))));
        ys.push_back(std::log(series.value[i] / double(series.x[i])));
    }
    if (us.size() < 5)
        throw std::invalid_argument("fit_exponent: need >= 5 checkpoints with x >= 100");

    const size_t k = us.size();
    double su = 0, sy = 0, suu = 0, suy = 0;
    for (size_t i = 0; i < k; ++i) {
        su += us[i];
        sy += ys[i];
        suu += us[i] * us[i];
        suy += us[i] * ys[i];
    }
    const double denom = k * suu - su * su;
    const double rho = (k * suy - su * sy) / denom;
    const double c = (sy - rho * su) / k;
    double resid = 0.0;
    for (size_t i = 0; i < k; ++i)
        resid = std::max(resid, std::abs(ys[i] - (rho * us[i] + c)));
    return FitResult{rho, c, resid};
}

struct RatioSeries {
    std::vector<uint64_t> x;
    std::vector<double> value;
};

// |S(x)| / (x^{1/3} (log x)^{rho_plus(1/2)}) per checkpoint; a boundedness
// diagnostic, reported rather than asserted against a universal constant.
inline RatioSeries theorem2_ratio(const CoefficientTable& table,
                                  const std::vector<uint64_t>& checkpoints) {
    detail::require_checkpoints(checkpoints, table.x_bound());
    if (checkpoints.front() < 2)
        throw std::invalid_argument("theorem2_ratio: checkpoints must start at x >= 2");
    const double rho_plus_half = exponents(0.5).rho_plus;
    const SumSeries s = signed_sum_series(table, checkpoints);
    RatioSeries out{checkpoints, {}};
    for (size_t i = 0; i < checkpoints.size(); ++i) {
        const double x = double(checkpoints[i]);
        out.value.push_back(std::abs(s.value[i]) /
                            (std::cbrt(x) * std::pow(std::log(x), rho_plus_half)));
    }
    return out;
}

struct CorollaryRow {
    uint64_t x;
    double abs_sum_plus;    // sum over n <= x, lambda > 0 of |lambda|
    double abs_sum_minus;   // sum over n <= x, lambda < 0 of |lambda|
    double power_sum_1;     // S*(x; 1)
    uint64_t count_plus;
    uint64_t count_minus;
    double cs_lower_plus;   // (abs_sum_plus)^2 / power_sum_1 <= count_plus
    double cs_lower_minus;
    double norm_ratio_plus;   // count_plus * (log x)^{1 - 1/sqrt(3)} / x
    double norm_ratio_minus;
};

struct CorollaryReport {
    std::vector<CorollaryRow> rows;
    double worst_slack;  // max of cs_lower - count over both signs; <= 0 expected
    bool pass;           // Cauchy-Schwarz inequality holds at 1e-9 slack everywhere
};

inline CorollaryReport corollary_diagnostic(const CoefficientTable& table,
                                            const std::vector<uint64_t>& checkpoints) {
    detail::require_checkpoints(checkpoints, table.x_bound());
    const double exponent = 1.0 - 1.0 / std::sqrt(3.0);

    CorollaryReport rep{{}, -std::numeric_limits<double>::infinity(), true};
    long double ap = 0.0L, am = 0.0L, b = 0.0L;
    uint64_t np = 0, nm = 0;
    size_t next = 0;
    for (uint64_t n = 1; n <= checkpoints.back(); ++n) {
        const double lam = detail::lambda_of(table, n);
        const i128 t = table.coefficient(n);
        if (t > 0) {
            ap += lam;
            ++np;
        } else if (t < 0) {
            am += -lam;
            ++nm;
        }
        b += lam * lam;
        while (next < checkpoints.size() && checkpoints[next] == n) {
            CorollaryRow row;
            row.x = n;
            row.abs_sum_plus = double(ap);
            row.abs_sum_minus = double(am);
            row.power_sum_1 = double(b);
            row.count_plus = np;
            row.count_minus = nm;
            row.cs_lower_plus = double(ap) * double(ap) / double(b);
            row.cs_lower_minus = double(am) * double(am) / double(b);
            const double logx = std::log(double(n));
            const double scale = n == 1 ? 0.0 : std::pow(logx, exponent) / double(n);
            row.norm_ratio_plus = double(np) * scale;
            row.norm_ratio_minus = double(nm) * scale;
            rep.worst_slack = std::max(
                {rep.worst_slack, row.cs_lower_plus - double(np),
                 row.cs_lower_minus - double(nm)});
            rep.pass &= row.cs_lower_plus <= double(np) + 1e-9 &&
                        row.cs_lower_minus <= double(nm) + 1e-9;
            rep.rows.push_back(row);
            ++next;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Eigenvalue angle statistics
// ---------------------------------------------------------------------------

// CDF of the angle law (2/pi) sin^2(t) dt on [0, pi], normalized to F(pi) = 1.
inline double sato_tate_cdf(double theta) {
    return (theta - std::sin(theta) * std::cos(theta)) / std::numbers::pi;
}

// Kolmogorov-Smirnov distance of a sample of angles against the law above.
inline double ks_distance_sato_tate(std::vector<double> angles) {
    if (angles.empty()) throw std::invalid_argument("ks_distance: empty sample");
    std::sort(angles.begin(), angles.end());
    const double n = double(angles.size());
    double d = 0.0;
    for (size_t i = 0; i < angles.size(); ++i) {
        const double f = sato_tate_cdf(angles[i]);
        d = std::max(d, std::max(f - double(i) / n, double(i + 1) / n - f));
    }
    return d;
}

struct SatoTateResult {
    int bins;
    std::vector<uint64_t> histogram;  // equal-width bins over [0, pi]
    uint64_t prime_count;
    double ks;
};

inline SatoTateResult sato_tate_stats(const CoefficientTable& table,
                                      const std::vector<uint32_t>& spf, uint64_t x_bound,
                                      int bins) {
    if (bins < 10) throw std::invalid_argument("sato_tate_stats: need bins >= 10");
    if (x_bound > table.x_bound() || x_bound + 1 > spf.size())
        throw std::out_of_range("sato_tate_stats: range exceeds table or sieve");

    std::vector<double> angles;
    for (uint64_t p = 2; p <= x_bound; ++p) {
        if (spf[p] != p) continue;
        angles.push_back(detail::angle_from_lambda(detail::lambda_of(table, p)));
    }

    SatoTateResult out{bins, std::vector<uint64_t>(bins, 0), angles.size(), 0.0};
    for (double t : angles) {
        int b = int(t / std::numbers::pi * bins);
        out.histogram[std::min(bins - 1, std::max(0, b))] += 1;
    }
    out.ks = ks_distance_sato_tate(std::move(angles));
    return out;
}

}  // namespace taum

#endif  // TAUM_SUMS_HPP
