// Exact Fourier coefficients of the weight-12, level-1 cusp form and the
// derived normalized Hecke eigenvalues, eigenvalue angles, and identity checks.
//
// Coefficient data (Ramanujan tau):
//   fast backend   - q * prod(1-q^n)^24 as E(q)^8, where
//                    E(q) = prod(1-q^n)^3 = sum_k (-1)^k (2k+1) q^{k(k+1)/2}
//                    (Jacobi), squared three times with truncated exact
//                    multiplication done as four independent 62-bit modular
//                    convolutions recombined by CRT into signed 128-bit.
//   oracle backend - the literal truncated product: multiply by (1 - q^m)
//                    twenty-four times for each m <= X, in 512-bit checked
//                    integers (intermediate coefficients of the partial
//                    products overrun 128 bits past X ~ 800 even though every
//                    final coefficient fits; growth is ~X^0.39 bits, so 512
//                    bits covers the X <= 10000 cap about three times over).
//
// Storage is signed 128-bit; |tau(n)| <= d(n) n^{11/2} keeps every entry
// below 2^127 for n <= 3,000,000, which is the fast-backend cap.

#ifndef TAUM_HECKE_CORE_HPP
#define TAUM_HECKE_CORE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <future>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "taum/int128.hpp"
#include "taum/ntt.hpp"
#include "taum/threads.hpp"

namespace taum {

inline constexpr uint64_t kFastBackendMaxX = 3'000'000;
inline constexpr uint64_t kOracleBackendMaxX = 10'000;

struct FormSpec {
    int weight = 12;
    int level = 1;

    FormSpec() = default;
    FormSpec(int w, int n) : weight(w), level(n) {
        if (w != 12 || n != 1)
            throw std::invalid_argument("FormSpec: only weight 12, level 1 is supported");
    }
};

enum class Backend { fast, oracle };

class CoefficientTable {
public:
    CoefficientTable(FormSpec spec, uint64_t x_bound, std::vector<i128> raw, Backend backend)
        : spec_(spec), x_(x_bound), raw_(std::move(raw)), backend_(backend) {
        if (x_ < 1) throw std::invalid_argument("CoefficientTable: X must be >= 1");
        if (raw_.size() != x_ + 1) throw std::invalid_argument("CoefficientTable: bad raw length");
        if (raw_[1] != 1) throw std::invalid_argument("CoefficientTable: a(1) != 1");
    }

    const FormSpec& spec() const { return spec_; }
    uint64_t x_bound() const { return x_; }
    Backend backend() const { return backend_; }

    // Exact integer coefficient tau(n), 1 <= n <= X.
    i128 coefficient(uint64_t n) const {
        if (n < 1 || n > x_)
            throw std::out_of_range("CoefficientTable: n outside table bound");
        return raw_[n];
    }

    const std::vector<i128>& raw() const { return raw_; }

private:
    FormSpec spec_;
    uint64_t x_;
    std::vector<i128> raw_;  // raw_[n] = tau(n), raw_[0] unused
    Backend backend_;
};

namespace detail {

// E(q) = prod(1-q^n)^3 truncated to `len` coefficients, reduced mod p.
inline std::vector<uint64_t> eta_cube_series_mod(size_t len, uint64_t p) {
    std::vector<uint64_t> e(len, 0);
    for (uint64_t k = 0;; ++k) {
        uint64_t idx = k * (k + 1) / 2;
        if (idx >= len) break;
        uint64_t mag = (2 * k + 1) % p;
        e[idx] = (k % 2 == 0) ? mag : p - mag;
    }
    return e;
}

inline std::vector<i128> tau_series_fast(uint64_t x, unsigned threads) {
    const size_t len = size_t(x);  // coefficients of q^0 .. q^{X-1} of E^8
    const auto run_prime = [len](int pi) {
        const ntt::Montgomery mont(ntt::kPrimes[pi].p);
        std::vector<uint64_t> s = eta_cube_series_mod(len, mont.p());
        for (int squaring = 0; squaring < 3; ++squaring)
            ntt::square_truncated(s, len, mont, ntt::kPrimes[pi].generator);
        return s;
    };

    std::vector<std::vector<uint64_t>> residues(ntt::kPrimeCount);
    if (resolve_threads(threads) > 1) {
        std::vector<std::future<std::vector<uint64_t>>> jobs;
        for (int pi = 0; pi < ntt::kPrimeCount; ++pi)
            jobs.push_back(std::async(std::launch::async, run_prime, pi));
        for (int pi = 0; pi < ntt::kPrimeCount; ++pi) residues[pi] = jobs[pi].get();
    } else {
        for (int pi = 0; pi < ntt::kPrimeCount; ++pi) residues[pi] = run_prime(pi);
    }

    static const ntt::CrtCombiner combiner;
    std::vector<i128> raw(x + 1, 0);
    for (size_t i = 0; i < len; ++i) {
        uint64_t r[4] = {residues[0][i], residues[1][i], residues[2][i], residues[3][i]};
        raw[i + 1] = combiner.combine(r);  // tau(n) = [q^{n-1}] E^8
    }
    return raw;
}

inline std::vector<i128> tau_series_oracle(uint64_t x) {
    namespace mp = boost::multiprecision;
    using wide_int = mp::number<
        mp::cpp_int_backend<512, 512, mp::signed_magnitude, mp::checked, void>>;

    std::vector<wide_int> c(size_t(x), 0);
    c[0] = 1;
    for (uint64_t m = 1; m < x; ++m) {
        for (int rep = 0; rep < 24; ++rep) {
            for (uint64_t i = x - 1; i >= m; --i) c[i] -= c[i - m];
        }
    }
    // m in [X, ...) cannot touch q^0..q^{X-1} except m = X hitting nothing
    // below index X, so the product over m <= X is already complete here.

    static const wide_int lim_hi = (wide_int(1) << 127) - 1;
    static const wide_int lim_lo = -(wide_int(1) << 127);
    std::vector<i128> raw(x + 1, 0);
    for (uint64_t n = 1; n <= x; ++n) {
        const wide_int& v = c[n - 1];
        if (v > lim_hi || v < lim_lo)
            throw std::overflow_error("oracle tau: coefficient exceeds 128 signed bits");
        raw[n] = v.convert_to<i128>();
    }
    return raw;
}

}  // namespace detail

// threads = 0 means use all available hardware threads.
inline CoefficientTable build_coefficient_table(uint64_t x, Backend backend,
                                                unsigned threads = 0) {
    if (x < 1) throw std::invalid_argument("build_coefficient_table: X must be >= 1");
    if (backend == Backend::fast && x > kFastBackendMaxX)
        throw std::invalid_argument("build_coefficient_table: X exceeds fast-backend cap 3000000");
    if (backend == Backend::oracle && x > kOracleBackendMaxX)
        throw std::invalid_argument("build_coefficient_table: X exceeds oracle-backend cap 10000");

    std::vector<i128> raw = (backend == Backend::fast)
                                ? detail::tau_series_fast(x, threads)
                                : detail::tau_series_oracle(x);
    return CoefficientTable(FormSpec{}, x, std::move(raw), backend);
}

// ---------------------------------------------------------------------------
// Normalized eigenvalues lambda(n) = tau(n) / n^{11/2}
// ---------------------------------------------------------------------------

namespace detail {

inline double pow_11_over_2(uint64_t n) {
    return std::pow(double(n), 5.5);
}

// lambda(p^nu) by the Chebyshev-type recurrence
//   lambda(p^{nu+1}) = lambda(p) lambda(p^nu) - lambda(p^{nu-1}).
inline double eigenvalue_prime_power_from(double lambda_p, int nu) {
    double prev = 1.0, cur = lambda_p;
    if (nu == 0) return prev;
    for (int i = 1; i < nu; ++i) {
        double next = lambda_p * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

inline double angle_from_lambda(double lambda_p) {
    if (std::abs(lambda_p) > 2.0 + 1e-9)
        throw std::domain_error("angle_from_lambda: |lambda(p)| > 2, data corrupted");
    double c = lambda_p / 2.0;
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return std::acos(c);
}

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

}  // namespace detail

inline double eigenvalue_prime_power(const CoefficientTable& table, uint64_t p, int nu) {
    if (p > table.x_bound())
        throw std::out_of_range("eigenvalue: prime exceeds table bound");
    const double lambda_p =
        static_cast<double>(table.coefficient(p)) / detail::pow_11_over_2(p);
    return detail::eigenvalue_prime_power_from(lambda_p, nu);
}

// Exact path tau(n)/n^{11/2} for n <= X; otherwise multiplicativity plus the
// prime-power recurrence, requiring every prime factor of n to be <= X.
inline double eigenvalue(const CoefficientTable& table, uint64_t n) {
    if (n == 0) throw std::invalid_argument("eigenvalue: n must be positive");
    if (n <= table.x_bound())
        return static_cast<double>(table.coefficient(n)) / detail::pow_11_over_2(n);

    double result = 1.0;
    uint64_t rest = n;
    for (uint64_t p = 2; p * p <= rest; p = (p == 2 ? 3 : p + 2)) {
        if (rest % p != 0) continue;
        int nu = 0;
        while (rest % p == 0) {
            rest /= p;
            ++nu;
        }
        result *= eigenvalue_prime_power(table, p, nu);  // throws if p > X
    }
    if (rest > 1) result *= eigenvalue_prime_power(table, rest, 1);
    return result;
}

struct PrimeLocalData {
    uint64_t p;
    double lambda_p;
    double theta_p;                 // in [0, pi], lambda_p = 2 cos(theta_p)
    std::complex<double> alpha;     // e^{+i theta}
    std::complex<double> beta;      // e^{-i theta}
};

inline PrimeLocalData prime_local_data(const CoefficientTable& table, uint64_t p) {
    if (!detail::is_prime_u64(p))
        throw std::invalid_argument("prime_local_data: p is not prime");
    const double lambda_p =
        static_cast<double>(table.coefficient(p)) / detail::pow_11_over_2(p);
    const double theta = detail::angle_from_lambda(lambda_p);
    return PrimeLocalData{p, lambda_p, theta, std::polar(1.0, theta),
                          std::polar(1.0, -theta)};
}

// ---------------------------------------------------------------------------
// Identity and bound checks
// ---------------------------------------------------------------------------

inline std::vector<uint32_t> divisor_count_sieve(uint64_t limit) {
    std::vector<uint32_t> d(limit + 1, 0);
    for (uint64_t i = 1; i <= limit; ++i)
        for (uint64_t j = i; j <= limit; j += i) ++d[j];
    return d;
}

struct HeckeIdentityReport {
    // max over m,n <= M of |lambda(m)lambda(n) - sum_{d | (m,n)} lambda(mn/d^2)|
    double max_hecke_residual;
    // max over n <= M of |lambda(n)| - d(n)  (expected <= 0)
    double max_deligne_slack;
    // max over p <= M, nu <= 6 of |lambda(p^nu) - sin((nu+1)theta)/sin(theta)|
    double max_angle_residual;
};

inline HeckeIdentityReport check_hecke_identities(const CoefficientTable& table,
                                                  uint64_t m_bound) {
    if (m_bound * m_bound > table.x_bound())
        throw std::invalid_argument("check_hecke_identities: need M^2 <= X");

    std::vector<double> lam(m_bound * m_bound + 1, 0.0);
    for (uint64_t k = 1; k <= m_bound * m_bound; ++k)
        lam[k] = static_cast<double>(table.coefficient(k)) / detail::pow_11_over_2(k);

    HeckeIdentityReport rep{0.0, -std::numeric_limits<double>::infinity(), 0.0};

    for (uint64_t m = 1; m <= m_bound; ++m) {
        for (uint64_t n = 1; n <= m_bound; ++n) {
            const uint64_t g = std::gcd(m, n);
            double rhs = 0.0;
            for (uint64_t d = 1; d <= g; ++d)
                if (g % d == 0) rhs += lam[m * n / (d * d)];
            rep.max_hecke_residual =
                std::max(rep.max_hecke_residual, std::abs(lam[m] * lam[n] - rhs));
        }
    }

    const auto d = divisor_count_sieve(m_bound);
    for (uint64_t n = 1; n <= m_bound; ++n)
        rep.max_deligne_slack = std::max(rep.max_deligne_slack, std::abs(lam[n]) - d[n]);

    for (uint64_t p = 2; p <= m_bound; ++p) {
        if (!detail::is_prime_u64(p)) continue;
        const double theta = detail::angle_from_lambda(lam[p]);
        const double s = std::sin(theta);
        if (s < 1e-6) continue;  // angle formula degenerate; recurrence still defined
        uint64_t pnu = 1;
        for (int nu = 1; nu <= 6; ++nu) {
            pnu *= p;
            const double via_table = eigenvalue(table, pnu);
            const double via_angle = std::sin((nu + 1) * theta) / s;
            rep.max_angle_residual =
                std::max(rep.max_angle_residual, std::abs(via_table - via_angle));
        }
    }
    return rep;
}

// Exact-arithmetic divisor bound: counts n <= upto with tau(n)^2 > d(n)^2 n^11.
// A nonzero return means the table is corrupt; zero certifies |lambda| <= d(n).
inline uint64_t deligne_exact_violations(const CoefficientTable& table, uint64_t upto) {
    if (upto > table.x_bound())
        throw std::out_of_range("deligne_exact_violations: bound exceeds table");
    const auto d = divisor_count_sieve(upto);
    uint64_t violations = 0;
    for (uint64_t n = 1; n <= upto; ++n) {
        const u128 t = abs_u128(table.coefficient(n));
        const u256 lhs = mul_u128_u128(t, t);
        u256 rhs = u256::from_u64(uint64_t(d[n]) * uint64_t(d[n]));
        bool fits = true;
        for (int e = 0; e < 11 && fits; ++e) fits = rhs.mul_u64(n);
        if (!fits) continue;  // rhs >= 2^256 > lhs, bound trivially holds
        if (rhs < lhs) ++violations;
    }
    return violations;
}

}  // namespace taum

#endif  // TAUM_HECKE_CORE_HPP
