// Trace polynomials, the power-to-trace basis change, and local Euler factors
// of the symmetric-power L-functions, with the factorization bookkeeping
//   F_j,p = zeta_p^{m_j} * prod_i (sym^{2i} factor)^{e_i} * H_{j,p}
// checked coefficientwise: H_{j,p} = 1 + O(T^2), i.e. its degree-1
// coefficient vanishes.  The exponents (m_j; e_1..e_j) are exactly the
// expansion of x^{2j} in the trace basis, computed here by exact integer
// elimination rather than hardcoded.

#ifndef TAUM_LFUNCTIONS_HPP
#define TAUM_LFUNCTIONS_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace taum {

// Dense integer polynomial, ascending degree, trailing coefficient nonzero
// (zero polynomial = empty coefficient list). Degree stays tiny (<= 8) here.
struct IntPolynomial {
    std::vector<long long> c;

    int degree() const { return int(c.size()) - 1; }
    long long coeff(int k) const { return (k >= 0 && k < int(c.size())) ? c[k] : 0; }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool operator==(const IntPolynomial& o) const { return c == o.c; }
};

namespace detail {

inline IntPolynomial poly_mul_x(const IntPolynomial& p) {
    IntPolynomial r;
    r.c.assign(p.c.size() + 1, 0);
    for (size_t i = 0; i < p.c.size(); ++i) r.c[i + 1] = p.c[i];
    return r;
}

inline IntPolynomial poly_sub(const IntPolynomial& a, const IntPolynomial& b) {
    IntPolynomial r;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff(int(i)) - b.coeff(int(i));
    r.trim();
    return r;
}

inline IntPolynomial poly_scaled(const IntPolynomial& p, long long s) {
    IntPolynomial r = p;
    for (auto& v : r.c) v *= s;
    r.trim();
    return r;
}

}  // namespace detail

// T_m with T_m(2 cos t) = sin((m+1)t)/sin(t), via T_{n+1} = x T_n - T_{n-1},
// T_0 = 1, T_1 = x. Only even m up to 8 are needed by the decompositions.
inline IntPolynomial trace_polynomial(int m) {
    if (m < 0 || m > 8 || m % 2 != 0)
        throw std::invalid_argument("trace_polynomial: need even m in [0, 8]");
    IntPolynomial prev{{1}};          // T_0
    if (m == 0) return prev;
    IntPolynomial cur{{0, 1}};        // T_1
    for (int n = 1; n < m; ++n) {
        IntPolynomial next = detail::poly_sub(detail::poly_mul_x(cur), prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// Coefficients (c_0, ..., c_j) with x^{2j} = sum_i c_i T_{2i}, by elimination
// against the monic T_{2i} from the top degree down. Exact in 64-bit.
inline std::vector<long long> power_to_trace_basis(int j) {
    if (j < 0 || j > 4) throw std::invalid_argument("power_to_trace_basis: need j in [0, 4]");
    IntPolynomial rem;
    rem.c.assign(2 * j + 1, 0);
    rem.c[2 * j] = 1;
    std::vector<long long> row(j + 1, 0);
    for (int i = j; i >= 0; --i) {
        row[i] = rem.coeff(2 * i);
        rem = detail::poly_sub(rem, detail::poly_scaled(trace_polynomial(2 * i), row[i]));
    }
    if (!rem.c.empty()) throw std::logic_error("power_to_trace_basis: nonzero remainder");
    return row;
}

// Truncated power series in T = p^{-s}, real coefficients, c[0] = 1 for all
// Euler-factor series in this module.
struct LocalSeries {
    uint64_t p = 0;  // 0 when the series is driven by an angle, not a prime
    int depth = 0;
    std::vector<double> c;
};

namespace detail {

inline std::vector<double> series_mul(const std::vector<double>& a,
                                      const std::vector<double>& b, int depth) {
    std::vector<double> r(depth + 1, 0.0);
    for (int i = 0; i <= depth; ++i) {
        if (a[i] == 0.0) continue;
        for (int j = 0; i + j <= depth; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

inline std::vector<double> series_inv(const std::vector<double>& a, int depth) {
    if (a[0] == 0.0) throw std::domain_error("series_inv: constant term is zero");
    std::vector<double> r(depth + 1, 0.0);
    r[0] = 1.0 / a[0];
    for (int n = 1; n <= depth; ++n) {
        double acc = 0.0;
        for (int k = 1; k <= n; ++k) acc += a[k] * r[n - k];
        r[n] = -acc / a[0];
    }
    return r;
}

inline std::vector<double> series_pow(const std::vector<double>& a, int e, int depth) {
    std::vector<double> r(depth + 1, 0.0);
    r[0] = 1.0;
    for (int i = 0; i < e; ++i) r = series_mul(r, a, depth);
    return r;
}

// sin((nu+1)t)/sin(t) with the limit values (nu+1) at t=0 and
// (-1)^nu (nu+1) at t=pi.
inline double eigenvalue_power_from_angle(double theta, int nu) {
    const double s = std::sin(theta);
    if (std::abs(s) < 1e-9) {
        const bool near_zero = theta < 1.5;
        const double mag = nu + 1.0;
        return near_zero ? mag : (nu % 2 == 0 ? mag : -mag);
    }
    return std::sin((nu + 1) * theta) / s;
}

}  // namespace detail

// Local factor of the symmetric m-th power at eigenvalue angle theta:
//   prod_{0<=j<=m} (1 - e^{i(m-2j) theta} T)^{-1}
// expanded as a real series. Roots pair conjugately, so the imaginary parts
// are pure rounding noise; the largest one discarded is reported through
// max_imag when requested.
inline LocalSeries sym_local_factor(double theta, int m, int depth,
                                    double* max_imag = nullptr) {
    if (m < 0 || m > 8) throw std::invalid_argument("sym_local_factor: need m in [0, 8]");
    if (depth < 1) throw std::invalid_argument("sym_local_factor: depth must be >= 1");
    if (!(theta >= 0.0 && theta <= std::acos(-1.0) + 1e-12))
        throw std::domain_error("sym_local_factor: theta outside [0, pi]");

    std::vector<std::complex<double>> acc(depth + 1, 0.0);
    acc[0] = 1.0;
    for (int j = 0; j <= m; ++j) {
        const std::complex<double> z = std::polar(1.0, (m - 2 * j) * theta);
        // multiply by the geometric series of (1 - zT)^{-1}: prefix recurrence
        for (int n = 1; n <= depth; ++n) acc[n] += z * acc[n - 1];
    }

    LocalSeries out{0, depth, std::vector<double>(depth + 1, 0.0)};
    double worst = 0.0;
    for (int n = 0; n <= depth; ++n) {
        out.c[n] = acc[n].real();
        worst = std::max(worst, std::abs(acc[n].imag()));
    }
    if (max_imag) *max_imag = worst;
    return out;
}

// The local quotient H_{j,p}: the series sum_nu lambda(p^nu)^{2j} T^nu divided
// by zeta_p^{m_j} times the sym-power factors with the trace-basis exponents.
// Degree-0 coefficient is 1; degree-1 must vanish up to rounding.
inline LocalSeries decomposition_residual(double theta, int j, int depth) {
    if (j < 1 || j > 4) throw std::invalid_argument("decomposition_residual: need j in [1, 4]");
    if (depth < 2) throw std::invalid_argument("decomposition_residual: depth must be >= 2");

    std::vector<double> f(depth + 1, 0.0);
    for (int nu = 0; nu <= depth; ++nu)
        f[nu] = std::pow(detail::eigenvalue_power_from_angle(theta, nu), 2 * j);

    const std::vector<long long> row = power_to_trace_basis(j);
    std::vector<double> den(depth + 1, 1.0);              // zeta_p = (1-T)^{-1}
    den = detail::series_pow(den, int(row[0]), depth);    // zeta_p^{m_j}
    for (int i = 1; i <= j; ++i) {
        const LocalSeries sym = sym_local_factor(theta, 2 * i, depth);
        den = detail::series_mul(den, detail::series_pow(sym.c, int(row[i]), depth), depth);
    }

    LocalSeries out{0, depth, detail::series_mul(f, detail::series_inv(den, depth), depth)};
    return out;
}

// CSV rows "p,j,depth,c1,c2,...,c<depth>" for the residual quotients at every
// prime p <= p_bound, using the table's eigenvalue angles.
template <typename Table>
std::string residual_csv(const Table& table, uint64_t p_bound, int depth) {
    std::string out = "p,j,depth";
    for (int k = 1; k <= depth; ++k) out += ",c" + std::to_string(k);
    out += "\n";
    char buf[64];
    for (uint64_t p = 2; p <= p_bound; ++p) {
        bool prime = p >= 2;
        for (uint64_t q = 2; q * q <= p && prime; ++q) prime = (p % q != 0);
        if (!prime) continue;
        const double lambda =
            static_cast<double>(table.coefficient(p)) / std::pow(double(p), 5.5);
        const double theta = std::acos(std::min(1.0, std::max(-1.0, lambda / 2.0)));
        for (int j = 1; j <= 4; ++j) {
            LocalSeries h = decomposition_residual(theta, j, depth);
            out += std::to_string(p) + "," + std::to_string(j) + "," + std::to_string(depth);
            for (int k = 1; k <= depth; ++k) {
                std::snprintf(buf, sizeof(buf), ",%.12g", h.c[k]);
                out += buf;
            }
            out += "\n";
        }
    }
    return out;
}

}  // namespace taum

#endif  // TAUM_LFUNCTIONS_HPP
