// Number-theoretic transforms over four 62-bit primes, plus CRT recombination.
//
// The truncated integer series squarings behind the fast tau backend are done
// as cyclic convolutions mod p_k for four primes p_k = c * 2^24 + 1 just below
// 2^62, so transforms up to length 2^24 are available and the combined modulus
// P = p0 p1 p2 p3 ~ 2^248 leaves ample headroom over the 2*2^127 needed for a
// unique symmetric-range reconstruction of signed 128-bit coefficients.
//
// Arithmetic mod p uses Montgomery multiplication with R = 2^64; since
// p < 2^62, a*b + m*p < 2^127 never overflows unsigned __int128.

#ifndef TAUM_NTT_HPP
#define TAUM_NTT_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "taum/int128.hpp"

namespace taum::ntt {

struct Prime {
    uint64_t p;
    uint64_t generator;
};

// p = c * 2^24 + 1, all prime, all < 2^62, with verified primitive roots.
inline constexpr Prime kPrimes[4] = {
    {4611686018326724609ULL, 3},    // 274877906938 * 2^24 + 1
    {4611686018309947393ULL, 5},    // 274877906937 * 2^24 + 1
    {4611686018058289153ULL, 5},    // 274877906922 * 2^24 + 1
    {4611686017974403073ULL, 3},    // 274877906917 * 2^24 + 1
};
inline constexpr int kPrimeCount = 4;
inline constexpr size_t kMaxTransform = size_t(1) << 24;

// Montgomery context for one odd modulus p < 2^62.
class Montgomery {
public:
    explicit Montgomery(uint64_t p) : p_(p) {
        // pinv_ = -p^{-1} mod 2^64 by Newton iteration.
        uint64_t inv = p;
        for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
        pinv_ = ~inv + 1;
        r1_ = uint64_t((u128(1) << 64) % p);
        r2_ = uint64_t(u128(r1_) * r1_ % p);
    }

    uint64_t p() const { return p_; }
    uint64_t one() const { return r1_; }  // Montgomery form of 1

    uint64_t mul(uint64_t a, uint64_t b) const {
        u128 t = u128(a) * b;
        uint64_t m = uint64_t(t) * pinv_;
        uint64_t r = uint64_t((t + u128(m) * p_) >> 64);
        return r >= p_ ? r - p_ : r;
    }
    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint64_t sub(uint64_t a, uint64_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    uint64_t to_mont(uint64_t a) const { return mul(a, r2_); }
    uint64_t from_mont(uint64_t a) const {
        u128 t = a;
        uint64_t m = uint64_t(t) * pinv_;
        uint64_t r = uint64_t((t + u128(m) * p_) >> 64);
        return r >= p_ ? r - p_ : r;
    }
    uint64_t pow(uint64_t base_mont, uint64_t e) const {
        uint64_t r = one(), b = base_mont;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }
    uint64_t inv(uint64_t a_mont) const { return pow(a_mont, p_ - 2); }

private:
    uint64_t p_, pinv_, r1_, r2_;
};

// In-place radix-2 transform. Values and twiddles in Montgomery form.
inline void transform(std::vector<uint64_t>& a, const Montgomery& mont,
                      uint64_t generator, bool inverse) {
    const size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0 || n > kMaxTransform)
        throw std::invalid_argument("ntt: length must be a power of two <= 2^24");

    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const uint64_t g_mont = mont.to_mont(generator);
    for (size_t len = 2; len <= n; len <<= 1) {
        uint64_t wlen = mont.pow(g_mont, (mont.p() - 1) / len);
        if (inverse) wlen = mont.inv(wlen);
        for (size_t start = 0; start < n; start += len) {
            uint64_t w = mont.one();
            for (size_t j = 0; j < len / 2; ++j) {
                uint64_t u = a[start + j];
                uint64_t v = mont.mul(a[start + j + len / 2], w);
                a[start + j] = mont.add(u, v);
                a[start + j + len / 2] = mont.sub(u, v);
                w = mont.mul(w, wlen);
            }
        }
    }

    if (inverse) {
        const uint64_t ninv = mont.inv(mont.to_mont(uint64_t(n % mont.p())));
        for (auto& x : a) x = mont.mul(x, ninv);
    }
}

// Low `keep` coefficients of the square of a series given by its low `keep`
// coefficients mod p (standard form in, standard form out).
inline void square_truncated(std::vector<uint64_t>& coeffs, size_t keep,
                             const Montgomery& mont, uint64_t generator) {
    if (keep == 0 || coeffs.size() < keep)
        throw std::invalid_argument("square_truncated: bad length");
    const size_t n = std::bit_ceil(2 * keep - 1);

    std::vector<uint64_t> work(n, 0);
    for (size_t i = 0; i < keep; ++i) work[i] = mont.to_mont(coeffs[i]);
    transform(work, mont, generator, false);
    for (auto& x : work) x = mont.mul(x, x);
    transform(work, mont, generator, true);
    for (size_t i = 0; i < keep; ++i) coeffs[i] = mont.from_mont(work[i]);
}

// Garner reconstruction of a signed value from residues mod the four primes.
// The true value must lie in (-2^127, 2^127); anything else throws, which for
// the tau table signals a corrupted convolution rather than bad input.
class CrtCombiner {
public:
    CrtCombiner() {
        for (int i = 0; i < kPrimeCount; ++i) p_[i] = kPrimes[i].p;
        c1_ = inv_mod(p_[0] % p_[1], p_[1]);
        c2_ = inv_mod(mulmod(p_[0] % p_[2], p_[1] % p_[2], p_[2]), p_[2]);
        uint64_t p01_mod3 = mulmod(p_[0] % p_[3], p_[1] % p_[3], p_[3]);
        c3_ = inv_mod(mulmod(p01_mod3, p_[2] % p_[3], p_[3]), p_[3]);
        p01_mod_p3_ = p01_mod3;

        modulus_ = u256::from_u64(1);
        for (int i = 0; i < kPrimeCount; ++i) modulus_.mul_u64(p_[i]);
        half_modulus_ = modulus_;
        half_modulus_.shr1();
    }

    i128 combine(const uint64_t r[4]) const {
        // Mixed-radix digits: x = v0 + v1 p0 + v2 p0 p1 + v3 p0 p1 p2.
        const uint64_t v0 = r[0];
        const uint64_t v1 = mulmod(submod(r[1], v0 % p_[1], p_[1]), c1_, p_[1]);

        uint64_t t2 = addmod(v0 % p_[2], mulmod(v1 % p_[2], p_[0] % p_[2], p_[2]), p_[2]);
        const uint64_t v2 = mulmod(submod(r[2], t2, p_[2]), c2_, p_[2]);

        uint64_t t3 = addmod(v0 % p_[3], mulmod(v1 % p_[3], p_[0] % p_[3], p_[3]), p_[3]);
        t3 = addmod(t3, mulmod(v2 % p_[3], p01_mod_p3_, p_[3]), p_[3]);
        const uint64_t v3 = mulmod(submod(r[3], t3, p_[3]), c3_, p_[3]);

        // Horner over the mixed radix in 256-bit arithmetic.
        u256 x = u256::from_u64(v3);
        x.mul_u64(p_[2]);
        x.add_u64(v2);
        x.mul_u64(p_[1]);
        x.add_u64(v1);
        x.mul_u64(p_[0]);
        x.add_u64(v0);

        const bool negative = half_modulus_ < x;
        u256 mag = x;
        if (negative) {
            mag = modulus_;
            mag.sub(x);
        }
        if (!mag.fits_u128())
            throw std::overflow_error("crt: reconstructed value exceeds 128 bits");
        const u128 m = mag.to_u128();
        if (m > (negative ? (u128(1) << 127) : (u128(1) << 127) - 1))
            throw std::overflow_error("crt: reconstructed value exceeds 128 bits");
        return negative ? -i128(m - 1) - 1 : i128(m);
    }

private:
    static uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
        return uint64_t(u128(a) * b % p);
    }
    static uint64_t addmod(uint64_t a, uint64_t b, uint64_t p) {
        uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    static uint64_t submod(uint64_t a, uint64_t b, uint64_t p) {
        return a >= b ? a - b : a + p - b;
    }
    static uint64_t inv_mod(uint64_t a, uint64_t p) {
        uint64_t r = 1, b = a, e = p - 2;
        while (e) {
            if (e & 1) r = mulmod(r, b, p);
            b = mulmod(b, b, p);
            e >>= 1;
        }
        return r;
    }

    uint64_t p_[4];
    uint64_t c1_, c2_, c3_, p01_mod_p3_;
    u256 modulus_, half_modulus_;
};

}  // namespace taum::ntt

#endif  // TAUM_NTT_HPP
