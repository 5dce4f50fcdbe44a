// 128-bit integer helpers and a minimal unsigned 256-bit type.
//
// u256 exists for two jobs where 128 bits run out:
//   - Garner recombination of four ~2^62 CRT residues (modulus ~2^248),
//   - the exact divisor-bound check tau(n)^2 <= d(n)^2 * n^11
//     (n^11 alone is ~2^237 at n = 3e6).

#ifndef TAUM_INT128_HPP
#define TAUM_INT128_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace taum {

using i128 = __int128;
using u128 = unsigned __int128;

inline constexpr i128 i128_max() {
    return static_cast<i128>((u128(1) << 127) - 1);
}

inline u128 abs_u128(i128 v) {
    return v < 0 ? u128(0) - static_cast<u128>(v) : static_cast<u128>(v);
}

inline std::string i128_to_string(i128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    u128 m = abs_u128(v);
    std::string s;
    while (m) {
        s += char('0' + int(m % 10));
        m /= 10;
    }
    if (neg) s += '-';
    return {s.rbegin(), s.rend()};
}

// Parses a base-10 integer with optional sign. Throws on garbage or overflow.
inline i128 i128_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("i128_from_string: empty input");
    size_t pos = 0;
    bool neg = false;
    if (s[pos] == '+' || s[pos] == '-') neg = (s[pos++] == '-');
    if (pos == s.size()) throw std::invalid_argument("i128_from_string: sign only");
    u128 m = 0;
    const u128 limit = u128(1) << 127;  // |value| <= 2^127 pre-sign
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c < '0' || c > '9') throw std::invalid_argument("i128_from_string: bad digit");
        if (m > (limit - (c - '0')) / 10) throw std::overflow_error("i128_from_string: overflow");
        m = m * 10 + u128(c - '0');
    }
    if (!neg && m >= limit) throw std::overflow_error("i128_from_string: overflow");
    if (neg && m > limit) throw std::overflow_error("i128_from_string: overflow");
    return neg ? -static_cast<i128>(m - (m == limit)) - i128(m == limit)
               : static_cast<i128>(m);
}

// Unsigned 256-bit value, four 64-bit limbs, little-endian.
struct u256 {
    uint64_t w[4] = {0, 0, 0, 0};

    static u256 from_u64(uint64_t v) {
        u256 r;
        r.w[0] = v;
        return r;
    }
    static u256 from_u128(u128 v) {
        u256 r;
        r.w[0] = uint64_t(v);
        r.w[1] = uint64_t(v >> 64);
        return r;
    }

    bool fits_u128() const { return w[2] == 0 && w[3] == 0; }
    u128 to_u128() const { return (u128(w[1]) << 64) | w[0]; }

    int compare(const u256& o) const {
        for (int i = 3; i >= 0; --i) {
            if (w[i] != o.w[i]) return w[i] < o.w[i] ? -1 : 1;
        }
        return 0;
    }
    bool operator<(const u256& o) const { return compare(o) < 0; }
    bool operator<=(const u256& o) const { return compare(o) <= 0; }
    bool operator==(const u256& o) const { return compare(o) == 0; }

    // this -= o; caller guarantees this >= o.
    void sub(const u256& o) {
        u128 borrow = 0;
        for (int i = 0; i < 4; ++i) {
            u128 d = u128(w[i]) - o.w[i] - borrow;
            w[i] = uint64_t(d);
            borrow = (d >> 64) ? 1 : 0;
        }
    }

    void add_u64(uint64_t v) {
        u128 carry = v;
        for (int i = 0; i < 4 && carry; ++i) {
            carry += w[i];
            w[i] = uint64_t(carry);
            carry >>= 64;
        }
    }

    // Multiplies by a 64-bit factor. Returns false on 256-bit overflow
    // (value is then meaningless; callers treat it as "too large").
    bool mul_u64(uint64_t m) {
        u128 carry = 0;
        for (int i = 0; i < 4; ++i) {
            u128 t = u128(w[i]) * m + carry;
            w[i] = uint64_t(t);
            carry = t >> 64;
        }
        return carry == 0;
    }

    void shr1() {
        for (int i = 0; i < 3; ++i) w[i] = (w[i] >> 1) | (w[i + 1] << 63);
        w[3] >>= 1;
    }
};

inline u256 mul_u128_u128(u128 a, u128 b) {
    const uint64_t a0 = uint64_t(a), a1 = uint64_t(a >> 64);
    const uint64_t b0 = uint64_t(b), b1 = uint64_t(b >> 64);
    const u128 p00 = u128(a0) * b0;
    const u128 p01 = u128(a0) * b1;
    const u128 p10 = u128(a1) * b0;
    const u128 p11 = u128(a1) * b1;

    u256 r;
    r.w[0] = uint64_t(p00);
    u128 mid = (p00 >> 64) + uint64_t(p01) + uint64_t(p10);
    r.w[1] = uint64_t(mid);
    u128 hi = (mid >> 64) + (p01 >> 64) + (p10 >> 64) + uint64_t(p11);
    r.w[2] = uint64_t(hi);
    r.w[3] = uint64_t((hi >> 64) + (p11 >> 64));
    return r;
}

}  // namespace taum

#endif  // TAUM_INT128_HPP
