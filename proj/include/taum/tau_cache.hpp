// Binary coefficient cache.
//
// Layout (all little-endian):
//   bytes 0-3   magic "TAUC"
//   u32         format version (1)
//   u32         weight
//   u32         level
//   u64         X
//   X * 16      tau(n), n = 1..X, two's-complement 128-bit
//   u64         FNV-1a 64 checksum of the X*16 record bytes

#ifndef TAUM_TAU_CACHE_HPP
#define TAUM_TAU_CACHE_HPP

#include <array>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "taum/hecke_core.hpp"
#include "taum/int128.hpp"

namespace taum {

inline constexpr uint32_t kCacheVersion = 1;
inline constexpr char kCacheMagic[4] = {'T', 'A', 'U', 'C'};

namespace detail {

struct Fnv1a64 {
    uint64_t h = 14695981039346656037ULL;
    void update(const unsigned char* data, size_t len) {
        for (size_t i = 0; i < len; ++i) {
            h ^= data[i];
            h *= 1099511628211ULL;
        }
    }
};

inline void put_u32(std::ostream& os, uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = (unsigned char)(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 4);
}

inline void put_u64(std::ostream& os, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (unsigned char)(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

inline bool get_u32(std::istream& is, uint32_t& v) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t(b[i]) << (8 * i);
    return true;
}

inline bool get_u64(std::istream& is, uint64_t& v) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(b[i]) << (8 * i);
    return true;
}

inline std::array<unsigned char, 16> encode_i128(i128 v) {
    std::array<unsigned char, 16> b;
    u128 u = static_cast<u128>(v);  // two's complement bit pattern
    for (int i = 0; i < 16; ++i) b[i] = (unsigned char)(u >> (8 * i));
    return b;
}

inline i128 decode_i128(const unsigned char* b) {
    u128 u = 0;
    for (int i = 0; i < 16; ++i) u |= u128(b[i]) << (8 * i);
    return static_cast<i128>(u);
}

}  // namespace detail

inline void write_cache(const CoefficientTable& table, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cache write: cannot open " + path);

    os.write(kCacheMagic, 4);
    detail::put_u32(os, kCacheVersion);
    detail::put_u32(os, uint32_t(table.spec().weight));
    detail::put_u32(os, uint32_t(table.spec().level));
    detail::put_u64(os, table.x_bound());

    detail::Fnv1a64 sum;
    for (uint64_t n = 1; n <= table.x_bound(); ++n) {
        auto rec = detail::encode_i128(table.coefficient(n));
        sum.update(rec.data(), rec.size());
        os.write(reinterpret_cast<const char*>(rec.data()), rec.size());
    }
    detail::put_u64(os, sum.h);
    if (!os) throw std::runtime_error("cache write: I/O error on " + path);
}

inline CoefficientTable read_cache(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cache read: cannot open " + path);

    char magic[4];
    if (!is.read(magic, 4) || std::string(magic, 4) != std::string(kCacheMagic, 4))
        throw std::runtime_error("cache read: bad-magic");
    uint32_t version, weight, level;
    uint64_t x;
    if (!detail::get_u32(is, version)) throw std::runtime_error("cache read: truncated-file");
    if (version != kCacheVersion) throw std::runtime_error("cache read: bad-version");
    if (!detail::get_u32(is, weight) || !detail::get_u32(is, level) ||
        !detail::get_u64(is, x))
        throw std::runtime_error("cache read: truncated-file");
    if (weight != 12 || level != 1)
        throw std::runtime_error("cache read: unsupported form (weight/level)");
    if (x < 1 || x > kFastBackendMaxX)
        throw std::runtime_error("cache read: bound-exceeded");

    std::vector<i128> raw(x + 1, 0);
    detail::Fnv1a64 sum;
    std::array<unsigned char, 16> rec;
    for (uint64_t n = 1; n <= x; ++n) {
        if (!is.read(reinterpret_cast<char*>(rec.data()), 16))
            throw std::runtime_error("cache read: truncated-file");
        sum.update(rec.data(), rec.size());
        raw[n] = detail::decode_i128(rec.data());
    }
    uint64_t stored;
    if (!detail::get_u64(is, stored)) throw std::runtime_error("cache read: truncated-file");
    if (stored != sum.h) throw std::runtime_error("cache read: checksum-mismatch");

    return CoefficientTable(FormSpec(int(weight), int(level)), x, std::move(raw),
                            Backend::fast);
}

}  // namespace taum

#endif  // TAUM_TAU_CACHE_HPP
