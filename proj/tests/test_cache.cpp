#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "taum/tau_cache.hpp"

using namespace taum;
using Catch::Matchers::ContainsSubstring;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

std::vector<char> slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

void spit(const std::filesystem::path& p, const std::vector<char>& bytes) {
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    os.write(bytes.data(), std::streamsize(bytes.size()));
}

}  // namespace

TEST_CASE("cache round-trip preserves the table exactly", "[cache]") {
    const auto table = build_coefficient_table(100, Backend::oracle);
    const auto path = temp_file("taum_roundtrip.tauc");
    write_cache(table, path.string());

    const auto back = read_cache(path.string());
    REQUIRE(back.x_bound() == 100);
    for (uint64_t n = 1; n <= 100; ++n)
        REQUIRE(back.coefficient(n) == table.coefficient(n));
    std::filesystem::remove(path);
}

TEST_CASE("cache rejects corruption and malformed headers", "[cache]") {
    const auto table = build_coefficient_table(100, Backend::oracle);
    const auto path = temp_file("taum_corrupt.tauc");
    write_cache(table, path.string());
    const auto original = slurp(path);

    SECTION("flipped record byte fails the checksum") {
        auto bytes = original;
        bytes[24 + 40] ^= 0x01;  // somewhere inside the records
        spit(path, bytes);
        REQUIRE_THROWS_WITH(read_cache(path.string()), ContainsSubstring("checksum-mismatch"));
    }

    SECTION("wrong magic") {
        auto bytes = original;
        bytes[0] = 'X';
        spit(path, bytes);
        REQUIRE_THROWS_WITH(read_cache(path.string()), ContainsSubstring("bad-magic"));
    }

    SECTION("unknown version") {
        auto bytes = original;
        bytes[4] = 99;
        spit(path, bytes);
        REQUIRE_THROWS_WITH(read_cache(path.string()), ContainsSubstring("bad-version"));
    }

    SECTION("truncated file") {
        auto bytes = original;
        bytes.resize(bytes.size() - 9);
        spit(path, bytes);
        REQUIRE_THROWS_WITH(read_cache(path.string()), ContainsSubstring("truncated-file"));
    }

    SECTION("unsupported weight") {
        auto bytes = original;
        bytes[8] = 10;  // weight field
        spit(path, bytes);
        REQUIRE_THROWS_WITH(read_cache(path.string()), ContainsSubstring("unsupported form"));
    }

    std::filesystem::remove(path);
}

TEST_CASE("cache read of a missing file fails cleanly", "[cache]") {
    REQUIRE_THROWS_WITH(read_cache("/nonexistent/taum.tauc"), ContainsSubstring("cannot open"));
}
