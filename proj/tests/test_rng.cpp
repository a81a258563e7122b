#include <doctest.h>

#include <cmath>

#include "fgmc/rng.hpp"

using namespace fgmc;

// Known-answer vectors for the Random123 conventions (validated against an
// independent reference implementation).
TEST_CASE("philox4x32-10 known answers") {
    auto o = philox4x32_10({0, 0, 0, 0}, {0, 0});
    CHECK(o == std::array<uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});

    o = philox4x32_10({1, 0, 0, 0}, {0, 0});
    CHECK(o == std::array<uint32_t, 4>{0xf8e4cca4u, 0x5cb200dbu, 0xb1a574ebu, 0x097eff67u});

    o = philox4x32_10({0, 0, 0xdeadbeefu, 0}, {0x12345678u, 0x9abcdef0u});
    CHECK(o == std::array<uint32_t, 4>{0xb6ad3d36u, 0xd9fcd1a1u, 0xefe5b9f7u, 0x7a2a9ea0u});

    o = philox4x32_10({2, 0, 1, 0}, {0x2au, 0});
    CHECK(o == std::array<uint32_t, 4>{0x36794079u, 0x1f70ab07u, 0x709af7c6u, 0x56eae9bcu});

    o = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                      {0xa4093822u, 0x299f31d0u});
    CHECK(o == std::array<uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("stream wrapper matches the raw block function") {
    PhiloxRng rng(0x9abcdef012345678ull, 0xdeadbeefull);
    // stream 0xdeadbeef -> counter words (block, block>>32, 0xdeadbeef, 0)
    auto block0 = philox4x32_10({0, 0, 0xdeadbeefu, 0}, {0x12345678u, 0x9abcdef0u});
    CHECK(rng.next_u32() == block0[0]);
    CHECK(rng.next_u32() == block0[1]);
    CHECK(rng.next_u32() == block0[2]);
    CHECK(rng.next_u32() == block0[3]);
    auto block1 = philox4x32_10({1, 0, 0xdeadbeefu, 0}, {0x12345678u, 0x9abcdef0u});
    CHECK(rng.next_u32() == block1[0]);
}

TEST_CASE("streams are deterministic and distinct") {
    PhiloxRng a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    bool all_equal_c = true, all_equal_d = true;
    for (int i = 0; i < 64; ++i) {
        uint64_t va = a.next_u64();
        CHECK(va == b.next_u64());
        all_equal_c &= (va == c.next_u64());
        all_equal_d &= (va == d.next_u64());
    }
    CHECK(!all_equal_c);
    CHECK(!all_equal_d);
}

TEST_CASE("doubles land in [0,1) and look uniform") {
    PhiloxRng rng(123, 7);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        double u = rng.next_double();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    // mean of n uniforms: 0.5 +- 3/sqrt(12 n)
    CHECK(std::abs(sum / n - 0.5) < 3.0 / std::sqrt(12.0 * n));
}

TEST_CASE("next_bits masks to width") {
    PhiloxRng rng(5, 5);
    for (int i = 0; i < 100; ++i) CHECK(rng.next_bits(5) < 32u);
    for (int i = 0; i < 10; ++i) rng.next_bits(64);  // full width allowed
}
