#pragma once

#include <array>
#include <cstdint>

namespace fgmc {

// Philox4x32-10 counter-based generator (Random123 conventions: multipliers
// 0xD2511F53 / 0xCD9E8D57, Weyl constants 0x9E3779B9 / 0xBB67AE85, 10 rounds).
// Counter-based means the k-th output block is a pure function of (counter,
// key), so substreams are trivial and exactly reproducible.
inline std::array<uint32_t, 4> philox4x32_10(std::array<uint32_t, 4> ctr,
                                             std::array<uint32_t, 2> key) {
    constexpr uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        uint64_t p0 = uint64_t(M0) * ctr[0];
        uint64_t p1 = uint64_t(M1) * ctr[2];
        uint32_t hi0 = uint32_t(p0 >> 32), lo0 = uint32_t(p0);
        uint32_t hi1 = uint32_t(p1 >> 32), lo1 = uint32_t(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += W0;
        key[1] += W1;
    }
    return ctr;
}

// One substream of the family keyed by (seed, stream). Layout:
//   key     = (lo32(seed), hi32(seed))
//   counter = (lo32(block), hi32(block), lo32(stream), hi32(stream))
// Distinct stream ids therefore index disjoint counter spaces; each stream
// yields 2^64 blocks of four 32-bit words.
class PhiloxRng {
  public:
    PhiloxRng(uint64_t seed, uint64_t stream)
        : key_{uint32_t(seed), uint32_t(seed >> 32)},
          stream_lo_(uint32_t(stream)),
          stream_hi_(uint32_t(stream >> 32)) {}

    uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    uint64_t next_u64() {
        uint64_t lo = next_u32();
        uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // 53-bit mantissa uniform in [0, 1)
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // low `nbits` random bits; always consumes one 64-bit word
    uint64_t next_bits(int nbits) {
        uint64_t w = next_u64();
        return nbits >= 64 ? w : w & ((uint64_t(1) << nbits) - 1);
    }

  private:
    void refill() {
        buf_ = philox4x32_10({uint32_t(block_), uint32_t(block_ >> 32), stream_lo_, stream_hi_},
                             key_);
        ++block_;
        pos_ = 0;
    }

    std::array<uint32_t, 2> key_;
    uint32_t stream_lo_, stream_hi_;
    uint64_t block_ = 0;
    std::array<uint32_t, 4> buf_{};
    int pos_ = 4;
};

}  // namespace fgmc
