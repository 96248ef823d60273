#include "lilliput/key_schedule.hpp"

#include <stdexcept>

#include "lilliput/cipher.hpp"

namespace lilliput {

namespace {

inline Nibble rot_right1(Nibble x) { return static_cast<Nibble>(((x >> 1) | (x << 3)) & 0xF); }

}  // namespace

LfsmState lfsm_update(const LfsmState& k) {
    LfsmState out;
    for (int b = 0; b < 4; ++b) {
        const int j = 5 * b;
        const Nibble k0 = k[j], k1 = k[j + 1], k2 = k[j + 2], k3 = k[j + 3], k4 = k[j + 4];
        out[j + 4] = k3;
        out[j + 3] = k2;
        out[j + 2] = k1 ^ static_cast<Nibble>(k2 >> 3);
        out[j + 1] = k0 ^ rot_right1(k4);
        out[j] = k4;
    }
    return out;
}

std::uint32_t assemble_z(const LfsmState& k) {
    static constexpr int kSources[8] = {18, 16, 13, 10, 9, 6, 3, 1};
    std::uint32_t z = 0;
    for (int s : kSources) z = (z << 4) | k[s];
    return z;
}

RoundKey extract_round_key(const LfsmState& k, int r) {
    if (r < 0 || r >= kNumRounds) throw std::invalid_argument("round index out of range");
    const std::uint32_t z = assemble_z(k);
    std::uint32_t word = 0;
    for (int i = 0; i < 8; ++i) {
        const int in = (((z >> i) & 1) << 3) | (((z >> (i + 8)) & 1) << 2) |
                       (((z >> (i + 16)) & 1) << 1) | ((z >> (i + 24)) & 1);
        word |= static_cast<std::uint32_t>(sbox(static_cast<Nibble>(in))) << (4 * i);
    }
    word ^= static_cast<std::uint32_t>(r & 0x1F) << 27;
    RoundKey rk;
    for (int i = 0; i < 8; ++i) rk[i] = static_cast<Nibble>((word >> (4 * i)) & 0xF);
    return rk;
}

RoundKeys expand_key(const MasterKey& mk) {
    RoundKeys rks;
    LfsmState k = mk;
    rks[0] = extract_round_key(k, 0);
    for (int r = 1; r < kNumRounds; ++r) {
        k = lfsm_update(k);
        rks[static_cast<std::size_t>(r)] = extract_round_key(k, r);
    }
    return rks;
}

}  // namespace lilliput
