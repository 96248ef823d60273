#include "lilliput/cipher.hpp"

namespace lilliput {

namespace {

constexpr std::array<Nibble, 16> kSbox = {0x4, 0x8, 0x7, 0x1, 0x9, 0x3, 0x2, 0xE,
                                          0x0, 0xB, 0x6, 0xF, 0xA, 0x5, 0xD, 0xC};

constexpr std::array<Nibble, 16> make_sbox_inv() {
    std::array<Nibble, 16> inv{};
    for (int x = 0; x < 16; ++x) inv[kSbox[static_cast<std::size_t>(x)]] = static_cast<Nibble>(x);
    return inv;
}
constexpr std::array<Nibble, 16> kSboxInv = make_sbox_inv();

constexpr std::array<int, 16> make_pi_inv() {
    constexpr std::array<int, 16> pi = {13, 9, 14, 8, 10, 11, 12, 15, 4, 5, 3, 1, 2, 6, 0, 7};
    std::array<int, 16> inv{};
    for (int i = 0; i < 16; ++i) inv[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])] = i;
    return inv;
}

}  // namespace

const std::array<int, 16> kPi = {13, 9, 14, 8, 10, 11, 12, 15, 4, 5, 3, 1, 2, 6, 0, 7};
const std::array<int, 16> kPiInv = make_pi_inv();

Nibble sbox(Nibble x) { return kSbox[x]; }
Nibble sbox_inv(Nibble y) { return kSboxInv[y]; }

CipherState permute(const CipherState& s) {
    CipherState out;
    for (int i = 0; i < 16; ++i) out[kPi[static_cast<std::size_t>(i)]] = s[i];
    return out;
}

CipherState permute_inv(const CipherState& s) {
    CipherState out;
    for (int i = 0; i < 16; ++i) out[i] = s[kPi[static_cast<std::size_t>(i)]];
    return out;
}

CipherState round_encrypt(const CipherState& s, const RoundKey& rk, bool apply_permutation) {
    CipherState y = s;
    for (int i = 0; i < 8; ++i) y[8 + i] ^= kSbox[s[7 - i] ^ rk[i]];
    const Nibble x7 = s[7];
    for (int i = 1; i < 7; ++i) y[8 + i] ^= x7;
    Nibble acc = 0;
    for (int i = 1; i < 8; ++i) acc ^= s[i];
    y[15] ^= acc;
    return apply_permutation ? permute(y) : y;
}

CipherState round_decrypt(const CipherState& s, const RoundKey& rk, bool apply_permutation) {
    CipherState y = apply_permutation ? permute_inv(s) : s;
    // The right half is untouched by a round, so the XOR layers undo themselves.
    const Nibble x7 = y[7];
    Nibble acc = 0;
    for (int i = 1; i < 8; ++i) acc ^= y[i];
    y[15] ^= acc;
    for (int i = 1; i < 7; ++i) y[8 + i] ^= x7;
    for (int i = 0; i < 8; ++i) y[8 + i] ^= kSbox[y[7 - i] ^ rk[i]];
    return y;
}

CipherState encrypt(const CipherState& p, const RoundKeys& rks) {
    CipherState x = p;
    for (int r = 0; r < kNumRounds; ++r)
        x = round_encrypt(x, rks[static_cast<std::size_t>(r)], r != kNumRounds - 1);
    return x;
}

CipherState decrypt(const CipherState& c, const RoundKeys& rks) {
    CipherState x = c;
    for (int r = kNumRounds - 1; r >= 0; --r)
        x = round_decrypt(x, rks[static_cast<std::size_t>(r)], r != kNumRounds - 1);
    return x;
}

}  // namespace lilliput
