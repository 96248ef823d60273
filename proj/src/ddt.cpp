#include "lilliput/ddt.hpp"

#include "lilliput/cipher.hpp"

namespace lilliput::dfa {

NibbleSet xor_shift(NibbleSet s, Nibble c) {
    std::uint32_t m = s.mask;
    if (c & 1) m = ((m & 0xAAAA) >> 1) | ((m & 0x5555) << 1);
    if (c & 2) m = ((m & 0xCCCC) >> 2) | ((m & 0x3333) << 2);
    if (c & 4) m = ((m & 0xF0F0) >> 4) | ((m & 0x0F0F) << 4);
    if (c & 8) m = ((m & 0xFF00) >> 8) | ((m & 0x00FF) << 8);
    return {static_cast<std::uint16_t>(m)};
}

DdtTable compute_ddt() {
    DdtTable t;
    for (int a = 0; a < 16; ++a)
        for (int x = 0; x < 16; ++x)
            ++t.counts[a][sbox(static_cast<Nibble>(x)) ^ sbox(static_cast<Nibble>(x ^ a))];
    return t;
}

namespace {

struct InTables {
    DdtTable ddt;
    std::uint16_t in_mask[16][16] = {};

    InTables() {
        ddt = compute_ddt();
        for (int a = 0; a < 16; ++a)
            for (int x = 0; x < 16; ++x) {
                const int b = sbox(static_cast<Nibble>(x)) ^ sbox(static_cast<Nibble>(x ^ a));
                in_mask[a][b] |= static_cast<std::uint16_t>(1u << x);
            }
    }
};

const InTables& tables() {
    static const InTables t;
    return t;
}

}  // namespace

const DdtTable& ddt() { return tables().ddt; }

NibbleSet in_set(Nibble alpha, Nibble beta) { return {tables().in_mask[alpha][beta]}; }

}  // namespace lilliput::dfa
