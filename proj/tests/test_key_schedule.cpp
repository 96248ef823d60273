#include <fstream>

#include "doctest.h"
#include "lilliput/cipher.hpp"
#include "lilliput/fault.hpp"
#include "lilliput/key_schedule.hpp"

using namespace lilliput;

TEST_CASE("register update fixes the zero state") {
    CHECK(lfsm_update(LfsmState{}) == LfsmState{});
}

TEST_CASE("register update block example") {
    // block 0 = (K4..K0) = (1,0,0,0,0): the wrap cell keeps the 1 and the
    // rotation tap turns it into 8 one cell up
    LfsmState k{};
    k[4] = 1;
    const LfsmState n = lfsm_update(k);
    CHECK(n[0] == 1);
    CHECK(n[1] == 8);
    CHECK(n[2] == 0);
    CHECK(n[3] == 0);
    CHECK(n[4] == 0);
}

TEST_CASE("round key extraction from the zero state") {
    const LfsmState zero{};
    const RoundKey rk0 = extract_round_key(zero, 0);
    CHECK(to_hex(rk0) == "44444444");  // S(0) in every nibble
    const RoundKey rk1 = extract_round_key(zero, 1);
    CHECK(to_hex(rk1) == "4C444444");  // round counter lands in the top five bits
    CHECK_THROWS_AS(extract_round_key(zero, 30), std::invalid_argument);
    CHECK_THROWS_AS(extract_round_key(zero, -1), std::invalid_argument);
}

TEST_CASE("single-bit Z patterns hit exactly one extraction bit") {
    // one set bit in an extracted register nibble -> one set bit in one
    // S-box input, at the position determined by the subkey nibble index
    static constexpr int kSources[8] = {1, 3, 6, 9, 10, 13, 16, 18};
    for (int j = 0; j < 32; ++j) {
        LfsmState k{};
        k[kSources[j / 4]] = static_cast<Nibble>(1 << (j % 4));
        CHECK(assemble_z(k) == (1u << j));
        const RoundKey rk = extract_round_key(k, 0);
        for (int i = 0; i < 8; ++i) {
            const Nibble pre = sbox_inv(rk[i]);
            const Nibble expected = (j % 8 == i) ? static_cast<Nibble>(1 << (3 - j / 8)) : 0;
            CHECK(pre == expected);
        }
    }
}

TEST_CASE("key expansion of the zero key matches the golden file") {
    const RoundKeys rks = expand_key(MasterKey{});
    std::ifstream in(std::string(LILLIPUT_GOLDEN_DIR) + "/zero_key_round_keys.txt");
    REQUIRE(in.good());
    std::string line;
    for (int r = 0; r < kNumRounds; ++r) {
        REQUIRE(static_cast<bool>(in >> line));
        CHECK(to_hex(rks[static_cast<std::size_t>(r)]) == line);
    }
    CHECK(to_hex(rks[0]) == "44444444");
}

TEST_CASE("key expansion is deterministic") {
    dfa::TrialRng rng(23);
    const MasterKey mk = rng.random_key();
    CHECK(expand_key(mk) == expand_key(mk));
}
