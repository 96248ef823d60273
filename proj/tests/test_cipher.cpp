#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lilliput/cipher.hpp"
#include "lilliput/fault.hpp"
#include "lilliput/key_schedule.hpp"
#include "oracle.hpp"

using namespace lilliput;

TEST_CASE("sbox matches the published table and is a bijection") {
    const Nibble expected[16] = {0x4, 0x8, 0x7, 0x1, 0x9, 0x3, 0x2, 0xE,
                                 0x0, 0xB, 0x6, 0xF, 0xA, 0x5, 0xD, 0xC};
    int seen = 0;
    for (int x = 0; x < 16; ++x) {
        CHECK(sbox(static_cast<Nibble>(x)) == expected[x]);
        seen |= 1 << sbox(static_cast<Nibble>(x));
    }
    CHECK(seen == 0xFFFF);
    CHECK(sbox(0x0) == 0x4);
    CHECK(sbox(0x7) == 0xE);
}

TEST_CASE("sbox_inv composes to the identity") {
    CHECK(sbox_inv(0x4) == 0x0);
    CHECK(sbox_inv(0xC) == 0xF);
    for (int y = 0; y < 16; ++y) {
        CHECK(sbox(sbox_inv(static_cast<Nibble>(y))) == y);
        CHECK(sbox_inv(sbox(static_cast<Nibble>(y))) == y);
    }
}

TEST_CASE("permutation matches the published table") {
    const int expected[16] = {13, 9, 14, 8, 10, 11, 12, 15, 4, 5, 3, 1, 2, 6, 0, 7};
    int seen = 0;
    for (int i = 0; i < 16; ++i) {
        CHECK(kPi[static_cast<std::size_t>(i)] == expected[i]);
        seen |= 1 << kPi[static_cast<std::size_t>(i)];
    }
    CHECK(seen == 0xFFFF);

    CipherState s;
    for (int i = 0; i < 16; ++i) s[i] = static_cast<Nibble>(i);
    const CipherState p = permute(s);
    CHECK(p[13] == 0);  // cell 0 moves to cell 13
    CHECK(p[15] == 7);  // cell 7 moves to cell 15

    lilliput::dfa::TrialRng rng(7);
    for (int t = 0; t < 100; ++t) {
        const CipherState r = rng.random_state();
        CHECK(permute_inv(permute(r)) == r);
    }
}

TEST_CASE("round function on the zero state with a zero key") {
    const CipherState zero{};
    const RoundKey rk{};
    const CipherState y = round_encrypt(zero, rk, false);
    for (int i = 0; i < 8; ++i) {
        CHECK(y[i] == 0);
        CHECK(y[8 + i] == 0x4);  // S(0) on every left branch, linear layer adds nothing
    }
}

TEST_CASE("single round is invertible") {
    lilliput::dfa::TrialRng rng(11);
    for (int t = 0; t < 10000; ++t) {
        const CipherState s = rng.random_state();
        RoundKey rk;
        for (int i = 0; i < 8; ++i) rk[i] = rng.nibble();
        const bool perm = (t & 1) != 0;
        CHECK(round_decrypt(round_encrypt(s, rk, perm), rk, perm) == s);
    }
}

TEST_CASE("a round preserves its right half before the permutation") {
    lilliput::dfa::TrialRng rng(13);
    for (int t = 0; t < 1000; ++t) {
        const CipherState s = rng.random_state();
        RoundKey rk;
        for (int i = 0; i < 8; ++i) rk[i] = rng.nibble();
        const CipherState y = round_encrypt(s, rk, false);
        for (int i = 0; i < 8; ++i) CHECK(y[i] == s[i]);
    }
}

TEST_CASE("difference in cell 7 activates the expected single-round pattern") {
    // e lands in the former right positions and the S0 output difference in
    // the branch it feeds; one round later every S-box input goes active.
    lilliput::dfa::TrialRng rng(17);
    for (int t = 0; t < 200; ++t) {
        const CipherState s = rng.random_state();
        RoundKey rk;
        for (int i = 0; i < 8; ++i) rk[i] = rng.nibble();
        const Nibble e = rng.nonzero_nibble();
        CipherState s2 = s;
        s2[7] ^= e;
        const CipherState d = round_encrypt(s, rk, true) ^ round_encrypt(s2, rk, true);
        const Nibble eprime = static_cast<Nibble>(sbox(static_cast<Nibble>(s[7] ^ rk[0])) ^
                                                  sbox(static_cast<Nibble>(s2[7] ^ rk[0])));
        for (int i = 8; i <= 14; ++i) CHECK(d[i] == 0);
        CHECK(d[4] == eprime);
        for (int i : {0, 1, 2, 3, 5, 6, 7, 15}) CHECK(d[i] == e);
    }
}

TEST_CASE("encrypt/decrypt round-trips and determinism") {
    lilliput::dfa::TrialRng rng(19);
    for (int t = 0; t < 10000; ++t) {
        const MasterKey mk = rng.random_key();
        const RoundKeys rks = expand_key(mk);
        const CipherState p = rng.random_state();
        const CipherState c = encrypt(p, rks);
        CHECK(decrypt(c, rks) == p);
        if (t % 1000 == 0) CHECK(encrypt(p, rks) == c);
    }
}

TEST_CASE("golden encryption vectors") {
    std::ifstream in(std::string(LILLIPUT_GOLDEN_DIR) + "/encrypt_vectors.txt");
    REQUIRE(in.good());
    std::string key_hex, pt_hex, ct_hex;
    int lines = 0;
    while (in >> key_hex >> pt_hex >> ct_hex) {
        const CipherState c = encrypt(state_from_hex(pt_hex), expand_key(key_from_hex(key_hex)));
        CHECK(to_hex(c) == ct_hex);
        ++lines;
    }
    CHECK(lines == 4);
}

TEST_CASE("hex round trips and validation") {
    const std::string h = "0123456789ABCDEF";
    CHECK(to_hex(state_from_hex(h)) == h);
    CHECK(state_from_hex(h)[15] == 0x0);
    CHECK(state_from_hex(h)[0] == 0xF);
    CHECK_THROWS_AS(state_from_hex("123"), std::invalid_argument);
    CHECK_THROWS_AS(state_from_hex("0123456789ABCDEG"), std::invalid_argument);
    const std::string kh = "5B277812AC34D90E66F1";
    CHECK(to_hex(key_from_hex(kh)) == kh);
    CHECK_THROWS_AS(key_from_hex("5B"), std::invalid_argument);
    CHECK(to_hex(round_key_from_hex("4C444444")) == "4C444444");
}
