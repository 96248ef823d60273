#pragma once

// Test-only helpers: an instrumented encryption that exposes every round
// boundary, so expected S-box differences can be computed directly from
// simulated states instead of trusting the attack engine's closed forms.

#include <array>
#include <optional>

#include "lilliput/cipher.hpp"
#include "lilliput/fault.hpp"
#include "lilliput/state.hpp"

namespace oracle {

using lilliput::CipherState;
using lilliput::Nibble;
using lilliput::RoundKeys;
using lilliput::dfa::FaultSpec;

struct Transcript {
    // x[r] is the input of round r (after any fault); x[30] is the ciphertext.
    std::array<CipherState, 31> x;
};

inline Transcript trace_encrypt(const CipherState& p, const RoundKeys& rks,
                                std::optional<FaultSpec> fault = std::nullopt) {
    Transcript t;
    CipherState s = p;
    for (int r = 0; r < lilliput::kNumRounds; ++r) {
        if (fault && fault->round == r) s[fault->branch] ^= fault->value;
        t.x[static_cast<std::size_t>(r)] = s;
        s = lilliput::round_encrypt(s, rks[static_cast<std::size_t>(r)], r != lilliput::kNumRounds - 1);
    }
    t.x[30] = s;
    return t;
}

// True input difference of S-box i in round r for a correct/faulty transcript pair.
inline Nibble sbox_input_diff(const Transcript& a, const Transcript& b, int r, int i) {
    return static_cast<Nibble>(a.x[static_cast<std::size_t>(r)][7 - i] ^
                               b.x[static_cast<std::size_t>(r)][7 - i]);
}

// True output difference of S-box i in round r.
inline Nibble sbox_output_diff(const Transcript& a, const Transcript& b, const RoundKeys& rks,
                               int r, int i) {
    const Nibble rk = rks[static_cast<std::size_t>(r)][i];
    const Nibble xa = a.x[static_cast<std::size_t>(r)][7 - i];
    const Nibble xb = b.x[static_cast<std::size_t>(r)][7 - i];
    return static_cast<Nibble>(lilliput::sbox(static_cast<Nibble>(xa ^ rk)) ^
                               lilliput::sbox(static_cast<Nibble>(xb ^ rk)));
}

}  // namespace oracle
