#pragma once

#include "lilliput/state.hpp"

namespace lilliput {

/// S-box lookup (Table 2 of the cipher specification).
Nibble sbox(Nibble x);
/// Inverse S-box; sbox(sbox_inv(y)) == y.
Nibble sbox_inv(Nibble y);

/// Nibble permutation: output cell pi(i) receives input cell i.
CipherState permute(const CipherState& s);
CipherState permute_inv(const CipherState& s);

/// Cell destination table of the permutation layer.
extern const std::array<int, 16> kPi;
extern const std::array<int, 16> kPiInv;

/// One encryption round: nonlinear layer (Y[8+i] ^= S(X[7-i] ^ RK[i])),
/// linear layer (Y[9..14] ^= X[7]; Y[15] ^= X[1]^...^X[7]), then the
/// permutation iff apply_permutation. The final round omits the permutation.
///
/// Note on the linear layer: the summary prose of the cipher's round
/// description admits a different reading (each left branch XORed with its
/// own right counterpart). The form implemented here is the one every
/// difference equation of the fault analysis relies on, and is the one
/// cross-checked by the propagation tests.
CipherState round_encrypt(const CipherState& s, const RoundKey& rk, bool apply_permutation);
CipherState round_decrypt(const CipherState& s, const RoundKey& rk, bool apply_permutation);

/// Full 30-round encryption; the last round skips the permutation layer.
CipherState encrypt(const CipherState& p, const RoundKeys& rks);
CipherState decrypt(const CipherState& c, const RoundKeys& rks);

}  // namespace lilliput
