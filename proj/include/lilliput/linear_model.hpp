#pragma once

#include <stdexcept>
#include <string>

#include "lilliput/gf2.hpp"
#include "lilliput/state.hpp"

namespace lilliput {

/// Exact GF(2) model of the key schedule: one register step as an 80x80
/// matrix plus, for every Z bit, the register bit position it reads.
struct LinearModel {
    Gf2Matrix80 update;
    std::array<int, 32> z_source_bit{};
};

LinearModel build_linear_model();

BitVec80 state_bits(const LfsmState& k);
LfsmState state_from_bits(const BitVec80& v);

/// Round key with per-nibble knowledge flags, text form e.g. "4C4x4444"
/// (leftmost digit = nibble 7; 'x' marks an unknown nibble).
struct PartialRoundKey {
    RoundKey value{};
    std::array<bool, 8> known{};

    static PartialRoundKey fully_known(const RoundKey& rk);
    static PartialRoundKey from_hex(const std::string& hex);
    std::string to_hex() const;
};

/// Known plaintext/ciphertext pair used to pick the master key out of the
/// affine solution coset.
struct AnchorPair {
    CipherState plaintext;
    CipherState ciphertext;
};

struct InversionResult {
    MasterKey master_key;
    int rank = 0;                       // rank of the known-nibble constraint system
    int kernel_dim = 0;                 // 80 - rank
    std::uint64_t candidates_tried = 0; // anchor verifications performed
};

class InversionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Recover the master key from the last two round keys.
///
/// Strips the round constants, inverts the S-box on every known subkey
/// nibble to learn Z bits of the register states after 28 and 29 steps,
/// rewrites those as affine constraints on the 80 master-key bits through
/// powers of the update matrix, solves by Gaussian elimination, and walks
/// the solution coset (free variables in lexicographic order, unknown
/// nibbles enumerated over all 16 values) until a candidate reproduces the
/// anchor ciphertext.
///
/// Throws InversionError when no candidate verifies (wrong subkeys) or when
/// the search space exceeds 2^24.
InversionResult invert_subkeys(const RoundKey& rk29, const PartialRoundKey& rk28,
                               const AnchorPair& anchor);

}  // namespace lilliput
