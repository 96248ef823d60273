#pragma once

#include <cstdint>

#include "lilliput/state.hpp"

namespace lilliput {

/// One step of the 80-bit key-schedule register. The register splits into
/// four 5-nibble blocks (K[5b..5b+4]) updated in parallel; each block steps
/// as a small linear machine:
///
///   K'[4] = K[3]
///   K'[3] = K[2]
///   K'[2] = K[1] ^ (K[2] >> 3)        (logical shift)
///   K'[1] = K[0] ^ (K[4] >>> 1)       (rotation)
///   K'[0] = K[4]
///
/// Caveat for readers comparing against the original cipher document: only
/// the block-0 update is published in the material this implementation was
/// built from; blocks 1-3 are given the same form here. Their exact taps
/// live in a figure of the original specification and could not be
/// transcribed, so the subkey-to-master-key constraint rank measured by
/// this code base (see linear_model.hpp) may differ from the designers'.
LfsmState lfsm_update(const LfsmState& k);

/// The 32-bit bit-gather feeding the round-key extraction:
/// Z = K18||K16||K13||K10||K9||K6||K3||K1, bit 31 most significant.
std::uint32_t assemble_z(const LfsmState& k);

/// RK[i] = S(Z_i || Z_{i+8} || Z_{i+16} || Z_{i+24}) for 0 <= i <= 7,
/// then RK ^= (r as 5 bits || 27 zero bits) with the round counter in the
/// most significant bits of the 32-bit subkey. Requires 0 <= r <= 29.
RoundKey extract_round_key(const LfsmState& k, int r);

/// RK^0 is extracted before any update; each later RK^r after one update.
RoundKeys expand_key(const MasterKey& mk);

}  // namespace lilliput
