#pragma once

#include <bit>
#include <cstdint>

#include "lilliput/state.hpp"

namespace lilliput::dfa {

/// Set of nibble values as a 16-bit membership mask.
struct NibbleSet {
    std::uint16_t mask = 0;

    static NibbleSet full() { return {0xFFFF}; }
    static NibbleSet single(Nibble v) { return {static_cast<std::uint16_t>(1u << v)}; }
    static NibbleSet empty() { return {0}; }

    bool contains(Nibble v) const { return (mask >> v) & 1; }
    int size() const { return std::popcount(mask); }
    bool unique() const { return size() == 1; }
    /// The single member; call only when unique().
    Nibble value() const { return static_cast<Nibble>(std::countr_zero(mask)); }

    NibbleSet& operator&=(NibbleSet o) { mask &= o.mask; return *this; }
    NibbleSet& operator|=(NibbleSet o) { mask |= o.mask; return *this; }
    friend NibbleSet operator&(NibbleSet a, NibbleSet b) { return {static_cast<std::uint16_t>(a.mask & b.mask)}; }
    friend NibbleSet operator|(NibbleSet a, NibbleSet b) { return {static_cast<std::uint16_t>(a.mask | b.mask)}; }
    friend bool operator==(NibbleSet, NibbleSet) = default;
};

/// {v ^ c : v in s}. XOR by a constant permutes the 16 member slots, which a
/// butterfly network applies in four mask/shift steps.
NibbleSet xor_shift(NibbleSet s, Nibble c);

/// Differential distribution table of the S-box.
struct DdtTable {
    std::uint8_t counts[16][16] = {};
};

/// counts[a][b] = #{x : S(x) ^ S(x^a) = b}.
DdtTable compute_ddt();

/// Shared read-only tables, built on first use.
const DdtTable& ddt();

/// DDT entry lookup against the shared table.
inline int ddt_count(Nibble alpha, Nibble beta) { return ddt().counts[alpha][beta]; }

/// Preimage set IN(alpha, beta) = {x : S(x) ^ S(x^alpha) = beta}.
NibbleSet in_set(Nibble alpha, Nibble beta);

/// {known_input ^ x : x in IN(alpha, beta)} — the key-nibble candidates
/// consistent with one observed S-box transition.
inline NibbleSet key_candidates(Nibble alpha, Nibble beta, Nibble known_input) {
    return xor_shift(in_set(alpha, beta), known_input);
}

}  // namespace lilliput::dfa
