#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace lilliput {

/// A 4-bit cell. All state, key and difference values in this library are
/// nibbles; callers must keep values below 16.
using Nibble = std::uint8_t;

/// 64-bit block as 16 nibbles. cells[15] is the most significant nibble;
/// the hex form is 16 digits, leftmost digit = cells[15].
struct CipherState {
    std::array<Nibble, 16> cells{};

    Nibble& operator[](int i) { return cells[static_cast<std::size_t>(i)]; }
    Nibble operator[](int i) const { return cells[static_cast<std::size_t>(i)]; }

    friend bool operator==(const CipherState&, const CipherState&) = default;
};

/// 32-bit subkey as 8 nibbles, nibbles[7] most significant.
struct RoundKey {
    std::array<Nibble, 8> nibbles{};

    Nibble& operator[](int i) { return nibbles[static_cast<std::size_t>(i)]; }
    Nibble operator[](int i) const { return nibbles[static_cast<std::size_t>(i)]; }

    friend bool operator==(const RoundKey&, const RoundKey&) = default;
};

inline constexpr int kNumRounds = 30;
using RoundKeys = std::array<RoundKey, kNumRounds>;

/// 80-bit key-schedule register as 20 nibbles, cells[19] most significant;
/// hex form is 20 digits, leftmost digit = cells[19].
struct LfsmState {
    std::array<Nibble, 20> cells{};

    Nibble& operator[](int i) { return cells[static_cast<std::size_t>(i)]; }
    Nibble operator[](int i) const { return cells[static_cast<std::size_t>(i)]; }

    friend bool operator==(const LfsmState&, const LfsmState&) = default;
};

/// The master key is the initial LFSM state.
using MasterKey = LfsmState;

CipherState operator^(const CipherState& a, const CipherState& b);

std::string to_hex(const CipherState& s);
std::string to_hex(const RoundKey& rk);
std::string to_hex(const LfsmState& k);

/// Parse 16 hex digits, leftmost = cell 15. Throws std::invalid_argument.
CipherState state_from_hex(const std::string& hex);
/// Parse 8 hex digits, leftmost = nibble 7.
RoundKey round_key_from_hex(const std::string& hex);
/// Parse 20 hex digits, leftmost = cell 19.
LfsmState key_from_hex(const std::string& hex);

}  // namespace lilliput
