#include "lilliput/state.hpp"

#include <stdexcept>

namespace lilliput {

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument(std::string("invalid hex digit '") + c + "'");
}

char hex_char(int v) { return "0123456789ABCDEF"[v & 0xF]; }

}  // namespace

CipherState operator^(const CipherState& a, const CipherState& b) {
    CipherState r;
    for (int i = 0; i < 16; ++i) r[i] = a[i] ^ b[i];
    return r;
}

std::string to_hex(const CipherState& s) {
    std::string out(16, '0');
    for (int i = 0; i < 16; ++i) out[static_cast<std::size_t>(15 - i)] = hex_char(s[i]);
    return out;
}

std::string to_hex(const RoundKey& rk) {
    std::string out(8, '0');
    for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(7 - i)] = hex_char(rk[i]);
    return out;
}

std::string to_hex(const LfsmState& k) {
    std::string out(20, '0');
    for (int i = 0; i < 20; ++i) out[static_cast<std::size_t>(19 - i)] = hex_char(k[i]);
    return out;
}

CipherState state_from_hex(const std::string& hex) {
    if (hex.size() != 16) throw std::invalid_argument("block must be 16 hex digits");
    CipherState s;
    for (int i = 0; i < 16; ++i) s[15 - i] = static_cast<Nibble>(hex_digit(hex[static_cast<std::size_t>(i)]));
    return s;
}

RoundKey round_key_from_hex(const std::string& hex) {
    if (hex.size() != 8) throw std::invalid_argument("round key must be 8 hex digits");
    RoundKey rk;
    for (int i = 0; i < 8; ++i) rk[7 - i] = static_cast<Nibble>(hex_digit(hex[static_cast<std::size_t>(i)]));
    return rk;
}

LfsmState key_from_hex(const std::string& hex) {
    if (hex.size() != 20) throw std::invalid_argument("master key must be 20 hex digits");
    LfsmState k;
    for (int i = 0; i < 20; ++i) k[19 - i] = static_cast<Nibble>(hex_digit(hex[static_cast<std::size_t>(i)]));
    return k;
}

}  // namespace lilliput
