#include "lilliput/linear_model.hpp"

#include "lilliput/cipher.hpp"
#include "lilliput/key_schedule.hpp"

namespace lilliput {

BitVec80 state_bits(const LfsmState& k) {
    BitVec80 v;
    for (int j = 0; j < 20; ++j)
        for (int b = 0; b < 4; ++b)
            if ((k[j] >> b) & 1) v.set(4 * j + b);
    return v;
}

LfsmState state_from_bits(const BitVec80& v) {
    LfsmState k;
    for (int j = 0; j < 20; ++j) {
        Nibble n = 0;
        for (int b = 0; b < 4; ++b) n |= static_cast<Nibble>(v.get(4 * j + b) << b);
        k[j] = n;
    }
    return k;
}

LinearModel build_linear_model() {
    LinearModel m;
    // Column j of the update matrix is the image of unit state bit j.
    std::array<BitVec80, 80> cols;
    for (int j = 0; j < 80; ++j) {
        BitVec80 unit;
        unit.set(j);
        cols[static_cast<std::size_t>(j)] = state_bits(lfsm_update(state_from_bits(unit)));
    }
    for (int i = 0; i < 80; ++i) {
        BitVec80 row;
        for (int j = 0; j < 80; ++j)
            if (cols[static_cast<std::size_t>(j)].get(i)) row.set(j);
        m.update.rows[static_cast<std::size_t>(i)] = row;
    }
    // Z nibble m (least significant first) reads register nibble kZSources[m].
    static constexpr int kZSources[8] = {1, 3, 6, 9, 10, 13, 16, 18};
    for (int j = 0; j < 32; ++j)
        m.z_source_bit[static_cast<std::size_t>(j)] = 4 * kZSources[j / 4] + (j % 4);
    return m;
}

PartialRoundKey PartialRoundKey::fully_known(const RoundKey& rk) {
    PartialRoundKey p;
    p.value = rk;
    p.known.fill(true);
    return p;
}

PartialRoundKey PartialRoundKey::from_hex(const std::string& hex) {
    if (hex.size() != 8) throw std::invalid_argument("partial round key must be 8 digits");
    PartialRoundKey p;
    for (int i = 0; i < 8; ++i) {
        const char c = hex[static_cast<std::size_t>(7 - i)];
        if (c == 'x' || c == 'X') {
            p.known[static_cast<std::size_t>(i)] = false;
            continue;
        }
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw std::invalid_argument("partial round key digit must be hex or 'x'");
        p.value[i] = static_cast<Nibble>(v);
        p.known[static_cast<std::size_t>(i)] = true;
    }
    return p;
}

std::string PartialRoundKey::to_hex() const {
    std::string s = lilliput::to_hex(value);
    for (int i = 0; i < 8; ++i)
        if (!known[static_cast<std::size_t>(i)]) s[static_cast<std::size_t>(7 - i)] = 'x';
    return s;
}

namespace {

// Round constant applied to the 32-bit subkey word: r's five bits land in
// the most significant positions, i.e. nibble 7 takes r>>1 and nibble 6
// takes (r&1)<<3.
Nibble round_constant_nibble(int r, int i) {
    if (i == 7) return static_cast<Nibble>((r >> 1) & 0xF);
    if (i == 6) return static_cast<Nibble>((r & 1) << 3);
    return 0;
}

// Appends the four Z-bit constraints implied by one known subkey nibble.
void add_nibble_constraints(std::vector<BitVec80>& rows, std::vector<std::uint8_t>& rhs,
                            const Gf2Matrix80& m_pow, const LinearModel& model, int round,
                            int i, Nibble rk_nibble) {
    const Nibble pre = sbox_inv(rk_nibble ^ round_constant_nibble(round, i));
    // pre = Z_i || Z_{i+8} || Z_{i+16} || Z_{i+24}, most significant bit first
    const int z_index[4] = {i, i + 8, i + 16, i + 24};
    for (int t = 0; t < 4; ++t) {
        const int j = z_index[t];
        rows.push_back(m_pow.rows[static_cast<std::size_t>(model.z_source_bit[static_cast<std::size_t>(j)])]);
        rhs.push_back(static_cast<std::uint8_t>((pre >> (3 - t)) & 1));
    }
}

}  // namespace

InversionResult invert_subkeys(const RoundKey& rk29, const PartialRoundKey& rk28,
                               const AnchorPair& anchor) {
    static const LinearModel model = build_linear_model();

    Gf2Matrix80 m28 = Gf2Matrix80::identity();
    for (int i = 0; i < 28; ++i) m28 = model.update * m28;
    const Gf2Matrix80 m29 = model.update * m28;

    std::vector<BitVec80> rows;
    std::vector<std::uint8_t> rhs;
    for (int i = 0; i < 8; ++i) add_nibble_constraints(rows, rhs, m29, model, 29, i, rk29[i]);
    std::vector<int> unknown;
    for (int i = 0; i < 8; ++i) {
        if (rk28.known[static_cast<std::size_t>(i)])
            add_nibble_constraints(rows, rhs, m28, model, 28, i, rk28.value[i]);
        else
            unknown.push_back(i);
    }

    const AffineSolution base = solve_affine(rows, rhs);
    InversionResult result;
    result.rank = base.rank;
    result.kernel_dim = 80 - base.rank;
    if (!base.consistent) throw InversionError("no candidate verifies: constraint system inconsistent");
    if (result.kernel_dim + 4 * static_cast<int>(unknown.size()) > 24)
        throw InversionError("search space exceeds 2^24 (kernel dimension " +
                             std::to_string(result.kernel_dim) + " plus " +
                             std::to_string(unknown.size()) + " unknown nibbles)");

    const std::uint64_t assignments = std::uint64_t{1} << (4 * unknown.size());
    for (std::uint64_t a = 0; a < assignments; ++a) {
        std::vector<BitVec80> sys_rows = rows;
        std::vector<std::uint8_t> sys_rhs = rhs;
        for (std::size_t u = 0; u < unknown.size(); ++u) {
            const Nibble guess = static_cast<Nibble>((a >> (4 * u)) & 0xF);
            add_nibble_constraints(sys_rows, sys_rhs, m28, model, 28, unknown[u], guess);
        }
        const AffineSolution sol = solve_affine(std::move(sys_rows), std::move(sys_rhs));
        if (!sol.consistent) continue;
        const std::uint64_t coset = std::uint64_t{1} << sol.kernel.size();
        for (std::uint64_t t = 0; t < coset; ++t) {
            BitVec80 x = sol.particular;
            for (std::size_t j = 0; j < sol.kernel.size(); ++j)
                if ((t >> j) & 1) x ^= sol.kernel[j];
            const MasterKey mk = state_from_bits(x);
            ++result.candidates_tried;
            if (encrypt(anchor.plaintext, expand_key(mk)) == anchor.ciphertext) {
                result.master_key = mk;
                return result;
            }
        }
    }
    throw InversionError("no candidate verifies: anchor check failed for the whole coset");
}

}  // namespace lilliput
