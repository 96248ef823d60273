#include "lilliput/attack.hpp"

#include <stdexcept>

#include "lilliput/cipher.hpp"
#include "lilliput/key_schedule.hpp"

namespace lilliput::dfa {

namespace {

bool all_zero(const CipherState& d) {
    for (int i = 0; i < 16; ++i)
        if (d[i]) return false;
    return true;
}

// Intersect mask i with the candidates of one observed transition. An
// inactive S-box (alpha 0) carries no key information and is skipped.
void apply_transition(std::array<NibbleSet, 8>& masks, int i, Nibble alpha, Nibble beta,
                      Nibble known_input) {
    if (alpha == 0) return;
    masks[static_cast<std::size_t>(i)] &= key_candidates(alpha, beta, known_input);
}

// Last-round digest for a fault known to sit in branch 7 one round earlier:
// the difference of the round output is `delta`, the round's right half is
// the right half of `base`. e lands in cell 0, the branch-7 S-box output
// difference in cell 4.
bool fixed7_update(const CipherState& delta, const CipherState& base,
                   std::array<NibbleSet, 8>& masks) {
    const Nibble e = delta[0];
    if (e == 0) return false;
    const Nibble ep = delta[4];
    for (int i = 0; i < 8; ++i) {
        const Nibble alpha = (i == 3) ? ep : e;
        Nibble beta;
        if (i == 0) beta = delta[8];
        else if (i == 7) beta = delta[15] ^ e ^ ep;
        else beta = delta[8 + i] ^ e;
        apply_transition(masks, i, alpha, beta, base[7 - i]);
    }
    return true;
}

Nibble xor_c1_to_c7(const CipherState& d) {
    Nibble acc = 0;
    for (int i = 1; i < 8; ++i) acc ^= d[i];
    return acc;
}

// Output difference of last-round S-box i implied by a candidate (e, e')
// for a round-27 branch-7 fault.
Nibble m2_beta29(const CipherState& d, Nibble e, Nibble ep, int i) {
    if (i == 0) return d[8] ^ e;
    if (i == 2) return d[10] ^ d[7] ^ ep;
    if (i == 7) return d[15] ^ xor_c1_to_c7(d) ^ e;
    return d[8 + i] ^ d[7] ^ e;
}

std::vector<std::pair<Nibble, Nibble>> m2_pairs(const CipherState& d) {
    std::vector<std::pair<Nibble, Nibble>> pairs;
    const NibbleSet es = m2_candidates_e(d);
    for (Nibble e = 1; e < 16; ++e) {
        if (!es.contains(e)) continue;
        const NibbleSet eps = m2_candidates_e_prime(d, e);
        for (Nibble ep = 0; ep < 16; ++ep)
            if (eps.contains(ep)) pairs.emplace_back(e, ep);
    }
    return pairs;
}

// rk29-mask part of the model II digest; shared with the model III branch-7
// case. Per nibble, the union over all candidate pairs is intersected in.
bool m2_apply_rk29(const CipherState& c, const CipherState& delta, CandidateState& state) {
    const auto pairs = m2_pairs(delta);
    if (pairs.empty()) return false;
    bool informative = false;
    std::array<NibbleSet, 8> unions;
    unions.fill(NibbleSet::empty());
    for (int i = 0; i < 8; ++i) {
        const Nibble alpha = delta[7 - i];
        if (alpha == 0) {
            // no transition observable; only a pair claiming beta = 0 is
            // possible, and it carries no key information
            unions[static_cast<std::size_t>(i)] = NibbleSet::full();
            continue;
        }
        NibbleSet u = NibbleSet::empty();
        for (const auto& [e, ep] : pairs)
            u |= key_candidates(alpha, m2_beta29(delta, e, ep, i), c[7 - i]);
        unions[static_cast<std::size_t>(i)] = u;
        if (u.size() > 0) informative = true;
    }
    if (!informative) return false;
    for (int i = 0; i < 8; ++i) state.rk29_masks[static_cast<std::size_t>(i)] &= unions[static_cast<std::size_t>(i)];
    return true;
}

bool m2_pair_consistent(const CipherState& c, const CipherState& d, const RoundKey& rk29,
                        Nibble e, Nibble ep) {
    for (int i = 0; i < 8; ++i) {
        const Nibble alpha = d[7 - i];
        const Nibble beta = m2_beta29(d, e, ep, i);
        if (alpha == 0) {
            if (beta != 0) return false;
            continue;
        }
        if (!key_candidates(alpha, beta, c[7 - i]).contains(rk29[i])) return false;
    }
    return true;
}

struct DecryptedRound {
    CipherState y;        // round-28 output (pre-permutation), correct run
    CipherState delta_y;  // its difference
};

DecryptedRound peel_last_round(const CipherState& c, const CipherState& faulty,
                               const RoundKey& rk29) {
    const CipherState x29 = round_decrypt(c, rk29, false);
    const CipherState x29f = round_decrypt(faulty, rk29, false);
    DecryptedRound out;
    out.y = permute_inv(x29);
    out.delta_y = out.y ^ permute_inv(x29f);
    return out;
}

}  // namespace

bool CandidateState::rk29_unique() const {
    for (const auto& m : rk29_masks)
        if (!m.unique()) return false;
    return true;
}

bool CandidateState::rk28_unique() const {
    for (const auto& m : rk28_masks)
        if (!m.unique()) return false;
    return true;
}

bool CandidateState::rk28_unique_excluding_3() const {
    for (int i = 0; i < 8; ++i)
        if (i != 3 && !rk28_masks[static_cast<std::size_t>(i)].unique()) return false;
    return true;
}

bool CandidateState::any_empty() const {
    for (const auto& m : rk29_masks)
        if (m.size() == 0) return true;
    for (const auto& m : rk28_masks)
        if (m.size() == 0) return true;
    return false;
}

RoundKey CandidateState::rk29_value() const {
    RoundKey rk;
    for (int i = 0; i < 8; ++i) rk[i] = rk29_masks[static_cast<std::size_t>(i)].value();
    return rk;
}

RoundKey CandidateState::rk28_value() const {
    RoundKey rk;
    for (int i = 0; i < 8; ++i) rk[i] = rk28_masks[static_cast<std::size_t>(i)].value();
    return rk;
}

// --- model I ----------------------------------------------------------------

bool m1_update_rk29(const CipherState& c, const CipherState& faulty, CandidateState& state) {
    const CipherState delta = c ^ faulty;
    return fixed7_update(delta, c, state.rk29_masks);
}

bool m1_update_rk28(const CipherState& c, const CipherState& faulty, const RoundKey& rk29,
                    CandidateState& state) {
    const DecryptedRound d = peel_last_round(c, faulty, rk29);
    return fixed7_update(d.delta_y, d.y, state.rk28_masks);
}

// --- model II ---------------------------------------------------------------

NibbleSet m2_candidates_e(const CipherState& d) {
    NibbleSet direct = NibbleSet::empty();
    for (Nibble e = 1; e < 16; ++e) {
        const bool ok = ddt_count(e, d[0] ^ e) > 0 && ddt_count(e, d[2] ^ e) > 0 &&
                        ddt_count(e, d[3] ^ e) > 0 && ddt_count(e, d[4]) > 0 &&
                        ddt_count(e, d[5] ^ e) > 0 && ddt_count(e, d[6] ^ e) > 0;
        if (ok) direct |= NibbleSet::single(e);
    }
    // Refinement through the left half: x is the output difference of the
    // S-box fed by dC7; every pairwise relation with dC8 must stay inside
    // the DDT, and each feasible x pins e = dC8 ^ x.
    NibbleSet refined = NibbleSet::empty();
    const Nibble sum17 = xor_c1_to_c7(d);
    for (Nibble x = 0; x < 16; ++x) {
        const bool ok = ddt_count(d[7], x) > 0 &&
                        ddt_count(d[6], x ^ d[7] ^ d[8] ^ d[9]) > 0 &&
                        ddt_count(d[4], x ^ d[7] ^ d[8] ^ d[11]) > 0 &&
                        ddt_count(d[3], x ^ d[7] ^ d[8] ^ d[12]) > 0 &&
                        ddt_count(d[2], x ^ d[7] ^ d[8] ^ d[13]) > 0 &&
                        ddt_count(d[1], x ^ d[7] ^ d[8] ^ d[14]) > 0 &&
                        ddt_count(d[0], x ^ d[8] ^ d[15] ^ sum17) > 0;
        const Nibble e = d[8] ^ x;
        if (ok && e != 0) refined |= NibbleSet::single(e);
    }
    return direct & refined;
}

NibbleSet m2_candidates_e_prime(const CipherState& d, Nibble e) {
    NibbleSet out = NibbleSet::empty();
    for (Nibble ep = 0; ep < 16; ++ep) {
        const bool ok = ddt_count(e, ep) > 0 && ddt_count(ep, d[1] ^ e) > 0 &&
                        ddt_count(e, d[7] ^ ep ^ e) > 0 &&
                        ddt_count(d[5], ep ^ d[10] ^ d[7]) > 0;
        if (ok) out |= NibbleSet::single(ep);
    }
    return out;
}

bool m2_update(const CipherState& c, const CipherState& faulty, CandidateState& state) {
    const CipherState delta = c ^ faulty;
    if (all_zero(delta)) return false;
    if (!m2_apply_rk29(c, delta, state)) return false;
    state.stored_faults.push_back({c, faulty, std::nullopt});
    return true;
}

bool m2_update_rk28_single(const CipherState& c, const CipherState& faulty, const RoundKey& rk29,
                           CandidateState& state) {
    const CipherState delta = c ^ faulty;
    bool any_pair = false;
    for (const auto& [e, ep] : m2_pairs(delta)) {
        if (m2_pair_consistent(c, delta, rk29, e, ep)) {
            any_pair = true;
            break;
        }
    }
    if (!any_pair) {
        ++state.skipped_faults;
        return false;
    }
    const DecryptedRound d = peel_last_round(c, faulty, rk29);
    for (int i = 0; i < 8; ++i) {
        const Nibble alpha = d.delta_y[7 - i];
        Nibble beta;
        if (i == 0) beta = d.delta_y[8];
        else if (i == 7) beta = d.delta_y[15] ^ d.delta_y[7] ^ d.delta_y[4];
        else beta = d.delta_y[8 + i] ^ d.delta_y[7];
        apply_transition(state.rk28_masks, i, alpha, beta, d.y[7 - i]);
    }
    return true;
}

void m2_recover_rk28(CandidateState& state, const RoundKey& rk29) {
    for (const auto& rec : state.stored_faults)
        m2_update_rk28_single(rec.correct, rec.faulty, rk29, state);
}

// --- model III --------------------------------------------------------------

namespace {

// Feasible injection-round S-box output differences for branch 1. e' is
// not directly observable; it must be a DDT-successor of e, feed the
// observed transition g, and make the last-round S-box output difference
// it implies (dC13 ^ dC7 ^ e') reachable from that S-box's input dC2.
NibbleSet branch1_ep_candidates(const CipherState& d) {
    const Nibble e = d[0];
    const Nibble g = static_cast<Nibble>(d[7] ^ d[0]);
    NibbleSet out = NibbleSet::empty();
    for (Nibble ep = 1; ep < 16; ++ep) {
        if (ddt_count(e, ep) > 0 && ddt_count(ep, g) > 0 &&
            ddt_count(d[2], static_cast<Nibble>(ep ^ d[13] ^ d[7])) > 0)
            out |= NibbleSet::single(ep);
    }
    return out;
}

}  // namespace

LocationVerdict identify_location(const CipherState& d) {
    // The seven difference patterns of a fault entering right-half branch
    // 0..6 three rounds from the end; exactly one can hold at a time. On
    // top of the equality shape, a verdict requires the branch's implied
    // S-box transitions (fault value, its first S-box output, and the two
    // middle-round outputs) to be reachable differences -- a wrong branch
    // hypothesis rarely survives that. Every extra condition holds with
    // certainty for a genuine fault at the branch in question.
    const auto equal_nonzero = [&](std::initializer_list<int> idx) -> Nibble {
        Nibble v = 0;
        bool first = true;
        for (int i : idx) {
            if (first) {
                v = d[i];
                first = false;
            } else if (d[i] != v) {
                return 0;
            }
        }
        return v;
    };
    const auto reachable = [](Nibble in, Nibble out) { return ddt_count(in, out) > 0; };

    bool match[7] = {};
    {
        // v = e' (fault's S-box output), e = dC6 ^ v, dC4 = its middle output
        const Nibble v = equal_nonzero({0, 1, 2, 3, 5, 7});
        match[0] = v != 0 && d[6] != v &&
                   reachable(static_cast<Nibble>(d[6] ^ v), v) && reachable(v, d[4]);
    }
    {
        const Nibble v = equal_nonzero({0, 1, 2, 3, 6});
        match[1] = d[5] == 0 && v != 0 && d[7] == d[10] && d[7] != v && reachable(v, d[4]) &&
                   branch1_ep_candidates(d).size() > 0;
    }
    {
        // the S-box fed by dC0 = 0 is inactive, which pins dC15
        const Nibble v = equal_nonzero({1, 2, 3, 6});
        match[2] = d[0] == 0 && v != 0 && d[5] != v && d[7] != v &&
                   (d[15] ^ d[7] ^ d[5] ^ d[4] ^ d[1]) == 0 &&
                   reachable(v, static_cast<Nibble>(d[7] ^ v)) && reachable(v, d[4]) &&
                   reachable(static_cast<Nibble>(d[7] ^ v), static_cast<Nibble>(d[5] ^ v));
    }
    {
        const Nibble v = equal_nonzero({0, 1, 2, 3, 5});
        match[3] = v != 0 && d[4] != v && d[6] != v && d[7] != v &&
                   reachable(v, static_cast<Nibble>(d[7] ^ v)) &&
                   reachable(v, static_cast<Nibble>(d[4] ^ v)) &&
                   reachable(static_cast<Nibble>(d[7] ^ v), static_cast<Nibble>(d[6] ^ v));
    }
    {
        const Nibble v = equal_nonzero({1, 2, 5, 6});
        match[4] = d[3] == 0 && v != 0 && d[7] == d[12] && d[0] != v && d[7] != v &&
                   reachable(v, static_cast<Nibble>(d[7] ^ v)) && reachable(v, d[4]) &&
                   reachable(static_cast<Nibble>(d[7] ^ v), static_cast<Nibble>(d[0] ^ v));
    }
    {
        const Nibble v = equal_nonzero({0, 3, 5, 6});
        match[5] = d[1] == 0 && v != 0 && d[7] == d[14] && d[2] != v && d[7] != v &&
                   reachable(v, static_cast<Nibble>(d[7] ^ v)) && reachable(v, d[4]) &&
                   reachable(static_cast<Nibble>(d[7] ^ v), static_cast<Nibble>(d[2] ^ v));
    }
    {
        const Nibble v = equal_nonzero({0, 1, 5, 6});
        match[6] = d[2] == 0 && v != 0 && d[7] == d[13] && d[3] != v && d[7] != v &&
                   reachable(v, static_cast<Nibble>(d[7] ^ v)) && reachable(v, d[4]) &&
                   reachable(static_cast<Nibble>(d[7] ^ v), static_cast<Nibble>(d[3] ^ v));
    }

    int found = -1;
    for (int b = 0; b < 7; ++b) {
        if (!match[b]) continue;
        if (found >= 0) throw std::logic_error("location patterns are not mutually exclusive");
        found = b;
    }
    if (found >= 0) return {found, true};
    return {7, false};
}

namespace {

// Fault value, its first S-box output difference and the two second-round
// transition values read off the ciphertext difference, per branch.
struct BranchValues {
    Nibble e;   // injected fault
    Nibble ep;  // output difference of the S-box hit in the injection round
    Nibble f;   // output difference of the first S-box of the middle round
    Nibble g;   // output difference of the second active middle-round S-box
};

BranchValues branch_values(int b, const CipherState& d) {
    switch (b) {
        case 0: return {static_cast<Nibble>(d[6] ^ d[0]), d[0], d[4], 0};
        case 1: return {d[0], 0, d[4], static_cast<Nibble>(d[7] ^ d[0])};
        case 2: return {d[1], static_cast<Nibble>(d[7] ^ d[1]), d[4], static_cast<Nibble>(d[5] ^ d[1])};
        case 3: return {d[0], static_cast<Nibble>(d[7] ^ d[0]), static_cast<Nibble>(d[4] ^ d[0]),
                        static_cast<Nibble>(d[6] ^ d[0])};
        case 4: return {d[1], static_cast<Nibble>(d[7] ^ d[1]), d[4], static_cast<Nibble>(d[0] ^ d[1])};
        case 5: return {d[0], static_cast<Nibble>(d[7] ^ d[0]), d[4], static_cast<Nibble>(d[2] ^ d[0])};
        case 6: return {d[0], static_cast<Nibble>(d[7] ^ d[0]), d[4], static_cast<Nibble>(d[3] ^ d[0])};
        default: throw std::logic_error("branch_values: branch out of range");
    }
}

// Branch-specific last-round transitions: alpha_i = dC[7-i] throughout; the
// beta formulas follow the per-branch difference relations. Nibble 5 of
// branch 1 depends on the unresolved e' and is handled by the caller.
void apply_branch_rk29(int b, const CipherState& d, const CipherState& c,
                       CandidateState& state) {
    for (int i = 0; i < 8; ++i) {
        const Nibble alpha = d[7 - i];
        Nibble beta;
        switch (b) {
            case 0:
                beta = (i == 0) ? d[8]
                     : (i == 7) ? static_cast<Nibble>(d[15] ^ d[4] ^ d[6])
                                : static_cast<Nibble>(d[8 + i] ^ d[7]);
                break;
            case 1:
                if (i == 5) continue;  // handled via the e' union below
                beta = (i == 0) ? d[8]
                     : (i == 7) ? static_cast<Nibble>(d[15] ^ d[4] ^ d[7] ^ d[0])
                                : static_cast<Nibble>(d[8 + i] ^ d[7]);
                break;
            case 2:
                beta = (i == 0) ? d[8]
                     : (i == 4) ? static_cast<Nibble>(d[12] ^ d[1])
                     : (i == 7) ? static_cast<Nibble>(d[15] ^ d[4] ^ d[5] ^ d[7] ^ d[1])
                                : static_cast<Nibble>(d[8 + i] ^ d[7]);
                break;
            case 3:
                beta = (i == 0) ? d[8]
                     : (i == 6) ? static_cast<Nibble>(d[14] ^ d[0])
                     : (i == 7) ? static_cast<Nibble>(d[15] ^ d[4] ^ d[6] ^ d[7] ^ d[0])
                                : static_cast<Nibble>(d[8 + i] ^ d[7]);
                break;
            case 4:
                beta = (i == 0) ? d[8]
                     : (i == 1) ? static_cast<Nibble>(d[9] ^ d[1])
                     : (i == 7) ? static_cast<Nibble>(d[15] ^ d[4] ^ d[7] ^ d[1])
                                : static_cast<Nibble>(d[8 + i] ^ d[7]);
                break;
            case 5:
                beta = (i == 0) ? static_cast<Nibble>(d[8] ^ d[7] ^ d[0])
                     : (i == 7) ? static_cast<Nibble>(d[15] ^ d[2] ^ d[4] ^ d[7])
                                : static_cast<Nibble>(d[8 + i] ^ d[7]);
                break;
            case 6:
                beta = (i == 0) ? d[8]
                     : (i == 3) ? static_cast<Nibble>(d[11] ^ d[0])
                     : (i == 7) ? static_cast<Nibble>(d[15] ^ d[3] ^ d[4] ^ d[7])
                                : static_cast<Nibble>(d[8 + i] ^ d[7]);
                break;
            default:
                throw std::logic_error("apply_branch_rk29: branch out of range");
        }
        apply_transition(state.rk29_masks, i, alpha, beta, c[7 - i]);
    }
    if (b == 1) {
        const Nibble alpha5 = d[2];
        if (alpha5 != 0) {
            NibbleSet u = NibbleSet::empty();
            const NibbleSet eps = branch1_ep_candidates(d);
            for (Nibble ep = 1; ep < 16; ++ep)
                if (eps.contains(ep))
                    u |= key_candidates(alpha5, static_cast<Nibble>(d[13] ^ d[7] ^ ep), c[2]);
            state.rk29_masks[5] &= u;
        }
    }
}

// Which nibble of the second-to-last round key the e' transition of branch
// b constrains, and which last-round input cell supplies its known input.
struct Rk28Target {
    int nibble;
    int x29_cell;
};

Rk28Target rk28_target(int b) {
    switch (b) {
        case 1: return {7, 13};
        case 2: return {1, 12};
        case 3: return {5, 14};
        case 4: return {6, 9};
        case 5: return {4, 8};
        case 6: return {2, 11};
        default: throw std::logic_error("rk28_target: branch out of range");
    }
}

}  // namespace

bool m3_update(const CipherState& c, const CipherState& faulty, CandidateState& state) {
    const CipherState delta = c ^ faulty;
    if (all_zero(delta)) return false;
    const LocationVerdict verdict = identify_location(delta);
    if (verdict.branch == 7) {
        if (!m2_apply_rk29(c, delta, state)) return false;
    } else {
        apply_branch_rk29(verdict.branch, delta, c, state);
    }
    state.stored_faults.push_back({c, faulty, verdict});
    return true;
}

bool m3_update_rk28_single(const FaultRecord& rec, const RoundKey& rk29, CandidateState& state) {
    if (!rec.verdict) throw std::logic_error("m3 replay needs a location verdict");
    const int b = rec.verdict->branch;
    if (b == 7) return m2_update_rk28_single(rec.correct, rec.faulty, rk29, state);

    const CipherState delta = rec.correct ^ rec.faulty;
    const CipherState x29 = round_decrypt(rec.correct, rk29, false);
    const BranchValues v = branch_values(b, delta);
    if (b == 0) {
        // single active S-box in the middle round, fed by e'
        apply_transition(state.rk28_masks, 0, delta[7], delta[4], x29[15]);
        return true;
    }
    apply_transition(state.rk28_masks, 0, v.e, v.f, x29[15]);
    const Rk28Target t = rk28_target(b);
    if (b == 1) {
        // peeling the last round exposes the round-29 input difference, so
        // the e' that was ambiguous from the ciphertext alone is now exact:
        // it sits in the cell that feeds the constrained middle-round S-box
        const CipherState x29f = round_decrypt(rec.faulty, rk29, false);
        const Nibble ep = static_cast<Nibble>(x29[t.x29_cell] ^ x29f[t.x29_cell]);
        apply_transition(state.rk28_masks, t.nibble, ep, v.g, x29[t.x29_cell]);
    } else {
        apply_transition(state.rk28_masks, t.nibble, v.ep, v.g, x29[t.x29_cell]);
    }
    return true;
}

void m3_recover_rk28(CandidateState& state, const RoundKey& rk29) {
    for (const auto& rec : state.stored_faults) m3_update_rk28_single(rec, rk29, state);
}

InversionResult m3_finalize(const CandidateState& state, const AnchorPair& anchor) {
    if (!state.rk29_unique())
        throw std::invalid_argument("m3_finalize: last round key not uniquely determined");
    const RoundKey rk29 = state.rk29_value();

    CandidateState replayed = state;
    m3_recover_rk28(replayed, rk29);
    if (!replayed.rk28_unique_excluding_3())
        throw std::invalid_argument("m3_finalize: rk28 not determined beyond nibble 3");

    PartialRoundKey rk28;
    for (int i = 0; i < 8; ++i) {
        const NibbleSet m = replayed.rk28_masks[static_cast<std::size_t>(i)];
        if (m.unique()) {
            rk28.value[i] = m.value();
            rk28.known[static_cast<std::size_t>(i)] = true;
        } else {
            rk28.known[static_cast<std::size_t>(i)] = false;
        }
    }
    return invert_subkeys(rk29, rk28, anchor);
}

InversionResult recover_master_key(const RoundKey& rk28, const RoundKey& rk29,
                                   const AnchorPair& anchor) {
    return invert_subkeys(rk29, PartialRoundKey::fully_known(rk28), anchor);
}

// --- diffusion scan -----------------------------------------------------------

int count_active_sboxes(int fault_round, int fault_branch) {
    if (fault_round < 0 || fault_round >= kNumRounds) throw std::invalid_argument("round out of range");
    if (fault_branch < 0 || fault_branch > 15) throw std::invalid_argument("branch out of range");
    // Truncated propagation over formal symbols: each nibble carries a set
    // of symbols (bits of a word), XOR is symmetric difference, and every
    // active S-box emits a fresh symbol. Counts cover the last two rounds.
    std::array<std::uint64_t, 16> sym{};
    int next_symbol = 0;
    sym[static_cast<std::size_t>(fault_branch)] = 1ULL << next_symbol++;
    int active = 0;
    for (int r = fault_round; r < kNumRounds; ++r) {
        std::array<std::uint64_t, 16> y = sym;
        for (int i = 0; i < 8; ++i) {
            if (sym[static_cast<std::size_t>(7 - i)] == 0) continue;
            if (r >= 28) ++active;
            y[static_cast<std::size_t>(8 + i)] ^= 1ULL << next_symbol++;
        }
        for (int i = 1; i < 7; ++i) y[static_cast<std::size_t>(8 + i)] ^= sym[7];
        std::uint64_t acc = 0;
        for (int i = 1; i < 8; ++i) acc ^= sym[static_cast<std::size_t>(i)];
        y[15] ^= acc;
        if (r != kNumRounds - 1) {
            std::array<std::uint64_t, 16> p{};
            for (int i = 0; i < 16; ++i) p[static_cast<std::size_t>(kPi[static_cast<std::size_t>(i)])] = y[static_cast<std::size_t>(i)];
            y = p;
        }
        sym = y;
    }
    return active;
}

}  // namespace lilliput::dfa
