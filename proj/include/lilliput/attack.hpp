#pragma once

#include <optional>
#include <vector>

#include "lilliput/ddt.hpp"
#include "lilliput/fault.hpp"
#include "lilliput/linear_model.hpp"
#include "lilliput/state.hpp"

namespace lilliput::dfa {

/// Where a random-location fault landed, as deduced from the ciphertext
/// difference. Branches 0..6 match one of seven mutually exclusive
/// difference patterns exactly; branch 7 is inferred when none matches.
struct LocationVerdict {
    int branch = 0;
    bool exact = true;  // false: branch 7 by elimination

    friend bool operator==(const LocationVerdict&, const LocationVerdict&) = default;
};

/// One stored injection, kept so constraints that need the recovered last
/// round key can be replayed later.
struct FaultRecord {
    CipherState correct;
    CipherState faulty;
    std::optional<LocationVerdict> verdict;  // set by the model III engine
};

/// Per-nibble candidate masks for the last two round keys. Masks only
/// shrink; on genuine faults the true nibble always stays inside.
struct CandidateState {
    std::array<NibbleSet, 8> rk29_masks;
    std::array<NibbleSet, 8> rk28_masks;
    std::vector<FaultRecord> stored_faults;
    int skipped_faults = 0;  // model II replays with no surviving (e, e') pair

    CandidateState() {
        rk29_masks.fill(NibbleSet::full());
        rk28_masks.fill(NibbleSet::full());
    }

    bool rk29_unique() const;
    bool rk28_unique() const;
    /// All rk28 nibbles except index 3 unique (the random-location target).
    bool rk28_unique_excluding_3() const;
    bool any_empty() const;
    RoundKey rk29_value() const;  // call only when rk29_unique()
    RoundKey rk28_value() const;
};

// --- model I: multi-round fixed-location -----------------------------------

/// Digest a (correct, faulty) pair from a fault at round 28, branch 7.
/// Reads e = dC0 and e' = dC4, forms the eight S-box transitions of the
/// last round and intersects the rk29 masks. Returns false when the pair
/// carries no fault (dC0 = 0) and was rejected.
bool m1_update_rk29(const CipherState& c, const CipherState& faulty, CandidateState& state);

/// Same extraction one round earlier: each pair comes from a fault at round
/// 27, branch 7; the last round is decrypted under the recovered rk29 and
/// the rk28 masks are intersected.
bool m1_update_rk28(const CipherState& c, const CipherState& faulty, const RoundKey& rk29,
                    CandidateState& state);

// --- model II: single-round fixed-location ---------------------------------

/// Candidate fault values e for a round-27 branch-7 injection, from the six
/// direct DDT constraints refined by the cross-branch system on the left
/// half of the ciphertext difference.
NibbleSet m2_candidates_e(const CipherState& dc);

/// Candidate S-box output differences e' compatible with a given e.
NibbleSet m2_candidates_e_prime(const CipherState& dc, Nibble e);

/// Union over all (e, e') pairs of the per-nibble key candidates, then
/// intersection into the rk29 masks; the pair is stored for rk28 replay.
/// Returns false when the pair was rejected (zero difference or no
/// feasible (e, e') pair).
bool m2_update(const CipherState& c, const CipherState& faulty, CandidateState& state);

/// Replay every stored fault against the recovered rk29: keep (e, e') pairs
/// consistent with it (faults where none survives are skipped and counted),
/// decrypt the last round and intersect the rk28 masks.
void m2_recover_rk28(CandidateState& state, const RoundKey& rk29);

/// rk28 update for one fault, used once rk29 is already unique.
bool m2_update_rk28_single(const CipherState& c, const CipherState& faulty, const RoundKey& rk29,
                           CandidateState& state);

// --- model III: single-round random-location -------------------------------

/// Decide the injected branch from the ciphertext difference.
LocationVerdict identify_location(const CipherState& dc);

/// Full model III digest of one pair: identify the branch, intersect the
/// rk29 masks with the branch-specific constraints, store the pair for the
/// deferred rk28 constraints. Returns false on a rejected pair.
bool m3_update(const CipherState& c, const CipherState& faulty, CandidateState& state);

/// Replay all stored faults for their rk28 constraints (needs rk29).
void m3_recover_rk28(CandidateState& state, const RoundKey& rk29);

/// rk28 constraints of a single already-identified fault.
bool m3_update_rk28_single(const FaultRecord& rec, const RoundKey& rk29, CandidateState& state);

/// Finalize a model III run: rk29 unique, rk28 unique except possibly
/// nibble 3; the open nibble folds into the kernel enumeration.
InversionResult m3_finalize(const CandidateState& state, const AnchorPair& anchor);

/// Master-key recovery from fully determined subkeys.
InversionResult recover_master_key(const RoundKey& rk28, const RoundKey& rk29,
                                   const AnchorPair& anchor);

// --- diffusion scan (branch selection) --------------------------------------

/// Truncated-difference count of active S-boxes in the final two rounds for
/// a single-nibble injection before the given round. Reproduces the branch
/// selection table: at round 28 the counts over branches 0..15 are
/// 2 / 3 (branches 1..6) / 9 (branch 7) / 1 (left half), and a round-27
/// branch-7 injection activates all sixteen.
int count_active_sboxes(int fault_round, int fault_branch);

}  // namespace lilliput::dfa
