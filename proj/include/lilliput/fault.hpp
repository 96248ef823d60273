#pragma once

#include <cstdint>
#include <string>

#include "lilliput/state.hpp"

namespace lilliput::dfa {

/// One injection: XOR a nonzero nibble into a state cell right before the
/// given round executes. Text form "r{round}:b{branch}:v{hex}".
struct FaultSpec {
    int round = 0;   // 0..29
    int branch = 0;  // 0..15
    Nibble value = 0;

    std::string to_string() const;
    static FaultSpec parse(const std::string& text);
};

/// The three adversary models (model I uses both of its phases).
enum class FaultModel {
    kModelIPhase1,  // round 28, branch 7
    kModelIPhase2,  // round 27, branch 7
    kModelII,       // round 27, branch 7
    kModelIII,      // round 27, branch uniform over 0..7
};

/// Small splittable generator: each campaign trial derives an independent
/// stream from (master seed, trial index), so results do not depend on how
/// trials are scheduled across workers.
class TrialRng {
  public:
    explicit TrialRng(std::uint64_t seed) : state_(seed) { next(); }

    static TrialRng for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
        return TrialRng(mix(master_seed, trial_index));
    }

    std::uint64_t next();
    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n);
    Nibble nibble() { return static_cast<Nibble>(below(16)); }
    Nibble nonzero_nibble() { return static_cast<Nibble>(1 + below(15)); }

    CipherState random_state();
    LfsmState random_key();

  private:
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b);
    std::uint64_t state_;
};

/// encrypt() with fault.value XORed into cell fault.branch of the input
/// state of round fault.round. Throws std::invalid_argument on a zero fault
/// value or out-of-range position.
CipherState faulty_encrypt(const CipherState& p, const RoundKeys& rks, const FaultSpec& fault);

/// Draw a fault within the model's round/branch constraints; the value is
/// uniform over the fifteen nonzero nibbles.
FaultSpec sample_fault(FaultModel model, TrialRng& rng);

}  // namespace lilliput::dfa
