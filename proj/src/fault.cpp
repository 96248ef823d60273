#include "lilliput/fault.hpp"

#include <cstdio>
#include <stdexcept>

#include "lilliput/cipher.hpp"

namespace lilliput::dfa {

std::string FaultSpec::to_string() const {
    return "r" + std::to_string(round) + ":b" + std::to_string(branch) + ":v" +
           std::string(1, "0123456789ABCDEF"[value & 0xF]);
}

FaultSpec FaultSpec::parse(const std::string& text) {
    FaultSpec f;
    int consumed = 0;
    char vc = 0;
    if (std::sscanf(text.c_str(), "r%d:b%d:v%c%n", &f.round, &f.branch, &vc, &consumed) != 3 ||
        consumed != static_cast<int>(text.size()))
        throw std::invalid_argument("fault spec must look like r27:b7:v5");
    if (vc >= '0' && vc <= '9') f.value = static_cast<Nibble>(vc - '0');
    else if (vc >= 'a' && vc <= 'f') f.value = static_cast<Nibble>(vc - 'a' + 10);
    else if (vc >= 'A' && vc <= 'F') f.value = static_cast<Nibble>(vc - 'A' + 10);
    else throw std::invalid_argument("fault value must be a hex digit");
    if (f.round < 0 || f.round >= kNumRounds) throw std::invalid_argument("fault round out of range");
    if (f.branch < 0 || f.branch > 15) throw std::invalid_argument("fault branch out of range");
    if (f.value == 0) throw std::invalid_argument("fault value must be nonzero");
    return f;
}

std::uint64_t TrialRng::mix(std::uint64_t a, std::uint64_t b) {
    // splitmix64 finalizer over the pair; distinct (seed, trial) pairs land
    // in well-separated streams.
    std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t TrialRng::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t TrialRng::below(std::uint64_t n) {
    // rejection sampling; keeps small-range draws exactly uniform
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
        v = next();
    } while (v >= limit);
    return v % n;
}

CipherState TrialRng::random_state() {
    CipherState s;
    std::uint64_t bits = next();
    for (int i = 0; i < 16; ++i) {
        s[i] = static_cast<Nibble>(bits & 0xF);
        bits >>= 4;
    }
    return s;
}

LfsmState TrialRng::random_key() {
    LfsmState k;
    std::uint64_t bits = next();
    for (int i = 0; i < 16; ++i) {
        k[i] = static_cast<Nibble>(bits & 0xF);
        bits >>= 4;
    }
    bits = next();
    for (int i = 16; i < 20; ++i) {
        k[i] = static_cast<Nibble>(bits & 0xF);
        bits >>= 4;
    }
    return k;
}

CipherState faulty_encrypt(const CipherState& p, const RoundKeys& rks, const FaultSpec& fault) {
    if (fault.value == 0) throw std::invalid_argument("fault value must be nonzero");
    if (fault.round < 0 || fault.round >= kNumRounds) throw std::invalid_argument("fault round out of range");
    if (fault.branch < 0 || fault.branch > 15) throw std::invalid_argument("fault branch out of range");
    CipherState x = p;
    for (int r = 0; r < kNumRounds; ++r) {
        if (r == fault.round) x[fault.branch] ^= fault.value;
        x = round_encrypt(x, rks[static_cast<std::size_t>(r)], r != kNumRounds - 1);
    }
    return x;
}

FaultSpec sample_fault(FaultModel model, TrialRng& rng) {
    FaultSpec f;
    switch (model) {
        case FaultModel::kModelIPhase1:
            f.round = 28;
            f.branch = 7;
            break;
        case FaultModel::kModelIPhase2:
        case FaultModel::kModelII:
            f.round = 27;
            f.branch = 7;
            break;
        case FaultModel::kModelIII:
            f.round = 27;
            f.branch = static_cast<int>(rng.below(8));
            break;
    }
    f.value = rng.nonzero_nibble();
    return f;
}

}  // namespace lilliput::dfa
