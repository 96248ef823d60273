#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

namespace lilliput {

/// Dense 80-bit vector over GF(2).
struct BitVec80 {
    std::uint64_t lo = 0;  // bits 0..63
    std::uint64_t hi = 0;  // bits 64..79

    bool get(int i) const {
        return i < 64 ? (lo >> i) & 1 : (hi >> (i - 64)) & 1;
    }
    void set(int i) {
        if (i < 64) lo |= std::uint64_t{1} << i;
        else hi |= std::uint64_t{1} << (i - 64);
    }
    void assign(int i, bool v) {
        if (v) set(i);
        else if (i < 64) lo &= ~(std::uint64_t{1} << i);
        else hi &= ~(std::uint64_t{1} << (i - 64));
    }
    bool any() const { return (lo | hi) != 0; }

    BitVec80& operator^=(const BitVec80& o) {
        lo ^= o.lo;
        hi ^= o.hi;
        return *this;
    }
    friend BitVec80 operator^(BitVec80 a, const BitVec80& b) { return a ^= b; }
    friend bool operator==(const BitVec80&, const BitVec80&) = default;
};

inline bool dot(const BitVec80& a, const BitVec80& b) {
    return (std::popcount(a.lo & b.lo) + std::popcount(a.hi & b.hi)) & 1;
}

/// 80x80 matrix over GF(2); rows[i] holds the input coefficients of output
/// bit i, so (M x)_i = <rows[i], x>.
struct Gf2Matrix80 {
    std::array<BitVec80, 80> rows{};

    static Gf2Matrix80 identity();
    BitVec80 apply(const BitVec80& x) const;
    Gf2Matrix80 operator*(const Gf2Matrix80& rhs) const;
    int rank() const;
};

/// Solution of an affine system A x = b over GF(2) in 80 unknowns.
struct AffineSolution {
    bool consistent = false;
    int rank = 0;
    BitVec80 particular;            // one solution (free variables zeroed)
    std::vector<BitVec80> kernel;   // basis of the homogeneous solutions
    std::vector<int> free_columns;  // ascending; kernel[j] belongs to free_columns[j]
};

/// Gaussian elimination. Rows and right-hand-side bits are consumed as given.
AffineSolution solve_affine(std::vector<BitVec80> rows, std::vector<std::uint8_t> rhs);

}  // namespace lilliput
