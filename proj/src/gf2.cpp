#include "lilliput/gf2.hpp"

namespace lilliput {

Gf2Matrix80 Gf2Matrix80::identity() {
    Gf2Matrix80 m;
    for (int i = 0; i < 80; ++i) m.rows[static_cast<std::size_t>(i)].set(i);
    return m;
}

BitVec80 Gf2Matrix80::apply(const BitVec80& x) const {
    BitVec80 y;
    for (int i = 0; i < 80; ++i)
        if (dot(rows[static_cast<std::size_t>(i)], x)) y.set(i);
    return y;
}

Gf2Matrix80 Gf2Matrix80::operator*(const Gf2Matrix80& rhs) const {
    // (A*B) x = A (B x): row i of the product accumulates rhs rows selected
    // by the bits of our row i... careful: rows are functionals, so
    // (A*B).rows[i] = sum_j A.rows[i][j] * B.rows[j].
    Gf2Matrix80 out;
    for (int i = 0; i < 80; ++i) {
        BitVec80 acc;
        const BitVec80& a = rows[static_cast<std::size_t>(i)];
        for (int j = 0; j < 80; ++j)
            if (a.get(j)) acc ^= rhs.rows[static_cast<std::size_t>(j)];
        out.rows[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

int Gf2Matrix80::rank() const {
    std::vector<BitVec80> rs(rows.begin(), rows.end());
    return solve_affine(std::move(rs), std::vector<std::uint8_t>(80, 0)).rank;
}

AffineSolution solve_affine(std::vector<BitVec80> rows, std::vector<std::uint8_t> rhs) {
    const std::size_t n = rows.size();
    AffineSolution sol;
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (int col = 0; col < 80 && r < n; ++col) {
        std::size_t piv = r;
        while (piv < n && !rows[piv].get(col)) ++piv;
        if (piv == n) continue;
        std::swap(rows[r], rows[piv]);
        std::swap(rhs[r], rhs[piv]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i != r && rows[i].get(col)) {
                rows[i] ^= rows[r];
                rhs[i] ^= rhs[r];
            }
        }
        pivot_col.push_back(col);
        ++r;
    }
    sol.rank = static_cast<int>(r);
    for (std::size_t i = r; i < n; ++i) {
        if (rhs[i]) return sol;  // 0 = 1: inconsistent
    }
    sol.consistent = true;

    std::vector<bool> is_pivot(80, false);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
    for (int c = 0; c < 80; ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) sol.free_columns.push_back(c);

    for (std::size_t i = 0; i < r; ++i)
        if (rhs[i]) sol.particular.set(pivot_col[i]);

    for (int f : sol.free_columns) {
        BitVec80 v;
        v.set(f);
        for (std::size_t i = 0; i < r; ++i)
            if (rows[i].get(f)) v.set(pivot_col[i]);
        sol.kernel.push_back(v);
    }
    return sol;
}

}  // namespace lilliput
