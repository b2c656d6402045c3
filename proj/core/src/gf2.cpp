#include "gasket/gf2.hpp"

namespace gasket {

GF2Matrix::RankResult GF2Matrix::rank() const {
    std::vector<BitVec> ech;
    std::vector<std::uint8_t> ech_rhs;
    std::vector<int> pivots;
    bool consistent = true;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        BitVec r = rows_[i];
        bool t = rhs_[i];
        for (std::size_t j = 0; j < ech.size(); ++j)
            if (r.get(pivots[j])) {
                r ^= ech[j];
                t ^= ech_rhs[j];
            }
        int p = r.first_set();
        if (p < 0) {
            if (t) consistent = false;
            continue;
        }
        ech.push_back(std::move(r));
        ech_rhs.push_back(t);
        pivots.push_back(p);
    }
    return {(int)ech.size(), consistent};
}

GF2Solve GF2Matrix::solve() const {
    std::vector<BitVec> ech;
    std::vector<std::uint8_t> ech_rhs;
    std::vector<int> pivots;
    GF2Solve out;
    out.consistent = true;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        BitVec r = rows_[i];
        bool t = rhs_[i];
        for (std::size_t j = 0; j < ech.size(); ++j)
            if (r.get(pivots[j])) {
                r ^= ech[j];
                t ^= ech_rhs[j];
            }
        int p = r.first_set();
        if (p < 0) {
            if (t) out.consistent = false;
            continue;
        }
        ech.push_back(std::move(r));
        ech_rhs.push_back(t);
        pivots.push_back(p);
    }
    out.rank = (int)ech.size();
    if (!out.consistent) return out;

    // Reduce to RREF so that every pivot column appears in exactly one row.
    for (int j = (int)ech.size() - 1; j >= 0; --j)
        for (int i = 0; i < j; ++i)
            if (ech[i].get(pivots[j])) {
                ech[i] ^= ech[j];
                ech_rhs[i] ^= ech_rhs[j];
            }

    std::vector<char> is_pivot(cols_, 0);
    for (int p : pivots) is_pivot[p] = 1;

    out.particular = BitVec(cols_);
    for (std::size_t j = 0; j < ech.size(); ++j)
        if (ech_rhs[j]) out.particular.set(pivots[j]);

    for (int f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        BitVec v(cols_);
        v.set(f);
        for (std::size_t j = 0; j < ech.size(); ++j)
            if (ech[j].get(f)) v.set(pivots[j]);
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

} // namespace gasket
