#pragma once

#include <cstdint>
#include <vector>

namespace gasket {

/// Dense bit vector over 64-bit words.
struct BitVec {
    std::vector<std::uint64_t> words;
    int nbits = 0;

    BitVec() = default;
    explicit BitVec(int bits) : words((bits + 63) / 64, 0), nbits(bits) {}

    bool get(int i) const { return (words[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { words[i >> 6] |= 1ULL << (i & 63); }
    void clear(int i) { words[i >> 6] &= ~(1ULL << (i & 63)); }
    void flip(int i) { words[i >> 6] ^= 1ULL << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t k = 0; k < words.size(); ++k) words[k] ^= o.words[k];
        return *this;
    }
    void and_not(const BitVec& mask) {
        for (std::size_t k = 0; k < words.size(); ++k) words[k] &= ~mask.words[k];
    }
    bool any() const {
        for (auto w : words)
            if (w) return true;
        return false;
    }
    int first_set() const {
        for (std::size_t k = 0; k < words.size(); ++k)
            if (words[k]) return (int)(k * 64 + __builtin_ctzll(words[k]));
        return -1;
    }
    int popcount() const {
        int c = 0;
        for (auto w : words) c += __builtin_popcountll(w);
        return c;
    }
    friend bool parity_and(const BitVec& a, const BitVec& b) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < a.words.size(); ++k) acc ^= a.words[k] & b.words[k];
        return __builtin_popcountll(acc) & 1;
    }
    friend bool operator==(const BitVec& a, const BitVec& b) {
        return a.nbits == b.nbits && a.words == b.words;
    }
};

struct GF2Solve {
    bool consistent = false;
    int rank = 0;
    BitVec particular;            // one solution when consistent
    std::vector<BitVec> nullspace; // basis of the homogeneous solution space
};

/// Augmented GF(2) system: rows of coefficients plus a right-hand-side bit.
class GF2Matrix {
  public:
    explicit GF2Matrix(int cols) : cols_(cols) {}

    int cols() const { return cols_; }
    int row_count() const { return (int)rows_.size(); }
    void add_row(BitVec row, bool rhs) {
        rows_.push_back(std::move(row));
        rhs_.push_back(rhs);
    }
    const BitVec& row(int i) const { return rows_[i]; }
    bool rhs(int i) const { return rhs_[i] != 0; }

    /// Rank of the coefficient matrix and consistency of the augmented system.
    struct RankResult {
        int rank;
        bool consistent;
    };
    RankResult rank() const;

    /// Full solve with particular solution and nullspace basis.
    GF2Solve solve() const;

  private:
    int cols_;
    std::vector<BitVec> rows_;
    std::vector<std::uint8_t> rhs_;
};

} // namespace gasket
