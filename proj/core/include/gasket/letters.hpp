#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "gasket/lattice.hpp"
#include "gasket/scalar.hpp"

namespace gasket {

/// Qudit letters 0..3. Letter a colors the triangle sides red/pink:
/// 0 leaves all three sides pink, letter k >= 1 colors red exactly the two
/// sides != k. Every red set has even size, and the letters form a Klein
/// four-group under XOR of red sets, which is plain XOR of the 2-bit values.
using Letter = std::uint8_t;

inline bool side_is_red(int letter, int side) { return letter != 0 && side != letter; }
inline int letter_mul(int a, int b) { return a ^ b; }
/// The letter whose red set is the two distinct sides {s1, s2}.
inline int letter_from_red_pair(int s1, int s2) { return 6 - s1 - s2; }

inline int pack_triple(int a, int b, int c) { return a * 16 + b * 4 + c; }
inline std::array<Letter, 3> unpack_triple(int p) {
    return {(Letter)(p / 16), (Letter)(p / 4 % 4), (Letter)(p % 4)};
}

/// Reads a block triple (t, l, r) in the frame of a block sitting at
/// position p (0 = t, 1 = l, 2 = r) of its parent: the reading starts at the
/// corner through which the block attaches outward, so the same coarse table
/// serves every position. rotate_triple(p, 1) turns (t,l,r) into (l,r,t).
inline int rotate_triple(int packed, int position) {
    auto v = unpack_triple(packed);
    return pack_triple(v[position % 3], v[(position + 1) % 3], v[(position + 2) % 3]);
}

/// Single-qudit permutation gate.
struct GateTable1 {
    std::array<std::uint8_t, 4> map;
    bool is_identity() const { return map == std::array<std::uint8_t, 4>{0, 1, 2, 3}; }
};

/// Two-qudit permutation gate; index x*4+y for the (first, second) letters.
struct GateTable2 {
    std::array<std::uint8_t, 16> map;
};

/// S^k exchanges the letters pairwise so that the red status of exactly the
/// two sides != k is toggled: S^k : a -> a XOR k.
GateTable1 s_gate(int superscript);

/// The two-body constraint-preserving gate on an edge: S^{port_u} (x) S^{port_v},
/// i.e. S^1 (x) S^1 on link edges and S^2 (x) S^3 (in port order) on block
/// edges. Toggles, at each endpoint, exactly the sides of the two loops that
/// traverse the edge, so every loop parity is preserved.
struct EdgeGate {
    VertexId u, v;
    int superscript_u, superscript_v;
    GateTable2 table;
};
EdgeGate t_gate(const Lattice& lattice, int edge_index);

/// Coarse-graining isometry data: the 32 letter triples satisfying the block
/// loop constraint, grouped 8 per coarse letter; gamma in 1..8 enumerates the
/// triples sharing a coarse letter, in table order. Each entry carries weight
/// 1/sqrt(8). Triples are read in block vertex order (t, l, r).
struct CoarseTable {
    std::array<std::array<std::uint8_t, 8>, 4> rows; // rows[coarse][gamma-1] = packed triple
    std::array<std::int8_t, 64> coarse_of;           // -1 outside the block-valid sector
    std::array<std::int8_t, 64> gamma_of;            // 1..8, or -1

    static ExactScalar weight() { return ExactScalar::sqrt2_pow(-3); }
};
const CoarseTable& coarse_table();

struct BlockCode {
    Letter coarse;
    int gamma; // 1..8
};
/// Relabels a block triple as (coarse letter, gamma); nullopt for the 32
/// triples violating the block loop constraint (whose image is never needed).
std::optional<BlockCode> decompose_block_triple(int packed_triple);

/// Independent route to the coarse letter: reduce the six outer sides of the
/// block pairwise by XOR of their red status. Returns nullopt when the
/// resulting red set is odd (equivalently, the block constraint is violated).
std::optional<Letter> coarse_letter_derived(Letter t, Letter l, Letter r);

} // namespace gasket
