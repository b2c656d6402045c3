#include "gasket/letters.hpp"

#include <stdexcept>

namespace gasket {

GateTable1 s_gate(int superscript) {
    if (superscript < 1 || superscript > 3) throw std::invalid_argument("superscript must be 1..3");
    GateTable1 g;
    for (int a = 0; a < 4; ++a) g.map[a] = (std::uint8_t)(a ^ superscript);
    return g;
}

EdgeGate t_gate(const Lattice& lattice, int edge_index) {
    if (edge_index < 0 || edge_index >= (int)lattice.edges().size())
        throw std::invalid_argument("edge index out of range");
    const Edge& e = lattice.edges()[edge_index];
    EdgeGate gate{e.u, e.v, e.port_u, e.port_v, {}};
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            gate.table.map[x * 4 + y] = (std::uint8_t)((x ^ e.port_u) * 4 + (y ^ e.port_v));
    return gate;
}

namespace {

CoarseTable make_coarse_table() {
    // The eight triples sharing each coarse letter, with gamma = position + 1.
    constexpr int rows[4][8][3] = {
        {{0, 0, 0}, {1, 1, 1}, {0, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 0}, {3, 0, 2}, {3, 2, 1}},
        {{0, 1, 1}, {0, 3, 2}, {1, 0, 0}, {1, 2, 3}, {2, 0, 2}, {2, 2, 1}, {3, 1, 3}, {3, 3, 0}},
        {{0, 1, 0}, {0, 3, 3}, {1, 0, 1}, {1, 2, 2}, {2, 0, 3}, {2, 2, 0}, {3, 1, 2}, {3, 3, 1}},
        {{0, 0, 1}, {1, 1, 0}, {0, 2, 2}, {1, 3, 3}, {2, 1, 2}, {2, 3, 1}, {3, 0, 3}, {3, 2, 0}},
    };
    CoarseTable t;
    t.coarse_of.fill(-1);
    t.gamma_of.fill(-1);
    for (int c = 0; c < 4; ++c) {
        for (int k = 0; k < 8; ++k) {
            int packed = pack_triple(rows[c][k][0], rows[c][k][1], rows[c][k][2]);
            t.rows[c][k] = (std::uint8_t)packed;
            t.coarse_of[packed] = (std::int8_t)c;
            t.gamma_of[packed] = (std::int8_t)(k + 1);
        }
    }
    return t;
}

} // namespace

const CoarseTable& coarse_table() {
    static const CoarseTable table = make_coarse_table();
    return table;
}

std::optional<BlockCode> decompose_block_triple(int packed_triple) {
    const CoarseTable& t = coarse_table();
    if (packed_triple < 0 || packed_triple >= 64) throw std::invalid_argument("bad triple");
    if (t.coarse_of[packed_triple] < 0) return std::nullopt;
    return BlockCode{(Letter)t.coarse_of[packed_triple], t.gamma_of[packed_triple]};
}

std::optional<Letter> coarse_letter_derived(Letter t, Letter l, Letter r) {
    // Outer sides of a block pair up into the coarse sides: the coarse side k
    // reduces the two constituent sides facing the same direction, red iff
    // exactly one of the two is red.
    bool red1 = side_is_red(l, 3) ^ side_is_red(r, 2);
    bool red2 = side_is_red(t, 2) ^ side_is_red(r, 3);
    bool red3 = side_is_red(t, 3) ^ side_is_red(l, 2);
    int count = (int)red1 + (int)red2 + (int)red3;
    if (count % 2 != 0) return std::nullopt;
    if (count == 0) return (Letter)0;
    int pink = !red1 ? 1 : (!red2 ? 2 : 3);
    return (Letter)pink;
}

} // namespace gasket
