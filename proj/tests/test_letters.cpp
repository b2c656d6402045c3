#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "gasket/constraints.hpp"
#include "gasket/letters.hpp"

using namespace gasket;

TEST_CASE("S gate dyad lists") {
    GateTable1 s1 = s_gate(1), s2 = s_gate(2), s3 = s_gate(3);
    CHECK(s1.map == std::array<std::uint8_t, 4>{1, 0, 3, 2});
    CHECK(s2.map == std::array<std::uint8_t, 4>{2, 3, 0, 1});
    CHECK(s3.map == std::array<std::uint8_t, 4>{3, 2, 1, 0});
    CHECK(s1.map[0] == 1);
    CHECK(s2.map[3] == 1);
    for (int k = 1; k <= 3; ++k) {
        GateTable1 s = s_gate(k);
        for (int a = 0; a < 4; ++a) {
            CHECK(s.map[s.map[a]] == a); // involution
            // S^k toggles the red status of exactly the two sides != k.
            for (int side = 1; side <= 3; ++side) {
                bool before = side_is_red(a, side), after = side_is_red(s.map[a], side);
                CHECK((before != after) == (side != k));
            }
        }
    }
    CHECK_THROWS_AS(s_gate(0), std::invalid_argument);
    CHECK_THROWS_AS(s_gate(4), std::invalid_argument);
}

TEST_CASE("T gates per edge kind") {
    Lattice lat = Lattice::build(2);
    int link_edge = -1, block_edge = -1;
    for (int ei = 0; ei < (int)lat.edges().size(); ++ei)
        (lat.edges()[ei].is_link() ? link_edge : block_edge) = ei;
    REQUIRE(link_edge >= 0);
    REQUIRE(block_edge >= 0);

    EdgeGate link = t_gate(lat, link_edge);
    CHECK(link.superscript_u == 1);
    CHECK(link.superscript_v == 1);
    CHECK(link.table.map[0] == 1 * 4 + 1); // (0,0) -> (1,1)

    EdgeGate block = t_gate(lat, block_edge);
    CHECK(((block.superscript_u == 2 && block.superscript_v == 3)));
    CHECK(block.table.map[0] == 2 * 4 + 3); // (0,0) -> (2,3)

    for (int ei = 0; ei < (int)lat.edges().size(); ++ei) {
        EdgeGate g = t_gate(lat, ei);
        for (int x = 0; x < 16; ++x) CHECK(g.table.map[g.table.map[x]] == x); // involution
    }
    CHECK_THROWS_AS(t_gate(lat, -1), std::invalid_argument);
    CHECK_THROWS_AS(t_gate(lat, 999), std::invalid_argument);
}

TEST_CASE("T gates preserve every loop parity, exhaustively for g <= 3") {
    for (int g = 1; g <= 3; ++g) {
        Lattice lat = Lattice::build(g);
        for (int ei = 0; ei < (int)lat.edges().size(); ++ei) {
            EdgeGate gate = t_gate(lat, ei);
            for (int x = 0; x < 4; ++x)
                for (int y = 0; y < 4; ++y) {
                    int mapped = gate.table.map[x * 4 + y];
                    Syndrome shift = syndrome_shift(
                        lat, {{gate.u, (Letter)(x ^ (mapped / 4))},
                              {gate.v, (Letter)(y ^ (mapped % 4))}});
                    for (auto bit : shift) CHECK(bit == 0);
                }
        }
    }
}

TEST_CASE("the three incident T gates send a letter to the three other letters") {
    Lattice lat = Lattice::build(2);
    for (VertexId v = 0; v < lat.vertex_count(); ++v) {
        std::set<int> images;
        for (auto [w, ei] : lat.neighbors(v)) {
            EdgeGate g = t_gate(lat, ei);
            int k = g.u == v ? g.superscript_u : g.superscript_v;
            for (int a = 0; a < 4; ++a) CHECK((a ^ k) != a);
            images.insert(1 ^ k); // image of letter 1 under this T, at v
        }
        if (!lat.is_corner(v)) {
            CHECK(images.size() == 3);
            CHECK(images.count(1) == 0);
        } else {
            // Corner property: the two in-block T gates compose to the
            // action of the absent third one.
            CHECK(images.size() == 2);
            auto it = images.begin();
            int k1 = (*it) ^ 1, k2 = (*(++it)) ^ 1;
            CHECK(letter_mul(k1, k2) == 1); // S^k1 S^k2 = S^1, the missing link gate
        }
    }
}

TEST_CASE("coarse isometry table") {
    const CoarseTable& t = coarse_table();

    SUBCASE("row for coarse letter 0") {
        const int row0[8][3] = {{0, 0, 0}, {1, 1, 1}, {0, 2, 3}, {1, 3, 2},
                                {2, 1, 3}, {2, 3, 0}, {3, 0, 2}, {3, 2, 1}};
        for (int k = 0; k < 8; ++k)
            CHECK(t.rows[0][k] == pack_triple(row0[k][0], row0[k][1], row0[k][2]));
    }
    SUBCASE("pinned lookups") {
        auto c000 = decompose_block_triple(pack_triple(0, 0, 0));
        REQUIRE(c000.has_value());
        CHECK(c000->coarse == 0);
        CHECK(c000->gamma == 1);
        auto c111 = decompose_block_triple(pack_triple(1, 1, 1));
        CHECK(c111->coarse == 0);
        CHECK(c111->gamma == 2);
        auto c032 = decompose_block_triple(pack_triple(0, 3, 2));
        CHECK(c032->coarse == 1);
        CHECK(c032->gamma == 2);
        auto c001 = decompose_block_triple(pack_triple(0, 0, 1));
        CHECK(c001->coarse == 3);
        CHECK(c001->gamma == 1);
        auto c010 = decompose_block_triple(pack_triple(0, 1, 0));
        CHECK(c010->coarse == 2);
        CHECK(c010->gamma == 1);
        auto c100 = decompose_block_triple(pack_triple(1, 0, 0));
        CHECK(c100->coarse == 1);
        CHECK(c100->gamma == 3);
        CHECK(!decompose_block_triple(pack_triple(0, 0, 2)).has_value());
    }
    SUBCASE("rows partition exactly the block-valid triples") {
        // Block validity oracle: the block loop holds side 1 of each vertex,
        // so its parity counts the letters in {2, 3}.
        int valid = 0;
        for (int p = 0; p < 64; ++p) {
            auto tr = unpack_triple(p);
            int parity = 0;
            for (Letter a : tr) parity ^= side_is_red(a, 1) ? 1 : 0;
            if (parity == 0) {
                ++valid;
                CHECK(t.coarse_of[p] >= 0);
            } else {
                CHECK(t.coarse_of[p] == -1);
            }
        }
        CHECK(valid == 32);
        // 8 triples per coarse letter, gammas 1..8 once each.
        for (int c = 0; c < 4; ++c) {
            std::set<int> gammas;
            for (int k = 0; k < 8; ++k) {
                CHECK(t.coarse_of[t.rows[c][k]] == c);
                gammas.insert(t.gamma_of[t.rows[c][k]]);
            }
            CHECK(gammas == std::set<int>{1, 2, 3, 4, 5, 6, 7, 8});
        }
    }
    SUBCASE("independent outer-side reduction agrees with the table") {
        for (int p = 0; p < 64; ++p) {
            auto tr = unpack_triple(p);
            auto derived = coarse_letter_derived(tr[0], tr[1], tr[2]);
            if (t.coarse_of[p] >= 0) {
                REQUIRE(derived.has_value());
                CHECK(*derived == (Letter)t.coarse_of[p]);
            } else {
                CHECK(!derived.has_value());
            }
        }
    }
    SUBCASE("isometry: rows are disjoint with 8 unit entries each") {
        // (weight 1/sqrt8)^2 * 8 entries = 1 per coarse letter; rows disjoint.
        CHECK(CoarseTable::weight() * CoarseTable::weight() * ExactScalar(8, 0, 0) ==
              ExactScalar::one());
        std::set<int> all;
        for (int c = 0; c < 4; ++c)
            for (int k = 0; k < 8; ++k) all.insert(t.rows[c][k]);
        CHECK(all.size() == 32);
    }
}

TEST_CASE("letter and red-pair helpers") {
    CHECK(letter_from_red_pair(2, 3) == 1);
    CHECK(letter_from_red_pair(1, 3) == 2);
    CHECK(letter_from_red_pair(1, 2) == 3);
    for (int a = 0; a < 4; ++a) {
        int reds = 0;
        for (int s = 1; s <= 3; ++s) reds += side_is_red(a, s);
        CHECK(reds % 2 == 0);
    }
    // Klein group: letter_mul is associative, commutative, involutive.
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            CHECK(letter_mul(a, b) == letter_mul(b, a));
            CHECK(letter_mul(letter_mul(a, b), b) == a);
        }
}
