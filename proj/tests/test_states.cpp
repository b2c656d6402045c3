#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gasket/errors.hpp"
#include "gasket/experiments.hpp"
#include "gasket/states.hpp"

using namespace gasket;

TEST_CASE("psi and phi cosets at generation 2") {
    Lattice lat = Lattice::build(2);
    CosetState psi = make_psi_state(lat);
    CosetState phi = make_phi_state(lat);
    CHECK(psi.size().value_u64() == 4096);
    CHECK(phi.size().value_u64() == 4096);

    SparseState psi_vec = SparseState::materialize(psi);
    CHECK(psi_vec.term_count() == 4096);
    auto amp = psi_vec.uniform_amplitude();
    REQUIRE(amp.has_value());
    CHECK(*amp == ExactScalar::pow2(-6)); // 1/sqrt(4096)
    CHECK(psi_vec.inner(psi_vec) == ExactScalar::one());

    SparseState phi_vec = SparseState::materialize(phi);
    CHECK(phi_vec.inner(phi_vec) == ExactScalar::one());
    CHECK(psi_vec.inner(phi_vec) == ExactScalar::zero());
    Syndrome expect = largest_four_syndrome(lat);
    for (const auto& [c, a] : phi_vec.amplitudes()) CHECK(syndrome_of(lat, c) == expect);

    CHECK(matrix_element(psi, LocalOperator::identity(), psi) == ExactScalar::one());
    CHECK(matrix_element(phi, LocalOperator::identity(), phi) == ExactScalar::one());
    CHECK(matrix_element(phi, LocalOperator::identity(), psi) == ExactScalar::zero());
}

TEST_CASE("phi needs generation 2") {
    Lattice g1 = Lattice::build(1);
    CHECK_THROWS_AS(make_phi_state(g1), UnsupportedGenerationError);
}

TEST_CASE("counting sweep rejects oversized supports") {
    Lattice lat = Lattice::build(3);
    CosetState psi = make_psi_state(lat);
    std::vector<VertexId> big;
    for (VertexId v = 0; v < 17; ++v) big.push_back(v);
    LocalOperator op = LocalOperator::dyad(big, 0, 0);
    CHECK_THROWS_AS(matrix_element(psi, op, psi), ResourceLimitError);
}

TEST_CASE("single-qudit expectations: 1/4 diagonal, 0 off-diagonal") {
    for (int g : {2, 3}) {
        Lattice lat = Lattice::build(g);
        CosetState psi = make_psi_state(lat);
        for (VertexId i : {(VertexId)0, (VertexId)(lat.vertex_count() / 2),
                           (VertexId)(lat.vertex_count() - 1)}) {
            ExactScalar total = ExactScalar::zero();
            for (int a = 0; a < 4; ++a) {
                ExactScalar diag = matrix_element(psi, LocalOperator::dyad({i}, a, a), psi);
                CHECK(diag == ExactScalar::pow2(-2));
                total += diag;
                for (int b = 0; b < 4; ++b)
                    if (b != a)
                        CHECK(matrix_element(psi, LocalOperator::dyad({i}, b, a), psi).is_zero());
            }
            CHECK(total == ExactScalar::one());
        }
    }
}

TEST_CASE("nonadjacent pair: 1/16 and zero connected correlation") {
    Lattice lat = Lattice::build(2);
    CosetState psi = make_psi_state(lat);
    VertexId i = 0, j = 4; // nonadjacent
    for (int a = 0; a < 4; ++a) {
        int abar = a ^ 1;
        LocalOperator di = LocalOperator::dyad({i}, a, a);
        LocalOperator dj = LocalOperator::dyad({j}, abar, abar);
        CHECK(matrix_element(psi, tensor_product(di, dj), psi) == ExactScalar::pow2(-4));
        CHECK(connected_correlation(psi, di, dj) == ExactScalar::zero());
    }
    // Overlapping supports are rejected.
    CHECK_THROWS_AS(
        connected_correlation(psi, LocalOperator::dyad({i}, 0, 0), LocalOperator::dyad({i}, 1, 1)),
        std::invalid_argument);
}

TEST_CASE("adjacent pair correlations: diagonal recorded, off-diagonal nonzero") {
    Lattice lat = Lattice::build(2);
    CosetState psi = make_psi_state(lat);
    // Vertices 0 and 1 share the first block edge. The diagonal pair value
    // comes out exactly 1/16 here, i.e. zero connected correlation even for
    // this adjacent pair (recorded as computed; nothing is claimed for it).
    LocalOperator a = LocalOperator::dyad({0}, 0, 0);
    LocalOperator b = LocalOperator::dyad({1}, 0, 0);
    CHECK(connected_correlation(psi, a, b) == ExactScalar::zero());
    // The genuinely nonzero adjacent correlation: dyads whose letter products
    // match the shared edge's gate pair flip the same two loops, so the joint
    // term survives while both single factors vanish.
    const Edge& e = lat.edges()[0];
    LocalOperator a2 = LocalOperator::dyad({e.u}, 0 ^ e.port_u, 0);
    LocalOperator b2 = LocalOperator::dyad({e.v}, 0 ^ e.port_v, 0);
    ExactScalar corr = connected_correlation(psi, a2, b2);
    CHECK(!corr.is_zero());
    CHECK(corr == ExactScalar::pow2(-4));
}

TEST_CASE("backend equivalence on supports up to size 3 at g <= 2") {
    for (int g : {1, 2}) {
        Lattice lat = Lattice::build(g);
        CosetState psi = make_psi_state(lat);
        SparseState psi_vec = SparseState::materialize(psi);
        // Deterministic set of supports: all singletons, a few pairs/triples.
        std::vector<std::vector<VertexId>> supports;
        for (VertexId v = 0; v < lat.vertex_count(); ++v) supports.push_back({v});
        supports.push_back({0, 1});
        supports.push_back({0, (VertexId)(lat.vertex_count() - 1)});
        if (lat.vertex_count() >= 9) {
            supports.push_back({0, 4, 8});
            supports.push_back({1, 3, 5});
        } else {
            supports.push_back({0, 1, 2});
        }
        for (const auto& sup : supports) {
            std::uint64_t n_tuples = 1;
            for (std::size_t k = 0; k < sup.size(); ++k) n_tuples *= 4;
            for (std::uint64_t in = 0; in < n_tuples; ++in)
                for (std::uint64_t out = 0; out < n_tuples; ++out) {
                    LocalOperator op = LocalOperator::dyad(sup, out, in);
                    CHECK(matrix_element(psi, op, psi) ==
                          matrix_element_explicit(psi_vec, op, psi_vec));
                }
        }
    }
}

TEST_CASE("apply_gates: involutions and T-invariance of psi") {
    Lattice lat = Lattice::build(2);
    SparseState psi_vec = SparseState::materialize(make_psi_state(lat));
    SUBCASE("S^1 twice is the identity") {
        auto once = apply_gates(psi_vec, {GatePlacement::single(3, s_gate(1))});
        auto twice = apply_gates(once, {GatePlacement::single(3, s_gate(1))});
        CHECK(twice == psi_vec);
        CHECK(!(once == psi_vec)); // S^1 alone moves the state off the coset
    }
    SUBCASE("every T gate fixes psi") {
        for (int ei = 0; ei < (int)lat.edges().size(); ++ei) {
            auto moved = apply_gates(psi_vec, {GatePlacement::edge(t_gate(lat, ei))});
            CHECK(moved == psi_vec);
        }
    }
}

TEST_CASE("half projector") {
    Lattice lat = Lattice::build(1);
    Configuration zero{0, 0, 0};
    SparseState start = SparseState::basis_state(zero);
    SUBCASE("one block edge on |000>") {
        SparseState out = apply_half_projector(start, lat, 0);
        CHECK(out.term_count() == 2);
        CHECK(out.amplitude(zero) == ExactScalar::sqrt2_pow(-1));
        // Edge 0 is (t,l): T = S^2 (x) S^3 sends 000 to 230.
        CHECK(out.amplitude({2, 3, 0}) == ExactScalar::sqrt2_pow(-1));
    }
    SUBCASE("applying the same edge twice equals sqrt2 times once") {
        SparseState once = apply_half_projector(start, lat, 0);
        SparseState twice = apply_half_projector(once, lat, 0);
        bool match = true;
        for (const auto& [c, a] : twice.amplitudes())
            match = match && (a == once.amplitude(c) * ExactScalar::sqrt2_pow(1));
        CHECK(match);
        CHECK(twice.term_count() == once.term_count());
    }
    SUBCASE("product over all edges lands on psi") {
        SparseState s = start;
        for (int ei = 0; ei < (int)lat.edges().size(); ++ei)
            s = apply_half_projector(s, lat, ei);
        SparseState psi_vec = SparseState::materialize(make_psi_state(lat));
        CHECK(s == psi_vec);
    }
}

TEST_CASE("coarse graining") {
    Lattice g2 = Lattice::build(2);
    Lattice g1 = Lattice::build(1);
    SUBCASE("psi(2) coarse-grains onto psi(1) with one uniform constant") {
        SparseState psi2 = SparseState::materialize(make_psi_state(g2));
        SparseState coarse = coarse_grain(psi2, g2);
        SparseState psi1 = SparseState::materialize(make_psi_state(g1));
        REQUIRE(coarse.term_count() == psi1.term_count());
        auto ratio_ref = coarse.uniform_amplitude();
        REQUIRE(ratio_ref.has_value());
        for (const auto& [c, a] : psi1.amplitudes()) CHECK(!coarse.amplitude(c).is_zero());
        // The constant: 512 fine solutions per coarse one, each contributing
        // (1/64) * (1/sqrt8)^3.
        CHECK(*ratio_ref == ExactScalar(512, 0, -6) * ExactScalar::sqrt2_pow(-9));
    }
    SUBCASE("one block-valid product state maps with weight (1/sqrt8)^3") {
        Configuration c{0, 0, 0, 1, 1, 1, 0, 2, 3}; // three valid block triples
        SparseState s = SparseState::basis_state(c);
        SparseState coarse = coarse_grain(s, g2);
        REQUIRE(coarse.term_count() == 1);
        CHECK(coarse.amplitude({0, 0, 0}) == ExactScalar::sqrt2_pow(-9));
    }
    SUBCASE("a block-invalid product state is annihilated") {
        Configuration c{0, 0, 2, 0, 0, 0, 0, 0, 0}; // first triple violates the block loop
        SparseState s = SparseState::basis_state(c);
        CHECK(coarse_grain(s, g2).term_count() == 0);
    }
}

TEST_CASE("block decomposition check at generation 2") {
    Lattice g2 = Lattice::build(2);
    auto report = block_decompose_check(g2);
    CHECK(report.pass);
    CHECK(report.coarse_configurations == 8);
    CHECK(report.gamma_tuples_per_coarse == 512);
    CHECK(report.total == 4096);

    // Negative control: corrupt the relabeling so two triples collide.
    CoarseTable corrupt = coarse_table();
    corrupt.gamma_of[corrupt.rows[0][1]] = corrupt.gamma_of[corrupt.rows[0][0]];
    auto bad = block_decompose_check(g2, corrupt);
    CHECK(!bad.pass);
}

TEST_CASE("operators touching the invalid block sector annihilate psi") {
    Lattice lat = Lattice::build(2);
    CosetState psi = make_psi_state(lat);
    std::vector<VertexId> block{0, 1, 2};
    // 002 and 013 violate the block loop; 000 satisfies it.
    std::uint64_t b1 = pack_tuple({0, 0, 2}), b2 = pack_tuple({0, 1, 3});
    std::uint64_t a1 = pack_tuple({0, 0, 0});
    for (auto [out, in] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
             {b1, b1}, {b1, b2}, {a1, b1}, {b1, a1}}) {
        CHECK(matrix_element(psi, LocalOperator::dyad(block, out, in), psi).is_zero());
    }
    // No solution contains an invalid block triple at all.
    CHECK(psi.system().count_with_assignment({{0, 0}, {1, 0}, {2, 2}}).is_zero());
}

TEST_CASE("s_product operators") {
    LocalOperator op = LocalOperator::s_product({{2, 1}, {5, 2}, {5, 3}});
    // S^2 S^3 at the same vertex collapse to S^1.
    REQUIRE(op.support == std::vector<VertexId>{2, 5});
    CHECK(op.entries.size() == 16);
    CHECK(op.entries.count({pack_tuple({1, 1}), pack_tuple({0, 0})}) == 1);
    LocalOperator cancel = LocalOperator::s_product({{3, 1}, {3, 1}});
    CHECK(cancel.support.empty());
    CHECK(cancel.entries.count({0, 0}) == 1);
}
