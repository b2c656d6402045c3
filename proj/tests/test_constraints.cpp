#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "gasket/constraints.hpp"
#include "gasket/errors.hpp"

using namespace gasket;

namespace {

// Independent oracle: enumerate every letter assignment, compute loop
// parities straight from the loop incidence lists, keep matching ones.
std::set<Configuration> brute_force(const Lattice& lat, const Syndrome& target) {
    std::set<Configuration> out;
    VertexId n = lat.vertex_count();
    REQUIRE(n <= 9);
    std::uint64_t total = 1;
    for (VertexId i = 0; i < n; ++i) total *= 4;
    for (std::uint64_t x = 0; x < total; ++x) {
        Configuration c(n);
        std::uint64_t t = x;
        for (VertexId i = 0; i < n; ++i) {
            c[i] = (Letter)(t % 4);
            t /= 4;
        }
        Syndrome s(lat.loops().size(), 0);
        for (std::size_t li = 0; li < lat.loops().size(); ++li)
            for (auto [v, side] : lat.loops()[li].incidences)
                s[li] ^= side_is_red(c[v], side) ? 1 : 0;
        if (s == target) out.insert(c);
    }
    return out;
}

} // namespace

TEST_CASE("generation 1 zero-syndrome solutions are the eight pinned triples") {
    Lattice lat = Lattice::build(1);
    auto oracle = brute_force(lat, zero_syndrome(lat));
    std::set<Configuration> expected = {
        {0, 0, 0}, {1, 1, 1}, {0, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 0}, {3, 0, 2}, {3, 2, 1}};
    CHECK(oracle == expected);

    GF2System sys(lat, zero_syndrome(lat));
    CHECK(sys.count_solutions() == SolutionCount{true, 3});
    auto sols = sys.all_solutions();
    CHECK(std::set<Configuration>(sols.begin(), sols.end()) == expected);
}

TEST_CASE("generation 2 zero-syndrome count is 4096, against brute force") {
    Lattice lat = Lattice::build(2);
    GF2System sys(lat, zero_syndrome(lat));
    CHECK(sys.count_solutions().value_u64() == 4096);
    auto oracle = brute_force(lat, zero_syndrome(lat));
    CHECK(oracle.size() == 4096);
    auto sols = sys.all_solutions();
    CHECK(sols.size() == 4096);
    for (const auto& c : sols) CHECK(oracle.count(c) == 1);
}

TEST_CASE("syndrome sectors in the image are equal-size cosets") {
    Lattice lat = Lattice::build(2);
    // The sum of all loop parities of any configuration is even (each side
    // lies in exactly one loop and per-vertex red counts are even), so a
    // single flipped loop is outside the syndrome image...
    Syndrome odd = zero_syndrome(lat);
    odd[0] = 1;
    GF2System sys_odd(lat, odd);
    CHECK(sys_odd.count_solutions().is_zero());
    CHECK(brute_force(lat, odd).empty());
    // ...while every even-weight target carries a full-size coset.
    Syndrome even = zero_syndrome(lat);
    even[0] = even[1] = 1; // two block loops
    GF2System sys_even(lat, even);
    CHECK(sys_even.count_solutions().value_u64() == 4096);
    CHECK(brute_force(lat, even).size() == 4096);
    for (const auto& c : sys_even.all_solutions()) CHECK(syndrome_of(lat, c) == even);
}

TEST_CASE("inconsistent targets count zero") {
    // The loop rows sum to zero over the per-vertex-even subspace, so a
    // target with odd total weight is outside the syndrome image.
    Lattice lat = Lattice::build(1);
    Syndrome target = zero_syndrome(lat);
    target[1] = 1; // a single lateral
    GF2System sys(lat, target);
    CHECK(sys.count_solutions().is_zero());
    CHECK(sys.count_solutions().decimal() == "0");
    CHECK(brute_force(lat, target).empty());
    CHECK_THROWS_AS(sys.sample_solution(1), NoSolutionError);
}

TEST_CASE("count_with_assignment") {
    Lattice lat = Lattice::build(2);
    GF2System sys(lat, zero_syndrome(lat));
    SUBCASE("one vertex fixed: M/4") {
        for (VertexId v : {0, 4, 8})
            for (int a = 0; a < 4; ++a)
                CHECK(sys.count_with_assignment({{v, (Letter)a}}).value_u64() == 1024);
    }
    SUBCASE("two nonadjacent vertices fixed: M/16") {
        // vertices 0 (T.t) and 4 (L.l) are nonadjacent
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                CHECK(sys.count_with_assignment({{0, (Letter)a}, {4, (Letter)b}}).value_u64() ==
                      256);
    }
    SUBCASE("fixing all vertices to a known solution: 1") {
        Configuration sol = sys.sample_solution(42);
        std::vector<std::pair<VertexId, Letter>> all;
        for (VertexId v = 0; v < lat.vertex_count(); ++v) all.push_back({v, sol[v]});
        CHECK(sys.count_with_assignment(all).value_u64() == 1);
        // And a non-solution fixes to zero.
        Configuration bad = sol;
        bad[0] = (Letter)(bad[0] ^ 1);
        std::vector<std::pair<VertexId, Letter>> allbad;
        for (VertexId v = 0; v < lat.vertex_count(); ++v) allbad.push_back({v, bad[v]});
        CHECK(sys.count_with_assignment(allbad).is_zero());
    }
    SUBCASE("summing over the four letters restores M") {
        std::uint64_t total = 0;
        for (int a = 0; a < 4; ++a)
            total += sys.count_with_assignment({{3, (Letter)a}}).value_u64();
        CHECK(total == sys.count_solutions().value_u64());
    }
    SUBCASE("brute-force cross-check of a fixed count") {
        auto oracle = brute_force(lat, zero_syndrome(lat));
        for (int a = 0; a < 4; ++a) {
            std::uint64_t n = 0;
            for (const auto& c : oracle) n += c[5] == a;
            CHECK(n == sys.count_with_assignment({{5, (Letter)a}}).value_u64());
        }
    }
}

TEST_CASE("enumeration determinism and caps") {
    Lattice lat = Lattice::build(2);
    GF2System sys(lat, zero_syndrome(lat));
    auto a = sys.all_solutions();
    auto b = sys.all_solutions();
    CHECK(a == b);
    CHECK_THROWS_AS(sys.all_solutions(10), ResourceLimitError);

    Lattice g3 = Lattice::build(3);
    GF2System sys3(g3, zero_syndrome(g3));
    CHECK(sys3.nullity() == 39);
    CHECK_THROWS_AS(sys3.all_solutions(), ResourceLimitError);
    CHECK(sys3.count_solutions().decimal() == "549755813888"); // 2^39
}

TEST_CASE("sampling is uniform-support, deterministic, and in-coset") {
    Lattice lat = Lattice::build(2);
    GF2System sys(lat, zero_syndrome(lat));
    auto sols = sys.all_solutions();
    std::set<Configuration> members(sols.begin(), sols.end());
    CHECK(sys.sample_solution(7) == sys.sample_solution(7));
    std::set<Configuration> seen;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        Configuration c = sys.sample_solution(seed);
        CHECK(members.count(c) == 1);
        seen.insert(c);
    }
    CHECK(seen.size() > 3000); // well spread over the 4096-element coset

    Lattice g3 = Lattice::build(3);
    GF2System sys3(g3, zero_syndrome(g3));
    Configuration c = sys3.sample_solution(7);
    CHECK(syndrome_of(g3, c) == zero_syndrome(g3));
}

TEST_CASE("syndrome_of") {
    Lattice lat = Lattice::build(1);
    CHECK(syndrome_of(lat, {0, 0, 0}) == zero_syndrome(lat));
    // Letter 1 on the r vertex flips the loops carrying its sides 2 and 3.
    Syndrome s = syndrome_of(lat, {0, 0, 1});
    Syndrome expected = zero_syndrome(lat);
    expected[lat.loop_at(2, 2)] ^= 1;
    expected[lat.loop_at(2, 3)] ^= 1;
    CHECK(s == expected);
    CHECK_THROWS_AS(syndrome_of(lat, {0, 0}), std::invalid_argument);
}

TEST_CASE("single-letter flips touch exactly two loops") {
    Lattice lat = Lattice::build(3);
    for (VertexId v = 0; v < lat.vertex_count(); ++v)
        for (int m = 1; m < 4; ++m) {
            Syndrome s = syndrome_shift(lat, {{v, (Letter)m}});
            int weight = 0;
            for (auto bit : s) weight += bit;
            CHECK(weight == 2);
        }
}

TEST_CASE("loop-row dependency and the coset-size formula, g <= 6") {
    for (int g = 1; g <= 6; ++g) {
        Lattice lat = Lattice::build(g);
        GF2System sys(lat, zero_syndrome(lat));
        long long n = pow3(g);
        long long loops = (long long)lat.loops().size();
        // rank = vertex rows + loop rows - 1 (the single global dependency)
        CHECK(sys.rank() == n + loops - 1);
        CHECK(sys.nullity() == 2 * n - loops + 1);
        CHECK(sys.consistent());
    }
}

TEST_CASE("system validation") {
    Lattice lat = Lattice::build(2);
    CHECK_THROWS_AS(GF2System(lat, Syndrome(3, 0)), std::invalid_argument);
    GF2System sys(lat, zero_syndrome(lat));
    CHECK_THROWS_AS(sys.count_with_assignment({{0, 0}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(sys.count_with_assignment({{99, 0}}), std::invalid_argument);
}
