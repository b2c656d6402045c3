#include "gasket/constraints.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <random>
#include <stdexcept>

#include "gasket/errors.hpp"

namespace gasket {

Syndrome zero_syndrome(const Lattice& lattice) {
    return Syndrome(lattice.loops().size(), 0);
}

Syndrome largest_four_syndrome(const Lattice& lattice) {
    Syndrome s = zero_syndrome(lattice);
    for (int li : lattice.largest_four_loops()) s[li] = 1;
    return s;
}

Syndrome syndrome_of(const Lattice& lattice, const Configuration& config) {
    if ((VertexId)config.size() != lattice.vertex_count())
        throw std::invalid_argument("configuration length mismatch");
    Syndrome s = zero_syndrome(lattice);
    for (VertexId v = 0; v < lattice.vertex_count(); ++v) {
        Letter a = config[v];
        if (a == 0) continue;
        for (int side = 1; side <= 3; ++side)
            if (side != a) s[lattice.loop_at(v, side)] ^= 1;
    }
    return s;
}

Syndrome syndrome_shift(const Lattice& lattice,
                        const std::vector<std::pair<VertexId, Letter>>& letter_products) {
    Syndrome s = zero_syndrome(lattice);
    for (auto [v, m] : letter_products) {
        if (m == 0) continue;
        for (int side = 1; side <= 3; ++side)
            if (side != m) s[lattice.loop_at(v, side)] ^= 1;
    }
    return s;
}

std::uint64_t SolutionCount::value_u64() const {
    if (!consistent) return 0;
    if (log2 > 63) throw std::overflow_error("count does not fit in 64 bits");
    return 1ULL << log2;
}

std::string SolutionCount::decimal() const {
    if (!consistent) return "0";
    boost::multiprecision::cpp_int v = 1;
    v <<= log2;
    return v.str();
}

GF2System::GF2System(const Lattice& lattice, Syndrome target)
    : lattice_(&lattice), target_(std::move(target)), matrix_(3 * (int)lattice.vertex_count()) {
    if (target_.size() != lattice.loops().size())
        throw std::invalid_argument("syndrome length must equal the loop count");
    for (VertexId v = 0; v < lattice.vertex_count(); ++v) {
        BitVec row(matrix_.cols());
        for (int side = 1; side <= 3; ++side) row.set(side_var(v, side));
        matrix_.add_row(std::move(row), false);
    }
    for (std::size_t li = 0; li < lattice.loops().size(); ++li) {
        BitVec row(matrix_.cols());
        for (auto [v, side] : lattice.loops()[li].incidences) row.set(side_var(v, side));
        matrix_.add_row(std::move(row), target_[li] != 0);
    }
    solve_ = matrix_.solve();
}

GF2System build_system(const Lattice& lattice, const Syndrome& target) {
    return GF2System(lattice, target);
}

SolutionCount GF2System::count_solutions() const {
    if (!solve_.consistent) return {false, 0};
    return {true, nullity()};
}

SolutionCount GF2System::count_with_assignment(
    const std::vector<std::pair<VertexId, Letter>>& fixed) const {
    BitVec fixed_mask(matrix_.cols());
    BitVec fixed_values(matrix_.cols());
    int n_fixed = 0;
    std::vector<char> seen(lattice_->vertex_count(), 0);
    for (auto [v, letter] : fixed) {
        if (v < 0 || v >= lattice_->vertex_count()) throw std::invalid_argument("vertex out of range");
        if (seen[v]) throw std::invalid_argument("vertex fixed twice");
        seen[v] = 1;
        ++n_fixed;
        for (int side = 1; side <= 3; ++side) {
            fixed_mask.set(side_var(v, side));
            if (side_is_red(letter, side)) fixed_values.set(side_var(v, side));
        }
    }
    GF2Matrix reduced(matrix_.cols());
    for (int i = 0; i < matrix_.row_count(); ++i) {
        BitVec row = matrix_.row(i);
        bool rhs = matrix_.rhs(i) ^ parity_and(row, fixed_values);
        row.and_not(fixed_mask);
        reduced.add_row(std::move(row), rhs);
    }
    auto rr = reduced.rank();
    if (!rr.consistent) return {false, 0};
    int free_vars = 3 * ((int)lattice_->vertex_count() - n_fixed);
    return {true, free_vars - rr.rank};
}

void GF2System::enumerate_solutions(const std::function<void(const Configuration&)>& emit,
                                    int nullity_cap) const {
    if (!solve_.consistent) return;
    int k = nullity();
    if (k > nullity_cap)
        throw ResourceLimitError("nullity " + std::to_string(k) + " exceeds enumeration cap " +
                                 std::to_string(nullity_cap));
    BitVec x = solve_.particular;
    VertexId n = lattice_->vertex_count();
    emit(bits_to_config(x, n));
    // Reflected Gray code: step i flips basis vector ctz(i).
    for (std::uint64_t i = 1; i < (1ULL << k); ++i) {
        x ^= solve_.nullspace[__builtin_ctzll(i)];
        emit(bits_to_config(x, n));
    }
}

std::vector<Configuration> GF2System::all_solutions(int nullity_cap) const {
    std::vector<Configuration> out;
    enumerate_solutions([&](const Configuration& c) { out.push_back(c); }, nullity_cap);
    return out;
}

Configuration GF2System::sample_solution(std::uint64_t seed) const {
    if (!solve_.consistent) throw NoSolutionError("system is inconsistent");
    std::mt19937_64 rng(seed);
    BitVec x = solve_.particular;
    for (const BitVec& b : solve_.nullspace)
        if (rng() & 1) x ^= b;
    return bits_to_config(x, lattice_->vertex_count());
}

BitVec config_to_bits(const Configuration& config) {
    BitVec bits(3 * (int)config.size());
    for (std::size_t v = 0; v < config.size(); ++v)
        for (int side = 1; side <= 3; ++side)
            if (side_is_red(config[v], side)) bits.set(side_var((VertexId)v, side));
    return bits;
}

Configuration bits_to_config(const BitVec& bits, VertexId n_vertices) {
    Configuration config(n_vertices, 0);
    for (VertexId v = 0; v < n_vertices; ++v) {
        int reds[3], n_red = 0;
        for (int side = 1; side <= 3; ++side)
            if (bits.get(side_var(v, side))) reds[n_red++] = side;
        if (n_red == 0)
            config[v] = 0;
        else if (n_red == 2)
            config[v] = (Letter)letter_from_red_pair(reds[0], reds[1]);
        else
            throw std::logic_error("side bits violate per-vertex parity");
    }
    return config;
}

} // namespace gasket
