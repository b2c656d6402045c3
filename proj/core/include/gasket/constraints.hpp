#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gasket/gf2.hpp"
#include "gasket/lattice.hpp"
#include "gasket/letters.hpp"

namespace gasket {

/// One letter per vertex, in canonical vertex order.
using Configuration = std::vector<Letter>;

/// One parity bit per loop, in canonical loop order.
using Syndrome = std::vector<std::uint8_t>;

Syndrome zero_syndrome(const Lattice& lattice);
/// All-zero except the three laterals and the scale-g ring. Generation >= 2.
Syndrome largest_four_syndrome(const Lattice& lattice);

/// Per-loop red parity of a configuration.
Syndrome syndrome_of(const Lattice& lattice, const Configuration& config);

/// Syndrome change of multiplying letter m_v into vertex v for each listed
/// pair: each m != 0 toggles the parities of the two loops carrying the
/// recolored sides (the sides != m).
Syndrome syndrome_shift(const Lattice& lattice,
                        const std::vector<std::pair<VertexId, Letter>>& letter_products);

/// Exact solution count, always zero or a power of two.
struct SolutionCount {
    bool consistent = false;
    int log2 = 0;

    bool is_zero() const { return !consistent; }
    std::uint64_t value_u64() const;
    std::string decimal() const;
    friend bool operator==(const SolutionCount&, const SolutionCount&) = default;
};

/// The loop parity constraints linearized over side bits: variables are the
/// 3 red/pink side bits of every vertex, checks are per-vertex even parity
/// plus one row per loop with the requested target parity.
class GF2System {
  public:
    GF2System(const Lattice& lattice, Syndrome target);

    const Lattice& lattice() const { return *lattice_; }
    const Syndrome& target() const { return target_; }
    bool consistent() const { return solve_.consistent; }
    int rank() const { return solve_.rank; }
    /// Dimension of the solution space (free variables minus rank).
    int nullity() const { return 3 * (int)lattice_->vertex_count() - solve_.rank; }

    SolutionCount count_solutions() const;
    /// Count of solutions agreeing with `fixed` on its vertices, computed by
    /// substitution and re-elimination, never by enumeration.
    SolutionCount count_with_assignment(const std::vector<std::pair<VertexId, Letter>>& fixed) const;

    /// Streams all solutions by a Gray-code walk over the nullspace basis;
    /// deterministic order. Throws ResourceLimitError when nullity > cap.
    void enumerate_solutions(const std::function<void(const Configuration&)>& emit,
                             int nullity_cap = 24) const;
    std::vector<Configuration> all_solutions(int nullity_cap = 24) const;

    /// Uniform sample, deterministic for a fixed seed (mt19937_64 driven).
    Configuration sample_solution(std::uint64_t seed) const;

  private:
    const Lattice* lattice_;
    Syndrome target_;
    GF2Matrix matrix_;
    GF2Solve solve_;
};

GF2System build_system(const Lattice& lattice, const Syndrome& target);

/// Side-bit layout helpers shared with the states layer.
inline int side_var(VertexId v, int side) { return 3 * (int)v + side - 1; }
BitVec config_to_bits(const Configuration& config);
Configuration bits_to_config(const BitVec& bits, VertexId n_vertices);

} // namespace gasket
