#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gasket/constraints.hpp"
#include "gasket/scalar.hpp"

namespace gasket {

/// Uniform superposition over every configuration with a fixed syndrome,
/// each with amplitude 1/sqrt(M). Represented by its constraint system, so
/// it scales to generations where the explicit vector cannot be stored.
class CosetState {
  public:
    CosetState(const Lattice& lattice, Syndrome target);

    const Lattice& lattice() const { return system_.lattice(); }
    const Syndrome& syndrome() const { return system_.target(); }
    const GF2System& system() const { return system_; }
    /// M = 2^log2_size().
    int log2_size() const { return system_.nullity(); }
    SolutionCount size() const { return system_.count_solutions(); }

  private:
    GF2System system_;
};

/// The zero-syndrome state: every loop holds an even number of red sides.
CosetState make_psi_state(const Lattice& lattice);
/// The coset with the opposite constraint on the four largest loops
/// (the three laterals and the scale-g ring). Requires generation >= 2.
CosetState make_phi_state(const Lattice& lattice);

/// Operator with finite support, stored as an exact matrix indexed by letter
/// tuples on the support (tuples packed base-4 in support order).
struct LocalOperator {
    std::vector<VertexId> support; // sorted, distinct
    std::map<std::pair<std::uint64_t, std::uint64_t>, ExactScalar> entries; // (out, in)

    static LocalOperator identity();
    static LocalOperator dyad(std::vector<VertexId> support, std::uint64_t out_tuple,
                              std::uint64_t in_tuple, ExactScalar value = ExactScalar::one());
    /// Product of single-qudit S gates, one per listed (vertex, superscript).
    static LocalOperator s_product(const std::vector<std::pair<VertexId, int>>& factors);
};

std::uint64_t pack_tuple(const std::vector<Letter>& letters);
std::vector<Letter> unpack_tuple(std::uint64_t packed, int size);

/// Tensor product of operators with disjoint supports.
LocalOperator tensor_product(const LocalOperator& a, const LocalOperator& b);

/// Exact <bra|op|ket> via counting: for each matrix entry, the in-tuple fixes
/// letters on the support, the out-tuple shifts the syndrome, and the count
/// of ket-solutions landing in the bra coset is read off the reduced system.
ExactScalar matrix_element(const CosetState& bra, const LocalOperator& op, const CosetState& ket);

/// <A B>_psi - <A>_psi <B>_psi for disjoint supports.
ExactScalar connected_correlation(const CosetState& psi, const LocalOperator& a,
                                  const LocalOperator& b);

/// Explicit sparse state vector with exact amplitudes; ground truth backend
/// for small generations.
class SparseState {
  public:
    SparseState() = default;

    static SparseState basis_state(const Configuration& config);
    /// Enumerates the coset; amplitude 1/sqrt(M) each.
    static SparseState materialize(const CosetState& state, int nullity_cap = 24);

    const std::map<Configuration, ExactScalar>& amplitudes() const { return amps_; }
    std::size_t term_count() const { return amps_.size(); }
    ExactScalar amplitude(const Configuration& config) const;
    void add(const Configuration& config, const ExactScalar& delta);

    ExactScalar inner(const SparseState& other) const; // all scalars are real
    /// The common amplitude when every stored amplitude is equal.
    std::optional<ExactScalar> uniform_amplitude() const;

    friend bool operator==(const SparseState& a, const SparseState& b) {
        return a.amps_ == b.amps_;
    }

  private:
    std::map<Configuration, ExactScalar> amps_;
};

struct GatePlacement {
    std::vector<VertexId> sites; // size 1 or 2
    GateTable1 g1{};
    GateTable2 g2{};
    static GatePlacement single(VertexId v, const GateTable1& g) { return {{v}, g, {}}; }
    static GatePlacement on_pair(VertexId u, VertexId v, const GateTable2& g) {
        return {{u, v}, {}, g};
    }
    static GatePlacement edge(const EdgeGate& g) { return on_pair(g.u, g.v, g.table); }
};

/// Applies permutation gates by configuration rewriting; sparsity is preserved.
SparseState apply_gates(const SparseState& state, const std::vector<GatePlacement>& gates);

/// Applies (1 + T_e)/sqrt(2) as a linear (non-unitary) map.
SparseState apply_half_projector(const SparseState& state, const Lattice& lattice, int edge_index);

/// Per-block coarse graining: block-valid triples map to their coarse letter
/// with weight 1/sqrt(8); the remaining triples annihilate the term. The
/// result lives on the generation-(g-1) lattice (blocks become vertices).
SparseState coarse_grain(const SparseState& state, const Lattice& lattice,
                         const CoarseTable& table = coarse_table());

/// Explicit-backend matrix element (for cross-checking the counting backend).
ExactScalar matrix_element_explicit(const SparseState& bra, const LocalOperator& op,
                                    const SparseState& ket);

/// Verifies that relabeling every solution by (coarse letter, gamma) per block
/// factorizes the generation-2 zero-syndrome coset into
/// {coarse configuration} x {gamma tuple} with every gamma tuple appearing
/// exactly once per coarse configuration.
struct BlockDecomposeReport {
    bool pass = false;
    int coarse_configurations = 0;
    int gamma_tuples_per_coarse = 0;
    long long total = 0;
    std::string failure;
};
BlockDecomposeReport block_decompose_check(const Lattice& lattice,
                                           const CoarseTable& table = coarse_table());

} // namespace gasket
