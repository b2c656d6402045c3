#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gasket/states.hpp"

namespace gasket {

/// Product of single-qudit S gates, at most one per vertex, sorted by vertex.
struct SProduct {
    std::vector<std::pair<VertexId, int>> factors; // (vertex, superscript 1..3)
    int weight() const { return (int)factors.size(); }
};

struct FlipperQuery {
    Syndrome target;
    std::vector<VertexId> forbidden;
};

/// Finds an S-product whose net loop-parity flips equal the target syndrome,
/// supported outside the forbidden set. Each S^k at a vertex flips a known
/// loop pair, so this is a GF(2) solve over (vertex, superscript) columns.
/// Returns a minimum-weight solution for weights up to 3 (deterministic
/// tie-break by column order); beyond that, a Gaussian solution reduced
/// greedily over the nullspace. nullopt when no solution exists.
std::optional<SProduct> find_syndrome_flipper(const Lattice& lattice, const FlipperQuery& query);

/// The syndrome shift realized by an S-product.
Syndrome flipper_shift(const Lattice& lattice, const SProduct& product);

/// Applies an S-product to a configuration (letter-wise Klein multiplication).
Configuration apply_s_product(const Configuration& config, const SProduct& product);

struct DetectionFailure {
    std::vector<VertexId> support;
    std::uint64_t in_tuple = 0, out_tuple = 0;
    std::string kind; // "cross", "diag", "no-disjoint-flipper"
};

struct DetectionReport {
    int generation = 0;
    int diameter = 0;
    int diameter_bound = 0; // floor((3*diameter - 5) / 8)
    long long exhaustive_supports = 0;
    long long sampled_supports = 0;
    long long exhaustive_pairs = 0;
    long long sampled_pairs = 0;
    std::uint64_t seed = 0;
    std::string rng = "mt19937_64";
    std::vector<DetectionFailure> failures;
    bool negative_control_not_detected = false;
    SProduct negative_control_flipper;

    struct SupportRow {
        std::vector<VertexId> support;
        int diameter = 0;
        long long ops_checked = 0;
        long long failures = 0;
    };
    std::vector<SupportRow> rows;

    bool all_detected() const { return failures.empty(); }
};

/// Sweeps every connected support within the diameter bound: exhaustive over
/// supports up to max_exhaustive_size vertices (with the full dyad basis up
/// to 3-vertex supports and sampled dyads above), plus randomly grown larger
/// supports when any fit the bound. For each support and basis dyad E it
/// checks <psi|E|phi> = <phi|E|psi> = 0 and <E>_psi = <E>_phi exactly, and
/// that a syndrome flipper disjoint from the support exists.
DetectionReport error_detection_suite(const Lattice& lattice, int max_exhaustive_size,
                                      long long sample_budget, std::uint64_t seed,
                                      int threads = 1);

struct Rational64 {
    long long num = 0;
    long long den = 1;
    friend bool operator==(const Rational64&, const Rational64&) = default;
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

struct DepthBoundResult {
    Rational64 threshold;  // (16*P*L - 8*P + 5) / 3
    int min_generation;    // smallest g with 2^g - 1 >= threshold
    long long dj_cap;      // (2L - 1) * P
};
DepthBoundResult depth_bound(long long patch_size, long long layers);

struct DepthLowerBound {
    Rational64 bound;      // (3*D + 8*P - 5) / (16*P); layers must exceed it
    long long min_layers;  // smallest integer strictly above the bound
};
DepthLowerBound depth_lower_bound(long long diameter, long long patch_size);

struct CausalConeReport {
    long long starts = 0;
    long long cap = 0;
    int max_final_diameter = 0;
    bool ok = false;
    std::uint64_t seed = 0;
};
/// Grows supports the way an L-layer circuit of patch size P can: a random
/// diameter-<=P patch first, then P-balls per extra layer; verifies the final
/// induced diameter never exceeds (2L-1)*P.
CausalConeReport causal_cone_check(const Lattice& lattice, int patch_size, int layers,
                                   long long starts, std::uint64_t seed);

struct PrepareReport {
    SparseState state;
    bool equals_psi = false;
    long long support = 0;
};
/// Applies (1 + T_e)/sqrt(2) over every edge (canonical order) to |00...0>
/// and compares with the zero-syndrome coset state. Generation <= 2.
PrepareReport prepare_by_circuit(const Lattice& lattice);

struct ErgodicityReport {
    std::uint64_t orbit_size = 0;
    SolutionCount coset_size;
    bool orbit_equals_coset = false;
    bool all_zero_syndrome = false;
};
/// BFS over T-moves from |00...0>; the orbit must be the zero-syndrome coset.
ErgodicityReport ergodicity_check(const Lattice& lattice);

struct CanonicalizeResult {
    /// Two forms for lateral-free canonicalization (lexicographically smaller
    /// first); exactly one (the all-zero configuration) when laterals are
    /// respected. All non-corner letters are 0.
    std::vector<Configuration> forms;
    /// Edge indices whose T gates replay the input onto each form.
    std::vector<std::vector<int>> move_lists;
};
/// Recursive normal form under T moves: canonicalize the three sub-lattices
/// (two candidates each), keep the exactly-two combinations whose link pairs
/// are (0,0) or (1,1), clear the (1,1) pairs with the link T, recurse upward.
CanonicalizeResult canonicalize(const Lattice& lattice, const Configuration& config,
                                bool respect_laterals);

/// Replays a T-move list on a configuration.
Configuration apply_moves(const Lattice& lattice, Configuration config,
                          const std::vector<int>& moves);

/// Uniform sample over configurations satisfying every non-lateral loop
/// constraint (laterals left free); deterministic for a fixed seed.
Configuration sample_nonlateral_solution(const Lattice& lattice, std::uint64_t seed);

} // namespace gasket
