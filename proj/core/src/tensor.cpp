#include "gasket/tensor.hpp"

#include <stdexcept>

#include "gasket/errors.hpp"

namespace gasket {

SparseState contract_network(const Lattice& lattice) {
    if (lattice.generation() > 2)
        throw ResourceLimitError("dense virtual sweep is limited to generation 2");
    int n_edges = (int)lattice.edges().size();
    VertexId n = lattice.vertex_count();

    SparseState out;
    for (std::uint64_t assign = 0; assign < (1ULL << n_edges); ++assign) {
        Configuration config(n);
        for (VertexId v = 0; v < n; ++v) {
            int mask = 0;
            for (int port = 1; port <= 3; ++port) {
                int ei = lattice.edge_at_port(v, port);
                bool value = ei < 0 ? true : ((assign >> ei) & 1) != 0; // anchors carry |1>
                if (value) mask |= 1 << (port - 1);
            }
            config[v] = TensorA::letter_of(mask);
        }
        out.add(config, ExactScalar::one());
    }
    return out;
}

ExactScalar check_scale_invariance(PortConvention convention) {
    // Internal wiring of a block: three edges, each matching one port of a
    // vertex with one port of the next vertex around the block.
    // Standard: port 2 of each vertex meets port 3 of the next (t->l->r->t).
    struct Wire {
        int va, pa, vb, pb;
    };
    const Wire standard[3] = {{0, 2, 1, 3}, {1, 2, 2, 3}, {2, 2, 0, 3}};
    const Wire transposed[3] = {{0, 3, 1, 2}, {1, 3, 2, 2}, {2, 3, 0, 2}};
    const Wire* wires = convention == PortConvention::Standard ? standard : transposed;

    const CoarseTable& table = coarse_table();
    // counts[coarse][boundary mask]; boundary bit i = free (port 1) leg of
    // vertex i, which becomes coarse port i+1.
    long long counts[4][8] = {};
    for (int edges = 0; edges < 8; ++edges) {
        for (int boundary = 0; boundary < 8; ++boundary) {
            int mask[3] = {};
            for (int vtx = 0; vtx < 3; ++vtx)
                if ((boundary >> vtx) & 1) mask[vtx] |= 1; // port 1
            for (int w = 0; w < 3; ++w)
                if ((edges >> w) & 1) {
                    mask[wires[w].va] |= 1 << (wires[w].pa - 1);
                    mask[wires[w].vb] |= 1 << (wires[w].pb - 1);
                }
            int packed = pack_triple(TensorA::letter_of(mask[0]), TensorA::letter_of(mask[1]),
                                     TensorA::letter_of(mask[2]));
            if (table.coarse_of[packed] >= 0) counts[table.coarse_of[packed]][boundary] += 1;
        }
    }

    long long lambda_count = -1;
    for (int coarse = 0; coarse < 4; ++coarse) {
        int base = TensorA::base_pattern(coarse);
        for (int boundary = 0; boundary < 8; ++boundary) {
            bool in_support = TensorA::entry(coarse, boundary);
            long long c = counts[coarse][boundary];
            if (!in_support && c != 0)
                throw ConventionViolationError("coarse tensor support exceeds the pattern pair");
            if (in_support) {
                if (lambda_count < 0) lambda_count = c;
                if (c != lambda_count || c == 0)
                    throw ConventionViolationError("coarse tensor is not proportional entrywise");
            }
        }
        (void)base;
    }
    // lambda = count / sqrt(8)
    return ExactScalar(lambda_count, 0, 0) * ExactScalar::sqrt2_pow(-3);
}

} // namespace gasket
