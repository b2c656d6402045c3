#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gasket/errors.hpp"

namespace gasket {

using VertexId = std::int32_t;

/// Port index is 1, 2 or 3. Side k of a vertex is the side opposite port k.
/// Port 1 is the "free" port (link edge or corner anchor), ports 2 and 3
/// attach to the two block edges: port 2 towards the cyclically next vertex
/// of the block (t -> l -> r -> t), port 3 towards the previous one.
constexpr int kPortFree = 1;

inline std::int64_t pow3(int g) {
    std::int64_t r = 1;
    while (g-- > 0) r *= 3;
    return r;
}

struct Edge {
    VertexId u = 0, v = 0;
    std::uint8_t port_u = 0, port_v = 0;
    /// 1 for block edges; for link edges, the generation of the sub-lattice
    /// whose assembly created the edge (2..g).
    std::uint8_t level = 1;
    bool is_link() const { return level >= 2; }
};

enum class LoopKind : std::uint8_t { Block, Ring, Lateral };

/// A loop is a closed chain of (vertex, side) incidences carrying one parity
/// constraint. Laterals are open vertex chains closed through the corner
/// anchors; their incidences are the real (vertex, side) pairs only.
struct Loop {
    LoopKind kind;
    /// Block: 1. Ring: the generation of the hole it bounds (2..g). Lateral: g.
    int scale;
    /// Block: block index. Ring: base vertex of its sub-lattice.
    /// Lateral: 0 = left (t..l), 1 = bottom (l..r), 2 = right (r..t).
    int label;
    std::vector<std::pair<VertexId, int>> incidences;
};

struct BuildOptions {
    int generation_cap = 12;
};

/// Generation-g Sierpinski gasket in the block-based variant: 3^g vertices,
/// three per smallest block, sub-lattices joined by single link edges.
/// Immutable after build; all queries are const.
class Lattice {
  public:
    static Lattice build(int generation, const BuildOptions& options = {});

    int generation() const { return generation_; }
    VertexId vertex_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Loop>& loops() const { return loops_; }
    const std::array<VertexId, 3>& corners() const { return corners_; }
    bool is_corner(VertexId v) const {
        return v == corners_[0] || v == corners_[1] || v == corners_[2];
    }

    int degree(VertexId v) const { return (int)neighbors_[v].size(); }
    /// Neighbors with the edge index leading to them, in canonical edge order.
    const std::vector<std::pair<VertexId, int>>& neighbors(VertexId v) const {
        return neighbors_[v];
    }
    /// Edge attached at (v, port), or -1 when the port carries a corner anchor.
    int edge_at_port(VertexId v, int port) const { return port_edge_[v][port - 1]; }
    /// Index of the unique loop through (v, side).
    int loop_at(VertexId v, int side) const { return loop_at_[v][side - 1]; }
    /// The three loop indices through v, by side 1..3.
    std::array<int, 3> loops_of(VertexId v) const {
        return {loop_at(v, 1), loop_at(v, 2), loop_at(v, 3)};
    }

    /// Address string: g trits, the first g-1 in {T,L,R}, the last in {t,l,r}.
    std::string address(VertexId v) const;
    VertexId vertex_from_address(const std::string& addr) const;

    /// BFS shortest-path length in the full graph.
    int distance(VertexId u, VertexId v) const;
    /// Max corner eccentricity; equals the full BFS diameter on this family
    /// (cross-checked against the all-pairs oracle in the test suite).
    int diameter() const { return diameter_; }
    /// Exhaustive all-source BFS diameter.
    int diameter_exhaustive() const;

    /// Max induced-subgraph distance over pairs of `subset`. Paths are
    /// confined to the subset; throws std::invalid_argument if disconnected.
    int subset_diameter(const std::vector<VertexId>& subset) const;

    /// Indices of the four largest loops: the 3 laterals plus the scale-g ring.
    std::array<int, 4> largest_four_loops() const;

    /// Enumerates every connected vertex subset with induced diameter
    /// <= max_diameter and size <= max_size, each exactly once, in a
    /// deterministic order. Subsets are emitted sorted ascending.
    void for_each_connected_subset(int max_diameter, int max_size,
                                   const std::function<void(const std::vector<VertexId>&)>& emit) const;

    /// Canonical textual dump used for reproducibility digests.
    std::string canonical_dump() const;

  private:
    int generation_ = 0;
    VertexId n_ = 0;
    int diameter_ = 0;
    std::vector<Edge> edges_;
    std::vector<Loop> loops_;
    std::array<VertexId, 3> corners_{};
    std::vector<std::vector<std::pair<VertexId, int>>> neighbors_;
    std::vector<std::array<int, 3>> port_edge_;
    std::vector<std::array<int, 3>> loop_at_;

    std::vector<int> bfs_from(VertexId source) const;
};

} // namespace gasket
