#include "gasket/lattice.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace gasket {

namespace {

// Lateral chains between two corners of a sub-lattice, listed from the first
// corner to the second. Within a block (t,l,r) = (base+0, base+1, base+2):
// the t->l lateral touches side 3 of t and side 2 of l, and cyclically for
// the other two. Joining sub-lattices concatenates the chains of the two
// sub-lattices that carry the corners.
enum class Lat { TL = 0, LR = 1, RT = 2 };

void lateral_chain(VertexId base, int gen, Lat which,
                   std::vector<std::pair<VertexId, int>>& out) {
    if (gen == 1) {
        switch (which) {
            case Lat::TL: out.push_back({base + 0, 3}); out.push_back({base + 1, 2}); break;
            case Lat::LR: out.push_back({base + 1, 3}); out.push_back({base + 2, 2}); break;
            case Lat::RT: out.push_back({base + 2, 3}); out.push_back({base + 0, 2}); break;
        }
        return;
    }
    VertexId m = (VertexId)pow3(gen - 1);
    switch (which) {
        case Lat::TL:
            lateral_chain(base, gen - 1, Lat::TL, out);
            lateral_chain(base + m, gen - 1, Lat::TL, out);
            break;
        case Lat::LR:
            lateral_chain(base + m, gen - 1, Lat::LR, out);
            lateral_chain(base + 2 * m, gen - 1, Lat::LR, out);
            break;
        case Lat::RT:
            lateral_chain(base + 2 * m, gen - 1, Lat::RT, out);
            lateral_chain(base, gen - 1, Lat::RT, out);
            break;
    }
}

// The ring bounding the central hole of a generation-`gen` sub-lattice.
// For gen 1 this is the block loop (side 1 of all three vertices).
std::vector<std::pair<VertexId, int>> ring_chain(VertexId base, int gen) {
    std::vector<std::pair<VertexId, int>> out;
    if (gen == 1) {
        out = {{base + 0, 1}, {base + 1, 1}, {base + 2, 1}};
        return out;
    }
    VertexId m = (VertexId)pow3(gen - 1);
    lateral_chain(base, gen - 1, Lat::LR, out);          // bottom of sub-T
    lateral_chain(base + 2 * m, gen - 1, Lat::TL, out);  // left of sub-R
    lateral_chain(base + m, gen - 1, Lat::RT, out);      // right of sub-L
    return out;
}

} // namespace

Lattice Lattice::build(int generation, const BuildOptions& options) {
    if (generation < 1) throw std::invalid_argument("generation must be >= 1");
    if (generation > options.generation_cap)
        throw ResourceLimitError("generation " + std::to_string(generation) +
                                 " exceeds cap " + std::to_string(options.generation_cap));

    Lattice lat;
    lat.generation_ = generation;
    lat.n_ = (VertexId)pow3(generation);
    lat.corners_ = {0, (lat.n_ - 1) / 2, lat.n_ - 1};

    // Block edges, three per block: (t,l), (l,r), (r,t); port 2 on the first
    // endpoint, port 3 on the second.
    VertexId n_blocks = lat.n_ / 3;
    for (VertexId b = 0; b < n_blocks; ++b) {
        VertexId t = 3 * b, l = 3 * b + 1, r = 3 * b + 2;
        lat.edges_.push_back({t, l, 2, 3, 1});
        lat.edges_.push_back({l, r, 2, 3, 1});
        lat.edges_.push_back({r, t, 2, 3, 1});
    }
    // Link edges joining the free ports of sub-lattice corners, level = the
    // generation of the assembled sub-lattice.
    for (int level = 2; level <= generation; ++level) {
        VertexId n = (VertexId)pow3(level), m = n / 3;
        for (VertexId base = 0; base < lat.n_; base += n) {
            VertexId t_l = base + (m - 1) / 2;      // corner_l of sub-T
            VertexId t_r = base + m - 1;            // corner_r of sub-T
            VertexId l_t = base + m;                // corner_t of sub-L
            VertexId l_r = base + 2 * m - 1;        // corner_r of sub-L
            VertexId r_t = base + 2 * m;            // corner_t of sub-R
            VertexId r_l = base + 2 * m + (m - 1) / 2; // corner_l of sub-R
            lat.edges_.push_back({t_l, l_t, 1, 1, (std::uint8_t)level});
            lat.edges_.push_back({t_r, r_t, 1, 1, (std::uint8_t)level});
            lat.edges_.push_back({l_r, r_l, 1, 1, (std::uint8_t)level});
        }
    }

    lat.neighbors_.assign(lat.n_, {});
    lat.port_edge_.assign(lat.n_, {-1, -1, -1});
    for (int ei = 0; ei < (int)lat.edges_.size(); ++ei) {
        const Edge& e = lat.edges_[ei];
        lat.neighbors_[e.u].push_back({e.v, ei});
        lat.neighbors_[e.v].push_back({e.u, ei});
        if (lat.port_edge_[e.u][e.port_u - 1] != -1 || lat.port_edge_[e.v][e.port_v - 1] != -1)
            throw std::logic_error("port wired twice");
        lat.port_edge_[e.u][e.port_u - 1] = ei;
        lat.port_edge_[e.v][e.port_v - 1] = ei;
    }

    // Loops in canonical order: block loops, rings by (scale, base), laterals.
    for (VertexId b = 0; b < n_blocks; ++b)
        lat.loops_.push_back({LoopKind::Block, 1, (int)b, ring_chain(3 * b, 1)});
    for (int s = 2; s <= generation; ++s) {
        VertexId n = (VertexId)pow3(s);
        for (VertexId base = 0; base < lat.n_; base += n)
            lat.loops_.push_back({LoopKind::Ring, s, (int)base, ring_chain(base, s)});
    }
    for (int which = 0; which < 3; ++which) {
        std::vector<std::pair<VertexId, int>> chain;
        lateral_chain(0, generation, (Lat)which, chain);
        lat.loops_.push_back({LoopKind::Lateral, generation, which, std::move(chain)});
    }

    lat.loop_at_.assign(lat.n_, {-1, -1, -1});
    for (int li = 0; li < (int)lat.loops_.size(); ++li) {
        for (auto [v, side] : lat.loops_[li].incidences) {
            if (lat.loop_at_[v][side - 1] != -1)
                throw std::logic_error("vertex side covered by two loops");
            lat.loop_at_[v][side - 1] = li;
        }
    }
    for (VertexId v = 0; v < lat.n_; ++v)
        for (int s = 0; s < 3; ++s)
            if (lat.loop_at_[v][s] == -1) throw std::logic_error("vertex side not on any loop");

    int d = 0;
    for (VertexId c : lat.corners_) {
        auto dist = lat.bfs_from(c);
        d = std::max(d, *std::max_element(dist.begin(), dist.end()));
    }
    lat.diameter_ = d;
    return lat;
}

std::string Lattice::address(VertexId v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("vertex out of range");
    std::string s(generation_, '?');
    VertexId x = v;
    for (int i = generation_ - 1; i >= 0; --i) {
        int trit = x % 3;
        x /= 3;
        s[i] = (i == generation_ - 1) ? "tlr"[trit] : "TLR"[trit];
    }
    return s;
}

VertexId Lattice::vertex_from_address(const std::string& addr) const {
    if ((int)addr.size() != generation_) throw std::invalid_argument("address length mismatch");
    VertexId v = 0;
    for (int i = 0; i < generation_; ++i) {
        const char* alphabet = (i == generation_ - 1) ? "tlr" : "TLR";
        const char* p = std::char_traits<char>::find(alphabet, 3, addr[i]);
        if (!p) throw std::invalid_argument("bad address trit: " + addr);
        v = v * 3 + (VertexId)(p - alphabet);
    }
    return v;
}

std::vector<int> Lattice::bfs_from(VertexId source) const {
    std::vector<int> dist(n_, -1);
    std::queue<VertexId> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        VertexId u = q.front();
        q.pop();
        for (auto [w, ei] : neighbors_[u]) {
            if (dist[w] == -1) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

int Lattice::distance(VertexId u, VertexId v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) throw std::invalid_argument("vertex out of range");
    if (u == v) return 0;
    return bfs_from(u)[v];
}

int Lattice::diameter_exhaustive() const {
    int d = 0;
    for (VertexId v = 0; v < n_; ++v) {
        auto dist = bfs_from(v);
        d = std::max(d, *std::max_element(dist.begin(), dist.end()));
    }
    return d;
}

int Lattice::subset_diameter(const std::vector<VertexId>& subset) const {
    if (subset.empty()) throw std::invalid_argument("subset must be nonempty");
    std::vector<VertexId> vs = subset;
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    std::vector<char> in(n_, 0);
    for (VertexId v : vs) {
        if (v < 0 || v >= n_) throw std::invalid_argument("vertex out of range");
        in[v] = 1;
    }
    // BFS confined to the subset, from every member.
    int diam = 0;
    std::vector<int> dist(n_);
    for (VertexId src : vs) {
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<VertexId> q;
        dist[src] = 0;
        q.push(src);
        int reached = 1;
        while (!q.empty()) {
            VertexId u = q.front();
            q.pop();
            diam = std::max(diam, dist[u]);
            for (auto [w, ei] : neighbors_[u])
                if (in[w] && dist[w] == -1) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                    ++reached;
                }
        }
        if (reached != (int)vs.size())
            throw std::invalid_argument("subset is disconnected in the induced subgraph");
    }
    return diam;
}

std::array<int, 4> Lattice::largest_four_loops() const {
    if (generation_ < 2)
        throw UnsupportedGenerationError("no ring exists at generation 1");
    // Canonical order puts the scale-g ring, then the three laterals, last.
    int n = (int)loops_.size();
    return {n - 4, n - 3, n - 2, n - 1};
}

void Lattice::for_each_connected_subset(
    int max_diameter, int max_size,
    const std::function<void(const std::vector<VertexId>&)>& emit) const {
    if (max_diameter < 0) throw std::invalid_argument("max_diameter must be >= 0");
    if (max_size < 1) return;

    // ESU-style enumeration: subsets rooted at their minimum vertex, grown
    // through exclusive neighborhoods so every connected subset appears once.
    // Candidates are restricted to the graph ball around the root: induced
    // distance dominates graph distance, so this prune is sound. The diameter
    // filter itself cannot prune recursion (adding a vertex may shorten
    // induced paths), so it is applied per emitted subset.
    std::vector<char> in_ball(n_);
    std::vector<char> seen(n_, 0);
    std::vector<VertexId> subset;

    std::function<void(std::vector<VertexId>&)> extend = [&](std::vector<VertexId>& ext) {
        std::vector<VertexId> sorted = subset;
        std::sort(sorted.begin(), sorted.end());
        if (subset_diameter(sorted) <= max_diameter) emit(sorted);
        if ((int)subset.size() == max_size) return;
        while (!ext.empty()) {
            VertexId w = ext.front();
            ext.erase(ext.begin());
            std::vector<VertexId> ext2 = ext;
            std::vector<VertexId> newly;
            for (auto [u, ei] : neighbors_[w])
                if (in_ball[u] && u > subset.front() && !seen[u]) {
                    ext2.push_back(u);
                    newly.push_back(u);
                    seen[u] = 1;
                }
            std::sort(ext2.begin(), ext2.end());
            subset.push_back(w);
            extend(ext2);
            subset.pop_back();
            for (VertexId u : newly) seen[u] = 0;
        }
    };

    for (VertexId v = 0; v < n_; ++v) {
        auto dist = bfs_from(v);
        for (VertexId u = 0; u < n_; ++u)
            in_ball[u] = dist[u] >= 0 && dist[u] <= max_diameter;
        subset = {v};
        std::fill(seen.begin(), seen.end(), 0);
        seen[v] = 1;
        std::vector<VertexId> ext;
        for (auto [u, ei] : neighbors_[v])
            if (u > v && in_ball[u]) {
                ext.push_back(u);
                seen[u] = 1;
            }
        std::sort(ext.begin(), ext.end());
        extend(ext);
    }
}

std::string Lattice::canonical_dump() const {
    std::ostringstream os;
    os << "gen " << generation_ << " n " << n_ << " diam " << diameter_ << "\n";
    os << "corners " << corners_[0] << " " << corners_[1] << " " << corners_[2] << "\n";
    for (const Edge& e : edges_)
        os << "e " << e.u << ":" << (int)e.port_u << " " << e.v << ":" << (int)e.port_v << " "
           << (int)e.level << "\n";
    for (const Loop& l : loops_) {
        os << "loop k" << (int)l.kind << " s" << l.scale << " #" << l.label << " ";
        for (auto [v, s] : l.incidences) os << v << "/" << s << " ";
        os << "\n";
    }
    return os.str();
}

} // namespace gasket
