#include "gasket/states.hpp"

#include <algorithm>
#include <stdexcept>

#include "gasket/errors.hpp"

namespace gasket {

CosetState::CosetState(const Lattice& lattice, Syndrome target)
    : system_(lattice, std::move(target)) {}

CosetState make_psi_state(const Lattice& lattice) {
    return CosetState(lattice, zero_syndrome(lattice));
}

CosetState make_phi_state(const Lattice& lattice) {
    return CosetState(lattice, largest_four_syndrome(lattice));
}

LocalOperator LocalOperator::identity() {
    LocalOperator op;
    op.entries[{0, 0}] = ExactScalar::one();
    return op;
}

LocalOperator LocalOperator::dyad(std::vector<VertexId> support, std::uint64_t out_tuple,
                                  std::uint64_t in_tuple, ExactScalar value) {
    LocalOperator op;
    op.support = std::move(support);
    for (std::size_t i = 1; i < op.support.size(); ++i)
        if (op.support[i - 1] >= op.support[i])
            throw std::invalid_argument("support must be sorted and distinct");
    op.entries[{out_tuple, in_tuple}] = value;
    return op;
}

LocalOperator LocalOperator::s_product(const std::vector<std::pair<VertexId, int>>& factors) {
    // Collapse repeated vertices through the Klein group, drop identities.
    std::map<VertexId, int> net;
    for (auto [v, k] : factors) {
        if (k < 1 || k > 3) throw std::invalid_argument("superscript must be 1..3");
        net[v] = letter_mul(net.count(v) ? net[v] : 0, k);
    }
    LocalOperator op;
    std::vector<int> mult;
    for (auto [v, m] : net)
        if (m != 0) {
            op.support.push_back(v);
            mult.push_back(m);
        }
    int n = (int)op.support.size();
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= 4;
    for (std::uint64_t in = 0; in < total; ++in) {
        std::uint64_t out = 0, pow = 1;
        std::uint64_t rest = in;
        for (int i = 0; i < n; ++i) {
            out += (std::uint64_t)letter_mul((int)(rest % 4), mult[i]) * pow;
            rest /= 4;
            pow *= 4;
        }
        op.entries[{out, in}] = ExactScalar::one();
    }
    return op;
}

std::uint64_t pack_tuple(const std::vector<Letter>& letters) {
    std::uint64_t p = 0;
    for (int i = (int)letters.size() - 1; i >= 0; --i) p = p * 4 + letters[i];
    return p;
}

std::vector<Letter> unpack_tuple(std::uint64_t packed, int size) {
    std::vector<Letter> out(size);
    for (int i = 0; i < size; ++i) {
        out[i] = (Letter)(packed % 4);
        packed /= 4;
    }
    return out;
}

LocalOperator tensor_product(const LocalOperator& a, const LocalOperator& b) {
    LocalOperator op;
    op.support = a.support;
    op.support.insert(op.support.end(), b.support.begin(), b.support.end());
    std::vector<VertexId> sorted = op.support;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("tensor_product requires disjoint supports");
    // Positions of the merged (sorted) support relative to a's and b's tuples.
    op.support = sorted;
    int na = (int)a.support.size(), nb = (int)b.support.size();
    std::vector<int> pos(na + nb);
    for (int i = 0; i < na; ++i)
        pos[i] = (int)(std::lower_bound(sorted.begin(), sorted.end(), a.support[i]) - sorted.begin());
    for (int i = 0; i < nb; ++i)
        pos[na + i] =
            (int)(std::lower_bound(sorted.begin(), sorted.end(), b.support[i]) - sorted.begin());
    auto splice = [&](std::uint64_t ta, std::uint64_t tb) {
        std::uint64_t out = 0;
        for (int i = 0; i < na; ++i, ta /= 4) out |= (ta % 4) << (2 * pos[i]);
        for (int i = 0; i < nb; ++i, tb /= 4) out |= (tb % 4) << (2 * pos[na + i]);
        return out;
    };
    for (const auto& [ka, va] : a.entries)
        for (const auto& [kb, vb] : b.entries) {
            ExactScalar v = va * vb;
            if (!v.is_zero())
                op.entries[{splice(ka.first, kb.first), splice(ka.second, kb.second)}] = v;
        }
    return op;
}

namespace {

constexpr int kMaxCountingSupport = 16;

std::vector<std::pair<VertexId, Letter>> fix_from_tuple(const std::vector<VertexId>& support,
                                                        std::uint64_t tuple) {
    std::vector<std::pair<VertexId, Letter>> fixed;
    fixed.reserve(support.size());
    for (VertexId v : support) {
        fixed.push_back({v, (Letter)(tuple % 4)});
        tuple /= 4;
    }
    return fixed;
}

} // namespace

ExactScalar matrix_element(const CosetState& bra, const LocalOperator& op, const CosetState& ket) {
    const Lattice& lattice = ket.lattice();
    if (&bra.lattice() != &lattice)
        throw std::invalid_argument("bra and ket must live on the same lattice");
    if ((int)op.support.size() > kMaxCountingSupport)
        throw ResourceLimitError("operator support too large for the counting sweep");
    for (VertexId v : op.support)
        if (v < 0 || v >= lattice.vertex_count())
            throw std::invalid_argument("operator support outside the lattice");

    int log2_m = ket.log2_size();
    ExactScalar result = ExactScalar::zero();
    std::map<std::uint64_t, SolutionCount> count_cache;
    for (const auto& [key, value] : op.entries) {
        auto [out_tuple, in_tuple] = key;
        // Rewriting in -> out multiplies letter m = in*out into each vertex.
        std::vector<std::pair<VertexId, Letter>> products;
        std::uint64_t o = out_tuple, i = in_tuple;
        for (VertexId v : op.support) {
            products.push_back({v, (Letter)letter_mul((int)(o % 4), (int)(i % 4))});
            o /= 4;
            i /= 4;
        }
        Syndrome shifted = syndrome_shift(lattice, products);
        for (std::size_t li = 0; li < shifted.size(); ++li) shifted[li] ^= ket.syndrome()[li];
        if (shifted != bra.syndrome()) continue;

        auto it = count_cache.find(in_tuple);
        if (it == count_cache.end())
            it = count_cache
                     .emplace(in_tuple, ket.system().count_with_assignment(
                                            fix_from_tuple(op.support, in_tuple)))
                     .first;
        if (it->second.is_zero()) continue;
        result += value * ExactScalar::pow2(it->second.log2 - log2_m);
    }
    return result;
}

ExactScalar connected_correlation(const CosetState& psi, const LocalOperator& a,
                                  const LocalOperator& b) {
    LocalOperator ab = tensor_product(a, b); // throws on overlapping supports
    return matrix_element(psi, ab, psi) -
           matrix_element(psi, a, psi) * matrix_element(psi, b, psi);
}

SparseState SparseState::basis_state(const Configuration& config) {
    SparseState s;
    s.amps_[config] = ExactScalar::one();
    return s;
}

SparseState SparseState::materialize(const CosetState& state, int nullity_cap) {
    SparseState s;
    ExactScalar amp = ExactScalar::sqrt2_pow(-state.log2_size());
    state.system().enumerate_solutions(
        [&](const Configuration& c) { s.amps_.emplace(c, amp); }, nullity_cap);
    return s;
}

ExactScalar SparseState::amplitude(const Configuration& config) const {
    auto it = amps_.find(config);
    return it == amps_.end() ? ExactScalar::zero() : it->second;
}

void SparseState::add(const Configuration& config, const ExactScalar& delta) {
    auto it = amps_.find(config);
    if (it == amps_.end()) {
        if (!delta.is_zero()) amps_.emplace(config, delta);
        return;
    }
    it->second += delta;
    if (it->second.is_zero()) amps_.erase(it);
}

ExactScalar SparseState::inner(const SparseState& other) const {
    const SparseState& small = amps_.size() <= other.amps_.size() ? *this : other;
    const SparseState& big = amps_.size() <= other.amps_.size() ? other : *this;
    ExactScalar sum = ExactScalar::zero();
    for (const auto& [c, a] : small.amps_) {
        auto it = big.amps_.find(c);
        if (it != big.amps_.end()) sum += a * it->second;
    }
    return sum;
}

std::optional<ExactScalar> SparseState::uniform_amplitude() const {
    if (amps_.empty()) return std::nullopt;
    const ExactScalar& first = amps_.begin()->second;
    for (const auto& [c, a] : amps_)
        if (a != first) return std::nullopt;
    return first;
}

SparseState apply_gates(const SparseState& state, const std::vector<GatePlacement>& gates) {
    SparseState cur = state;
    for (const GatePlacement& g : gates) {
        SparseState next;
        for (const auto& [c, a] : cur.amplitudes()) {
            Configuration out = c;
            if (g.sites.size() == 1) {
                out[g.sites[0]] = g.g1.map[out[g.sites[0]]];
            } else if (g.sites.size() == 2) {
                int idx = out[g.sites[0]] * 4 + out[g.sites[1]];
                int mapped = g.g2.map[idx];
                out[g.sites[0]] = (Letter)(mapped / 4);
                out[g.sites[1]] = (Letter)(mapped % 4);
            } else {
                throw std::invalid_argument("gate placement must cover 1 or 2 sites");
            }
            next.add(out, a);
        }
        cur = std::move(next);
    }
    return cur;
}

SparseState apply_half_projector(const SparseState& state, const Lattice& lattice,
                                 int edge_index) {
    EdgeGate gate = t_gate(lattice, edge_index);
    ExactScalar w = ExactScalar::sqrt2_pow(-1);
    SparseState out;
    for (const auto& [c, a] : state.amplitudes()) {
        ExactScalar half = a * w;
        out.add(c, half);
        Configuration moved = c;
        int idx = moved[gate.u] * 4 + moved[gate.v];
        int mapped = gate.table.map[idx];
        moved[gate.u] = (Letter)(mapped / 4);
        moved[gate.v] = (Letter)(mapped % 4);
        out.add(moved, half);
    }
    return out;
}

SparseState coarse_grain(const SparseState& state, const Lattice& lattice,
                         const CoarseTable& table) {
    if (lattice.generation() < 2)
        throw UnsupportedGenerationError("coarse graining requires generation >= 2");
    VertexId n = lattice.vertex_count();
    int n_blocks = n / 3;
    ExactScalar weight = ExactScalar::sqrt2_pow(-3 * n_blocks);
    SparseState out;
    for (const auto& [c, a] : state.amplitudes()) {
        if ((VertexId)c.size() != n) throw std::invalid_argument("configuration length mismatch");
        Configuration coarse(n_blocks);
        bool alive = true;
        for (int b = 0; b < n_blocks && alive; ++b) {
            // Read each triple in the frame of the block's position within
            // its parent, so the fixed table applies at every position.
            int packed = rotate_triple(pack_triple(c[3 * b], c[3 * b + 1], c[3 * b + 2]), b % 3);
            std::int8_t letter = table.coarse_of[packed];
            if (letter < 0)
                alive = false;
            else
                coarse[b] = (Letter)letter;
        }
        if (alive) out.add(coarse, a * weight);
    }
    return out;
}

ExactScalar matrix_element_explicit(const SparseState& bra, const LocalOperator& op,
                                    const SparseState& ket) {
    // Group entries by in-tuple so each ket term is dispatched once.
    std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, ExactScalar>>> by_in;
    for (const auto& [key, value] : op.entries) by_in[key.second].push_back({key.first, value});

    ExactScalar result = ExactScalar::zero();
    for (const auto& [c, a] : ket.amplitudes()) {
        std::vector<Letter> in(op.support.size());
        for (std::size_t i = 0; i < op.support.size(); ++i) in[i] = c[op.support[i]];
        auto it = by_in.find(pack_tuple(in));
        if (it == by_in.end()) continue;
        for (const auto& [out_tuple, value] : it->second) {
            Configuration moved = c;
            std::uint64_t o = out_tuple;
            for (std::size_t i = 0; i < op.support.size(); ++i) {
                moved[op.support[i]] = (Letter)(o % 4);
                o /= 4;
            }
            ExactScalar b = bra.amplitude(moved);
            if (!b.is_zero()) result += b * value * a;
        }
    }
    return result;
}

BlockDecomposeReport block_decompose_check(const Lattice& lattice, const CoarseTable& table) {
    BlockDecomposeReport report;
    if (lattice.generation() != 2) {
        report.failure = "check is defined at generation 2";
        return report;
    }
    GF2System psi(lattice, zero_syndrome(lattice));
    int n_blocks = (int)lattice.vertex_count() / 3;

    std::map<Configuration, std::vector<std::vector<int>>> gamma_by_coarse;
    bool decompose_failed = false;
    psi.enumerate_solutions([&](const Configuration& c) {
        Configuration coarse(n_blocks);
        std::vector<int> gammas(n_blocks);
        for (int b = 0; b < n_blocks; ++b) {
            int packed = rotate_triple(pack_triple(c[3 * b], c[3 * b + 1], c[3 * b + 2]), b % 3);
            if (table.coarse_of[packed] < 0) {
                decompose_failed = true;
                return;
            }
            coarse[b] = (Letter)table.coarse_of[packed];
            gammas[b] = table.gamma_of[packed];
        }
        gamma_by_coarse[coarse].push_back(gammas);
    });
    if (decompose_failed) {
        report.failure = "a solution contains a block triple outside the relabeled sector";
        return report;
    }

    long long expected_tuples = 1;
    for (int b = 0; b < n_blocks; ++b) expected_tuples *= 8;
    report.coarse_configurations = (int)gamma_by_coarse.size();
    report.gamma_tuples_per_coarse = (int)expected_tuples;
    for (auto& [coarse, gammas] : gamma_by_coarse) {
        report.total += (long long)gammas.size();
        std::sort(gammas.begin(), gammas.end());
        if ((long long)gammas.size() != expected_tuples ||
            std::adjacent_find(gammas.begin(), gammas.end()) != gammas.end()) {
            report.failure = "a coarse configuration does not carry every gamma tuple exactly once";
            return report;
        }
    }
    // The coarse configurations must be exactly the solutions one scale up.
    Lattice coarse_lattice = Lattice::build(1);
    GF2System coarse_psi(coarse_lattice, zero_syndrome(coarse_lattice));
    auto coarse_solutions = coarse_psi.all_solutions();
    if ((int)coarse_solutions.size() != report.coarse_configurations) {
        report.failure = "coarse support size mismatch";
        return report;
    }
    for (const Configuration& c : coarse_solutions)
        if (!gamma_by_coarse.count(c)) {
            report.failure = "coarse support differs from the scale-1 solution set";
            return report;
        }
    report.pass = true;
    return report;
}

} // namespace gasket
