#include "gasket/experiments.hpp"

#include <algorithm>
#include <boost/rational.hpp>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include "gasket/errors.hpp"

namespace gasket {

namespace {

BitVec syndrome_to_bits(const Syndrome& s) {
    BitVec b((int)s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i]) b.set((int)i);
    return b;
}

/// The two loops flipped by S^k at v, as a bit vector over loops.
BitVec column_flips(const Lattice& lattice, VertexId v, int k) {
    BitVec b((int)lattice.loops().size());
    for (int side = 1; side <= 3; ++side)
        if (side != k) b.flip(lattice.loop_at(v, side));
    return b;
}

SProduct normalize_factors(std::vector<std::pair<VertexId, int>> factors) {
    std::map<VertexId, int> net;
    for (auto [v, k] : factors) net[v] = letter_mul(net.count(v) ? net[v] : 0, k);
    SProduct out;
    for (auto [v, m] : net)
        if (m != 0) out.factors.push_back({v, m});
    return out;
}

} // namespace

Syndrome flipper_shift(const Lattice& lattice, const SProduct& product) {
    std::vector<std::pair<VertexId, Letter>> prods;
    for (auto [v, k] : product.factors) prods.push_back({v, (Letter)k});
    return syndrome_shift(lattice, prods);
}

Configuration apply_s_product(const Configuration& config, const SProduct& product) {
    Configuration out = config;
    for (auto [v, k] : product.factors) out[v] = (Letter)letter_mul(out[v], k);
    return out;
}

std::optional<SProduct> find_syndrome_flipper(const Lattice& lattice, const FlipperQuery& query) {
    if (query.target.size() != lattice.loops().size())
        throw std::invalid_argument("target syndrome length mismatch");
    std::vector<char> banned(lattice.vertex_count(), 0);
    for (VertexId v : query.forbidden) banned[v] = 1;

    std::vector<std::pair<VertexId, int>> cols;
    std::vector<BitVec> flips;
    for (VertexId v = 0; v < lattice.vertex_count(); ++v) {
        if (banned[v]) continue;
        for (int k = 1; k <= 3; ++k) {
            cols.push_back({v, k});
            flips.push_back(column_flips(lattice, v, k));
        }
    }
    BitVec target = syndrome_to_bits(query.target);
    auto finish = [&](std::vector<std::pair<VertexId, int>> picked) -> std::optional<SProduct> {
        SProduct p = normalize_factors(std::move(picked));
        if (!(syndrome_to_bits(flipper_shift(lattice, p)) == target))
            throw std::logic_error("flipper solver produced a wrong shift");
        return p;
    };

    if (!target.any()) return finish({});

    // Exact minimum-weight search up to weight 3: scan, then meet-in-the-middle.
    std::map<std::vector<std::uint64_t>, int> first_with_value;
    for (int i = 0; i < (int)flips.size(); ++i)
        first_with_value.emplace(flips[i].words, i);

    for (int i = 0; i < (int)flips.size(); ++i)
        if (flips[i] == target) return finish({cols[i]});

    auto pair_solve = [&](const BitVec& t, int exclude) -> std::optional<std::pair<int, int>> {
        for (int i = 0; i < (int)flips.size(); ++i) {
            if (i == exclude) continue;
            BitVec need = t;
            need ^= flips[i];
            auto it = first_with_value.find(need.words);
            if (it != first_with_value.end() && it->second != i && it->second != exclude)
                return std::make_pair(i, it->second);
        }
        return std::nullopt;
    };
    if (auto p2 = pair_solve(target, -1)) return finish({cols[p2->first], cols[p2->second]});
    for (int i = 0; i < (int)flips.size(); ++i) {
        BitVec rest = target;
        rest ^= flips[i];
        if (auto p2 = pair_solve(rest, i))
            return finish({cols[i], cols[p2->first], cols[p2->second]});
    }

    // General solve: loops x columns, then greedy support reduction.
    GF2Matrix m((int)cols.size());
    for (int li = 0; li < (int)lattice.loops().size(); ++li) {
        BitVec row((int)cols.size());
        for (int j = 0; j < (int)cols.size(); ++j)
            if (flips[j].get(li)) row.set(j);
        m.add_row(std::move(row), target.get(li));
    }
    GF2Solve solved = m.solve();
    if (!solved.consistent) return std::nullopt;
    BitVec x = solved.particular;
    bool improved = true;
    while (improved) {
        improved = false;
        for (const BitVec& nb : solved.nullspace) {
            BitVec trial = x;
            trial ^= nb;
            if (trial.popcount() < x.popcount()) {
                x = trial;
                improved = true;
            }
        }
    }
    std::vector<std::pair<VertexId, int>> picked;
    for (int j = 0; j < (int)cols.size(); ++j)
        if (x.get(j)) picked.push_back(cols[j]);
    return finish(std::move(picked));
}

namespace {

struct PairCounts {
    SolutionCount psi, phi;
};

struct SupportCheck {
    DetectionReport::SupportRow row;
    std::vector<DetectionFailure> failures;
};

SupportCheck check_support(const Lattice& lattice, const GF2System& psi, const GF2System& phi,
                           const Syndrome& sigma4, const std::vector<VertexId>& support,
                           long long dyad_budget, std::uint64_t dyad_seed) {
    SupportCheck out;
    out.row.support = support;
    out.row.diameter = lattice.subset_diameter(support);

    FlipperQuery q{sigma4, support};
    if (!find_syndrome_flipper(lattice, q)) {
        out.failures.push_back({support, 0, 0, "no-disjoint-flipper"});
        out.row.failures++;
    }

    int n = (int)support.size();
    std::uint64_t n_tuples = 1;
    for (int i = 0; i < n; ++i) n_tuples *= 4;

    std::vector<std::optional<PairCounts>> counts(n_tuples);
    auto counts_for = [&](std::uint64_t in) -> const PairCounts& {
        if (!counts[in]) {
            std::vector<std::pair<VertexId, Letter>> fixed;
            std::uint64_t t = in;
            for (VertexId v : support) {
                fixed.push_back({v, (Letter)(t % 4)});
                t /= 4;
            }
            counts[in] = PairCounts{psi.count_with_assignment(fixed),
                                    phi.count_with_assignment(fixed)};
        }
        return *counts[in];
    };

    auto check_pair = [&](std::uint64_t in, std::uint64_t out_t) {
        std::vector<std::pair<VertexId, Letter>> products;
        std::uint64_t a = in, b = out_t;
        for (VertexId v : support) {
            products.push_back({v, (Letter)letter_mul((int)(a % 4), (int)(b % 4))});
            a /= 4;
            b /= 4;
        }
        Syndrome shift = syndrome_shift(lattice, products);
        bool is_zero_shift = true, is_sigma4 = true;
        for (std::size_t i = 0; i < shift.size(); ++i) {
            if (shift[i]) is_zero_shift = false;
            if (shift[i] != sigma4[i]) is_sigma4 = false;
        }
        out.row.ops_checked++;
        if (is_sigma4) {
            const PairCounts& c = counts_for(in);
            if (!c.psi.is_zero() || !c.phi.is_zero()) {
                out.failures.push_back({support, in, out_t, "cross"});
                out.row.failures++;
            }
        }
        if (is_zero_shift) {
            const PairCounts& c = counts_for(in);
            if (!(c.psi == c.phi)) {
                out.failures.push_back({support, in, out_t, "diag"});
                out.row.failures++;
            }
        }
    };

    if (n <= 3) {
        for (std::uint64_t in = 0; in < n_tuples; ++in)
            for (std::uint64_t ot = 0; ot < n_tuples; ++ot) check_pair(in, ot);
    } else {
        std::mt19937_64 rng(dyad_seed);
        for (long long b = 0; b < dyad_budget; ++b) check_pair(rng() % n_tuples, rng() % n_tuples);
    }
    return out;
}

} // namespace

DetectionReport error_detection_suite(const Lattice& lattice, int max_exhaustive_size,
                                      long long sample_budget, std::uint64_t seed, int threads) {
    if (lattice.generation() < 2)
        throw UnsupportedGenerationError("error detection needs the four largest loops (gen >= 2)");
    DetectionReport report;
    report.generation = lattice.generation();
    report.diameter = lattice.diameter();
    report.diameter_bound = (3 * report.diameter - 5) / 8;
    report.seed = seed;

    GF2System psi(lattice, zero_syndrome(lattice));
    GF2System phi(lattice, largest_four_syndrome(lattice));
    Syndrome sigma4 = largest_four_syndrome(lattice);

    std::vector<std::vector<VertexId>> supports;
    lattice.for_each_connected_subset(report.diameter_bound, max_exhaustive_size,
                                      [&](const std::vector<VertexId>& s) { supports.push_back(s); });
    report.exhaustive_supports = (long long)supports.size();

    // Larger supports within the bound, if any exist: random connected growth.
    std::set<std::vector<VertexId>> sampled;
    std::mt19937_64 grow_rng(seed);
    for (int attempt = 0; attempt < 2000; ++attempt) {
        int want = max_exhaustive_size + 1 + (int)(grow_rng() % 4);
        std::vector<VertexId> s{(VertexId)(grow_rng() % lattice.vertex_count())};
        while ((int)s.size() < want) {
            std::vector<VertexId> frontier;
            for (VertexId v : s)
                for (auto [u, ei] : lattice.neighbors(v))
                    if (std::find(s.begin(), s.end(), u) == s.end()) frontier.push_back(u);
            std::sort(frontier.begin(), frontier.end());
            frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
            bool grown = false;
            while (!frontier.empty()) {
                std::size_t pick = grow_rng() % frontier.size();
                std::vector<VertexId> trial = s;
                trial.push_back(frontier[pick]);
                std::sort(trial.begin(), trial.end());
                if (lattice.subset_diameter(trial) <= report.diameter_bound) {
                    s = trial;
                    grown = true;
                    break;
                }
                frontier.erase(frontier.begin() + pick);
            }
            if (!grown) break;
        }
        if ((int)s.size() > max_exhaustive_size) sampled.insert(s);
    }
    for (const auto& s : sampled) supports.push_back(s);
    report.sampled_supports = (long long)sampled.size();

    // Budget for sampled dyads: spread over the supports that are not swept
    // exhaustively (size > 3).
    long long big_supports = 0;
    for (const auto& s : supports)
        if ((int)s.size() > 3) ++big_supports;
    long long per_support = big_supports > 0 ? (sample_budget + big_supports - 1) / big_supports : 0;

    std::vector<SupportCheck> results(supports.size());
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            results[i] = check_support(lattice, psi, phi, sigma4, supports[i], per_support,
                                       seed ^ (0x9E3779B97F4A7C15ULL * (i + 1)));
    };
    int n_threads = std::max(1, threads);
    if (n_threads == 1) {
        work(0, supports.size());
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (supports.size() + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            std::size_t lo = std::min(supports.size(), (std::size_t)t * chunk);
            std::size_t hi = std::min(supports.size(), lo + chunk);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
        report.rows.push_back(results[i].row);
        for (auto& f : results[i].failures) report.failures.push_back(f);
        if ((int)supports[i].size() <= 3)
            report.exhaustive_pairs += results[i].row.ops_checked;
        else
            report.sampled_pairs += results[i].row.ops_checked;
    }

    // Negative control: the weight-3 flipper itself must NOT be detected.
    FlipperQuery corner_free{sigma4, {lattice.corners()[0], lattice.corners()[1],
                                      lattice.corners()[2]}};
    auto flip3 = find_syndrome_flipper(lattice, corner_free);
    if (flip3 && flip3->weight() == 3) {
        report.negative_control_flipper = *flip3;
        CosetState psi_state = make_psi_state(lattice);
        CosetState phi_state = make_phi_state(lattice);
        LocalOperator v_op = LocalOperator::s_product(flip3->factors);
        report.negative_control_not_detected =
            matrix_element(psi_state, v_op, phi_state) == ExactScalar::one() &&
            matrix_element(phi_state, v_op, psi_state) == ExactScalar::one();
    }
    return report;
}

DepthBoundResult depth_bound(long long patch_size, long long layers) {
    if (patch_size < 1 || layers < 1) throw std::invalid_argument("patch size and depth must be >= 1");
    boost::rational<long long> threshold(16 * patch_size * layers - 8 * patch_size + 5, 3);
    DepthBoundResult out;
    out.threshold = {threshold.numerator(), threshold.denominator()};
    out.dj_cap = (2 * layers - 1) * patch_size;
    out.min_generation = -1;
    for (int g = 1; g <= 62; ++g) {
        __int128 lhs = (((__int128)1 << g) - 1) * threshold.denominator();
        if (lhs >= threshold.numerator()) {
            out.min_generation = g;
            break;
        }
    }
    return out;
}

DepthLowerBound depth_lower_bound(long long diameter, long long patch_size) {
    if (diameter < 1 || patch_size < 1)
        throw std::invalid_argument("diameter and patch size must be >= 1");
    boost::rational<long long> bound(3 * diameter + 8 * patch_size - 5, 16 * patch_size);
    DepthLowerBound out;
    out.bound = {bound.numerator(), bound.denominator()};
    long long floor = bound.numerator() / bound.denominator(); // nonnegative here
    out.min_layers = floor + 1;
    return out;
}

CausalConeReport causal_cone_check(const Lattice& lattice, int patch_size, int layers,
                                   long long starts, std::uint64_t seed) {
    if (patch_size < 1 || layers < 0) throw std::invalid_argument("need patch size >= 1, layers >= 0");
    CausalConeReport report;
    report.starts = starts;
    report.seed = seed;
    report.cap = layers == 0 ? 0 : (long long)(2 * layers - 1) * patch_size;
    std::mt19937_64 rng(seed);
    report.ok = true;
    for (long long trial = 0; trial < starts; ++trial) {
        VertexId v = (VertexId)(rng() % lattice.vertex_count());
        std::vector<VertexId> support{v};
        if (layers >= 1) {
            // First layer: one local patch (induced diameter <= P) containing v,
            // grown maximally in random order.
            bool grown = true;
            while (grown) {
                grown = false;
                std::vector<VertexId> frontier;
                for (VertexId w : support)
                    for (auto [u, ei] : lattice.neighbors(w))
                        if (std::find(support.begin(), support.end(), u) == support.end())
                            frontier.push_back(u);
                std::sort(frontier.begin(), frontier.end());
                frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
                while (!frontier.empty()) {
                    std::size_t pick = rng() % frontier.size();
                    std::vector<VertexId> trial_s = support;
                    trial_s.push_back(frontier[pick]);
                    std::sort(trial_s.begin(), trial_s.end());
                    if (lattice.subset_diameter(trial_s) <= patch_size) {
                        support = trial_s;
                        grown = true;
                        break;
                    }
                    frontier.erase(frontier.begin() + pick);
                }
            }
            // Every further layer extends the support by at most a P-ball.
            for (int layer = 2; layer <= layers; ++layer) {
                std::vector<int> dist(lattice.vertex_count(), -1);
                std::queue<VertexId> q;
                for (VertexId w : support) {
                    dist[w] = 0;
                    q.push(w);
                }
                while (!q.empty()) {
                    VertexId w = q.front();
                    q.pop();
                    if (dist[w] == patch_size) continue;
                    for (auto [u, ei] : lattice.neighbors(w))
                        if (dist[u] == -1) {
                            dist[u] = dist[w] + 1;
                            q.push(u);
                        }
                }
                support.clear();
                for (VertexId w = 0; w < lattice.vertex_count(); ++w)
                    if (dist[w] >= 0) support.push_back(w);
            }
        }
        int d = lattice.subset_diameter(support);
        report.max_final_diameter = std::max(report.max_final_diameter, d);
        if (d > report.cap) report.ok = false;
    }
    return report;
}

PrepareReport prepare_by_circuit(const Lattice& lattice) {
    if (lattice.generation() > 2)
        throw ResourceLimitError("explicit preparation is limited to generation 2");
    PrepareReport report;
    SparseState state = SparseState::basis_state(Configuration(lattice.vertex_count(), 0));
    for (int ei = 0; ei < (int)lattice.edges().size(); ++ei)
        state = apply_half_projector(state, lattice, ei);
    SparseState psi = SparseState::materialize(make_psi_state(lattice));
    report.equals_psi = state == psi;
    report.support = (long long)state.term_count();
    report.state = std::move(state);
    return report;
}

ErgodicityReport ergodicity_check(const Lattice& lattice) {
    if (lattice.generation() > 2)
        throw ResourceLimitError("orbit enumeration is limited to generation 2");
    ErgodicityReport report;
    GF2System psi(lattice, zero_syndrome(lattice));
    report.coset_size = psi.count_solutions();

    std::vector<EdgeGate> gates;
    for (int ei = 0; ei < (int)lattice.edges().size(); ++ei) gates.push_back(t_gate(lattice, ei));

    std::set<Configuration> visited;
    std::queue<Configuration> frontier;
    Configuration start(lattice.vertex_count(), 0);
    visited.insert(start);
    frontier.push(start);
    report.all_zero_syndrome = true;
    while (!frontier.empty()) {
        Configuration c = frontier.front();
        frontier.pop();
        for (const EdgeGate& g : gates) {
            Configuration next = c;
            next[g.u] = (Letter)letter_mul(next[g.u], g.superscript_u);
            next[g.v] = (Letter)letter_mul(next[g.v], g.superscript_v);
            if (visited.insert(next).second) {
                auto syn = syndrome_of(lattice, next);
                for (auto bit : syn)
                    if (bit) report.all_zero_syndrome = false;
                frontier.push(next);
            }
        }
    }
    report.orbit_size = visited.size();
    report.orbit_equals_coset = report.all_zero_syndrome && !report.coset_size.is_zero() &&
                                report.orbit_size == report.coset_size.value_u64();
    return report;
}

namespace {

struct Candidate {
    Letter c_t, c_l, c_r; // letters at the sub-lattice corners (t, l, r)
    std::vector<int> moves;
};

std::array<Candidate, 2> canonicalize_rec(const Lattice& lattice, const Configuration& config,
                                          VertexId base, int gen) {
    std::vector<Candidate> found;
    if (gen == 1) {
        int block = base / 3;
        int block_edges[3] = {3 * block, 3 * block + 1, 3 * block + 2}; // (t,l), (l,r), (r,t)
        for (int subset = 0; subset < 8; ++subset) {
            int t = config[base], l = config[base + 1], r = config[base + 2];
            std::vector<int> moves;
            if (subset & 1) { t ^= 2; l ^= 3; moves.push_back(block_edges[0]); }
            if (subset & 2) { l ^= 2; r ^= 3; moves.push_back(block_edges[1]); }
            if (subset & 4) { r ^= 2; t ^= 3; moves.push_back(block_edges[2]); }
            if (t <= 1 && l <= 1 && r <= 1)
                found.push_back({(Letter)t, (Letter)l, (Letter)r, std::move(moves)});
        }
    } else {
        VertexId m = (VertexId)pow3(gen - 1);
        auto sub_t = canonicalize_rec(lattice, config, base, gen - 1);
        auto sub_l = canonicalize_rec(lattice, config, base + m, gen - 1);
        auto sub_r = canonicalize_rec(lattice, config, base + 2 * m, gen - 1);
        int e_tl = lattice.edge_at_port(base + (m - 1) / 2, kPortFree);
        int e_tr = lattice.edge_at_port(base + m - 1, kPortFree);
        int e_lr = lattice.edge_at_port(base + 2 * m - 1, kPortFree);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) {
                    const Candidate &T = sub_t[i], &L = sub_l[j], &R = sub_r[k];
                    // Each link pair must be (0,0) or (1,1); T on a (1,1)
                    // pair clears it.
                    if (T.c_l != L.c_t || T.c_r != R.c_t || L.c_r != R.c_l) continue;
                    Candidate cand{T.c_t, L.c_l, R.c_r, {}};
                    cand.moves = T.moves;
                    cand.moves.insert(cand.moves.end(), L.moves.begin(), L.moves.end());
                    cand.moves.insert(cand.moves.end(), R.moves.begin(), R.moves.end());
                    if (T.c_l == 1) cand.moves.push_back(e_tl);
                    if (T.c_r == 1) cand.moves.push_back(e_tr);
                    if (L.c_r == 1) cand.moves.push_back(e_lr);
                    found.push_back(std::move(cand));
                }
    }
    if (found.size() != 2)
        throw std::logic_error("canonicalization did not find exactly two forms");
    auto key = [](const Candidate& c) { return std::array<Letter, 3>{c.c_t, c.c_l, c.c_r}; };
    if (key(found[1]) < key(found[0])) std::swap(found[0], found[1]);
    return {found[0], found[1]};
}

} // namespace

Configuration apply_moves(const Lattice& lattice, Configuration config,
                          const std::vector<int>& moves) {
    for (int ei : moves) {
        const Edge& e = lattice.edges()[ei];
        config[e.u] = (Letter)letter_mul(config[e.u], e.port_u);
        config[e.v] = (Letter)letter_mul(config[e.v], e.port_v);
    }
    return config;
}

CanonicalizeResult canonicalize(const Lattice& lattice, const Configuration& config,
                                bool respect_laterals) {
    if ((VertexId)config.size() != lattice.vertex_count())
        throw std::invalid_argument("configuration length mismatch");
    Syndrome syn = syndrome_of(lattice, config);
    for (std::size_t li = 0; li < syn.size(); ++li) {
        bool lateral = lattice.loops()[li].kind == LoopKind::Lateral;
        if (syn[li] && (!lateral || respect_laterals))
            throw std::invalid_argument(lateral ? "configuration violates a lateral constraint"
                                                : "configuration violates a loop constraint");
    }

    auto cands = canonicalize_rec(lattice, config, 0, lattice.generation());
    CanonicalizeResult result;
    for (const Candidate& cand : cands) {
        if (respect_laterals && (cand.c_t != 0 || cand.c_l != 0 || cand.c_r != 0)) continue;
        Configuration form(lattice.vertex_count(), 0);
        form[lattice.corners()[0]] = cand.c_t;
        form[lattice.corners()[1]] = cand.c_l;
        form[lattice.corners()[2]] = cand.c_r;
        if (apply_moves(lattice, config, cand.moves) != form)
            throw std::logic_error("canonicalization moves do not replay onto the form");
        result.forms.push_back(std::move(form));
        result.move_lists.push_back(cand.moves);
    }
    if (respect_laterals && result.forms.size() != 1)
        throw std::logic_error("a lateral-respecting input must reach the all-zero form");
    return result;
}

Configuration sample_nonlateral_solution(const Lattice& lattice, std::uint64_t seed) {
    GF2Matrix m(3 * (int)lattice.vertex_count());
    for (VertexId v = 0; v < lattice.vertex_count(); ++v) {
        BitVec row(m.cols());
        for (int side = 1; side <= 3; ++side) row.set(side_var(v, side));
        m.add_row(std::move(row), false);
    }
    for (const Loop& loop : lattice.loops()) {
        if (loop.kind == LoopKind::Lateral) continue;
        BitVec row(m.cols());
        for (auto [v, side] : loop.incidences) row.set(side_var(v, side));
        m.add_row(std::move(row), false);
    }
    GF2Solve solved = m.solve();
    std::mt19937_64 rng(seed);
    BitVec x = solved.particular;
    for (const BitVec& b : solved.nullspace)
        if (rng() & 1) x ^= b;
    return bits_to_config(x, lattice.vertex_count());
}

} // namespace gasket
