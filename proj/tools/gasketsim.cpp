// Command-line front end: every experiment and table dump as a subcommand
// with reproducible, machine-readable output. Payload goes to stdout (or
// --out); a one-line run manifest with an output digest goes to stderr.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gasket/acceptance.hpp"
#include "gasket/errors.hpp"
#include "gasket/experiments.hpp"
#include "gasket/tensor.hpp"

using json = nlohmann::json; // std::map keys -> sorted, deterministic output
using namespace gasket;

namespace {

constexpr const char* kVersion = "0.1.0";

long long max_memory = 0; // MiB; 0 = default generation cap

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

struct Output {
    std::string subcommand;
    json params = json::object();
    std::string payload;
    std::string out_path;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    void set_param(const std::string& key, const json& value) { params[key] = value; }

    int finish() {
        if (out_path.empty()) {
            std::cout << payload;
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) {
                std::cerr << "cannot open output path: " << out_path << "\n";
                return 1;
            }
            f << payload;
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              started)
                        .count();
        json manifest;
        manifest["digest"] = "fnv1a64:" + std::to_string(fnv1a64(payload));
        manifest["params"] = params;
        manifest["subcommand"] = subcommand;
        manifest["version"] = kVersion;
        manifest["wall_ms"] = ms;
        std::cerr << manifest.dump() << "\n";
        return 0;
    }
};

json scalar_json(const ExactScalar& s) { return json{{"a", s.a}, {"b", s.b}, {"e", s.e}}; }

/// Rational "num/den" string for a scalar with no sqrt(2) part.
std::string rational_string(const ExactScalar& s) {
    if (s.is_zero()) return "0/1";
    if (s.b != 0) throw std::logic_error("value is not rational");
    std::ostringstream os;
    if (s.e >= 0) {
        os << (long long)s.a * (1LL << s.e) << "/1";
    } else {
        os << s.a << "/" << (1LL << -s.e);
    }
    return os.str();
}

int parse_generation_cap(long long max_memory_mb) {
    if (max_memory_mb <= 0) return 12;
    // Rough per-vertex footprint of the built lattice tables.
    long long budget = max_memory_mb * (1LL << 20) / 128;
    int g = 1;
    while (g < 12 && pow3(g + 1) <= budget) ++g;
    return g;
}

VertexId parse_vertex(const Lattice& lat, const std::string& token) {
    if (!token.empty() && (std::isalpha((unsigned char)token[0])))
        return lat.vertex_from_address(token);
    return (VertexId)std::stoll(token);
}

json lattice_json(const Lattice& lat) {
    json j;
    j["generation"] = lat.generation();
    j["diameter"] = lat.diameter();
    j["corners"] = {lat.corners()[0], lat.corners()[1], lat.corners()[2]};
    json vertices = json::array();
    for (VertexId v = 0; v < lat.vertex_count(); ++v)
        vertices.push_back({{"id", v}, {"address", lat.address(v)}, {"degree", lat.degree(v)}});
    j["vertices"] = vertices;
    json edges = json::array();
    for (const Edge& e : lat.edges())
        edges.push_back({{"u", e.u},
                         {"v", e.v},
                         {"kind", e.is_link() ? "link" : "block"},
                         {"level", (int)e.level}});
    j["edges"] = edges;
    json loops = json::array();
    for (const Loop& l : lat.loops()) {
        json inc = json::array();
        for (auto [v, side] : l.incidences) inc.push_back({v, side});
        const char* kind = l.kind == LoopKind::Block   ? "block"
                           : l.kind == LoopKind::Ring ? "ring"
                                                      : "lateral";
        loops.push_back({{"kind", kind}, {"scale", l.scale}, {"label", l.label},
                         {"incidences", inc}});
    }
    j["loops"] = loops;
    return j;
}

int cmd_lattice(int gen, const std::string& format, Output& out) {
    Lattice lat = Lattice::build(gen, {parse_generation_cap(max_memory)});
    if (format == "csv") {
        std::ostringstream os;
        os << "u,v,distance\n";
        for (VertexId u = 0; u < lat.vertex_count(); ++u)
            for (VertexId v = 0; v < lat.vertex_count(); ++v)
                os << u << "," << v << "," << lat.distance(u, v) << "\n";
        out.payload = os.str();
    } else {
        out.payload = lattice_json(lat).dump(2) + "\n";
    }
    return out.finish();
}

int cmd_ops_dump(Output& out) {
    json j;
    for (int k = 1; k <= 3; ++k) {
        GateTable1 g = s_gate(k);
        j["s_gates"]["S" + std::to_string(k)] = std::vector<int>(g.map.begin(), g.map.end());
    }
    {
        Lattice g2 = Lattice::build(2);
        json t;
        for (int ei : {0, (int)g2.vertex_count()}) { // first block edge, first link edge
            const Edge& e = g2.edges()[ei];
            EdgeGate gate = t_gate(g2, ei);
            json entry;
            entry["factors"] = {"S" + std::to_string(gate.superscript_u),
                                "S" + std::to_string(gate.superscript_v)};
            entry["table"] = std::vector<int>(gate.table.map.begin(), gate.table.map.end());
            t[e.is_link() ? "link" : "block"] = entry;
        }
        j["t_gates"] = t;
    }
    {
        const CoarseTable& table = coarse_table();
        json rows;
        for (int c = 0; c < 4; ++c) {
            json row = json::array();
            for (int g = 0; g < 8; ++g) {
                auto tr = unpack_triple(table.rows[c][g]);
                row.push_back(std::to_string((int)tr[0]) + std::to_string((int)tr[1]) +
                              std::to_string((int)tr[2]));
            }
            rows[std::to_string(c)] = row;
        }
        j["coarse_isometry"]["rows"] = rows;
        j["coarse_isometry"]["weight"] = scalar_json(CoarseTable::weight());
    }
    {
        json reds;
        for (int a = 0; a < 4; ++a) {
            json sides = json::array();
            for (int s = 1; s <= 3; ++s)
                if (side_is_red(a, s)) sides.push_back(s);
            reds[std::to_string(a)] = sides;
        }
        j["letter_red_sides"] = reds;
    }
    out.payload = j.dump(2) + "\n";
    return out.finish();
}

int cmd_count(int gen, const std::vector<std::string>& fixes, Output& out) {
    Lattice lat = Lattice::build(gen, {parse_generation_cap(max_memory)});
    GF2System sys(lat, zero_syndrome(lat));
    std::vector<std::pair<VertexId, Letter>> fixed;
    json fixed_json = json::object();
    for (const std::string& f : fixes) {
        auto eq = f.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--fix expects vertex=letter");
        VertexId v = parse_vertex(lat, f.substr(0, eq));
        int letter = std::stoi(f.substr(eq + 1));
        if (letter < 0 || letter > 3) throw std::invalid_argument("letter must be 0..3");
        fixed.push_back({v, (Letter)letter});
        fixed_json[std::to_string(v)] = letter;
    }
    json j;
    j["M"] = sys.count_solutions().decimal();
    j["rank"] = sys.rank();
    j["nullity"] = sys.nullity();
    j["fixed"] = fixed_json;
    j["count"] = sys.count_with_assignment(fixed).decimal();
    out.payload = j.dump(2) + "\n";
    return out.finish();
}

int cmd_expect(int gen, const std::string& state, const std::string& vertex, int in, int out_l,
               Output& out) {
    Lattice lat = Lattice::build(gen, {parse_generation_cap(max_memory)});
    CosetState coset = state == "phi" ? make_phi_state(lat) : make_psi_state(lat);
    VertexId v = parse_vertex(lat, vertex);
    LocalOperator dyad = LocalOperator::dyad({v}, (std::uint64_t)out_l, (std::uint64_t)in);
    ExactScalar value = matrix_element(coset, dyad, coset);
    json j;
    j["generation"] = gen;
    j["state"] = state;
    j["vertex"] = v;
    j["op_in"] = in;
    j["op_out"] = out_l;
    j["value"] = rational_string(value);
    j["exact"] = scalar_json(value);
    out.payload = j.dump(2) + "\n";
    return out.finish();
}

int cmd_correlate(int gen, const std::string& vi, const std::string& vj,
                  const std::string& format, Output& out) {
    Lattice lat = Lattice::build(gen, {parse_generation_cap(max_memory)});
    CosetState psi = make_psi_state(lat);
    VertexId i = parse_vertex(lat, vi), j = parse_vertex(lat, vj);
    if (i == j) throw std::invalid_argument("vertices must differ");
    int dist = lat.distance(i, j);

    std::ostringstream csv;
    csv << "vertex_i,vertex_j,distance,op_in,op_out,value_num,value_den\n";
    json rows = json::array();
    for (int in_i = 0; in_i < 4; ++in_i)
        for (int out_i = 0; out_i < 4; ++out_i)
            for (int in_j = 0; in_j < 4; ++in_j)
                for (int out_j = 0; out_j < 4; ++out_j) {
                    LocalOperator a = LocalOperator::dyad({i}, out_i, in_i);
                    LocalOperator b = LocalOperator::dyad({j}, out_j, in_j);
                    ExactScalar v = connected_correlation(psi, a, b);
                    std::string rat = rational_string(v);
                    std::string num = rat.substr(0, rat.find('/'));
                    std::string den = rat.substr(rat.find('/') + 1);
                    std::string op_in = std::to_string(in_i) + std::to_string(in_j);
                    std::string op_out = std::to_string(out_i) + std::to_string(out_j);
                    csv << i << "," << j << "," << dist << "," << op_in << "," << op_out << ","
                        << num << "," << den << "\n";
                    rows.push_back({{"op_in", op_in},
                                    {"op_out", op_out},
                                    {"value", rat}});
                }
    if (format == "csv") {
        out.payload = csv.str();
    } else {
        json jj;
        jj["vertex_i"] = i;
        jj["vertex_j"] = j;
        jj["distance"] = dist;
        jj["rows"] = rows;
        out.payload = jj.dump(2) + "\n";
    }
    return out.finish();
}

int cmd_detect(int gen, int exhaustive_size, long long samples, std::uint64_t seed, int threads,
               const std::string& format, Output& out) {
    if (gen < 2)
        throw std::invalid_argument("detect needs generation >= 2 (no four largest loops at 1)");
    Lattice lat = Lattice::build(gen, {parse_generation_cap(max_memory)});
    DetectionReport report = error_detection_suite(lat, exhaustive_size, samples, seed, threads);
    if (format == "csv") {
        std::ostringstream csv;
        csv << "support,diameter,ops_checked,failures\n";
        for (const auto& row : report.rows) {
            csv << "\"";
            for (std::size_t k = 0; k < row.support.size(); ++k)
                csv << (k ? " " : "") << row.support[k];
            csv << "\"," << row.diameter << "," << row.ops_checked << "," << row.failures << "\n";
        }
        out.payload = csv.str();
    } else {
        json j;
        j["generation"] = report.generation;
        j["diameter"] = report.diameter;
        j["diameter_bound"] = report.diameter_bound;
        j["exhaustive_supports"] = report.exhaustive_supports;
        j["sampled_supports"] = report.sampled_supports;
        j["exhaustive_pairs"] = report.exhaustive_pairs;
        j["sampled_pairs"] = report.sampled_pairs;
        j["rng"] = report.rng;
        j["seed"] = report.seed;
        j["negative_control_not_detected"] = report.negative_control_not_detected;
        json fails = json::array();
        for (const auto& f : report.failures)
            fails.push_back({{"support", f.support},
                             {"in", f.in_tuple},
                             {"out", f.out_tuple},
                             {"kind", f.kind}});
        j["failures"] = fails;
        j["all_detected"] = report.all_detected();
        out.payload = j.dump(2) + "\n";
    }
    int rc = out.finish();
    if (rc != 0) return rc;
    return report.all_detected() && report.negative_control_not_detected ? 0 : 2;
}

int cmd_bound(long long p, long long l, long long diameter, Output& out) {
    auto b = depth_bound(p, l);
    json j;
    j["threshold"] = b.threshold.str();
    j["min_generation"] = b.min_generation;
    j["dj_cap"] = b.dj_cap;
    if (diameter > 0) {
        auto inv = depth_lower_bound(diameter, p);
        j["lower_bound"] = inv.bound.str();
        j["min_layers"] = inv.min_layers;
    }
    out.payload = j.dump(2) + "\n";
    return out.finish();
}

int cmd_prepare(int gen, Output& out) {
    Lattice lat = Lattice::build(gen, {parse_generation_cap(max_memory)});
    PrepareReport report = prepare_by_circuit(lat);
    json j;
    j["generation"] = gen;
    j["equals_psi"] = report.equals_psi;
    j["support"] = report.support;
    out.payload = j.dump(2) + "\n";
    int rc = out.finish();
    return rc != 0 ? rc : (report.equals_psi ? 0 : 2);
}

int cmd_canon(int gen, std::uint64_t seed, bool respect_laterals, int samples, Output& out) {
    Lattice lat = Lattice::build(gen, {parse_generation_cap(max_memory)});
    GF2System psi(lat, zero_syndrome(lat));
    json results = json::array();
    bool all_ok = true;
    for (int s = 0; s < samples; ++s) {
        Configuration cfg = respect_laterals ? psi.sample_solution(seed + s)
                                             : sample_nonlateral_solution(lat, seed + s);
        auto canon = canonicalize(lat, cfg, respect_laterals);
        json entry;
        entry["input"] = cfg;
        json forms = json::array();
        for (std::size_t f = 0; f < canon.forms.size(); ++f) {
            bool replay_ok = apply_moves(lat, cfg, canon.move_lists[f]) == canon.forms[f];
            all_ok = all_ok && replay_ok;
            forms.push_back({{"form", canon.forms[f]},
                             {"moves", canon.move_lists[f]},
                             {"replay_ok", replay_ok}});
        }
        entry["forms"] = forms;
        results.push_back(entry);
    }
    json j;
    j["generation"] = gen;
    j["respect_laterals"] = respect_laterals;
    j["rng"] = "mt19937_64";
    j["seed"] = seed;
    j["samples"] = samples;
    j["results"] = results;
    out.payload = j.dump(2) + "\n";
    int rc = out.finish();
    return rc != 0 ? rc : (all_ok ? 0 : 2);
}

int cmd_flipper(int gen, const std::string& forbid_csv, Output& out) {
    Lattice lat = Lattice::build(gen, {parse_generation_cap(max_memory)});
    FlipperQuery q{largest_four_syndrome(lat), {}};
    std::stringstream ss(forbid_csv);
    std::string token;
    while (std::getline(ss, token, ','))
        if (!token.empty()) q.forbidden.push_back(parse_vertex(lat, token));
    auto flipper = find_syndrome_flipper(lat, q);
    json j;
    j["generation"] = gen;
    j["forbidden"] = q.forbidden;
    j["found"] = flipper.has_value();
    if (flipper) {
        json factors = json::array();
        for (auto [v, k] : flipper->factors) factors.push_back({{"vertex", v}, {"s", k}});
        j["factors"] = factors;
        j["weight"] = flipper->weight();
        j["shift_matches"] = flipper_shift(lat, *flipper) == q.target;
    }
    out.payload = j.dump(2) + "\n";
    return out.finish();
}

int cmd_tensor_check(Output& out) {
    json j;
    bool support_match = true;
    ExactScalar lambda;
    try {
        lambda = check_scale_invariance(PortConvention::Standard);
    } catch (const ConventionViolationError&) {
        support_match = false;
    }
    j["lambda"] = scalar_json(lambda);
    j["support_match"] = support_match;
    for (int g : {1, 2}) {
        Lattice lat = Lattice::build(g);
        SparseState contracted = contract_network(lat);
        GF2System sys(lat, zero_syndrome(lat));
        auto sols = sys.all_solutions();
        bool equal = contracted.term_count() == sols.size() &&
                     contracted.uniform_amplitude().has_value();
        for (const auto& s : sols) equal = equal && !contracted.amplitude(s).is_zero();
        j["oracle_equivalence"]["gen" + std::to_string(g)] = equal;
    }
    out.payload = j.dump(2) + "\n";
    int rc = out.finish();
    bool ok = support_match && j["oracle_equivalence"]["gen1"].get<bool>() &&
              j["oracle_equivalence"]["gen2"].get<bool>();
    return rc != 0 ? rc : (ok ? 0 : 2);
}

int cmd_verify_all(int gen_cap, std::uint64_t seed, int threads, long long samples,
                   const std::string& format, Output& out) {
    AcceptanceOptions options;
    options.max_generation = gen_cap;
    options.seed = seed;
    options.threads = threads;
    options.detection_sample_budget = samples;
    auto results = run_acceptance(options);
    bool all_pass = true;
    std::ostringstream text;
    json jr = json::array();
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        text << (r.pass ? (r.skipped ? "SKIP" : "PASS") : "FAIL") << " criterion " << r.number
             << " (" << r.name << "): " << r.detail << " [" << r.seconds << "s]\n";
        jr.push_back({{"number", r.number},
                      {"name", r.name},
                      {"pass", r.pass},
                      {"skipped", r.skipped},
                      {"detail", r.detail},
                      {"seconds", r.seconds}});
    }
    text << (all_pass ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << "\n";
    out.payload = format == "json" ? jr.dump(2) + "\n" : text.str();
    int rc = out.finish();
    return rc != 0 ? rc : (all_pass ? 0 : 2);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact simulation and verification toolkit for parity-loop qudit states on the "
                 "Sierpinski gasket"};
    app.require_subcommand(1);

    int gen = 2;
    std::uint64_t seed = 2024;
    int threads = 1;
    std::string format = "json", out_path;

    auto add_common = [&](CLI::App* cmd, bool with_gen = true) {
        if (with_gen) cmd->add_option("--gen", gen, "lattice generation");
        cmd->add_option("--seed", seed, "master RNG seed (mt19937_64)");
        cmd->add_option("--threads", threads, "worker threads");
        cmd->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--out", out_path, "write payload to PATH instead of stdout");
        cmd->add_option("--max-memory", max_memory, "memory budget in MiB (caps generation)");
    };

    auto* c_lattice = app.add_subcommand("lattice", "emit the lattice as JSON (or distance CSV)");
    add_common(c_lattice);

    auto* c_ops = app.add_subcommand("ops", "operator tables");
    c_ops->require_subcommand(1);
    auto* c_ops_dump = c_ops->add_subcommand("dump", "emit S, T and coarse-isometry tables");
    add_common(c_ops_dump, false);

    auto* c_count = app.add_subcommand("count", "exact solution counting");
    std::vector<std::string> fixes;
    add_common(c_count);
    c_count->add_option("--fix", fixes, "fix vertex=letter (repeatable)");

    auto* c_expect = app.add_subcommand("expect", "single-operator expectation value");
    std::string state = "psi", vertex_i = "0", vertex_j = "1";
    int op_in = 0, op_out = -1;
    add_common(c_expect);
    c_expect->add_option("--state", state, "psi|phi")->check(CLI::IsMember({"psi", "phi"}));
    c_expect->add_option("--vertex", vertex_i, "vertex id or address");
    c_expect->add_option("--in", op_in, "input letter 0..3");
    c_expect->add_option("--op-out", op_out, "output letter (defaults to --in)");

    auto* c_corr = app.add_subcommand("correlate", "all 256 two-point connected correlations");
    add_common(c_corr);
    c_corr->add_option("--i", vertex_i, "first vertex id or address")->required();
    c_corr->add_option("--j", vertex_j, "second vertex id or address")->required();

    auto* c_detect = app.add_subcommand("detect", "error-detection sweep");
    int exhaustive_size = 4;
    long long samples = 100000;
    add_common(c_detect);
    c_detect->add_option("--exhaustive-size", exhaustive_size, "exhaustive support size cap");
    c_detect->add_option("--samples", samples, "sampled dyad budget");

    auto* c_bound = app.add_subcommand("bound", "circuit-depth threshold calculator");
    long long p = 1, l = 1, diameter = 0;
    c_bound->add_option("--p", p, "patch size")->required();
    c_bound->add_option("--l", l, "circuit depth")->required();
    c_bound->add_option("--diameter", diameter, "also report the depth lower bound for this size");
    add_common(c_bound, false);

    auto* c_prepare = app.add_subcommand("prepare", "projector-product state preparation");
    add_common(c_prepare);

    auto* c_canon = app.add_subcommand("canon", "canonical forms under the two-body moves");
    bool respect_laterals = false;
    int canon_samples = 1;
    add_common(c_canon);
    c_canon->add_flag("--respect-laterals", respect_laterals,
                      "sample full solutions and demand the all-zero form");
    c_canon->add_option("--samples", canon_samples, "number of sampled inputs");

    auto* c_flipper = app.add_subcommand("flipper", "solve for a syndrome flipper");
    std::string forbid;
    add_common(c_flipper);
    c_flipper->add_option("--forbid", forbid, "comma-separated vertices to avoid");

    auto* c_tensor = app.add_subcommand("tensor", "tensor network oracle");
    c_tensor->require_subcommand(1);
    auto* c_tensor_check = c_tensor->add_subcommand("check", "fixed point and oracle equivalence");
    add_common(c_tensor_check, false);

    auto* c_verify = app.add_subcommand("verify-all", "run the full verification suite");
    int verify_gen_cap = 6;
    std::string verify_format = "text";
    c_verify->add_option("--gen", verify_gen_cap, "maximum generation used by the criteria");
    c_verify->add_option("--seed", seed, "master RNG seed (mt19937_64)");
    c_verify->add_option("--threads", threads, "worker threads");
    c_verify->add_option("--format", verify_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    c_verify->add_option("--out", out_path, "write payload to PATH instead of stdout");
    c_verify->add_option("--samples", samples, "sampled dyad budget for detection");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    Output out;
    out.set_param("seed", seed);
    out.set_param("threads", threads);
    out.set_param("format", format);
    out.out_path = out_path;

    try {
        if (app.got_subcommand(c_lattice)) {
            out.subcommand = "lattice";
            out.set_param("gen", gen);
            return cmd_lattice(gen, format, out);
        }
        if (app.got_subcommand(c_ops)) {
            out.subcommand = "ops dump";
            return cmd_ops_dump(out);
        }
        if (app.got_subcommand(c_count)) {
            out.subcommand = "count";
            out.set_param("gen", gen);
            out.set_param("fix", fixes);
            return cmd_count(gen, fixes, out);
        }
        if (app.got_subcommand(c_expect)) {
            out.subcommand = "expect";
            out.set_param("gen", gen);
            out.set_param("state", state);
            out.set_param("vertex", vertex_i);
            if (op_out < 0) op_out = op_in;
            out.set_param("in", op_in);
            out.set_param("out", op_out);
            return cmd_expect(gen, state, vertex_i, op_in, op_out, out);
        }
        if (app.got_subcommand(c_corr)) {
            out.subcommand = "correlate";
            out.set_param("gen", gen);
            out.set_param("i", vertex_i);
            out.set_param("j", vertex_j);
            return cmd_correlate(gen, vertex_i, vertex_j, format, out);
        }
        if (app.got_subcommand(c_detect)) {
            out.subcommand = "detect";
            out.set_param("gen", gen);
            out.set_param("exhaustive_size", exhaustive_size);
            out.set_param("samples", samples);
            return cmd_detect(gen, exhaustive_size, samples, seed, threads, format, out);
        }
        if (app.got_subcommand(c_bound)) {
            out.subcommand = "bound";
            out.set_param("p", p);
            out.set_param("l", l);
            return cmd_bound(p, l, diameter, out);
        }
        if (app.got_subcommand(c_prepare)) {
            out.subcommand = "prepare";
            out.set_param("gen", gen);
            return cmd_prepare(gen, out);
        }
        if (app.got_subcommand(c_canon)) {
            out.subcommand = "canon";
            out.set_param("gen", gen);
            out.set_param("respect_laterals", respect_laterals);
            out.set_param("samples", canon_samples);
            return cmd_canon(gen, seed, respect_laterals, canon_samples, out);
        }
        if (app.got_subcommand(c_flipper)) {
            out.subcommand = "flipper";
            out.set_param("gen", gen);
            out.set_param("forbid", forbid);
            return cmd_flipper(gen, forbid, out);
        }
        if (app.got_subcommand(c_tensor)) {
            out.subcommand = "tensor check";
            return cmd_tensor_check(out);
        }
        if (app.got_subcommand(c_verify)) {
            out.subcommand = "verify-all";
            out.set_param("gen", verify_gen_cap);
            out.set_param("samples", samples);
            out.set_param("format", verify_format);
            return cmd_verify_all(verify_gen_cap, seed, threads, samples, verify_format, out);
        }
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
