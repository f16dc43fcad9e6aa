// qwalk: signless Laplacian quantum-walk analysis of graphs and their Q-graphs.
//
// Subcommands: spectrum, qgraph, pst, pgst, evolve. Graphs come from a JSON
// file ({"n": int, "edges": [[u,v],...]}) or a generator spec family:param.
// Reports are JSON on stdout and are byte-identical across runs for identical
// inputs and flags (opt in to --timestamp to break that).
//
// Exit codes: 0 success / verdict reached, 2 input error, 3 precondition
// violation, 4 search failure (PGST threshold unmet).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qwalk/json_io.hpp"
#include "qwalk/version.hpp"

namespace {

struct CommonOpts {
    std::string gen;
    std::string file;
    std::string label = "index";  // or "bits" (hypercube only)
    double cluster_tol = qwalk::kDefaultClusterTol;
    double support_tol = qwalk::kDefaultSupportTol;
    double cospectral_tol = qwalk::kDefaultCospectralTol;
    bool timestamp = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--gen", o.gen, "generator spec family:param");
    cmd->add_option("--file", o.file, "graph JSON file");
    cmd->add_option("--label", o.label, "vertex addressing: index|bits")
        ->check(CLI::IsMember({"index", "bits"}));
    cmd->add_option("--cluster-tol", o.cluster_tol, "eigenvalue clustering tolerance (relative)");
    cmd->add_option("--support-tol", o.support_tol, "eigenvalue support tolerance");
    cmd->add_option("--cospec-tol", o.cospectral_tol, "strong cospectrality tolerance");
    cmd->add_flag("--timestamp", o.timestamp, "include a timestamp in the report");
}

qwalk::Graph load_graph(const CommonOpts& o) {
    if (o.gen.empty() == o.file.empty())
        throw qwalk::input_error("provide exactly one graph source: --gen or --file");
    if (!o.gen.empty()) {
        const auto colon = o.gen.find(':');
        if (colon == std::string::npos)
            throw qwalk::input_error("generator spec must be family:param");
        int param = 0;
        try {
            param = std::stoi(o.gen.substr(colon + 1));
        } catch (const std::exception&) {
            throw qwalk::input_error("generator parameter must be an integer");
        }
        return qwalk::generate(o.gen.substr(0, colon), param);
    }
    std::ifstream in(o.file);
    if (!in) throw qwalk::input_error("cannot open graph file: " + o.file);
    qwalk::json j;
    try {
        in >> j;
    } catch (const qwalk::json::exception& e) {
        throw qwalk::input_error(std::string("graph file is not valid JSON: ") + e.what());
    }
    return qwalk::graph_from_json(j);
}

int parse_vertex(const std::string& s, const CommonOpts& o, const qwalk::Graph& g) {
    int v = -1;
    try {
        v = o.label == "bits" ? std::stoi(s, nullptr, 2) : std::stoi(s);
    } catch (const std::exception&) {
        throw qwalk::input_error("vertex '" + s + "' is not a valid " + o.label + " label");
    }
    if (v < 0 || v >= g.vertex_count())
        throw qwalk::input_error("vertex '" + s + "' is out of range");
    return v;
}

qwalk::json envelope(const std::string& command, const qwalk::Graph& g, const CommonOpts& o,
                     qwalk::json payload) {
    qwalk::json j = {{"command", command},
                     {"input_digest", qwalk::graph_digest(g)},
                     {"tolerances",
                      {{"cluster_tol", o.cluster_tol},
                       {"support_tol", o.support_tol},
                       {"cospectral_tol", o.cospectral_tol},
                       {"integer_snap_tol", qwalk::kIntegerSnapTol}}},
                     {"payload", std::move(payload)},
                     {"version", qwalk::kToolVersion}};
    if (o.timestamp) {
        const auto now = std::chrono::system_clock::now().time_since_epoch();
        j["timestamp_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    }
    return j;
}

void emit(const qwalk::json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_spectrum(const CommonOpts& o) {
    const qwalk::Graph g = load_graph(o);
    const auto sd = qwalk::decompose(qwalk::signless_laplacian(g), o.cluster_tol);
    qwalk::json payload = {{"graph", qwalk::graph_to_json(g)},
                           {"spectrum", qwalk::to_json(sd)}};
    emit(envelope("spectrum", g, o, std::move(payload)));
    return 0;
}

int cmd_qgraph(const CommonOpts& o, const std::string& mode) {
    const qwalk::Graph g = load_graph(o);
    qwalk::json payload = {{"graph", qwalk::graph_to_json(g)}, {"mode", mode}};
    if (mode == "closed-form" || mode == "both")
        payload["closed_form"] = qwalk::to_json(qwalk::closed_form_spectrum(g, o.cluster_tol));
    if (mode == "numeric" || mode == "both") {
        const auto q = qwalk::q_graph(g);
        payload["numeric"] =
            qwalk::to_json(qwalk::decompose(qwalk::signless_laplacian(q.graph), o.cluster_tol));
    }
    if (mode == "both") {
        // sorted eigenvalue lists with multiplicity, compared entrywise
        const auto qs = qwalk::closed_form_spectrum(g, o.cluster_tol);
        std::vector<double> closed;
        for (const auto& e : qs.entries)
            closed.insert(closed.end(), e.multiplicity, e.value);
        std::sort(closed.begin(), closed.end());
        const auto q = qwalk::q_graph(g);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
            qwalk::signless_laplacian(q.graph).cast<double>());
        double dev = 0;
        for (std::size_t i = 0; i < closed.size(); ++i)
            dev = std::max(dev, std::abs(closed[i] - solver.eigenvalues()(i)));
        payload["max_eigenvalue_deviation"] = dev;
    }
    emit(envelope("qgraph", g, o, std::move(payload)));
    return 0;
}

int cmd_pst(const CommonOpts& o, const std::string& us, const std::string& vs,
            bool qgraph_verdict, double scan_t_max, double scan_step) {
    const qwalk::Graph g = load_graph(o);
    const int u = parse_vertex(us, o, g);
    const int v = parse_vertex(vs, o, g);
    const auto sd = qwalk::decompose(qwalk::signless_laplacian(g), o.cluster_tol);
    const auto cert = qwalk::certify_pst(sd, u, v, o.support_tol, o.cospectral_tol);
    qwalk::json payload = {{"graph", qwalk::graph_to_json(g)},
                           {"certificate", qwalk::to_json(cert)}};
    if (qgraph_verdict) {
        const auto verdict = qwalk::qgraph_no_pst_verdict(g, {{u, v}}, scan_t_max, scan_step);
        payload["qgraph_verdict"] = qwalk::to_json(verdict);
    }
    emit(envelope("pst", g, o, std::move(payload)));
    return 0;
}

int cmd_pgst(const CommonOpts& o, const std::string& us, const std::string& vs, double epsilon,
             long long alpha_max) {
    const qwalk::Graph g = load_graph(o);
    const int u = parse_vertex(us, o, g);
    const int v = parse_vertex(vs, o, g);
    const auto res = qwalk::search_pgst_time(g, u, v, epsilon, alpha_max);
    qwalk::json payload = {{"graph", qwalk::graph_to_json(g)},
                           {"epsilon", epsilon},
                           {"alpha_max", alpha_max},
                           {"search", qwalk::to_json(res)}};
    emit(envelope("pgst", g, o, std::move(payload)));
    return res.achieved ? 0 : 4;
}

int cmd_evolve(const CommonOpts& o, const std::string& us, const std::string& vs, double t_max,
               double step, const std::string& out_path) {
    const qwalk::Graph g = load_graph(o);
    const int u = parse_vertex(us, o, g);
    const int v = parse_vertex(vs, o, g);
    const auto sd = qwalk::decompose(qwalk::signless_laplacian(g), o.cluster_tol);
    const auto scan = qwalk::fidelity_scan(sd, u, v, t_max, step);
    qwalk::write_scan_csv(scan, out_path);
    qwalk::json payload = {{"graph", qwalk::graph_to_json(g)},
                           {"u", u},
                           {"v", v},
                           {"t_max", t_max},
                           {"step", step},
                           {"scan", qwalk::to_json(scan)},
                           {"csv", out_path}};
    emit(envelope("evolve", g, o, std::move(payload)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("QWALK_THREADS"))
        Eigen::setNbThreads(std::max(1, std::atoi(threads)));

    CLI::App app{"signless Laplacian quantum walks on graphs and their Q-graphs"};
    app.set_version_flag("--version", qwalk::kToolVersion);
    app.require_subcommand(1);

    CommonOpts spectrum_opts;
    auto* spectrum = app.add_subcommand("spectrum", "signless Laplacian spectrum of the graph");
    add_common(spectrum, spectrum_opts);

    CommonOpts qgraph_opts;
    std::string qgraph_mode = "both";
    auto* qgraph = app.add_subcommand("qgraph", "closed-form Q-graph eigensystem");
    add_common(qgraph, qgraph_opts);
    auto* cf = qgraph->add_flag("--closed-form", "closed-form spectrum only");
    auto* nu = qgraph->add_flag("--numeric", "dense eigensolver only");
    auto* bo = qgraph->add_flag("--both", "both paths plus their deviation (default)");

    CommonOpts pst_opts;
    std::string pst_u, pst_v;
    bool pst_verdict = false;
    double pst_scan_t_max = 50.0, pst_scan_step = 1e-3;
    auto* pst = app.add_subcommand("pst", "perfect state transfer certificate");
    add_common(pst, pst_opts);
    pst->add_option("u", pst_u, "source vertex")->required();
    pst->add_option("v", pst_v, "target vertex")->required();
    pst->add_flag("--qgraph-verdict", pst_verdict,
                  "also report the Q-graph no-PST verdict with scan evidence");
    pst->add_option("--scan-t-max", pst_scan_t_max, "verdict scan horizon");
    pst->add_option("--scan-step", pst_scan_step, "verdict scan step");

    CommonOpts pgst_opts;
    std::string pgst_u, pgst_v;
    double pgst_epsilon = 0.01;
    long long pgst_alpha_max = 1000000;
    auto* pgst = app.add_subcommand("pgst", "pretty good state transfer time for the Q-graph");
    add_common(pgst, pgst_opts);
    pgst->add_option("u", pgst_u, "source vertex (original vertex of G)")->required();
    pgst->add_option("v", pgst_v, "target vertex (original vertex of G)")->required();
    pgst->add_option("--epsilon", pgst_epsilon, "fidelity threshold 1 - epsilon");
    pgst->add_option("--alpha-max", pgst_alpha_max, "sweep bound for alpha");

    CommonOpts evolve_opts;
    std::string evolve_u, evolve_v, evolve_out = "evolve.csv";
    double evolve_t_max = 10.0, evolve_step = 1e-3;
    auto* evolve = app.add_subcommand("evolve", "fidelity time series between two vertices");
    add_common(evolve, evolve_opts);
    evolve->add_option("u", evolve_u, "source vertex")->required();
    evolve->add_option("v", evolve_v, "target vertex")->required();
    evolve->add_option("--t-max", evolve_t_max, "scan horizon");
    evolve->add_option("--step", evolve_step, "scan step");
    evolve->add_option("--out", evolve_out, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (spectrum->parsed()) return cmd_spectrum(spectrum_opts);
        if (qgraph->parsed()) {
            if (cf->count() + nu->count() + bo->count() > 1)
                throw qwalk::input_error("choose one of --closed-form, --numeric, --both");
            if (cf->count()) qgraph_mode = "closed-form";
            if (nu->count()) qgraph_mode = "numeric";
            return cmd_qgraph(qgraph_opts, qgraph_mode);
        }
        if (pst->parsed())
            return cmd_pst(pst_opts, pst_u, pst_v, pst_verdict, pst_scan_t_max, pst_scan_step);
        if (pgst->parsed())
            return cmd_pgst(pgst_opts, pgst_u, pgst_v, pgst_epsilon, pgst_alpha_max);
        if (evolve->parsed())
            return cmd_evolve(evolve_opts, evolve_u, evolve_v, evolve_t_max, evolve_step,
                              evolve_out);
    } catch (const qwalk::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const qwalk::precondition_error& e) {
        std::cerr << "precondition violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
