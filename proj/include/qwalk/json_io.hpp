#pragma once

#include <complex>
#include <cstdint>
#include <fstream>
#include <string>

#include <json.hpp>

#include "qwalk/graph.hpp"
#include "qwalk/qgraph_forms.hpp"
#include "qwalk/spectra.hpp"
#include "qwalk/transfer.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

using json = nlohmann::json;

inline json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
    return {{"n", g.vertex_count()}, {"edges", edges}};
}

inline Graph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges") ||
        !j["n"].is_number_integer() || !j["edges"].is_array())
        throw input_error("graph JSON must be {\"n\": int, \"edges\": [[u,v],...]}");
    std::vector<Edge> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw input_error("graph JSON edge must be an integer pair");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return Graph(j["n"].get<int>(), std::move(edges));
}

/// FNV-1a 64-bit hash of the canonical graph serialization.
inline std::string graph_digest(const Graph& g) {
    const std::string canon = graph_to_json(g).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return {"fnv1a64:" + std::string(buf)};
}

inline json complex_to_json(const std::complex<double>& z) {
    return {{"re", z.real()}, {"im", z.imag()}};
}

inline json matrix_to_json(const Eigen::MatrixXd& M) {
    json flat = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) flat.push_back(M(i, j));
    return {{"rows", M.rows()}, {"cols", M.cols()}, {"data_row_major", flat}};
}

inline json to_json(const SpectralDecomposition& sd, bool include_projectors = false) {
    json j = {{"dim", sd.dim},
              {"eigenvalues", sd.eigenvalues},
              {"multiplicities", sd.multiplicities},
              {"snapped", sd.snapped}};
    if (include_projectors) {
        json projs = json::array();
        for (const auto& f : sd.projectors) projs.push_back(matrix_to_json(f));
        j["projectors"] = projs;
    }
    return j;
}

inline json to_json(const SupportSet& s) {
    return {{"vertex", s.vertex}, {"eigenvalues", s.values}};
}

inline json to_json(const CospectralReport& rep) {
    return {{"u", rep.u},
            {"v", rep.v},
            {"strongly_cospectral", rep.strongly_cospectral},
            {"s_plus", rep.s_plus_values},
            {"s_minus", rep.s_minus_values},
            {"residuals", rep.residuals}};
}

inline json to_json(const QGraphSpectrum& qs, bool include_projectors = false) {
    json entries = json::array();
    for (const auto& e : qs.entries) {
        json je = {{"value", e.value},
                   {"multiplicity", e.multiplicity},
                   {"kind", to_string(e.kind)}};
        if (e.base_index >= 0) je["base_index"] = e.base_index;
        if (include_projectors) je["projector"] = matrix_to_json(e.projector);
        entries.push_back(je);
    }
    return {{"n", qs.n},
            {"m", qs.m},
            {"r", qs.r},
            {"bipartite", qs.bipartite},
            {"base", to_json(qs.base)},
            {"entries", entries}};
}

inline json to_json(const PSTCertificate& cert) {
    json j = {{"u", cert.u},
              {"v", cert.v},
              {"holds", cert.holds},
              {"support", cert.support_values},
              {"s_plus", cert.s_plus_values},
              {"s_minus", cert.s_minus_values}};
    if (cert.holds) {
        j["delta"] = cert.delta;
        j["g"] = cert.g;
        j["tau0"] = cert.tau0;
        j["phase"] = complex_to_json(cert.phase);
        j["fidelity_at_tau0"] = cert.fidelity_at_tau0;
    } else {
        j["failure_reason"] = to_string(cert.failure_reason);
    }
    return j;
}

inline json to_json(const NoPstReport& rep) {
    json scans = json::array();
    for (const auto& s : rep.scans)
        scans.push_back({{"u", s.u},
                         {"v", s.v},
                         {"max_fidelity", s.max_fidelity},
                         {"at_time", s.at_time}});
    return {{"verdict", to_string(rep.kind)},
            {"ruled_out_vertices", rep.ruled_out_vertices},
            {"scans", scans}};
}

inline json to_json(const PGSTSearchResult& res) {
    const PGSTWitness& w = res.best;
    json errors = json::object(), c = json::object(), b = json::object();
    for (const auto& [q, e] : w.per_eigenvalue_errors) errors[std::to_string(q)] = e;
    for (const auto& [q, cj] : w.c) c[std::to_string(q)] = cj;
    for (const auto& [q, bj] : w.b) b[std::to_string(q)] = bj;
    return {{"achieved", res.achieved},
            {"u", w.u},
            {"v", w.v},
            {"alpha", w.alpha},
            {"t_star", w.t_star},
            {"fidelity", w.fidelity},
            {"refined_t", w.refined_t},
            {"refined_fidelity", w.refined_fidelity},
            {"g", w.g},
            {"r_divisible_by_g", w.r_divisible_by_g},
            {"max_residual", w.max_residual},
            {"per_eigenvalue_errors", errors},
            {"c", c},
            {"b", b}};
}

inline json to_json(const ScanResult& scan, bool include_samples = false) {
    json j = {{"samples", scan.times.size()},
              {"peak", {{"t", scan.peak_time}, {"fidelity", scan.peak_fidelity}}}};
    if (include_samples) {
        j["times"] = scan.times;
        j["fidelities"] = scan.fidelities;
    }
    return j;
}

inline void write_scan_csv(const ScanResult& scan, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot open CSV output path: " + path);
    out << "t,fidelity\n";
    char line[64];
    for (std::size_t k = 0; k < scan.times.size(); ++k) {
        std::snprintf(line, sizeof(line), "%.12g,%.17g\n", scan.times[k], scan.fidelities[k]);
        out << line;
    }
}

}  // namespace qwalk
