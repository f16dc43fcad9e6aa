#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "qwalk/arithmetic.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/qgraph_forms.hpp"
#include "qwalk/spectra.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

enum class PSTFailure {
    none,
    not_strongly_cospectral,   // condition (i)
    mixed_integrality,         // condition (ii): support is neither all-integer nor
                               // quadratic-integer with a common trace and delta
    parity_condition_failed,   // condition (iii): S+ membership vs evenness of (q0-q)/(g sqrt(delta))
    trivial_support,           // singleton support, no nonzero gaps
};

inline const char* to_string(PSTFailure f) {
    switch (f) {
        case PSTFailure::none: return "none";
        case PSTFailure::not_strongly_cospectral: return "not_strongly_cospectral";
        case PSTFailure::mixed_integrality: return "mixed_integrality";
        case PSTFailure::parity_condition_failed: return "parity_condition_failed";
        case PSTFailure::trivial_support: return "trivial_support";
    }
    return "?";
}

/// Outcome of the perfect-state-transfer characterization for a vertex pair.
/// When it holds: tau0 = pi / (g sqrt(delta)) is the minimum transfer time,
/// every PST time is an odd multiple of tau0, and the phase is e^{-i tau0 q0}.
struct PSTCertificate {
    int u = 0, v = 0;
    bool holds = false;
    long long delta = 1;
    long long g = 0;
    double tau0 = 0;
    std::complex<double> phase;
    PSTFailure failure_reason = PSTFailure::none;
    double fidelity_at_tau0 = 0;  // numerical re-verification, filled when holds
    std::vector<double> support_values;
    std::vector<double> s_plus_values, s_minus_values;  // over all eigenvalues
};

namespace detail {

// Recognize the support values as quadratic integers sharing a trace and a
// square-free delta: non-integer values must pair symmetrically around a/2
// and any integer value must equal a/2 itself. On success fills delta and the
// integer encoding compute_g expects: the eigenvalues themselves for
// delta = 1, the per-value b coefficients of (a + b sqrt(delta))/2 otherwise.
struct SupportArithmetic {
    bool ok = false;
    long long delta = 1;
    std::vector<long long> encoded;  // aligned with the support values

    long long normalized_gap(std::size_t k) const {
        const long long diff = encoded.front() - encoded[k];
        return delta == 1 ? diff : diff / 2;
    }
};

inline SupportArithmetic analyze_support(const std::vector<double>& values,
                                         const std::vector<bool>& value_snapped) {
    SupportArithmetic out;
    std::vector<int> irrational;
    for (int i = 0; i < static_cast<int>(values.size()); ++i)
        if (!value_snapped[i]) irrational.push_back(i);

    if (irrational.empty()) {
        out.ok = true;
        out.delta = 1;
        for (const double q : values) out.encoded.push_back(std::llround(q));
        return out;
    }

    if (irrational.size() % 2 != 0) return out;
    std::vector<long long> b(values.size(), 0);
    long long trace = 0, delta = 0;
    for (std::size_t k = 0; k < irrational.size() / 2; ++k) {
        const int hi = irrational[k];
        const int lo = irrational[irrational.size() - 1 - k];
        const auto rec = recognize_quadratic_pair(values[hi], values[lo]);
        if (rec.status != QuadraticPairRecognition::Status::quadratic_integers) return out;
        if (k == 0) {
            trace = rec.first.a;
            delta = rec.first.delta;
        } else if (rec.first.a != trace || rec.first.delta != delta) {
            return out;
        }
        b[hi] = rec.first.b;
        b[lo] = rec.second.b;
    }
    if (delta == 1) return out;  // conjugate pairs of integers cannot be irrational
    for (std::size_t i = 0; i < values.size(); ++i)
        if (value_snapped[i] && std::llround(2 * values[i]) != trace) return out;
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        if ((b.front() - b[i + 1]) % 2 != 0) return out;  // (q0-q)/sqrt(delta) must be integral
    out.ok = true;
    out.delta = delta;
    out.encoded = std::move(b);
    return out;
}

}  // namespace detail

/// Theorem-2.1 characterization: (i) strong cospectrality, (ii) the support of
/// u is all integers (delta = 1) or all quadratic integers with a common
/// delta, (iii) q in S+ iff (q0 - q)/(g sqrt(delta)) is even. Failures are
/// verdicts, not exceptions. When all three hold the certificate carries
/// tau0, the phase e^{-i tau0 q0}, and the numerically re-verified fidelity
/// at tau0.
inline PSTCertificate certify_pst(const SpectralDecomposition& sd, int u, int v,
                                  double support_tol = kDefaultSupportTol,
                                  double cospectral_tol = kDefaultCospectralTol) {
    if (u == v) throw input_error("certify_pst: vertices must be distinct");
    PSTCertificate cert;
    cert.u = u;
    cert.v = v;

    const CospectralReport rep = strong_cospectrality(sd, u, v, cospectral_tol);
    cert.s_plus_values = rep.s_plus_values;
    cert.s_minus_values = rep.s_minus_values;
    const SupportSet supp = support(sd, u, support_tol);
    cert.support_values = supp.values;
    if (!rep.strongly_cospectral) {
        cert.failure_reason = PSTFailure::not_strongly_cospectral;
        return cert;
    }
    if (supp.indices.size() < 2) {
        cert.failure_reason = PSTFailure::trivial_support;
        return cert;
    }

    std::vector<bool> in_supp_snapped;
    for (const int i : supp.indices) in_supp_snapped.push_back(sd.snapped[i]);
    const detail::SupportArithmetic arith = detail::analyze_support(supp.values, in_supp_snapped);
    if (!arith.ok) {
        cert.failure_reason = PSTFailure::mixed_integrality;
        return cert;
    }
    cert.delta = arith.delta;

    long long g = 0;
    try {
        g = compute_g(arith.encoded, arith.encoded.front(), arith.delta);
    } catch (const input_error&) {
        cert.failure_reason = PSTFailure::trivial_support;
        return cert;
    }
    cert.g = g;

    for (std::size_t k = 0; k < supp.indices.size(); ++k) {
        const int i = supp.indices[k];
        const bool even = (arith.normalized_gap(k) / g) % 2 == 0;
        const bool in_plus = std::find(rep.s_plus.begin(), rep.s_plus.end(), i) != rep.s_plus.end();
        const bool in_minus =
            std::find(rep.s_minus.begin(), rep.s_minus.end(), i) != rep.s_minus.end();
        if ((even && !in_plus) || (!even && !in_minus)) {
            cert.failure_reason = PSTFailure::parity_condition_failed;
            return cert;
        }
    }

    cert.holds = true;
    cert.tau0 = std::numbers::pi / (g * std::sqrt(static_cast<double>(cert.delta)));
    cert.phase = std::polar(1.0, -cert.tau0 * supp.values.front());
    cert.fidelity_at_tau0 = std::abs(amplitude(sd, u, v, cert.tau0).value);
    return cert;
}

enum class NoPstKind { no_pst_anywhere, no_pst_from_vertices, undecided_by_theorem };

inline const char* to_string(NoPstKind k) {
    switch (k) {
        case NoPstKind::no_pst_anywhere: return "NO_PST_ANYWHERE";
        case NoPstKind::no_pst_from_vertices: return "NO_PST_FROM_VERTEX";
        case NoPstKind::undecided_by_theorem: return "UNDECIDED_BY_THEOREM";
    }
    return "?";
}

struct ScanEvidence {
    int u = 0, v = 0;
    double max_fidelity = 0;
    double at_time = 0;
};

/// Verdict on perfect state transfer in Q(G). A fully integral base spectrum
/// rules PST out everywhere in Q(G); otherwise any original vertex whose base
/// support is fully integral is ruled out as an endpoint. The optional scans
/// are sanity evidence only, never conclusive on their own.
struct NoPstReport {
    NoPstKind kind = NoPstKind::undecided_by_theorem;
    std::vector<int> ruled_out_vertices;
    std::vector<ScanEvidence> scans;
};

inline NoPstReport qgraph_no_pst_verdict(const Graph& g,
                                         const std::vector<std::pair<int, int>>& scan_pairs = {},
                                         double scan_t_max = 50.0, double scan_step = 1e-3) {
    const RegularityInfo reg = regularity(g);
    if (!reg.is_regular || reg.degree < 2)
        throw precondition_error("qgraph_no_pst_verdict: requires a regular graph with r >= 2");
    if (!is_connected(g))
        throw precondition_error("qgraph_no_pst_verdict: graph is not connected");

    const SpectralDecomposition base = decompose(signless_laplacian(g));
    NoPstReport report;
    const bool all_integral =
        std::all_of(base.snapped.begin(), base.snapped.end(), [](bool s) { return s; });
    if (all_integral) {
        report.kind = NoPstKind::no_pst_anywhere;
        for (int u = 0; u < g.vertex_count(); ++u) report.ruled_out_vertices.push_back(u);
    } else {
        for (int u = 0; u < g.vertex_count(); ++u) {
            const SupportSet supp = support(base, u);
            if (std::all_of(supp.indices.begin(), supp.indices.end(),
                            [&](int i) { return base.snapped[i]; }))
                report.ruled_out_vertices.push_back(u);
        }
        report.kind = report.ruled_out_vertices.empty() ? NoPstKind::undecided_by_theorem
                                                        : NoPstKind::no_pst_from_vertices;
    }

    if (!scan_pairs.empty()) {
        const SpectralDecomposition qsd = decompose(signless_laplacian(q_graph(g).graph));
        for (const auto& [u, v] : scan_pairs) {
            const ScanResult scan = fidelity_scan(qsd, u, v, scan_t_max, scan_step);
            report.scans.push_back({u, v, scan.peak_fidelity, scan.peak_time});
        }
    }
    return report;
}

/// Constructive pretty-good-state-transfer time for Q(G): the witness time is
/// t* = (4 alpha + 2/g) pi where alpha minimizes the simultaneous distance of
/// alpha sqrt(b_j) + sqrt(b_j)/(2g) from the integers over the square-free
/// parts b_j of (q_j + r - 2)^2 + 4 q_j, q_j ranging over the nonzero support.
struct PGSTWitness {
    int u = 0, v = 0;
    long long alpha = 0;
    double t_star = 0;
    double fidelity = 0;  // |amplitude| at t_star
    double refined_t = 0;
    double refined_fidelity = 0;
    long long g = 0;
    bool r_divisible_by_g = false;
    double max_residual = 0;                            // e(alpha)
    std::map<long long, double> per_eigenvalue_errors;  // q_j -> |alpha sqrt(b_j) + sqrt(b_j)/(2g) - c_j|
    std::map<long long, long long> c;                   // q_j -> c_j
    std::map<long long, long long> b;                   // q_j -> square-free part b_j
};

struct PGSTSearchResult {
    bool achieved = false;
    PGSTWitness best;
};

inline PGSTSearchResult search_pgst_time(const Graph& g, int u, int v, double epsilon,
                                         long long alpha_max) {
    const RegularityInfo reg = regularity(g);
    if (!reg.is_regular || reg.degree < 2)
        throw precondition_error("search_pgst_time: requires a regular base graph with r >= 2");
    if (!is_connected(g)) throw precondition_error("search_pgst_time: graph is not connected");
    if (epsilon <= 0) throw input_error("search_pgst_time: epsilon must be positive");
    if (alpha_max < 1) throw input_error("search_pgst_time: alpha_max must be at least 1");

    const int r = reg.degree;
    const SpectralDecomposition base = decompose(signless_laplacian(g));
    const PSTCertificate cert = certify_pst(base, u, v);
    if (!cert.holds)
        throw precondition_error(
            "search_pgst_time: the base graph has no signless Laplacian perfect state transfer "
            "between u and v (reason: " +
            std::string(to_string(cert.failure_reason)) + ")");
    if (cert.delta != 1)
        throw precondition_error(
            "search_pgst_time: base support is not integral; the construction needs integer "
            "eigenvalues");
    const long long gval = cert.g;
    const bool divisible = r % gval == 0;
    if (reg.is_bipartite && !divisible)
        throw precondition_error(
            "search_pgst_time: g must divide r for a bipartite base (the e^{-itr} f_0 phase "
            "cannot be aligned otherwise)");

    PGSTWitness w;
    w.u = u;
    w.v = v;
    w.g = gval;
    w.r_divisible_by_g = divisible;

    // Square-free parts of the gap quantities; equal b values share one
    // integer target c in the sweep.
    std::vector<long long> qs, bs;
    for (const double qd : cert.support_values) {
        const long long q = std::llround(qd);
        if (q == 0) continue;
        const long long D = (q + r - 2) * (q + r - 2) + 4 * q;
        const SquarefreeDecomposition sf = squarefree_decompose(D);
        qs.push_back(q);
        bs.push_back(sf.b);
        w.b[q] = sf.b;
    }
    std::vector<long long> distinct_b = bs;
    std::sort(distinct_b.begin(), distinct_b.end());
    distinct_b.erase(std::unique(distinct_b.begin(), distinct_b.end()), distinct_b.end());
    std::vector<double> sqrt_b, shift;
    for (const long long b : distinct_b) {
        sqrt_b.push_back(std::sqrt(static_cast<double>(b)));
        shift.push_back(sqrt_b.back() / (2.0 * gval));
    }

    double best_e = std::numeric_limits<double>::infinity();
    long long best_alpha = 1;
    for (long long alpha = 1; alpha <= alpha_max; ++alpha) {
        double e = 0;
        for (std::size_t j = 0; j < sqrt_b.size(); ++j) {
            const double x = alpha * sqrt_b[j] + shift[j];
            e = std::max(e, std::abs(x - std::round(x)));
        }
        if (e < best_e) {
            best_e = e;
            best_alpha = alpha;
        }
    }
    w.alpha = best_alpha;
    w.max_residual = best_e;
    for (std::size_t k = 0; k < qs.size(); ++k) {
        const double x =
            best_alpha * std::sqrt(static_cast<double>(bs[k])) +
            std::sqrt(static_cast<double>(bs[k])) / (2.0 * gval);
        w.c[qs[k]] = std::llround(x);
        w.per_eigenvalue_errors[qs[k]] = std::abs(x - std::round(x));
    }

    w.t_star = (4.0 * best_alpha + 2.0 / gval) * std::numbers::pi;
    w.fidelity = std::abs(qgraph_amplitude(g, base, u, v, w.t_star).value);

    // Local refinement: the fastest phase in Q(Q(G)) is the top eigenvalue
    // q_{0+}, so a half-period window around t_star brackets the local peak.
    const double window = std::numbers::pi / (2.0 * qpm(r, 2.0 * r).first);
    const auto mod_amp = [&](double t) {
        return std::abs(qgraph_amplitude(g, base, u, v, t).value);
    };
    const auto [t_ref, f_ref] =
        detail::golden_max(mod_amp, w.t_star - window, w.t_star + window, 1e-12);
    if (f_ref > w.fidelity) {
        w.refined_t = t_ref;
        w.refined_fidelity = f_ref;
    } else {
        w.refined_t = w.t_star;
        w.refined_fidelity = w.fidelity;
    }

    return {w.fidelity > 1.0 - epsilon, w};
}

}  // namespace qwalk
