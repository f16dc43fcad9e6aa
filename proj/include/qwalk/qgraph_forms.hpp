#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/graph.hpp"
#include "qwalk/spectra.hpp"

namespace qwalk {

/// The pair q+- = (3r + q - 2 +- sqrt((q + r - 2)^2 + 4q)) / 2 spawned in the
/// Q-graph spectrum by a base signless Laplacian eigenvalue q of an r-regular
/// graph. Satisfies q+ + q- = 3r + q - 2 and
/// (q+ + 2 - 2r - q)(q- + 2 - 2r - q) = -q.
inline std::pair<double, double> qpm(int r, double q) {
    if (r < 2) throw precondition_error("qpm: requires degree r >= 2");
    if (q < -1e-9 || q > 2.0 * r + 1e-9)
        throw precondition_error("qpm: base eigenvalue outside [0, 2r]");
    const double disc = std::sqrt((q + r - 2) * (q + r - 2) + 4 * q);
    return {(3 * r + q - 2 + disc) / 2, (3 * r + q - 2 - disc) / 2};
}

/// Orthonormal basis of the null space of the incidence matrix, y_k with
/// R y_k = 0, as columns of an m x l matrix. l = m - rank(R), which is m - n
/// for a connected non-bipartite graph and m - n + 1 for a bipartite one.
inline Eigen::MatrixXd kernel_basis(const IncidenceMatrix& R) {
    const Eigen::MatrixXd Rd = R.entries.cast<double>();
    const int m = static_cast<int>(Rd.cols());
    if (m == 0) return Eigen::MatrixXd(0, 0);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Rd, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double threshold = 1e-10 * std::max(1.0, sv.size() ? sv(0) : 0.0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > threshold) ++rank;
    return svd.matrixV().rightCols(m - rank);
}

enum class QEntryKind { plus, minus, kernel, bipartite_r };

inline const char* to_string(QEntryKind k) {
    switch (k) {
        case QEntryKind::plus: return "plus";
        case QEntryKind::minus: return "minus";
        case QEntryKind::kernel: return "kernel";
        case QEntryKind::bipartite_r: return "bipartite_r";
    }
    return "?";
}

/// One closed-form eigenvalue of Q(Q(G)) with its eigenprojector.
struct QGraphEntry {
    double value = 0;
    int multiplicity = 0;
    QEntryKind kind = QEntryKind::kernel;
    int base_index = -1;        // index of the spawning base eigenvalue (plus/minus only)
    Eigen::MatrixXd projector;  // (n+m) x (n+m)
};

/// Closed-form signless Laplacian eigensystem of the Q-graph of a regular
/// graph: per base eigenvalue q_i a +-pair, a kernel eigenvalue 2r - 2 from
/// the null space of the incidence matrix, and for bipartite bases an extra
/// eigenvalue r. Entries are sorted by value, descending; distinct kinds are
/// kept separate even when their values coincide (r = 2r - 2 at r = 2).
struct QGraphSpectrum {
    int n = 0, m = 0, r = 0;
    bool bipartite = false;
    SpectralDecomposition base;      // of Q_G
    Eigen::MatrixXd kernel_vectors;  // m x l, columns y_k
    std::vector<QGraphEntry> entries;

    int total_multiplicity() const {
        int total = 0;
        for (const auto& e : entries) total += e.multiplicity;
        return total;
    }
};

namespace detail {

// Eigenprojector of q_{i+-}: with c = q_{i+-} + 2 - 2r - q_i,
//   F = 1/(c^2 + q_i) * [ c^2 f   c f R ; c (f R)^T   R^T f R ].
inline Eigen::MatrixXd pair_projector(const Eigen::MatrixXd& f, const Eigen::MatrixXd& Rd,
                                      double c, double qi) {
    const int n = static_cast<int>(f.rows());
    const int m = static_cast<int>(Rd.cols());
    const double denom = c * c + qi;
    const Eigen::MatrixXd fR = f * Rd;
    Eigen::MatrixXd F(n + m, n + m);
    F.topLeftCorner(n, n) = (c * c / denom) * f;
    F.topRightCorner(n, m) = (c / denom) * fR;
    F.bottomLeftCorner(m, n) = F.topRightCorner(n, m).transpose();
    F.bottomRightCorner(m, m) = (1.0 / denom) * (Rd.transpose() * fR);
    return F;
}

}  // namespace detail

inline QGraphSpectrum closed_form_spectrum(const Graph& g,
                                           double cluster_tol = kDefaultClusterTol) {
    const RegularityInfo reg = regularity(g);
    if (!reg.is_regular) throw precondition_error("closed_form_spectrum: graph is not regular");
    if (reg.degree < 2)
        throw precondition_error(
            "closed_form_spectrum: requires degree r >= 2 (r = 1 means G = K2, whose Q-graph "
            "is the path P3)");
    if (!is_connected(g)) throw precondition_error("closed_form_spectrum: graph is not connected");

    QGraphSpectrum qs;
    qs.n = g.vertex_count();
    qs.m = g.edge_count();
    qs.r = reg.degree;
    qs.bipartite = reg.is_bipartite;
    qs.base = decompose(signless_laplacian(g), cluster_tol);
    const Eigen::MatrixXd Rd = incidence(g).entries.cast<double>();
    qs.kernel_vectors = kernel_basis(incidence(g));

    const int n = qs.n, m = qs.m, r = qs.r;
    const int kernel_mult = static_cast<int>(qs.kernel_vectors.cols());
    const int expected_kernel = qs.bipartite ? m - n + 1 : m - n;
    if (kernel_mult != expected_kernel)
        throw std::logic_error("closed_form_spectrum: incidence nullity disagrees with bipartiteness");
    if (qs.bipartite && std::abs(qs.base.eigenvalues.back()) > 1e-9)
        throw std::logic_error("closed_form_spectrum: bipartite base without eigenvalue 0");

    // Bipartite bases drop the q_d = 0 pair; its roles are taken over by the
    // kernel eigenvalue 2r - 2 and the extra eigenvalue r.
    const int pair_count = qs.base.count() - (qs.bipartite ? 1 : 0);
    int paired_mult = 0;
    for (int i = 0; i < pair_count; ++i) {
        const double qi = qs.base.eigenvalues[i];
        const auto [q_plus, q_minus] = qpm(r, qi);
        const Eigen::MatrixXd& f = qs.base.projectors[i];
        const int li = qs.base.multiplicities[i];
        qs.entries.push_back({q_plus, li, QEntryKind::plus, i,
                              detail::pair_projector(f, Rd, q_plus + 2 - 2 * r - qi, qi)});
        paired_mult += 2 * li;
    }
    if (kernel_mult > 0) {
        Eigen::MatrixXd F = Eigen::MatrixXd::Zero(n + m, n + m);
        F.bottomRightCorner(m, m) = qs.kernel_vectors * qs.kernel_vectors.transpose();
        qs.entries.push_back({2.0 * r - 2.0, kernel_mult, QEntryKind::kernel, -1, std::move(F)});
    }
    if (qs.bipartite) {
        // Multiplicity inferred from the total count n + m; equals 1 for a
        // connected base and is cross-checked numerically by the test suite.
        const int mult_r = (n + m) - paired_mult - kernel_mult;
        Eigen::MatrixXd F = Eigen::MatrixXd::Zero(n + m, n + m);
        F.topLeftCorner(n, n) = qs.base.projectors.back();  // f_0
        qs.entries.push_back({static_cast<double>(r), mult_r, QEntryKind::bipartite_r, -1,
                              std::move(F)});
    }
    for (int i = 0; i < pair_count; ++i) {
        const double qi = qs.base.eigenvalues[i];
        const auto [q_plus, q_minus] = qpm(r, qi);
        qs.entries.push_back({q_minus, qs.base.multiplicities[i], QEntryKind::minus, i,
                              detail::pair_projector(qs.base.projectors[i], Rd,
                                                     q_minus + 2 - 2 * r - qi, qi)});
    }
    std::stable_sort(qs.entries.begin(), qs.entries.end(),
                     [](const QGraphEntry& a, const QGraphEntry& b) { return a.value > b.value; });
    return qs;
}

/// For every edge index k, the set of interior base eigenvalue indices i
/// (1..d non-bipartite, 1..d-1 bipartite) with f_{q_i} R e_k != 0. Nonempty
/// for every k; an empty set would violate the structural guarantee and is a
/// test failure, not a runtime error.
inline std::vector<std::vector<int>> lemma41_check(const Graph& g,
                                                   double tol = kDefaultSupportTol) {
    const RegularityInfo reg = regularity(g);
    if (!reg.is_regular || reg.degree < 2)
        throw precondition_error("lemma41_check: requires a regular graph with r >= 2");
    if (!is_connected(g)) throw precondition_error("lemma41_check: graph is not connected");
    const SpectralDecomposition base = decompose(signless_laplacian(g));
    const Eigen::MatrixXd Rd = incidence(g).entries.cast<double>();
    const int interior_end = base.count() - (reg.is_bipartite ? 1 : 0);
    std::vector<std::vector<int>> report(g.edge_count());
    for (int i = 1; i < interior_end; ++i) {
        const Eigen::MatrixXd fR = base.projectors[i] * Rd;
        for (int k = 0; k < g.edge_count(); ++k)
            if (fR.col(k).norm() > tol) report[k].push_back(i);
    }
    return report;
}

}  // namespace qwalk
