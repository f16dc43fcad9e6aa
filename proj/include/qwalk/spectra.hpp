#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

// Default tolerances. The spectra of interest come from integer matrices of
// modest norm, where true eigenvalue gaps stay far above these thresholds.
inline constexpr double kDefaultClusterTol = 1e-8;     // relative, eigenvalue clustering
inline constexpr double kDefaultSupportTol = 1e-7;     // ||f_q e_u|| support membership
inline constexpr double kDefaultCospectralTol = 1e-7;  // S+/S- classification
inline constexpr double kIntegerSnapTol = 1e-7;        // eigenvalue -> integer snapping

inline double max_abs(const Eigen::MatrixXd& M) {
    return M.size() ? M.cwiseAbs().maxCoeff() : 0.0;
}

/// Distinct eigenvalues (strictly decreasing), multiplicities and orthogonal
/// eigenprojectors of a symmetric matrix. Projectors are basis-independent,
/// so the eigenvector sign/basis ambiguity inside multiplicity > 1 spaces
/// never leaks out.
struct SpectralDecomposition {
    int dim = 0;
    std::vector<double> eigenvalues;
    std::vector<int> multiplicities;
    std::vector<Eigen::MatrixXd> projectors;
    std::vector<bool> snapped;  // value was within kIntegerSnapTol of an integer

    int count() const { return static_cast<int>(eigenvalues.size()); }
};

/// Dense eigendecomposition with gap-based clustering: two raw eigensolver
/// outputs belong to the same distinct eigenvalue iff their gap is at most
/// cluster_tol * max(1, ||M||). The reported eigenvalue is the cluster mean,
/// snapped to the nearest integer when within kIntegerSnapTol.
///
/// A cluster_tol larger than half the smallest true gap is undetectable and
/// silently merges eigenspaces; keep it well below the expected gaps.
inline SpectralDecomposition decompose(const Eigen::MatrixXd& M,
                                       double cluster_tol = kDefaultClusterTol) {
    if (M.rows() != M.cols() || M.rows() == 0)
        throw input_error("decompose: matrix must be square and nonempty");
    const double scale = std::max(1.0, max_abs(M));
    if (max_abs(M - M.transpose().eval()) > 1e-12 * scale)
        throw input_error("decompose: matrix is not symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(((M + M.transpose()) / 2.0).eval());
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("decompose: eigensolver did not converge");
    const Eigen::VectorXd& lam = solver.eigenvalues();  // ascending
    const Eigen::MatrixXd& vec = solver.eigenvectors();

    SpectralDecomposition sd;
    sd.dim = static_cast<int>(M.rows());
    const double gap_tol = cluster_tol * scale;
    for (int begin = 0; begin < sd.dim;) {
        int end = begin + 1;
        while (end < sd.dim && lam(end) - lam(end - 1) <= gap_tol) ++end;
        const int len = end - begin;
        double value = lam.segment(begin, len).mean();
        const double nearest = std::round(value);
        const bool snap = std::abs(value - nearest) <= kIntegerSnapTol;
        if (snap) value = nearest;
        sd.eigenvalues.push_back(value);
        sd.multiplicities.push_back(len);
        sd.projectors.push_back(vec.middleCols(begin, len) *
                                vec.middleCols(begin, len).transpose());
        sd.snapped.push_back(snap);
        begin = end;
    }
    // q_0 > q_1 > ... > q_d
    std::reverse(sd.eigenvalues.begin(), sd.eigenvalues.end());
    std::reverse(sd.multiplicities.begin(), sd.multiplicities.end());
    std::reverse(sd.projectors.begin(), sd.projectors.end());
    std::reverse(sd.snapped.begin(), sd.snapped.end());
    return sd;
}

inline SpectralDecomposition decompose(const Eigen::MatrixXi& M,
                                       double cluster_tol = kDefaultClusterTol) {
    return decompose(Eigen::MatrixXd(M.cast<double>()), cluster_tol);
}

/// Eigenvalue support of a vertex: the eigenvalues q with f_q e_u != 0.
struct SupportSet {
    int vertex = 0;
    std::vector<int> indices;     // into the decomposition
    std::vector<double> values;   // matching eigenvalues
};

inline SupportSet support(const SpectralDecomposition& sd, int u,
                          double support_tol = kDefaultSupportTol) {
    if (u < 0 || u >= sd.dim) throw input_error("support: vertex out of range");
    SupportSet s;
    s.vertex = u;
    for (int i = 0; i < sd.count(); ++i)
        if (sd.projectors[i].col(u).norm() > support_tol) {
            s.indices.push_back(i);
            s.values.push_back(sd.eigenvalues[i]);
        }
    return s;
}

/// Strong cospectrality report for a vertex pair: u and v are strongly
/// cospectral iff f_q e_u = +- f_q e_v for every eigenvalue q. S+ collects
/// the eigenvalues with equal projections, S- those with opposite sign;
/// eigenvalues outside both supports satisfy both and land in both sets.
struct CospectralReport {
    int u = 0, v = 0;
    bool strongly_cospectral = false;
    std::vector<int> s_plus, s_minus;                  // indices into the decomposition
    std::vector<double> s_plus_values, s_minus_values;
    std::vector<double> residuals;  // per eigenvalue: min(||f(e_u - e_v)||, ||f(e_u + e_v)||)
};

inline CospectralReport strong_cospectrality(const SpectralDecomposition& sd, int u, int v,
                                             double tol = kDefaultCospectralTol) {
    if (u < 0 || u >= sd.dim || v < 0 || v >= sd.dim)
        throw input_error("strong_cospectrality: vertex out of range");
    if (u == v) throw input_error("strong_cospectrality: vertices must be distinct");
    CospectralReport rep;
    rep.u = u;
    rep.v = v;
    rep.strongly_cospectral = true;
    for (int i = 0; i < sd.count(); ++i) {
        const Eigen::VectorXd cu = sd.projectors[i].col(u);
        const Eigen::VectorXd cv = sd.projectors[i].col(v);
        const double plus_residual = (cu - cv).norm();
        const double minus_residual = (cu + cv).norm();
        if (plus_residual <= tol) {
            rep.s_plus.push_back(i);
            rep.s_plus_values.push_back(sd.eigenvalues[i]);
        }
        if (minus_residual <= tol) {
            rep.s_minus.push_back(i);
            rep.s_minus_values.push_back(sd.eigenvalues[i]);
        }
        if (plus_residual > tol && minus_residual > tol) rep.strongly_cospectral = false;
        rep.residuals.push_back(std::min(plus_residual, minus_residual));
    }
    return rep;
}

}  // namespace qwalk
