#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "qwalk/graph.hpp"
#include "qwalk/spectra.hpp"

namespace qwalk {

/// Transition amplitude e_v^T exp(-i t M) e_u at time t (dimensionless,
/// hbar = 1).
struct Amplitude {
    std::complex<double> value;
    double t = 0;

    double fidelity() const { return std::norm(value); }
};

/// Amplitude via the spectral decomposition: sum_i exp(-i t q_i) f_{q_i}(v, u).
inline Amplitude amplitude(const SpectralDecomposition& sd, int u, int v, double t) {
    if (u < 0 || u >= sd.dim || v < 0 || v >= sd.dim)
        throw input_error("amplitude: vertex out of range");
    std::complex<double> acc = 0;
    for (int i = 0; i < sd.count(); ++i)
        acc += std::polar(1.0, -t * sd.eigenvalues[i]) * sd.projectors[i](v, u);
    return {acc, t};
}

/// exp(-i t Q) e_u by scaling-and-squaring Taylor summation, truncated at
/// relative term size 1e-16. Deliberately shares no code with the spectral
/// path: this is the independent oracle the spectral results are checked
/// against.
inline Eigen::VectorXcd oracle_evolve_column(const Eigen::MatrixXd& Q, int u, double t) {
    const int n = static_cast<int>(Q.rows());
    if (Q.cols() != n || n == 0) throw input_error("oracle_evolve_column: matrix must be square");
    if (u < 0 || u >= n) throw input_error("oracle_evolve_column: vertex out of range");

    Eigen::MatrixXcd B = std::complex<double>(0.0, -t) * Q.cast<std::complex<double>>();
    int squarings = 0;
    double norm = B.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm > 0.5) {
        norm /= 2;
        ++squarings;
    }
    B /= std::pow(2.0, squarings);

    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
    for (int k = 1; k < 64; ++k) {
        term = (term * B) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() <= 1e-16 * sum.cwiseAbs().maxCoeff()) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum.col(u);
}

inline Amplitude amplitude_oracle(const Eigen::MatrixXd& Q, int u, int v, double t) {
    if (v < 0 || v >= Q.rows()) throw input_error("amplitude_oracle: vertex out of range");
    return {oracle_evolve_column(Q, u, t)(v), t};
}

/// Q-graph amplitude between two ORIGINAL vertices of G, computed without
/// ever forming Q_{Q(G)}: for an r-regular connected base with eigenprojectors
/// f_{q_i} and gaps Delta_i = sqrt((q_i + r - 2)^2 + 4 q_i),
///
///   e^{-it(3r-2)/2} sum_i e^{-it q_i/2} f_{q_i}(v,u)
///                   (cos(Delta_i t/2) + (q_i + r - 2)/Delta_i sin(Delta_i t/2))
///
/// over all base eigenvalues when G is non-bipartite; a bipartite base drops
/// the q_d = 0 term from the sum and adds e^{-itr} f_0(v,u) outside the
/// prefactor.
inline Amplitude qgraph_amplitude(const Graph& g, const SpectralDecomposition& base, int u,
                                  int v, double t) {
    const RegularityInfo reg = regularity(g);
    if (!reg.is_regular || reg.degree < 2)
        throw precondition_error("qgraph_amplitude: requires a regular base graph with r >= 2");
    if (!is_connected(g)) throw precondition_error("qgraph_amplitude: graph is not connected");
    if (base.dim != g.vertex_count())
        throw precondition_error("qgraph_amplitude: decomposition does not match the graph");
    if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count())
        throw precondition_error(
            "qgraph_amplitude: the closed form covers original vertices of G only");

    const int r = reg.degree;
    const int sum_end = base.count() - (reg.is_bipartite ? 1 : 0);
    std::complex<double> acc = 0;
    for (int i = 0; i < sum_end; ++i) {
        const double qi = base.eigenvalues[i];
        const double delta = std::sqrt((qi + r - 2) * (qi + r - 2) + 4 * qi);
        const double envelope =
            std::cos(delta * t / 2) + (qi + r - 2) / delta * std::sin(delta * t / 2);
        acc += std::polar(1.0, -t * qi / 2) * (base.projectors[i](v, u) * envelope);
    }
    std::complex<double> value = std::polar(1.0, -t * (3.0 * r - 2.0) / 2.0) * acc;
    if (reg.is_bipartite)
        value += std::polar(1.0, -t * r) * base.projectors.back()(v, u);
    return {value, t};
}

/// Grid scan of the transfer fidelity |amplitude|^2 with a golden-section
/// refinement of the best sample.
struct ScanResult {
    std::vector<double> times;
    std::vector<double> fidelities;
    double peak_time = 0;
    double peak_fidelity = 0;
};

namespace detail {

// Golden-section maximization of f on [a, b]; relative abscissa resolution tol.
inline std::pair<double, double> golden_max(const std::function<double(double)>& f, double a,
                                            double b, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol * std::max(1.0, std::abs(b))) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double mid = (a + b) / 2;
    return {mid, f(mid)};
}

}  // namespace detail

inline ScanResult fidelity_scan(const SpectralDecomposition& sd, int u, int v, double t_max,
                                double step) {
    if (step <= 0) throw input_error("fidelity_scan: step must be positive");
    if (u < 0 || u >= sd.dim || v < 0 || v >= sd.dim)
        throw input_error("fidelity_scan: vertex out of range");

    std::vector<double> overlaps(sd.count());
    for (int i = 0; i < sd.count(); ++i) overlaps[i] = sd.projectors[i](v, u);
    const auto fid = [&](double t) {
        std::complex<double> acc = 0;
        for (int i = 0; i < sd.count(); ++i)
            acc += std::polar(1.0, -t * sd.eigenvalues[i]) * overlaps[i];
        return std::norm(acc);
    };

    ScanResult res;
    const auto samples = static_cast<std::size_t>(std::floor(t_max / step + 1e-9)) + 1;
    res.times.reserve(samples);
    res.fidelities.reserve(samples);
    std::size_t best = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = static_cast<double>(k) * step;
        res.times.push_back(t);
        res.fidelities.push_back(fid(t));
        if (res.fidelities[k] > res.fidelities[best]) best = k;
    }
    const double lo = std::max(0.0, res.times[best] - step);
    const double hi = std::min(t_max, res.times[best] + step);
    const auto [t_ref, f_ref] = detail::golden_max(fid, lo, hi, 1e-10);
    if (f_ref > res.fidelities[best]) {
        res.peak_time = t_ref;
        res.peak_fidelity = f_ref;
    } else {
        res.peak_time = res.times[best];
        res.peak_fidelity = res.fidelities[best];
    }
    return res;
}

}  // namespace qwalk
