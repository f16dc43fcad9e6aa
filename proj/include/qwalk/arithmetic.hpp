#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>

#include "qwalk/errors.hpp"
#include "qwalk/spectra.hpp"

namespace qwalk {

/// D = a^2 * b with b square-free.
struct SquarefreeDecomposition {
    long long a = 1;
    long long b = 1;
};

/// Square-free decomposition by trial division; instant at desk scale
/// (D below ~1e9).
inline SquarefreeDecomposition squarefree_decompose(long long D) {
    if (D <= 0) throw input_error("squarefree_decompose: D must be positive");
    long long a = 1, b = D;
    for (long long d = 2; d * d <= b; ++d)
        while (b % (d * d) == 0) {
            b /= d * d;
            a *= d;
        }
    return {a, b};
}

inline bool is_perfect_square(long long D) {
    if (D < 0) return false;
    long long r = std::llround(std::sqrt(static_cast<double>(D)));
    while (r > 0 && r * r > D) --r;
    while ((r + 1) * (r + 1) <= D) ++r;
    return r * r == D;
}

/// q = (a + b * sqrt(delta)) / 2 with delta square-free; delta = 1 covers the
/// all-integer case.
struct QuadraticForm {
    long long a = 0;
    long long b = 0;
    long long delta = 1;

    double value() const { return (a + b * std::sqrt(static_cast<double>(delta))) / 2.0; }
};

/// Outcome of recognizing a conjugate pair of reals as quadratic integers.
///
/// unrecognized: q1 + q2 or (q1 - q2)^2 is not within tol of an integer.
/// parity_failure: the half-forms exist but violate the quadratic-integer
/// parity conditions (delta = 2,3 mod 4 needs a, b both even; delta = 1 mod 4
/// needs a, b of equal parity), so the values are not algebraic integers.
struct QuadraticPairRecognition {
    enum class Status { quadratic_integers, parity_failure, unrecognized };
    Status status = Status::unrecognized;
    QuadraticForm first;   // larger root, coefficient +b
    QuadraticForm second;  // smaller root, coefficient -b
};

inline QuadraticPairRecognition recognize_quadratic_pair(double q1, double q2,
                                                         double tol = kIntegerSnapTol) {
    if (q1 < q2) throw input_error("recognize_quadratic_pair: requires q1 >= q2");
    QuadraticPairRecognition rec;
    const double trace = q1 + q2;
    const double disc = (q1 - q2) * (q1 - q2);
    if (std::abs(trace - std::round(trace)) > tol || std::abs(disc - std::round(disc)) > tol)
        return rec;
    const long long a = std::llround(trace);
    const long long D = std::llround(disc);
    long long b = 0, delta = 1;
    if (D > 0) {
        const SquarefreeDecomposition sf = squarefree_decompose(D);
        b = sf.a;
        delta = sf.b;
    }
    rec.first = {a, b, delta};
    rec.second = {a, -b, delta};
    const bool same_parity = ((a % 2 + 2) % 2) == ((b % 2 + 2) % 2);
    const bool ok = (delta % 4 == 1) ? same_parity : (a % 2 == 0 && b % 2 == 0);
    rec.status = ok ? QuadraticPairRecognition::Status::quadratic_integers
                    : QuadraticPairRecognition::Status::parity_failure;
    return rec;
}

/// g = gcd({(q0 - q) / sqrt(delta) : q in support}).
///
/// The support is passed in exact integers. For delta = 1 these are the
/// integer eigenvalues themselves and the normalized gap is q0 - q. For
/// delta > 1 the caller passes the b-coefficients of the recognized forms
/// q = (a + b*sqrt(delta))/2, for which (q0 - q)/sqrt(delta) = (b0 - b)/2.
inline long long compute_g(std::span<const long long> support, long long q0,
                           long long delta = 1) {
    if (delta < 1) throw input_error("compute_g: delta must be positive");
    long long g = 0;
    for (const long long q : support) {
        long long gap = q0 - q;
        if (delta > 1) {
            if (gap % 2 != 0)
                throw input_error("compute_g: normalized gap (b0 - b)/2 is not an integer");
            gap /= 2;
        }
        g = std::gcd(g, gap);
    }
    if (g == 0) throw input_error("compute_g: trivial support (no nonzero gaps)");
    return g;
}

}  // namespace qwalk
