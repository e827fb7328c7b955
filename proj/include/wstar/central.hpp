//
// wstar : finite W*-algebra commutator toolkit
// module: central -- the optimal central element c0 and its certificate
//
// For a self-adjoint element a the lower set collects central elements whose
// below-projection is strictly subordinate to the above-projection on every
// block; c0 is its supremum, which per block is the lower median of the
// eigenvalue list. The balance certificate witnesses the rank equivalence
// (below + q) ~ (above + r) inside the eigenspace at c0 that makes the exact
// commutator identity constructible.
//

#pragma once

#include <optional>

#include "wstar/norms.hpp"
#include "wstar/spectral.hpp"

namespace wstar {

/// c belongs to the lower set iff on EVERY block strictly fewer eigenvalues
/// lie below the scalar than above it.
inline bool lower_set_member(const BlockElement& a, const CentralElement& c,
                             double tol = default_tol) {
    require_hermitian(a, tol);
    require_selfadjoint(c, tol);
    SpectralData s = eigh(a, tol);
    for (const RegionCounts& n : region_counts(s, a, c, tol))
        if (!(n.below < n.above)) return false;
    return true;
}

/// Mirror image: strictly more eigenvalues below than above on every block.
inline bool upper_set_member(const BlockElement& a, const CentralElement& c,
                             double tol = default_tol) {
    require_hermitian(a, tol);
    require_selfadjoint(c, tol);
    SpectralData s = eigh(a, tol);
    for (const RegionCounts& n : region_counts(s, a, c, tol))
        if (!(n.below > n.above)) return false;
    return true;
}

namespace detail {

// lower median: 1-based index ceil(n/2) of the ascending eigenvalue list
inline double lower_median(const Eigen::VectorXd& eigs) {
    Eigen::Index n = eigs.size();
    return eigs((n - 1) / 2);
}

} // namespace detail

/// The supremum of the lower set: per block the lower median eigenvalue.
inline CentralElement c0_compute(const BlockElement& a, double tol = default_tol) {
    require_hermitian(a, tol);
    SpectralData s = eigh(a, tol);
    std::vector<Complex> scalars;
    scalars.reserve(s.eigenvalues.size());
    for (const Eigen::VectorXd& eigs : s.eigenvalues)
        scalars.emplace_back(detail::lower_median(eigs), 0.0);
    return CentralElement{a.shape, std::move(scalars)};
}

struct BlockInterval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Per block the closed interval of centers for which the exact commutator
/// identity is attainable: the single median for odd dimension, the interval
/// between the two middle eigenvalues for even dimension.
inline std::vector<BlockInterval> median_interval(const BlockElement& a, double tol = default_tol) {
    require_hermitian(a, tol);
    SpectralData s = eigh(a, tol);
    std::vector<BlockInterval> out;
    out.reserve(s.eigenvalues.size());
    for (const Eigen::VectorXd& eigs : s.eigenvalues) {
        Eigen::Index n = eigs.size();
        if (n % 2 == 1) {
            double m = eigs((n - 1) / 2);
            out.push_back({m, m});
        } else {
            out.push_back({eigs(n / 2 - 1), eigs(n / 2)});
        }
    }
    return out;
}

/// Witness that below- and above-projections of a at c0 become equivalent
/// after moving q_rank (resp. r_rank) eigenvectors out of the eigenspace at
/// c0: rank(below) + q = rank(above) + r with q + r bounded by the
/// multiplicity of c0. Exists for every self-adjoint element here.
struct BalanceCertificate {
    CentralElement c0;
    std::vector<int> q_rank;
    std::vector<int> r_rank;
};

inline BalanceCertificate balance_certificate(const BlockElement& a, double tol = default_tol) {
    CentralElement c0 = c0_compute(a, tol);
    SpectralData s = eigh(a, tol);
    std::vector<RegionCounts> counts = region_counts(s, a, c0, tol);
    std::vector<int> q, r;
    q.reserve(counts.size());
    r.reserve(counts.size());
    for (const RegionCounts& n : counts) {
        int diff = n.above - n.below;
        int qk = std::max(diff, 0);
        int rk = std::max(-diff, 0);
        if (qk + rk > n.at || n.below + qk != n.above + rk)
            throw CertificateImpossible("rank balance failed; this is a bug");
        q.push_back(qk);
        r.push_back(rk);
    }
    return BalanceCertificate{std::move(c0), std::move(q), std::move(r)};
}

// ---------------------------------------------------------------------------
// distance to the center
// ---------------------------------------------------------------------------

struct CentralDistance {
    double value = 0.0;
    CentralElement minimizer;
};

namespace detail {

// golden-section minimization of a convex scalar objective on [lo, hi]
template <typename F>
double golden_section(F&& f, double lo, double hi, double xtol = 1e-10, int max_iter = 200) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

} // namespace detail

/// Best central approximation of a self-adjoint element in the given norm.
/// Operator norm and Schatten-1 have closed-form per-block minimizers
/// (Chebyshev center and lower median); other norms fall back to a per-block
/// golden-section search, which is exact for the separable Schatten family.
inline CentralDistance dist_to_center(const BlockElement& a, const SymmetricNorm& norm,
                                      double tol = default_tol) {
    validate(norm);
    require_hermitian(a, tol);
    SpectralData s = eigh(a, tol);
    std::vector<Complex> scalars;
    scalars.reserve(s.eigenvalues.size());
    for (const Eigen::VectorXd& eigs : s.eigenvalues) {
        double lo = eigs.minCoeff(), hi = eigs.maxCoeff();
        double m;
        if (norm.kind == NormKind::Operator) {
            m = 0.5 * (lo + hi);
        } else if (norm.kind == NormKind::Schatten && norm.p == 1.0) {
            m = detail::lower_median(eigs);
        } else {
            auto obj = [&](double c) {
                std::vector<double> vals;
                vals.reserve(static_cast<std::size_t>(eigs.size()));
                for (Eigen::Index i = 0; i < eigs.size(); ++i) vals.push_back(std::abs(eigs(i) - c));
                return detail::norm_of_values(std::move(vals), norm);
            };
            m = lo == hi ? lo : detail::golden_section(obj, lo, hi);
        }
        scalars.emplace_back(m, 0.0);
    }
    CentralElement minimizer{a.shape, std::move(scalars)};
    double value = norm_eval(subtract_central(a, minimizer), norm);
    return CentralDistance{value, std::move(minimizer)};
}

} // namespace wstar
