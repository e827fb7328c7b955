//
// wstar : finite W*-algebra commutator toolkit
// module: spectral -- eigendecomposition and center-relative spectral projections
//

#pragma once

#include <limits>
#include <vector>

#include "wstar/algebra.hpp"

namespace wstar {

/// Per-block spectral decomposition of a self-adjoint element. Eigenvalues are
/// sorted ascending; eigenvector columns match that order and carry a
/// deterministic phase (first significant component real positive), so the
/// decomposition is reproducible bit-for-bit on identical input.
struct SpectralData {
    AlgebraShape shape;
    std::vector<Eigen::VectorXd> eigenvalues;
    std::vector<Matrix> eigenvectors;
};

namespace detail {

inline void fix_phases(Matrix& v) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        for (Eigen::Index i = 0; i < v.rows(); ++i) {
            double m = std::abs(v(i, j));
            if (m > 1e-12) {
                v.col(j) *= std::conj(v(i, j)) / m;
                break;
            }
        }
    }
}

} // namespace detail

inline SpectralData eigh(const BlockElement& a, double tol = default_tol) {
    require_hermitian(a, tol);
    SpectralData out{a.shape, {}, {}};
    out.eigenvalues.reserve(a.blocks.size());
    out.eigenvectors.reserve(a.blocks.size());
    for (const Matrix& b : a.blocks) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(b));
        if (es.info() != Eigen::Success)
            throw NumericalFailure("eigendecomposition did not converge");
        Matrix v = es.eigenvectors();
        detail::fix_phases(v);
        out.eigenvalues.push_back(es.eigenvalues());
        out.eigenvectors.push_back(std::move(v));
    }
    return out;
}

inline BlockElement reconstruct(const SpectralData& s) {
    std::vector<Matrix> blocks;
    blocks.reserve(s.eigenvectors.size());
    for (std::size_t k = 0; k < s.eigenvectors.size(); ++k)
        blocks.push_back(s.eigenvectors[k] * s.eigenvalues[k].asDiagonal() *
                         s.eigenvectors[k].adjoint());
    return detail::assemble(s.shape, std::move(blocks));
}

enum class Region { below, at, above };

namespace detail {

// Eigenvalue ties against a central scalar are decided with a scale-aware
// tolerance local to the block, so a block's classification never depends
// on the content of other blocks.
inline double block_eig_tol(const Matrix& block, double tol) {
    return tol * std::max(1.0, max_abs(block));
}

struct RegionIndices {
    std::vector<int> below, at, above;
};

inline RegionIndices classify(const Eigen::VectorXd& eigs, double c, double eig_tol) {
    RegionIndices out;
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        if (std::abs(eigs(i) - c) <= eig_tol)
            out.at.push_back(static_cast<int>(i));
        else if (eigs(i) < c)
            out.below.push_back(static_cast<int>(i));
        else
            out.above.push_back(static_cast<int>(i));
    }
    return out;
}

// projection onto the span of the selected eigenvector columns
inline Matrix span_projection(const Matrix& v, const std::vector<int>& cols) {
    Matrix p = Matrix::Zero(v.rows(), v.rows());
    for (int j : cols) p += v.col(j) * v.col(j).adjoint();
    return p;
}

} // namespace detail

/// Spectral projection of a self-adjoint element relative to a central
/// element: per block the span of eigenvectors with eigenvalue below / at /
/// above the block scalar. The three regions partition the identity.
inline BlockProjection spectral_projection(const BlockElement& a, const CentralElement& c,
                                           Region region, double tol = default_tol) {
    require_same_shape(a.shape, c.shape);
    require_selfadjoint(c, tol);
    SpectralData s = eigh(a, tol);
    std::vector<Matrix> blocks;
    std::vector<int> ranks;
    for (int k = 0; k < a.shape.num_blocks(); ++k) {
        std::size_t uk = static_cast<std::size_t>(k);
        double eig_tol = detail::block_eig_tol(a.blocks[uk], tol);
        detail::RegionIndices idx = detail::classify(s.eigenvalues[uk], c.scalars[uk].real(), eig_tol);
        const std::vector<int>& sel =
            region == Region::below ? idx.below : (region == Region::at ? idx.at : idx.above);
        blocks.push_back(detail::span_projection(s.eigenvectors[uk], sel));
        ranks.push_back(static_cast<int>(sel.size()));
    }
    return BlockProjection{a.shape, std::move(blocks), std::move(ranks)};
}

/// Per-block region cardinalities (below / at / above) of the spectrum of a
/// relative to c. The counting core shared by the lattice and certificate code.
struct RegionCounts {
    int below = 0, at = 0, above = 0;
};

inline std::vector<RegionCounts> region_counts(const SpectralData& s, const BlockElement& a,
                                               const CentralElement& c, double tol = default_tol) {
    require_same_shape(a.shape, c.shape);
    std::vector<RegionCounts> out(static_cast<std::size_t>(a.shape.num_blocks()));
    for (std::size_t k = 0; k < out.size(); ++k) {
        double eig_tol = detail::block_eig_tol(a.blocks[k], tol);
        detail::RegionIndices idx = detail::classify(s.eigenvalues[k], c.scalars[k].real(), eig_tol);
        out[k] = RegionCounts{static_cast<int>(idx.below.size()), static_cast<int>(idx.at.size()),
                              static_cast<int>(idx.above.size())};
    }
    return out;
}

// ---------------------------------------------------------------------------
// spectral projection order properties
// ---------------------------------------------------------------------------

/// Report on the order calculus of center-relative spectral projections for
/// c1 ≤ c2: monotone region ranks, the bounds a·e(−∞,c] ≤ c·e(−∞,c] and
/// a·e[c,+∞) ≥ c·e[c,+∞) at c1 and c2, and a·e{c} = c·e{c}.
struct SpectralOrderReport {
    bool rank_monotone = false;
    bool lower_bound_holds = false;
    bool upper_bound_holds = false;
    bool at_equality_holds = false;
    double lower_margin = 0.0;  // min eig of c·e(−∞,c] − a·e(−∞,c]
    double upper_margin = 0.0;  // min eig of a·e[c,+∞) − c·e[c,+∞)
    double at_residual = 0.0;   // max entry of |(a − c)·e{c}|

    bool passed() const {
        return rank_monotone && lower_bound_holds && upper_bound_holds && at_equality_holds;
    }
};

inline SpectralOrderReport spectral_order_check(const BlockElement& a, const CentralElement& c1,
                                                const CentralElement& c2, double tol = default_tol) {
    require_same_shape(a.shape, c1.shape);
    require_same_shape(a.shape, c2.shape);
    require_hermitian(a, tol);
    require_selfadjoint(c1, tol);
    require_selfadjoint(c2, tol);
    for (std::size_t k = 0; k < c1.scalars.size(); ++k)
        if (c1.scalars[k].real() > c2.scalars[k].real() + tol)
            throw PreconditionViolated("monotonicity checks need c1 <= c2 per block");

    SpectralData s = eigh(a, tol);
    std::vector<RegionCounts> n1 = region_counts(s, a, c1, tol);
    std::vector<RegionCounts> n2 = region_counts(s, a, c2, tol);

    SpectralOrderReport rep;
    rep.rank_monotone = true;
    for (std::size_t k = 0; k < n1.size(); ++k)
        if (n1[k].below > n2[k].below || n1[k].above < n2[k].above) rep.rank_monotone = false;

    rep.lower_margin = std::numeric_limits<double>::infinity();
    rep.upper_margin = std::numeric_limits<double>::infinity();
    rep.at_residual = 0.0;
    double tol_scale = tol * std::max(1.0, max_abs(a));
    for (const CentralElement* c : {&c1, &c2}) {
        BlockProjection below = spectral_projection(a, *c, Region::below, tol);
        BlockProjection at = spectral_projection(a, *c, Region::at, tol);
        BlockProjection above = spectral_projection(a, *c, Region::above, tol);
        BlockElement e_le = add(to_element(below), to_element(at));
        BlockElement e_ge = add(to_element(above), to_element(at));
        BlockElement cel = to_element(*c);

        // products of a with its own spectral projections commute, so the
        // hermitian parts below only strip numerical noise
        auto sym_product = [](const BlockElement& x, const BlockElement& e) {
            BlockElement p = multiply(x, e);
            std::vector<Matrix> blocks;
            blocks.reserve(p.blocks.size());
            for (const Matrix& b : p.blocks) blocks.push_back(hermitian_part(b));
            return detail::assemble(p.shape, std::move(blocks));
        };
        BlockElement a_le = sym_product(a, e_le);
        BlockElement c_le = sym_product(cel, e_le);
        BlockElement a_ge = sym_product(a, e_ge);
        BlockElement c_ge = sym_product(cel, e_ge);
        rep.lower_margin = std::min(rep.lower_margin, min_eigenvalue(subtract(c_le, a_le), tol));
        rep.upper_margin = std::min(rep.upper_margin, min_eigenvalue(subtract(a_ge, c_ge), tol));
        rep.at_residual =
            std::max(rep.at_residual, max_abs(multiply(subtract(a, cel), to_element(at))));
    }
    rep.lower_bound_holds = rep.lower_margin >= -tol_scale;
    rep.upper_bound_holds = rep.upper_margin >= -tol_scale;
    rep.at_equality_holds = rep.at_residual <= 2.0 * tol_scale;
    return rep;
}

// ---------------------------------------------------------------------------
// singular value function
// ---------------------------------------------------------------------------

/// Step function t ↦ μ_t(x): the nonincreasing rearrangement of the singular
/// values of all blocks, weighted by the trace (weight 1 per singular value
/// here). Total weight equals the trace of the identity.
struct SingularValueFunction {
    struct Step {
        double weight;
        double value;
    };
    std::vector<Step> steps;

    double total_weight() const {
        double w = 0.0;
        for (const Step& s : steps) w += s.weight;
        return w;
    }

    std::vector<double> values() const {
        std::vector<double> v;
        v.reserve(steps.size());
        for (const Step& s : steps) v.push_back(s.value);
        return v;
    }
};

inline SingularValueFunction mu_function(const BlockElement& x) {
    std::vector<double> sv;
    sv.reserve(static_cast<std::size_t>(x.shape.total_trace()));
    for (const Matrix& b : x.blocks) {
        Eigen::JacobiSVD<Matrix> svd(b);
        if (svd.info() != Eigen::Success)
            throw NumericalFailure("singular value decomposition did not converge");
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
            sv.push_back(svd.singularValues()(i));
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    SingularValueFunction out;
    out.steps.reserve(sv.size());
    for (double v : sv) out.steps.push_back({1.0, v});
    return out;
}

} // namespace wstar
