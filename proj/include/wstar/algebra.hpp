//
// wstar : finite W*-algebra commutator toolkit
// module: algebra -- block elements, PSD order, projection equivalence
//
// The algebra is a finite direct sum of full complex matrix factors
// M = ⊕_k M_{n_k}(C). Its center consists of one scalar per block, and
// projection comparison reduces to per-block rank arithmetic. All values
// are immutable after construction; every operation is a pure function.
//

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wstar/errors.hpp"

namespace wstar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double default_tol = 1e-9;

/// Block structure: one full matrix factor of size n_k per block.
struct AlgebraShape {
    std::vector<int> block_dims;

    int num_blocks() const { return static_cast<int>(block_dims.size()); }
    int dim(int k) const { return block_dims[static_cast<std::size_t>(k)]; }

    /// trace of the identity, Σ n_k
    int total_trace() const {
        int t = 0;
        for (int n : block_dims) t += n;
        return t;
    }

    /// linear dimension of the algebra, Σ n_k²
    int total_dim() const {
        int t = 0;
        for (int n : block_dims) t += n * n;
        return t;
    }

    bool operator==(const AlgebraShape&) const = default;
};

inline AlgebraShape make_shape(std::vector<int> dims) {
    if (dims.empty()) throw DimensionMismatch("shape must have at least one block");
    for (int n : dims)
        if (n < 1) throw DimensionMismatch("block dimension must be >= 1");
    return AlgebraShape{std::move(dims)};
}

inline void require_same_shape(const AlgebraShape& a, const AlgebraShape& b) {
    if (!(a == b)) throw ShapeMismatch("operands live on different algebra shapes");
}

/// An algebra element: one complex matrix per block.
struct BlockElement {
    AlgebraShape shape;
    std::vector<Matrix> blocks;
    bool hermitian_hint = false;
};

/// One scalar per block; the model of the center Z(M), embedded as
/// scalars[k]·Identity(n_k).
struct CentralElement {
    AlgebraShape shape;
    std::vector<Complex> scalars;
};

/// A projection stored per block together with its rank.
struct BlockProjection {
    AlgebraShape shape;
    std::vector<Matrix> blocks;
    std::vector<int> ranks;
};

/// A central projection: per block either 0 or the identity.
struct CentralProjection {
    AlgebraShape shape;
    std::vector<bool> mask;

    bool empty() const {
        return std::none_of(mask.begin(), mask.end(), [](bool b) { return b; });
    }
    int count() const { return static_cast<int>(std::count(mask.begin(), mask.end(), true)); }
};

/// Outcome of comparing two projections: the unique central partition into
/// blocks where p sits strictly below q, is equivalent to q, or strictly above.
struct ComparisonVerdict {
    CentralProjection z_minus;
    CentralProjection z_zero;
    CentralProjection z_plus;
};

// ---------------------------------------------------------------------------
// element helpers
// ---------------------------------------------------------------------------

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double max_abs(const BlockElement& x) {
    double v = 0.0;
    for (const Matrix& b : x.blocks) v = std::max(v, max_abs(b));
    return v;
}

inline double hermitian_residual(const BlockElement& x) {
    double r = 0.0;
    for (const Matrix& b : x.blocks) r = std::max(r, max_abs(Matrix(b - b.adjoint())));
    return r;
}

inline bool is_hermitian(const BlockElement& x, double tol = default_tol) {
    return hermitian_residual(x) <= tol;
}

inline void require_hermitian(const BlockElement& x, double tol = default_tol) {
    if (!is_hermitian(x, tol)) throw NotHermitian("element is not self-adjoint within tol");
}

inline Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

namespace detail {

// Assembles an element from blocks assumed dimension-correct, computing the
// hermitian hint. Internal construction path for operation results.
inline BlockElement assemble(AlgebraShape shape, std::vector<Matrix> blocks) {
    BlockElement out{std::move(shape), std::move(blocks), false};
    out.hermitian_hint = is_hermitian(out);
    return out;
}

} // namespace detail

inline BlockElement make_element(const AlgebraShape& shape, std::vector<Matrix> matrices,
                                 double tol = default_tol) {
    if (static_cast<int>(matrices.size()) != shape.num_blocks())
        throw DimensionMismatch("block count does not match shape");
    for (int k = 0; k < shape.num_blocks(); ++k) {
        const Matrix& m = matrices[static_cast<std::size_t>(k)];
        if (m.rows() != shape.dim(k) || m.cols() != shape.dim(k))
            throw DimensionMismatch("block " + std::to_string(k) + " has wrong dimensions");
        if (!m.allFinite()) throw NonFiniteEntry("block " + std::to_string(k) + " has a non-finite entry");
    }
    BlockElement out{shape, std::move(matrices), false};
    out.hermitian_hint = is_hermitian(out, tol);
    return out;
}

inline BlockElement zero_element(const AlgebraShape& shape) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(shape.num_blocks()));
    for (int n : shape.block_dims) blocks.push_back(Matrix::Zero(n, n));
    return BlockElement{shape, std::move(blocks), true};
}

inline BlockElement identity_element(const AlgebraShape& shape) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(shape.num_blocks()));
    for (int n : shape.block_dims) blocks.push_back(Matrix::Identity(n, n));
    return BlockElement{shape, std::move(blocks), true};
}

/// Element with the given real diagonal per block; handy for tests and the CLI.
inline BlockElement diagonal_element(const AlgebraShape& shape,
                                     const std::vector<std::vector<double>>& diags) {
    if (static_cast<int>(diags.size()) != shape.num_blocks())
        throw DimensionMismatch("diagonal count does not match shape");
    std::vector<Matrix> blocks;
    for (int k = 0; k < shape.num_blocks(); ++k) {
        const auto& d = diags[static_cast<std::size_t>(k)];
        if (static_cast<int>(d.size()) != shape.dim(k))
            throw DimensionMismatch("diagonal length does not match block dimension");
        Matrix m = Matrix::Zero(shape.dim(k), shape.dim(k));
        for (int i = 0; i < shape.dim(k); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
        blocks.push_back(std::move(m));
    }
    return BlockElement{shape, std::move(blocks), true};
}

// ---------------------------------------------------------------------------
// central elements
// ---------------------------------------------------------------------------

inline CentralElement make_central(const AlgebraShape& shape, std::vector<Complex> scalars) {
    if (static_cast<int>(scalars.size()) != shape.num_blocks())
        throw DimensionMismatch("scalar count does not match block count");
    for (const Complex& s : scalars)
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw NonFiniteEntry("central scalar is not finite");
    return CentralElement{shape, std::move(scalars)};
}

inline CentralElement make_central(const AlgebraShape& shape, const std::vector<double>& scalars) {
    std::vector<Complex> cs(scalars.begin(), scalars.end());
    return make_central(shape, std::move(cs));
}

inline CentralElement zero_central(const AlgebraShape& shape) {
    return CentralElement{shape, std::vector<Complex>(static_cast<std::size_t>(shape.num_blocks()), Complex(0, 0))};
}

inline bool is_selfadjoint(const CentralElement& c, double tol = default_tol) {
    for (const Complex& s : c.scalars)
        if (std::abs(s.imag()) > tol) return false;
    return true;
}

inline void require_selfadjoint(const CentralElement& c, double tol = default_tol) {
    if (!is_selfadjoint(c, tol)) throw NotHermitian("central element is not self-adjoint within tol");
}

inline std::vector<double> real_scalars(const CentralElement& c) {
    std::vector<double> out;
    out.reserve(c.scalars.size());
    for (const Complex& s : c.scalars) out.push_back(s.real());
    return out;
}

/// Embed a central element as scalars[k]·Identity(n_k).
inline BlockElement to_element(const CentralElement& c) {
    std::vector<Matrix> blocks;
    blocks.reserve(c.scalars.size());
    for (int k = 0; k < c.shape.num_blocks(); ++k) {
        int n = c.shape.dim(k);
        blocks.push_back(c.scalars[static_cast<std::size_t>(k)] * Matrix::Identity(n, n));
    }
    return detail::assemble(c.shape, std::move(blocks));
}

// ---------------------------------------------------------------------------
// elementwise arithmetic (plumbing used throughout)
// ---------------------------------------------------------------------------

inline BlockElement add(const BlockElement& a, const BlockElement& b) {
    require_same_shape(a.shape, b.shape);
    std::vector<Matrix> blocks;
    blocks.reserve(a.blocks.size());
    for (std::size_t k = 0; k < a.blocks.size(); ++k) blocks.push_back(a.blocks[k] + b.blocks[k]);
    return detail::assemble(a.shape, std::move(blocks));
}

inline BlockElement subtract(const BlockElement& a, const BlockElement& b) {
    require_same_shape(a.shape, b.shape);
    std::vector<Matrix> blocks;
    blocks.reserve(a.blocks.size());
    for (std::size_t k = 0; k < a.blocks.size(); ++k) blocks.push_back(a.blocks[k] - b.blocks[k]);
    return detail::assemble(a.shape, std::move(blocks));
}

inline BlockElement multiply(const BlockElement& a, const BlockElement& b) {
    require_same_shape(a.shape, b.shape);
    std::vector<Matrix> blocks;
    blocks.reserve(a.blocks.size());
    for (std::size_t k = 0; k < a.blocks.size(); ++k) blocks.push_back(a.blocks[k] * b.blocks[k]);
    return detail::assemble(a.shape, std::move(blocks));
}

inline BlockElement scale(Complex t, const BlockElement& a) {
    std::vector<Matrix> blocks;
    blocks.reserve(a.blocks.size());
    for (const Matrix& b : a.blocks) blocks.push_back(t * b);
    return detail::assemble(a.shape, std::move(blocks));
}

inline BlockElement adjoint(const BlockElement& a) {
    std::vector<Matrix> blocks;
    blocks.reserve(a.blocks.size());
    for (const Matrix& b : a.blocks) blocks.push_back(b.adjoint());
    return detail::assemble(a.shape, std::move(blocks));
}

/// a − c·1 with c central.
inline BlockElement subtract_central(const BlockElement& a, const CentralElement& c) {
    require_same_shape(a.shape, c.shape);
    std::vector<Matrix> blocks;
    blocks.reserve(a.blocks.size());
    for (std::size_t k = 0; k < a.blocks.size(); ++k) {
        int n = a.shape.dim(static_cast<int>(k));
        blocks.push_back(a.blocks[k] - c.scalars[k] * Matrix::Identity(n, n));
    }
    return detail::assemble(a.shape, std::move(blocks));
}

// ---------------------------------------------------------------------------
// core operations
// ---------------------------------------------------------------------------

/// [a, x] = ax − xa, blockwise.
inline BlockElement commutator(const BlockElement& a, const BlockElement& x) {
    require_same_shape(a.shape, x.shape);
    std::vector<Matrix> blocks;
    blocks.reserve(a.blocks.size());
    for (std::size_t k = 0; k < a.blocks.size(); ++k)
        blocks.push_back(a.blocks[k] * x.blocks[k] - x.blocks[k] * a.blocks[k]);
    return detail::assemble(a.shape, std::move(blocks));
}

/// |x| = (x*x)^{1/2} per block. Computed through the singular value
/// decomposition x = UΣV*, which gives |x| = VΣV* directly; forming x*x
/// first would square the condition number and smear the small singular
/// values by ~√eps·‖x‖.
inline BlockElement abs_element(const BlockElement& x) {
    std::vector<Matrix> blocks;
    blocks.reserve(x.blocks.size());
    for (const Matrix& b : x.blocks) {
        Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeFullV);
        if (svd.info() != Eigen::Success)
            throw NumericalFailure("singular value decomposition did not converge");
        const Matrix& v = svd.matrixV();
        blocks.push_back(v * svd.singularValues().asDiagonal() * v.adjoint());
    }
    return detail::assemble(x.shape, std::move(blocks));
}

/// Minimum eigenvalue of a self-adjoint element over all blocks.
inline double min_eigenvalue(const BlockElement& a, double tol = default_tol) {
    require_hermitian(a, tol);
    double m = std::numeric_limits<double>::infinity();
    for (const Matrix& b : a.blocks) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(b), Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw NumericalFailure("eigendecomposition did not converge");
        m = std::min(m, es.eigenvalues().minCoeff());
    }
    return m;
}

/// PSD order: a ≥ b iff the spectrum of a − b stays above −tol on every block.
inline bool psd_geq(const BlockElement& a, const BlockElement& b, double tol = default_tol) {
    require_hermitian(a, tol);
    require_hermitian(b, tol);
    return min_eigenvalue(subtract(a, b), tol) >= -tol;
}

// ---------------------------------------------------------------------------
// projections
// ---------------------------------------------------------------------------

namespace detail {

// rank of a projection block = number of eigenvalues above 1/2; the spectrum
// is {0,1} up to tol-level noise, so 1/2 is an unambiguous threshold
inline int projection_rank(const Matrix& p) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(p), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalFailure("eigendecomposition did not converge");
    int r = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > 0.5) ++r;
    return r;
}

} // namespace detail

inline BlockProjection make_projection(const AlgebraShape& shape, std::vector<Matrix> blocks,
                                       double tol = default_tol) {
    if (static_cast<int>(blocks.size()) != shape.num_blocks())
        throw DimensionMismatch("block count does not match shape");
    std::vector<int> ranks;
    ranks.reserve(blocks.size());
    for (int k = 0; k < shape.num_blocks(); ++k) {
        const Matrix& p = blocks[static_cast<std::size_t>(k)];
        if (p.rows() != shape.dim(k) || p.cols() != shape.dim(k))
            throw DimensionMismatch("projection block has wrong dimensions");
        if (max_abs(Matrix(p - p.adjoint())) > tol)
            throw NotHermitian("projection block is not self-adjoint within tol");
        if (max_abs(Matrix(p * p - p)) > tol)
            throw PreconditionViolated("block is not idempotent within tol");
        ranks.push_back(detail::projection_rank(p));
    }
    return BlockProjection{shape, std::move(blocks), std::move(ranks)};
}

inline BlockProjection zero_projection(const AlgebraShape& shape) {
    std::vector<Matrix> blocks;
    for (int n : shape.block_dims) blocks.push_back(Matrix::Zero(n, n));
    return BlockProjection{shape, std::move(blocks),
                           std::vector<int>(static_cast<std::size_t>(shape.num_blocks()), 0)};
}

inline BlockProjection identity_projection(const AlgebraShape& shape) {
    std::vector<Matrix> blocks;
    std::vector<int> ranks;
    for (int n : shape.block_dims) {
        blocks.push_back(Matrix::Identity(n, n));
        ranks.push_back(n);
    }
    return BlockProjection{shape, std::move(blocks), std::move(ranks)};
}

inline BlockElement to_element(const BlockProjection& p) {
    std::vector<Matrix> blocks = p.blocks;
    return detail::assemble(p.shape, std::move(blocks));
}

inline BlockProjection to_projection(const CentralProjection& z) {
    std::vector<Matrix> blocks;
    std::vector<int> ranks;
    for (int k = 0; k < z.shape.num_blocks(); ++k) {
        int n = z.shape.dim(k);
        bool on = z.mask[static_cast<std::size_t>(k)];
        blocks.push_back(on ? Matrix(Matrix::Identity(n, n)) : Matrix(Matrix::Zero(n, n)));
        ranks.push_back(on ? n : 0);
    }
    return BlockProjection{z.shape, std::move(blocks), std::move(ranks)};
}

/// Central comparison of two projections. In a matrix factor p ≼ q iff
/// rank(p) ≤ rank(q), so the verdict is decided blockwise by rank counts.
/// The three masks always partition the block set.
inline ComparisonVerdict compare_projections(const BlockProjection& p, const BlockProjection& q) {
    require_same_shape(p.shape, q.shape);
    int nb = p.shape.num_blocks();
    CentralProjection minus{p.shape, std::vector<bool>(static_cast<std::size_t>(nb), false)};
    CentralProjection zero{p.shape, std::vector<bool>(static_cast<std::size_t>(nb), false)};
    CentralProjection plus{p.shape, std::vector<bool>(static_cast<std::size_t>(nb), false)};
    for (int k = 0; k < nb; ++k) {
        int rp = p.ranks[static_cast<std::size_t>(k)];
        int rq = q.ranks[static_cast<std::size_t>(k)];
        if (rp < rq)
            minus.mask[static_cast<std::size_t>(k)] = true;
        else if (rp == rq)
            zero.mask[static_cast<std::size_t>(k)] = true;
        else
            plus.mask[static_cast<std::size_t>(k)] = true;
    }
    return ComparisonVerdict{std::move(minus), std::move(zero), std::move(plus)};
}

/// p strictly subordinate to q on every central piece carrying either of
/// them: rank(p_k) < rank(q_k) wherever rank(p_k) > 0 or rank(q_k) > 0.
/// Vacuously true when both vanish everywhere.
inline bool strictly_subordinate(const BlockProjection& p, const BlockProjection& q) {
    require_same_shape(p.shape, q.shape);
    for (std::size_t k = 0; k < p.ranks.size(); ++k) {
        if (p.ranks[k] == 0 && q.ranks[k] == 0) continue;
        if (!(p.ranks[k] < q.ranks[k])) return false;
    }
    return true;
}

} // namespace wstar
