//
// wstar : finite W*-algebra commutator toolkit
// module: commutator -- unitaries realizing the commutator estimates
//
// Two constructions. The equality unitary pairs the below-region of the
// spectrum with the above-region in the eigenbasis (a counter-diagonal
// involution), which attains |[a,u]| = u*|a−c|u + |a−c| for any center c
// in the median interval. The pairing unitary swaps coordinates n,m with
// λ_m < ε·λ_n, which attains |[a,u]| ≥ (1−ε)|a| on the paired coordinates.
// A brute-force permutation oracle cross-checks both.
//

#pragma once

#include <numeric>
#include <optional>
#include <utility>

#include "wstar/central.hpp"

namespace wstar {

/// Certified construction record: the unitary, both sides of the identity
/// |[a,u]| = u*|a−c|u + |a−c|, and the residuals that attest it.
struct CommutatorReport {
    CentralElement c0;
    BlockElement unitary;
    BlockElement lhs;  // |[a,u]|
    BlockElement rhs;  // u*|a−c|u + |a−c|
    double equality_residual = 0.0;     // max entry of |lhs − rhs|
    double epsilon_bound_margin = 0.0;  // min eig of lhs − |a−c|
    double involution_residual = 0.0;   // max entry of |u² − 1|
    double unitarity_residual = 0.0;    // max entry of |u*u − 1|
};

namespace detail {

inline double involution_residual_of(const BlockElement& u) {
    double r = 0.0;
    for (std::size_t k = 0; k < u.blocks.size(); ++k) {
        const Matrix& b = u.blocks[k];
        r = std::max(r, max_abs(Matrix(b * b - Matrix::Identity(b.rows(), b.cols()))));
    }
    return r;
}

inline double unitarity_residual_of(const BlockElement& u) {
    double r = 0.0;
    for (const Matrix& b : u.blocks) {
        r = std::max(r, max_abs(Matrix(b.adjoint() * b - Matrix::Identity(b.rows(), b.cols()))));
        r = std::max(r, max_abs(Matrix(b * b.adjoint() - Matrix::Identity(b.rows(), b.cols()))));
    }
    return r;
}

// min eigenvalue over blocks of an element hermitian by construction
inline double min_eig_unchecked(const BlockElement& a) {
    double m = std::numeric_limits<double>::infinity();
    for (const Matrix& b : a.blocks) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(b), Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw NumericalFailure("eigendecomposition did not converge");
        m = std::min(m, es.eigenvalues().minCoeff());
    }
    return m;
}

inline CommutatorReport certify(const BlockElement& a, const CentralElement& c,
                                BlockElement unitary) {
    BlockElement absd = abs_element(subtract_central(a, c));
    BlockElement lhs = abs_element(commutator(a, unitary));
    BlockElement rhs = add(multiply(multiply(adjoint(unitary), absd), unitary), absd);
    CommutatorReport rep;
    rep.equality_residual = max_abs(subtract(lhs, rhs));
    rep.epsilon_bound_margin = min_eig_unchecked(subtract(lhs, absd));
    rep.involution_residual = involution_residual_of(unitary);
    rep.unitarity_residual = unitarity_residual_of(unitary);
    rep.c0 = c;
    rep.unitary = std::move(unitary);
    rep.lhs = std::move(lhs);
    rep.rhs = std::move(rhs);
    return rep;
}

} // namespace detail

/// Self-adjoint unitary involution attaining the exact identity
/// |[a,u]| = u*|a−c|u + |a−c|. Default center is c0; any center inside the
/// median interval is accepted. Eigenvectors of the eigenspace at c join the
/// below side (q of them) or the above side (r of them) in deterministic
/// basis order; the rest are fixed points of u.
inline CommutatorReport build_equality_unitary(const BlockElement& a,
                                               std::optional<CentralElement> center = std::nullopt,
                                               double tol = default_tol) {
    require_hermitian(a, tol);
    CentralElement c = center ? std::move(*center) : c0_compute(a, tol);
    require_same_shape(a.shape, c.shape);
    require_selfadjoint(c, tol);

    std::vector<BlockInterval> interval = median_interval(a, tol);
    SpectralData s = eigh(a, tol);

    std::vector<Matrix> ublocks;
    ublocks.reserve(s.eigenvalues.size());
    for (int k = 0; k < a.shape.num_blocks(); ++k) {
        std::size_t uk = static_cast<std::size_t>(k);
        double ck = c.scalars[uk].real();
        double eig_tol = detail::block_eig_tol(a.blocks[uk], tol);
        if (ck < interval[uk].lo - eig_tol || ck > interval[uk].hi + eig_tol)
            throw CenterNotInMedianInterval("center for block " + std::to_string(k) +
                                            " lies outside the median interval");

        detail::RegionIndices idx = detail::classify(s.eigenvalues[uk], ck, eig_tol);
        int q = std::max(static_cast<int>(idx.above.size()) - static_cast<int>(idx.below.size()), 0);
        int r = std::max(static_cast<int>(idx.below.size()) - static_cast<int>(idx.above.size()), 0);

        std::vector<int> lower = idx.below;
        lower.insert(lower.end(), idx.at.begin(), idx.at.begin() + q);
        std::vector<int> upper(idx.at.begin() + q, idx.at.begin() + q + r);
        upper.insert(upper.end(), idx.above.begin(), idx.above.end());

        int n = a.shape.dim(k);
        Matrix j = Matrix::Zero(n, n);
        for (std::size_t i = 0; i < lower.size(); ++i) {
            int lo = lower[i];
            int hi = upper[upper.size() - 1 - i];  // counter-diagonal pairing
            j(lo, hi) = 1.0;
            j(hi, lo) = 1.0;
        }
        for (std::size_t i = static_cast<std::size_t>(q + r); i < idx.at.size(); ++i)
            j(idx.at[i], idx.at[i]) = 1.0;

        ublocks.push_back(s.eigenvectors[uk] * j * s.eigenvectors[uk].adjoint());
    }
    return detail::certify(a, c, detail::assemble(a.shape, std::move(ublocks)));
}

// ---------------------------------------------------------------------------
// the ε-pairing construction
// ---------------------------------------------------------------------------

/// Result of the greedy pairing of a positive nonincreasing sequence:
/// pairs (n,m) with λ_m < ε·λ_n, swapped by the unitary; leftovers are fixed
/// and excluded from the bound. `feasible` is false as soon as any index has
/// no admissible partner; the finite truncation may lack one.
struct PairingOutcome {
    std::vector<std::pair<int, int>> pairs;  // 0-based (n, m), λ_m < ε·λ_n
    std::vector<int> unpaired;
    bool feasible = false;
    double epsilon = 0.0;
    double paired_margin = 0.0;  // min eig of |[a,u]| − (1−ε)|a| on paired coordinates
    BlockElement unitary;
    CommutatorReport report;
};

inline PairingOutcome build_pairing_unitary(const std::vector<double>& lambdas, double epsilon) {
    if (lambdas.empty()) throw PreconditionViolated("need at least one lambda");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw PreconditionViolated("epsilon must lie in (0,1)");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0.0)) throw PreconditionViolated("lambdas must be positive");
        if (i > 0 && lambdas[i] > lambdas[i - 1])
            throw PreconditionViolated("lambdas must be nonincreasing");
    }

    int count = static_cast<int>(lambdas.size());
    std::vector<bool> taken(lambdas.size(), false);
    PairingOutcome out;
    out.epsilon = epsilon;
    // greedy from the largest value; the partner is the largest untaken value
    // strictly inside the ε-window (ties broken by lowest index)
    for (int n = 0; n < count; ++n) {
        if (taken[static_cast<std::size_t>(n)]) continue;
        int partner = -1;
        for (int m = n + 1; m < count; ++m) {
            if (taken[static_cast<std::size_t>(m)]) continue;
            if (lambdas[static_cast<std::size_t>(m)] < epsilon * lambdas[static_cast<std::size_t>(n)]) {
                partner = m;
                break;
            }
        }
        if (partner < 0) {
            out.unpaired.push_back(n);
        } else {
            taken[static_cast<std::size_t>(n)] = true;
            taken[static_cast<std::size_t>(partner)] = true;
            out.pairs.emplace_back(n, partner);
        }
    }
    out.feasible = out.unpaired.empty();

    AlgebraShape shape = make_shape({count});
    BlockElement a = diagonal_element(shape, {lambdas});
    Matrix u = Matrix::Zero(count, count);
    for (int i = 0; i < count; ++i) u(i, i) = taken[static_cast<std::size_t>(i)] ? 0.0 : 1.0;
    for (const auto& [n, m] : out.pairs) {
        u(n, m) = 1.0;
        u(m, n) = 1.0;
    }
    out.unitary = detail::assemble(shape, {u});
    out.report = detail::certify(a, zero_central(shape), out.unitary);

    // bound margin restricted to the paired coordinates: compress onto them
    if (out.pairs.empty()) {
        out.paired_margin = 0.0;  // vacuous
    } else {
        std::vector<int> coords;
        for (const auto& [n, m] : out.pairs) {
            coords.push_back(n);
            coords.push_back(m);
        }
        std::sort(coords.begin(), coords.end());
        BlockElement gap = subtract(out.report.lhs, scale(1.0 - epsilon, abs_element(a)));
        Matrix compressed(coords.size(), coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i)
            for (std::size_t j = 0; j < coords.size(); ++j)
                compressed(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    gap.blocks[0](coords[i], coords[j]);
        Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(compressed), Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw NumericalFailure("eigendecomposition did not converge");
        out.paired_margin = es.eigenvalues().minCoeff();
    }
    return out;
}

// ---------------------------------------------------------------------------
// brute-force permutation oracle
// ---------------------------------------------------------------------------

/// Exhaustive search over permutation unitaries u_π = V P_π V*. Works in the
/// eigenbasis, where the identity reduces to the per-coordinate equalities
/// |λ_{π(i)} − λ_i| = |λ_{π(i)} − c| + |λ_i − c|; this route is independent
/// of the matrix pipeline used by build_equality_unitary.
struct PermutationOracleResult {
    /// per block: an achieving permutation (as image list) when one exists
    std::vector<std::optional<std::vector<int>>> achieving_perm;
    std::vector<bool> reversal_achieves;
    bool achieved = false;             // the full reversal achieves on every block
    bool all_blocks_achievable = false;
};

inline PermutationOracleResult oracle_best_permutation(const BlockElement& a,
                                                       const CentralElement& c,
                                                       double tol = default_tol) {
    require_hermitian(a, tol);
    require_same_shape(a.shape, c.shape);
    require_selfadjoint(c, tol);
    for (int n : a.shape.block_dims)
        if (n > 8) throw BlockTooLarge("permutation oracle is limited to blocks of dimension <= 8");

    SpectralData s = eigh(a, tol);
    PermutationOracleResult out;
    out.achieved = true;
    out.all_blocks_achievable = true;
    for (int k = 0; k < a.shape.num_blocks(); ++k) {
        std::size_t uk = static_cast<std::size_t>(k);
        const Eigen::VectorXd& eigs = s.eigenvalues[uk];
        double ck = c.scalars[uk].real();
        double tol_eq = tol * std::max(1.0, max_abs(a.blocks[uk]));
        int n = a.shape.dim(k);

        auto achieves = [&](const std::vector<int>& perm) {
            for (int i = 0; i < n; ++i) {
                double li = eigs(i), lj = eigs(perm[static_cast<std::size_t>(i)]);
                if (std::abs(std::abs(lj - li) - (std::abs(lj - ck) + std::abs(li - ck))) > tol_eq)
                    return false;
            }
            return true;
        };

        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::optional<std::vector<int>> found;
        do {
            if (achieves(perm)) {
                found = perm;
                break;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));

        std::vector<int> reversal(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) reversal[static_cast<std::size_t>(i)] = n - 1 - i;
        bool rev_ok = achieves(reversal);

        out.achieving_perm.push_back(found);
        out.reversal_achieves.push_back(rev_ok);
        out.achieved = out.achieved && rev_ok;
        out.all_blocks_achievable = out.all_blocks_achievable && found.has_value();
    }
    return out;
}

} // namespace wstar
