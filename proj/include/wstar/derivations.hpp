//
// wstar : finite W*-algebra commutator toolkit
// module: derivations -- the inner derivation δ_a, norm bounds, ideal calculus
//
// Ideals of a finite block algebra are exactly sums of blocks, so the
// Calkin and Hoffman identities reduce to per-block structural statements
// (a block component is free, scalar, or zero) which are decided exactly,
// with no tolerance. The norm bounds run the certified chain
// ‖a − c0‖ ≤ ‖[a,u0]‖ through an explicitly constructed unitary.
//

#pragma once

#include <cstdint>

#include "wstar/commutator.hpp"
#include "wstar/random.hpp"

namespace wstar {

/// δ_a(x) = [a,x].
inline BlockElement delta_apply(const BlockElement& a, const BlockElement& x) {
    return commutator(a, x);
}

// ---------------------------------------------------------------------------
// sampled derivation-norm bound
// ---------------------------------------------------------------------------

/// Sandwich test for the derivation norm: the sampled maximum of ‖[a,u]‖ over
/// Haar-random unitaries must reach the distance to the center from below and
/// stay under twice the distance (triangle inequality).
struct SakaiResult {
    double delta_norm_lower = 0.0;
    double dist = 0.0;
    bool passed = false;          // delta_norm_lower ≥ dist − tol
    bool upper_bound_ok = false;  // delta_norm_lower ≤ 2·dist + tol
};

inline SakaiResult sakai_check(const BlockElement& a, int samples, std::uint64_t seed,
                               double tol = default_tol) {
    require_hermitian(a, tol);
    if (samples < 1) throw PreconditionViolated("samples must be >= 1");
    CentralDistance dist = dist_to_center(a, SymmetricNorm::operator_norm(), tol);
    Rng rng(seed);
    double best = 0.0;
    SymmetricNorm op = SymmetricNorm::operator_norm();
    for (int s = 0; s < samples; ++s) {
        BlockElement u = random_unitary_element(a.shape, rng);
        best = std::max(best, norm_eval(commutator(a, u), op));
    }
    SakaiResult out;
    out.delta_norm_lower = best;
    out.dist = dist.value;
    out.passed = best >= dist.value - tol;
    out.upper_bound_ok = best <= 2.0 * dist.value + tol;
    return out;
}

/// Checks |[a,u0]| ≥ (1−ε)·|a−c0| in PSD order with the constructed unitary.
/// In the finite model the construction attains the case ε = 0 as well.
struct EpsilonBoundReport {
    double epsilon = 0.0;
    double margin = 0.0;  // min eig of |[a,u0]| − (1−ε)|a−c0|
    bool passed = false;
    CommutatorReport construction;
};

inline EpsilonBoundReport epsilon_bound_check(const BlockElement& a, double epsilon,
                                              double tol = default_tol) {
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw PreconditionViolated("epsilon must lie in [0,1)");
    EpsilonBoundReport out;
    out.epsilon = epsilon;
    out.construction = build_equality_unitary(a, std::nullopt, tol);
    BlockElement absd = abs_element(subtract_central(a, out.construction.c0));
    out.margin = detail::min_eig_unchecked(
        subtract(out.construction.lhs, scale(1.0 - epsilon, absd)));
    out.passed = out.margin >= -tol;
    return out;
}

// ---------------------------------------------------------------------------
// ideals
// ---------------------------------------------------------------------------

/// A two-sided ideal of ⊕_k M_{n_k}: exactly a subset of blocks.
struct BlockIdealSpec {
    AlgebraShape shape;
    std::vector<bool> members;

    bool contains_block(int k) const { return members[static_cast<std::size_t>(k)]; }

    std::vector<int> member_indices() const {
        std::vector<int> out;
        for (std::size_t k = 0; k < members.size(); ++k)
            if (members[k]) out.push_back(static_cast<int>(k));
        return out;
    }
};

inline BlockIdealSpec make_ideal(const AlgebraShape& shape, const std::vector<int>& indices) {
    std::vector<bool> mask(static_cast<std::size_t>(shape.num_blocks()), false);
    for (int k : indices) {
        if (k < 0 || k >= shape.num_blocks())
            throw DimensionMismatch("ideal references block index out of range");
        mask[static_cast<std::size_t>(k)] = true;
    }
    return BlockIdealSpec{shape, std::move(mask)};
}

/// Membership: x ∈ I iff every block outside I vanishes within tol.
inline bool ideal_contains(const BlockIdealSpec& ideal, const BlockElement& x,
                           double tol = default_tol) {
    require_same_shape(ideal.shape, x.shape);
    for (std::size_t k = 0; k < ideal.members.size(); ++k)
        if (!ideal.members[k] && max_abs(x.blocks[k]) > tol) return false;
    return true;
}

/// I:J = {x : xJ ⊆ I}. A block forces x_k = 0 only when k ∈ J \ I, so the
/// colon ideal consists of I together with the complement of J.
inline BlockIdealSpec ideal_colon(const BlockIdealSpec& i, const BlockIdealSpec& j) {
    require_same_shape(i.shape, j.shape);
    std::vector<bool> mask(i.members.size());
    for (std::size_t k = 0; k < mask.size(); ++k) mask[k] = i.members[k] || !j.members[k];
    return BlockIdealSpec{i.shape, std::move(mask)};
}

// Structural description of a subspace that is per block either the full
// matrix factor or its scalars. One-dimensional blocks are normalized to
// Free since both readings coincide there.
enum class BlockMode { Scalar, Free };

struct SubspaceDescription {
    AlgebraShape shape;
    std::vector<BlockMode> modes;

    long dimension() const {
        long d = 0;
        for (std::size_t k = 0; k < modes.size(); ++k) {
            long n = shape.block_dims[k];
            d += modes[k] == BlockMode::Free ? n * n : 1;
        }
        return d;
    }

    bool operator==(const SubspaceDescription&) const = default;
};

namespace detail {

inline BlockMode normalize_mode(BlockMode m, int dim) { return dim == 1 ? BlockMode::Free : m; }

} // namespace detail

/// Verifies D(J,I) = I:J + Z, where D(J,I) = {x : [x,y] ∈ I for all y ∈ J}.
/// Both sides are computed as structural block descriptions by independent
/// routes (commutant analysis vs the colon ideal) and compared exactly.
struct HoffmanResult {
    bool passed = false;
    SubspaceDescription derivation_side;
    SubspaceDescription colon_plus_center;
    std::optional<BlockElement> witness;  // separates the two sides on failure
};

inline HoffmanResult hoffman_check(const BlockIdealSpec& i, const BlockIdealSpec& j) {
    require_same_shape(i.shape, j.shape);
    const AlgebraShape& shape = i.shape;
    int nb = shape.num_blocks();

    SubspaceDescription d{shape, {}};
    SubspaceDescription cz{shape, {}};
    for (int k = 0; k < nb; ++k) {
        std::size_t uk = static_cast<std::size_t>(k);
        // x ∈ D(J,I): block k is constrained to scalars exactly when y ranges
        // over the full factor (k ∈ J) and the commutator must vanish (k ∉ I)
        BlockMode dm = (j.members[uk] && !i.members[uk]) ? BlockMode::Scalar : BlockMode::Free;
        d.modes.push_back(detail::normalize_mode(dm, shape.dim(k)));
    }
    BlockIdealSpec colon = ideal_colon(i, j);
    for (int k = 0; k < nb; ++k) {
        BlockMode cm = colon.members[static_cast<std::size_t>(k)] ? BlockMode::Free : BlockMode::Scalar;
        cz.modes.push_back(detail::normalize_mode(cm, shape.dim(k)));
    }

    HoffmanResult out;
    out.passed = d == cz;
    if (!out.passed) {
        // matrix unit e_{01} in the first disagreeing block separates the sides
        for (int k = 0; k < nb; ++k) {
            std::size_t uk = static_cast<std::size_t>(k);
            if (d.modes[uk] != cz.modes[uk]) {
                BlockElement w = zero_element(shape);
                w.blocks[uk](0, 1) = 1.0;
                out.witness = std::move(w);
                break;
            }
        }
    }
    out.derivation_side = std::move(d);
    out.colon_plus_center = std::move(cz);
    return out;
}

/// Verifies π⁻¹(center(M/I)) = Z(M) + I: the preimage description is
/// computed from the quotient structure, its dimension compared against the
/// inclusion–exclusion count dim Z + dim I − dim(Z ∩ I).
struct CalkinResult {
    bool passed = false;
    long preimage_dim = 0;
    long center_plus_ideal_dim = 0;
};

inline CalkinResult calkin_check(const BlockIdealSpec& i) {
    const AlgebraShape& shape = i.shape;
    SubspaceDescription pre{shape, {}};
    for (int k = 0; k < shape.num_blocks(); ++k) {
        std::size_t uk = static_cast<std::size_t>(k);
        // M/I ≅ ⊕_{k∉I} M_{n_k}; centrality in the quotient pins every
        // surviving block to scalars
        BlockMode m = i.members[uk] ? BlockMode::Free : BlockMode::Scalar;
        pre.modes.push_back(detail::normalize_mode(m, shape.dim(k)));
    }
    long ideal_dim = 0;
    long overlap = 0;  // central elements supported inside I
    for (int k : i.member_indices()) {
        ideal_dim += static_cast<long>(shape.dim(k)) * shape.dim(k);
        overlap += 1;
    }
    CalkinResult out;
    out.preimage_dim = pre.dimension();
    out.center_plus_ideal_dim = shape.num_blocks() + ideal_dim - overlap;
    out.passed = out.preimage_dim == out.center_plus_ideal_dim;
    return out;
}

// ---------------------------------------------------------------------------
// norm bound through the constructed unitary
// ---------------------------------------------------------------------------

/// The verifiable link of the derivation-norm estimate: |[a,u0]| ≥ |a−c0| in
/// PSD order, hence ‖a−c0‖ ≤ ‖[a,u0]‖ for every symmetric norm by solidity.
struct NormBoundResult {
    BlockElement d;  // a − c0
    double d_norm = 0.0;
    double commutator_norm = 0.0;
    bool passed = false;
};

inline NormBoundResult norm_bound_check(const BlockElement& a, const SymmetricNorm& norm,
                                        double tol = default_tol) {
    validate(norm);
    CommutatorReport rep = build_equality_unitary(a, std::nullopt, tol);
    NormBoundResult out;
    out.d = subtract_central(a, rep.c0);
    out.d_norm = norm_eval(out.d, norm);
    out.commutator_norm = norm_eval(commutator(a, rep.unitary), norm);
    out.passed = out.d_norm <= out.commutator_norm + tol;
    return out;
}

} // namespace wstar
