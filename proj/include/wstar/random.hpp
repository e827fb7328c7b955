//
// wstar : finite W*-algebra commutator toolkit
// module: random -- seeded generators for test inputs and Haar sampling
//

#pragma once

#include <random>

#include "wstar/algebra.hpp"

namespace wstar {

using Rng = std::mt19937_64;

inline Matrix complex_gaussian(int n, Rng& rng) {
    std::normal_distribution<double> normal;
    Matrix m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) m(i, j) = Complex(normal(rng), normal(rng));
    return m;
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of the R diagonal absorbed into Q.
inline Matrix haar_unitary(int n, Rng& rng) {
    Matrix z = complex_gaussian(n, rng);
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        Complex d = r(j, j);
        double m = std::abs(d);
        q.col(j) *= (m > 0.0) ? d / m : Complex(1.0, 0.0);
    }
    return q;
}

inline BlockElement random_element(const AlgebraShape& shape, Rng& rng) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(shape.num_blocks()));
    for (int n : shape.block_dims) blocks.push_back(complex_gaussian(n, rng));
    return detail::assemble(shape, std::move(blocks));
}

inline BlockElement random_hermitian(const AlgebraShape& shape, Rng& rng) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(shape.num_blocks()));
    for (int n : shape.block_dims) blocks.push_back(hermitian_part(complex_gaussian(n, rng)));
    return detail::assemble(shape, std::move(blocks));
}

inline BlockElement random_unitary_element(const AlgebraShape& shape, Rng& rng) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(shape.num_blocks()));
    for (int n : shape.block_dims) blocks.push_back(haar_unitary(n, rng));
    return detail::assemble(shape, std::move(blocks));
}

/// Hermitian element with a prescribed spectrum per block, conjugated by a
/// Haar unitary. Used to exercise degenerate eigenvalue configurations.
inline BlockElement random_hermitian_with_spectrum(const AlgebraShape& shape,
                                                   const std::vector<std::vector<double>>& spectra,
                                                   Rng& rng) {
    if (static_cast<int>(spectra.size()) != shape.num_blocks())
        throw DimensionMismatch("spectrum count does not match shape");
    std::vector<Matrix> blocks;
    for (int k = 0; k < shape.num_blocks(); ++k) {
        int n = shape.dim(k);
        const auto& sp = spectra[static_cast<std::size_t>(k)];
        if (static_cast<int>(sp.size()) != n)
            throw DimensionMismatch("spectrum length does not match block dimension");
        Matrix u = haar_unitary(n, rng);
        Eigen::VectorXd d(n);
        for (int i = 0; i < n; ++i) d(i) = sp[static_cast<std::size_t>(i)];
        blocks.push_back(hermitian_part(u * d.asDiagonal() * u.adjoint()));
    }
    return detail::assemble(shape, std::move(blocks));
}

} // namespace wstar
