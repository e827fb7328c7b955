//
// shared test helpers: independent oracles and input builders
//

#pragma once

#include <algorithm>
#include <vector>

#include <wstar/wstar.hpp>

namespace testutil {

using wstar::BlockElement;
using wstar::Matrix;

inline BlockElement diag(const std::vector<std::vector<double>>& per_block) {
    std::vector<int> dims;
    for (const auto& d : per_block) dims.push_back(static_cast<int>(d.size()));
    return wstar::diagonal_element(wstar::make_shape(dims), per_block);
}

inline Matrix mat2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

// ---------------------------------------------------------------------------
// independent scan oracle for the optimal center: per block, the count
// functions #{λ < t} and #{λ > t} are piecewise constant with breakpoints at
// the eigenvalues, so it suffices to test every eigenvalue and the midpoints
// between consecutive distinct ones. Exact comparisons, no tolerance.
// ---------------------------------------------------------------------------

inline bool strict_count_below(const std::vector<double>& eigs, double t) {
    int below = 0, above = 0;
    for (double l : eigs) {
        if (l < t) ++below;
        if (l > t) ++above;
    }
    return below < above;
}

// The member set {t : #below(t) < #above(t)} is downward closed and its
// boundary is an eigenvalue (counts change only there), but it may be open at
// the boundary. The supremum is therefore the largest eigenvalue whose
// left-side probe (midpoint to the previous distinct eigenvalue) is a member.
inline double scan_optimal_center(std::vector<double> eigs) {
    std::sort(eigs.begin(), eigs.end());
    double best = eigs.front();  // the probe below the minimum is always a member
    double prev = eigs.front() - 2.0;
    for (std::size_t i = 0; i < eigs.size(); ++i) {
        if (i > 0 && eigs[i] > eigs[i - 1]) prev = eigs[i - 1];
        double probe = 0.5 * (prev + eigs[i]);
        if (strict_count_below(eigs, probe)) best = std::max(best, eigs[i]);
    }
    return best;
}

// random spectra with optional repeated values, for degenerate instances
inline std::vector<double> random_spectrum(int n, wstar::Rng& rng, bool degenerate) {
    std::uniform_real_distribution<double> uni(-5.0, 5.0);
    std::vector<double> sp;
    sp.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (degenerate && !sp.empty() && (rng() % 2 == 0))
            sp.push_back(sp[rng() % sp.size()]);
        else
            sp.push_back(uni(rng));
    }
    std::sort(sp.begin(), sp.end());
    return sp;
}

inline wstar::AlgebraShape random_shape(wstar::Rng& rng, int max_dim = 12) {
    std::uniform_int_distribution<int> blocks(1, 2);
    std::uniform_int_distribution<int> dim(1, max_dim);
    std::vector<int> dims;
    int nb = blocks(rng);
    for (int k = 0; k < nb; ++k) dims.push_back(dim(rng));
    return wstar::make_shape(dims);
}

} // namespace testutil
