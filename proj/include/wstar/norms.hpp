//
// wstar : finite W*-algebra commutator toolkit
// module: norms -- symmetric norms evaluated through the singular value function
//

#pragma once

#include <cmath>

#include "wstar/spectral.hpp"

namespace wstar {

enum class NormKind { Operator, Schatten, KyFan };

/// A symmetric norm: monotone under the singular value function and
/// submultiplicative against contractions, ‖uxv‖ ≤ ‖u‖·‖x‖·‖v‖.
struct SymmetricNorm {
    NormKind kind = NormKind::Operator;
    double p = 2.0;  // Schatten exponent
    int k = 1;       // Ky Fan count

    static SymmetricNorm operator_norm() { return {NormKind::Operator, 0.0, 0}; }
    static SymmetricNorm schatten(double p) { return {NormKind::Schatten, p, 0}; }
    static SymmetricNorm ky_fan(int k) { return {NormKind::KyFan, 0.0, k}; }

    std::string name() const {
        switch (kind) {
            case NormKind::Operator: return "operator";
            case NormKind::Schatten: return "schatten(" + std::to_string(p) + ")";
            case NormKind::KyFan: return "kyfan(" + std::to_string(k) + ")";
        }
        return "?";
    }
};

inline void validate(const SymmetricNorm& n) {
    if (n.kind == NormKind::Schatten && !(n.p >= 1.0))
        throw InvalidNorm("schatten exponent must satisfy p >= 1");
    if (n.kind == NormKind::KyFan && n.k < 1) throw InvalidNorm("ky fan count must be >= 1");
}

/// Norm of a nonincreasing weighted singular value sequence.
inline double norm_of_mu(const SingularValueFunction& mu, const SymmetricNorm& n) {
    validate(n);
    switch (n.kind) {
        case NormKind::Operator:
            return mu.steps.empty() ? 0.0 : mu.steps.front().value;
        case NormKind::Schatten: {
            double acc = 0.0;
            for (const auto& s : mu.steps) acc += s.weight * std::pow(s.value, n.p);
            return std::pow(acc, 1.0 / n.p);
        }
        case NormKind::KyFan: {
            double acc = 0.0, left = static_cast<double>(n.k);
            for (const auto& s : mu.steps) {
                if (left <= 0.0) break;
                double w = std::min(left, s.weight);
                acc += w * s.value;
                left -= w;
            }
            return acc;
        }
    }
    return 0.0;
}

inline double norm_eval(const BlockElement& x, const SymmetricNorm& n) {
    return norm_of_mu(mu_function(x), n);
}

namespace detail {

// same norm applied to a plain list of (absolute) values; used by the scalar
// minimization in dist_to_center
inline double norm_of_values(std::vector<double> vals, const SymmetricNorm& n) {
    std::sort(vals.begin(), vals.end(), std::greater<>());
    SingularValueFunction mu;
    mu.steps.reserve(vals.size());
    for (double v : vals) mu.steps.push_back({1.0, v});
    return norm_of_mu(mu, n);
}

} // namespace detail

} // namespace wstar
