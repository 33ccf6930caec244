#pragma once

#include <cmath>
#include <vector>

#include "mgesc/errors.hpp"
#include "mgesc/params.hpp"
#include "mgesc/rational.hpp"

namespace mgesc {

// Screened Coulomb potential V(r) = -(a/r) * [1 + (1 + b r) exp(-2 b r)].
// Reduces exactly to the Coulomb core -2a/r at b = 0.
inline double eval_mgesc(const PotentialParams& params, double r) {
    params.validate();
    if (!(r > 0.0)) throw domain_error("eval_mgesc: r must be > 0 (singular at the origin)");
    const double br = params.b * r;
    return -(params.a / r) * (1.0 + (1.0 + br) * std::exp(-2.0 * br));
}

// Exactly solvable unperturbed piece, V0(r) = -2a/r.
inline double eval_coulomb_core(const PotentialParams& params, double r) {
    params.validate();
    if (!(r > 0.0)) throw domain_error("eval_coulomb_core: r must be > 0");
    return -2.0 * params.a / r;
}

// Exact coefficients of (1 + x) exp(-2x) = sum c_i x^i for i = 1..order, so that
// V(r) = -2a/r - a * sum_{i>=1} c_i b^i r^{i-1}. Built from the Cauchy product of
// (1 + x) with the Taylor series of exp(-2x); no floating-point roundoff.
inline std::vector<Rational> series_coefficients(int order) {
    if (order < 1) throw argument_error("series_coefficients: order must be >= 1");
    if (order > 20) throw argument_error("series_coefficients: order capped at 20 (exact int64 factorials)");
    std::vector<Rational> values;
    values.reserve(static_cast<std::size_t>(order));
    Rational exp_prev(1);        // (-2)^{i-1}/(i-1)!
    for (int i = 1; i <= order; ++i) {
        const Rational exp_i = exp_prev * Rational(-2, i); // (-2)^i / i!
        values.push_back(exp_i + exp_prev);
        exp_prev = exp_i;
    }
    return values;
}

// Truncated perturbation dV(r) = V - V0 = -a * sum_{i=1..order} c_i b^i r^{i-1}.
// Supported truncations: 1 (constant ab), 3 (adds the r^2 term), 4 (adds the r^3
// term, the working truncation of the series results). The r^4 term is deliberately
// excluded; the assembled series carries no beta^5 contribution.
inline double eval_perturbation(const PotentialParams& params, double r, int truncation_order) {
    params.validate();
    if (r < 0.0) throw domain_error("eval_perturbation: r must be >= 0");
    if (truncation_order != 1 && truncation_order != 3 && truncation_order != 4)
        throw argument_error("eval_perturbation: truncation_order must be one of {1, 3, 4}");
    const double ab = params.a * params.b;
    double dv = ab;                                             // -a * c1 * b, c1 = -1
    if (truncation_order >= 3) {
        const double b3 = params.b * params.b * params.b;
        dv -= (2.0 / 3.0) * params.a * b3 * r * r;              // -a * c3 * b^3 r^2, c3 = 2/3
        if (truncation_order >= 4)
            dv += (2.0 / 3.0) * params.a * b3 * params.b * r * r * r; // c4 = -2/3
    }
    return dv;
}

// Full potential plus the centrifugal barrier l(l+1) hbar^2 / (2 m r^2).
inline double eval_effective(const PotentialParams& params, int l, double r) {
    if (l < 0) throw argument_error("eval_effective: l must be >= 0");
    if (!(r > 0.0)) throw domain_error("eval_effective: r must be > 0");
    const double barrier =
        static_cast<double>(l) * (l + 1) * params.hbar * params.hbar / (2.0 * params.mass * r * r);
    return eval_mgesc(params, r) + barrier;
}

} // namespace mgesc
