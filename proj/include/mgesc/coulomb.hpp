#pragma once

#include <cmath>
#include <vector>

#include "mgesc/errors.hpp"
#include "mgesc/params.hpp"
#include "mgesc/quadrature.hpp"

namespace mgesc {

// Bound-state energy of the pure Coulomb core -2a/r: -2 m a^2 / (hbar^2 (n+l+1)^2).
inline double unperturbed_energy(const PotentialParams& params, const QuantumNumbers& qn) {
    params.validate();
    qn.validate();
    const double np = qn.principal();
    return -2.0 * params.mass * params.a * params.a / (params.hbar * params.hbar * np * np);
}

// Exponential decay rate kappa of the radial function chi ~ r^{l+1} e^{-kappa r}.
inline double decay_rate(const PotentialParams& params, const QuantumNumbers& qn) {
    params.validate();
    qn.validate();
    return 2.0 * params.mass * params.a / (qn.principal() * params.hbar * params.hbar);
}

// Generalized Laguerre polynomial L_j^{(k)}(x), standard normalization
// (L_0 = 1, L_1 = 1 + k - x). Stable upward recurrence.
inline double laguerre(int k, int j, double x) {
    if (k < 0 || j < 0) throw argument_error("laguerre: degree and superscript must be >= 0");
    double prev = 1.0;
    if (j == 0) return prev;
    double cur = 1.0 + k - x;
    for (int i = 2; i <= j; ++i) {
        const double next = ((2.0 * i - 1.0 + k - x) * cur - (i - 1.0 + k) * prev) / i;
        prev = cur;
        cur = next;
    }
    return cur;
}

// Roots of L_j^{(k)} in increasing order, found by sign-change scan plus bisection.
// All j roots are simple and lie inside the scan window, so the count is exact.
inline std::vector<double> laguerre_roots(int k, int j) {
    if (k < 0 || j < 0) throw argument_error("laguerre_roots: degree and superscript must be >= 0");
    std::vector<double> roots;
    if (j == 0) return roots;
    const double upper = 4.0 * j + 2.0 * k + 10.0;
    const int steps = 400 * j;
    double x0 = upper * 1e-9;
    double f0 = laguerre(k, j, x0);
    for (int s = 1; s <= steps; ++s) {
        const double x1 = upper * s / steps;
        const double f1 = laguerre(k, j, x1);
        if (f0 == 0.0) roots.push_back(x0);
        else if (f0 * f1 < 0.0) {
            double lo = x0, hi = x1, flo = f0;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = laguerre(k, j, mid);
                if (flo * fm <= 0.0) hi = mid;
                else {
                    lo = mid;
                    flo = fm;
                }
                if (hi - lo < 1e-15 * hi) break;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    if (static_cast<int>(roots.size()) != j)
        throw numerical_failure_error("laguerre_roots: scan missed a root");
    return roots;
}

// Normalized radial eigenfunction chi_{n,l}(r) = N r^{l+1} e^{-kappa r} L_n^{(2l+1)}(2 kappa r)
// of the Coulomb core. N is fixed by quadrature so that the L2 norm on (0, inf) is 1.
struct CoulombState {
    PotentialParams params;
    QuantumNumbers qn;
    double kappa = 0.0;
    double energy = 0.0;
    double norm = 1.0;

    double operator()(double r) const {
        if (!(r >= 0.0)) throw domain_error("CoulombState: radius must be >= 0");
        if (r == 0.0) return 0.0;
        const double arg = kappa * r;
        if (arg > 700.0) return 0.0; // exp underflow region; the true value is below 1e-300
        return norm * std::pow(r, qn.l + 1) * std::exp(-arg) * laguerre(2 * qn.l + 1, qn.n, 2.0 * arg);
    }

    // Radial positions of the n interior nodes (zeros of the Laguerre factor).
    std::vector<double> nodes() const {
        std::vector<double> r = laguerre_roots(2 * qn.l + 1, qn.n);
        for (double& x : r) x /= 2.0 * kappa;
        return r;
    }
};

inline CoulombState coulomb_wavefunction(const PotentialParams& params, const QuantumNumbers& qn,
                                         const QuadratureSpec& spec = {}) {
    params.validate();
    qn.validate();
    spec.validate();
    CoulombState state;
    state.params = params;
    state.qn = qn;
    state.kappa = decay_rate(params, qn);
    state.energy = unperturbed_energy(params, qn);
    state.norm = 1.0;
    const double i0 = integrate_decay(
        [&](double r) {
            const double v = state(r);
            return v * v;
        },
        2.0 * state.kappa, spec);
    if (!(i0 > 0.0)) throw numerical_failure_error("coulomb_wavefunction: norm integral not positive");
    state.norm = 1.0 / std::sqrt(i0);
    return state;
}

// Ground-state superpotential of the Coulomb core for angular momentum l:
// W_0(r) = -(hbar/sqrt(2m)) (l+1)/r + sqrt(2m) a / ((l+1) hbar).
// Satisfies W^2 - (hbar/sqrt(2m)) W' = V_0 + barrier - epsilon_0.
inline double zeroth_superpotential(const PotentialParams& params, int l, double r) {
    params.validate();
    QuantumNumbers{0, l}.validate();
    if (!(r > 0.0)) throw domain_error("zeroth_superpotential: radius must be > 0");
    const double s2m = std::sqrt(2.0 * params.mass);
    return -(params.hbar / s2m) * (l + 1) / r + s2m * params.a / ((l + 1) * params.hbar);
}

// Radius where the ground-state superpotential crosses zero: hbar^2 (l+1)^2 / (2 m a).
inline double zeroth_superpotential_zero(const PotentialParams& params, int l) {
    params.validate();
    QuantumNumbers{0, l}.validate();
    return params.hbar * params.hbar * (l + 1) * (l + 1) / (2.0 * params.mass * params.a);
}

} // namespace mgesc
