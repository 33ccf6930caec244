#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "mgesc/coulomb.hpp"
#include "mgesc/errors.hpp"
#include "mgesc/params.hpp"
#include "mgesc/perturbation.hpp"
#include "mgesc/quadrature.hpp"

namespace mgesc {

// <r^k> over chi_{n,l}^2, normalization-free (ratio of raw moments, so k = 0
// gives exactly 1). Integrands are polynomial * exp(-2 kappa r): exact under the
// mapped Gauss-Laguerre rule, so the refinement check only guards misuse.
inline double expectation_power(const PotentialParams& params, const QuantumNumbers& qn, int k,
                                const QuadratureSpec& spec = {}) {
    params.validate();
    qn.validate();
    spec.validate();
    if (k < 0 || k > 8) throw argument_error("expectation_power: k must be in [0, 8]");
    if (k == 0) return 1.0;
    CoulombState shape;
    shape.params = params;
    shape.qn = qn;
    shape.kappa = decay_rate(params, qn);
    shape.norm = 1.0;
    const auto moment = [&](int power) {
        return integrate_decay_checked(
            [&](double r) {
                const double v = shape(r);
                return v * v * std::pow(r, power);
            },
            2.0 * shape.kappa, spec);
    };
    return moment(k) / moment(0);
}

// First-order energy shift by quadrature: -(2 a b^3 / 3) <r^2>. Any n, l.
inline double first_order_shift_quad(const PotentialParams& params, const QuantumNumbers& qn,
                                     const QuadratureSpec& spec = {}) {
    params.validate();
    qn.validate();
    const double b3 = params.b * params.b * params.b;
    return -(2.0 * params.a * b3 / 3.0) * expectation_power(params, qn, 2, spec);
}

namespace detail {

// Unnormalized chi shape; every quotient below divides two integrals of it, so
// the normalization constant cancels exactly.
inline CoulombState coulomb_shape(const PotentialParams& params, const QuantumNumbers& qn) {
    CoulombState shape;
    shape.params = params;
    shape.qn = qn;
    shape.kappa = decay_rate(params, qn);
    shape.norm = 1.0;
    return shape;
}

// Distance guard shared by the W quotients: the naive 1/chi^2 is numerically
// indeterminate near a node of chi even though the defining limit is finite.
inline void require_away_from_nodes(const CoulombState& state, double r) {
    const double threshold = 1e-3 / state.kappa;
    for (double node : state.nodes())
        if (std::abs(r - node) < threshold)
            throw singular_point_error(
                "superpotential quotient evaluated too close to a wavefunction node");
}

// Cumulative integral of chi^2 * g over (0, r) for a g whose full-line integral
// vanishes (the boundedness identity behind every W construction). Small r uses
// a direct finite-interval rule; past the bulk of the weight the direct partial
// integral cancels to roundoff, so the identity turns the cumulative into minus
// the tail, which the shifted decay rule evaluates at the tail's own scale.
template <typename G>
double chi2_weighted_integral_to(const CoulombState& state, G&& g, double r,
                                 const QuadratureSpec& spec) {
    const double decay = 2.0 * state.kappa;
    const auto chi2g = [&](double x) {
        const double v = state(x);
        return v * v * g(x);
    };
    if (decay * r <= 16.0) return integrate_interval(chi2g, 0.0, r, 64);
    return -integrate_decay([&](double y) { return chi2g(r + y); }, decay, spec);
}

// W1 quotient from precomputed pieces; e1 must come from the same-rule moment
// ratio so the boundedness identity holds at machine precision.
template <typename StateT>
double w1_quotient(const PotentialParams& params, const StateT& state, double e1, double r,
                   const QuadratureSpec& spec) {
    const double c = 2.0 * params.a * params.b * params.b * params.b / 3.0;
    const double cumulative =
        chi2_weighted_integral_to(state, [&](double x) { return e1 + c * x * x; }, r, spec);
    const double chi_r = state(r);
    if (chi_r == 0.0)
        throw domain_error("superpotential quotient: wavefunction underflows at this radius");
    return std::sqrt(2.0 * params.mass) / params.hbar * cumulative / (chi_r * chi_r);
}

} // namespace detail

// First-order superpotential correction by quadrature:
// (sqrt(2m)/hbar) (1/chi^2(r)) integral_0^r chi^2(x) [E1 + (2ab^3/3) x^2] dx.
inline double first_order_superpotential_quad(const PotentialParams& params,
                                              const QuantumNumbers& qn, double r,
                                              const QuadratureSpec& spec = {}) {
    params.validate();
    qn.validate();
    spec.validate();
    if (!(r > 0.0)) throw domain_error("first_order_superpotential_quad: radius must be > 0");
    const CoulombState shape = detail::coulomb_shape(params, qn);
    detail::require_away_from_nodes(shape, r);
    const double decay = 2.0 * shape.kappa;
    const auto raw_moment = [&](int power) {
        return integrate_decay(
            [&](double x) {
                const double v = shape(x);
                return v * v * std::pow(x, power);
            },
            decay, spec);
    };
    const double c = 2.0 * params.a * params.b * params.b * params.b / 3.0;
    const double e1 = -c * raw_moment(2) / raw_moment(0);
    return detail::w1_quotient(params, shape, e1, r, spec);
}

// Second-order energy shift by quadrature: <(2ab^4/3) r^3> - <(W1)^2>.
// For n <= 2 the closed-form W1 is used (cross-check mode); for n >= 3 the
// quadrature W1 is the only option and its node poles make <(W1)^2> divergent,
// which the integrability check reports as an accuracy error.
inline double second_order_shift_quad(const PotentialParams& params, const QuantumNumbers& qn,
                                      const QuadratureSpec& spec = {}) {
    params.validate();
    qn.validate();
    spec.validate();
    const CoulombState shape = detail::coulomb_shape(params, qn);
    const double decay = 2.0 * shape.kappa;
    const double b2 = params.b * params.b;
    const double b4 = b2 * b2;
    const double first = (2.0 * params.a * b4 / 3.0) * expectation_power(params, qn, 3, spec);
    const auto averaged = [&](auto&& f) {
        const double raw = integrate_decay_checked(
            [&](double r) {
                const double v = shape(r);
                return v * v * f(r);
            },
            decay, spec);
        const double i0 = integrate_decay_checked(
            [&](double r) {
                const double v = shape(r);
                return v * v;
            },
            decay, spec);
        return raw / i0;
    };
    if (qn.n <= 2) {
        const double w2_moment = averaged([&](double r) {
            const double w1 = first_order_superpotential(params, qn, r);
            return w1 * w1;
        });
        return first - w2_moment;
    }
    const auto raw_moment = [&](int power) {
        return integrate_decay(
            [&](double x) {
                const double v = shape(x);
                return v * v * std::pow(x, power);
            },
            decay, spec);
    };
    const double c = 2.0 * params.a * params.b * b2 / 3.0;
    const double e1 = -c * raw_moment(2) / raw_moment(0);
    // Node handling: <W1^2> is integrable only if the cumulative integral
    // behind the quotient vanishes at each interior node of chi. It vanishes
    // on the full line by construction of E1, but not at the nodes, so the
    // moment carries non-integrable double poles and no mesh refinement can
    // converge it.
    const double pole_scale = std::abs(e1) * raw_moment(0);
    for (const double node : shape.nodes()) {
        const double at_node = detail::chi2_weighted_integral_to(
            shape, [&](double x) { return e1 + c * x * x; }, node, spec);
        if (std::abs(at_node) > 1e-10 * pole_scale)
            throw accuracy_error(
                "second_order_shift_quad: <W1^2> has a non-integrable pole at a node of chi "
                "(the cumulative integral does not vanish there) for n >= 3");
    }
    const double w2_moment = averaged([&](double r) {
        // chi^2 underflows before the quotient blows up, so the weighted
        // integrand is zero there.
        if (shape(r) == 0.0) return 0.0;
        const double w1 = detail::w1_quotient(params, shape, e1, r, spec);
        return w1 * w1;
    });
    return first - w2_moment;
}

// Second-order superpotential correction by quadrature:
// (sqrt(2m)/hbar) (1/chi^2(r)) integral_0^r chi^2(x) [E2 + W1(x)^2 - (2ab^4/3) x^3] dx,
// with the closed-form W1 and an E2 from the same-rule averages, so the
// cumulative vanishes at infinity by construction.
inline double second_order_superpotential_quad(const PotentialParams& params,
                                               const QuantumNumbers& qn, double r,
                                               const QuadratureSpec& spec = {}) {
    params.validate();
    qn.validate();
    spec.validate();
    if (!(r > 0.0)) throw domain_error("second_order_superpotential_quad: radius must be > 0");
    if (qn.n > 2)
        throw unsupported_state_error(
            "second_order_superpotential_quad needs the closed-form W1, available for n <= 2");
    const CoulombState shape = detail::coulomb_shape(params, qn);
    detail::require_away_from_nodes(shape, r);
    const double decay = 2.0 * shape.kappa;
    const auto raw = [&](auto&& f) {
        return integrate_decay(
            [&](double x) {
                const double v = shape(x);
                return v * v * f(x);
            },
            decay, spec);
    };
    const double b2 = params.b * params.b;
    const double c2 = 2.0 * params.a * b2 * b2 / 3.0;
    const auto w1sq = [&](double x) {
        const double w1 = first_order_superpotential(params, qn, x);
        return w1 * w1;
    };
    const double i0 = raw([](double) { return 1.0; });
    const double e2 = (raw([&](double x) { return c2 * x * x * x; }) - raw(w1sq)) / i0;
    const double cumulative = detail::chi2_weighted_integral_to(
        shape, [&](double x) { return e2 + w1sq(x) - c2 * x * x * x; }, r, spec);
    const double chi_r = shape(r);
    if (chi_r == 0.0)
        throw domain_error("superpotential quotient: wavefunction underflows at this radius");
    return std::sqrt(2.0 * params.mass) / params.hbar * cumulative / (chi_r * chi_r);
}

// Full radial wavefunction via the quadrature superpotentials:
// chi_n * exp(-(sqrt(2m)/hbar) integral_0^r (W1 + W2) dx), renormalized.
// W1 + W2 is sampled over a uniform mesh with points near chi nodes excluded,
// bridged by the monotone interpolant; this regularizes the node quotients that
// make direct excited-state evaluation cumbersome.
struct ModeratedWavefunction {
    CoulombState chi;
    std::shared_ptr<PchipInterpolant> action; // samples of W1 + W2
    double tail_x = 0.0;
    double tail_s = 0.0;
    double tail_slope = 0.0;
    double norm = 1.0;

    double operator()(double r) const {
        if (!(r >= 0.0)) throw domain_error("ModeratedWavefunction: radius must be >= 0");
        if (r == 0.0) return 0.0;
        const double chi_v = chi(r);
        if (chi_v == 0.0) return 0.0;
        const double s =
            r <= tail_x ? action->integral_from_front(r) : tail_s + tail_slope * (r - tail_x);
        return norm * chi_v * std::exp(-std::sqrt(2.0 * chi.params.mass) / chi.params.hbar * s);
    }
};

inline ModeratedWavefunction moderated_wavefunction_quad(const PotentialParams& params,
                                                         const QuantumNumbers& qn,
                                                         const QuadratureSpec& spec = {}) {
    params.validate();
    qn.validate();
    spec.validate();
    if (qn.n > 2) throw unsupported_state_error("moderated_wavefunction_quad covers n <= 2");
    ModeratedWavefunction wf;
    wf.chi = coulomb_wavefunction(params, qn, spec);
    const CoulombState shape = detail::coulomb_shape(params, qn);
    const double kappa = shape.kappa;
    const double decay = 2.0 * kappa;
    const double r_hi = 40.0 / kappa;
    const int mesh_points = 2001;
    const double exclusion = 1e-3 / kappa;
    const std::vector<double> nodes = shape.nodes();

    const auto raw = [&](auto&& f) {
        return integrate_decay(
            [&](double x) {
                const double v = shape(x);
                return v * v * f(x);
            },
            decay, spec);
    };
    const double b2 = params.b * params.b;
    const double c1 = 2.0 * params.a * b2 * params.b / 3.0;
    const double c2 = 2.0 * params.a * b2 * b2 / 3.0;
    const auto w1sq = [&](double x) {
        const double w1 = first_order_superpotential(params, qn, x);
        return w1 * w1;
    };
    const double i0 = raw([](double) { return 1.0; });
    const double e1 = -c1 * raw([](double x) { return x * x; }) / i0;
    const double e2 = (raw([&](double x) { return c2 * x * x * x; }) - raw(w1sq)) / i0;
    const auto w_sum = [&](double x) {
        const double g1 = detail::chi2_weighted_integral_to(
            shape, [&](double t) { return e1 + c1 * t * t; }, x, spec);
        const double g2 = detail::chi2_weighted_integral_to(
            shape, [&](double t) { return e2 + w1sq(t) - c2 * t * t * t; }, x, spec);
        const double chi_x = shape(x);
        return std::sqrt(2.0 * params.mass) / params.hbar * (g1 + g2) / (chi_x * chi_x);
    };

    std::vector<double> xs, ws;
    xs.reserve(static_cast<std::size_t>(mesh_points));
    ws.reserve(static_cast<std::size_t>(mesh_points));
    xs.push_back(0.0);
    ws.push_back(0.0); // both W quotients vanish at the origin
    for (int i = 1; i < mesh_points; ++i) {
        const double r = r_hi * i / (mesh_points - 1);
        bool near_node = false;
        for (double node : nodes)
            if (std::abs(r - node) < exclusion) near_node = true;
        if (near_node) continue;
        xs.push_back(r);
        ws.push_back(w_sum(r));
    }
    wf.tail_x = xs.back();
    wf.tail_slope = ws.back();
    wf.action = std::make_shared<PchipInterpolant>(std::move(xs), std::move(ws));
    wf.tail_s = wf.action->integral_from_front(wf.tail_x);

    // The exponent correction is not exactly polynomial, so the composite scheme
    // backs the norm integral.
    QuadratureSpec norm_spec = spec;
    norm_spec.scheme = QuadratureSpec::Scheme::adaptive_composite;
    const double n0 = integrate_decay(
        [&](double r) {
            const double v = wf(r);
            return v * v;
        },
        decay, norm_spec);
    if (!(n0 > 0.0))
        throw numerical_failure_error("moderated_wavefunction_quad: norm integral not positive");
    wf.norm = 1.0 / std::sqrt(n0);
    return wf;
}

} // namespace mgesc
