#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "mgesc/errors.hpp"
#include "mgesc/params.hpp"
#include "mgesc/potential.hpp"

namespace mgesc {

struct RadialGrid {
    double r_min = 0.0;
    double r_max = 0.0;
    double step = 0.0;
    int points = 0;

    static RadialGrid uniform(double r_min, double r_max, int points) {
        RadialGrid grid;
        grid.r_min = r_min;
        grid.r_max = r_max;
        grid.points = points;
        grid.step = (r_max - r_min) / (points - 1);
        return grid;
    }

    double r(int i) const { return r_min + step * i; }

    void validate() const {
        if (!(r_min > 0.0)) throw argument_error("RadialGrid: r_min must be > 0");
        if (!(r_max > r_min)) throw argument_error("RadialGrid: r_max must exceed r_min");
        if (points < 1000) throw argument_error("RadialGrid: need at least 1000 points");
        const double expected = (r_max - r_min) / (points - 1);
        if (!(std::abs(step - expected) <= 1e-9 * expected))
            throw argument_error("RadialGrid: step inconsistent with extent and point count");
    }
};

struct ShotResult {
    std::vector<double> samples; // outward solution up to the match point, scaled inward beyond
    int node_count = 0;
    double log_derivative_mismatch = 0.0;
};

enum class MatchPoint { outer_turning_point, fixed_fraction };

struct SolverConfig {
    std::optional<RadialGrid> grid; // auto-built from the state when absent
    double energy_tol = 1e-10;
    int max_bisections = 200;
    MatchPoint match_point = MatchPoint::outer_turning_point;
    double matching_tol = 1e-4; // accept threshold on |log-derivative mismatch| for single shots

    void validate() const {
        if (!(energy_tol > 0.0)) throw argument_error("SolverConfig: energy_tol must be > 0");
        if (max_bisections < 1) throw argument_error("SolverConfig: max_bisections must be >= 1");
        if (!(matching_tol > 0.0)) throw argument_error("SolverConfig: matching_tol must be > 0");
    }
};

// Grid sized for the state: r_min deep inside the power-law region, r_max far
// enough that the unperturbed tail exp(-kappa r) decays below 1e-15.
inline RadialGrid build_grid(const PotentialParams& params, const QuantumNumbers& qn,
                             const SolverConfig& config = {}) {
    params.validate();
    qn.validate();
    config.validate();
    const double scale = params.length_scale();
    return RadialGrid::uniform(1e-6 * scale, 40.0 * qn.principal() * scale, 30001);
}

// Strict sign changes, excluding the first and last 2 points.
inline int count_nodes(const std::vector<double>& samples) {
    int count = 0;
    for (std::size_t i = 2; i + 3 < samples.size(); ++i) {
        const double u0 = samples[i], u1 = samples[i + 1];
        if ((u0 > 0.0 && u1 < 0.0) || (u0 < 0.0 && u1 > 0.0)) ++count;
    }
    return count;
}

namespace detail {

// u_{i+1}(1 - T_{i+1}) = u_i(2 + 10 T_i) - u_{i-1}(1 - T_{i-1}), T = h^2 f / 12.
// Rescaling at 1e250 keeps magnitudes representable; node structure and
// log-derivatives are scale-invariant so nothing else changes.
inline void numerov_outward(const std::vector<double>& t, std::vector<double>& u, int last) {
    for (int i = 1; i < last; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const double next =
            (u[k] * (2.0 + 10.0 * t[k]) - u[k - 1] * (1.0 - t[k - 1])) / (1.0 - t[k + 1]);
        if (!std::isfinite(next))
            throw numerical_failure_error("Numerov outward sweep produced a non-finite value");
        u[k + 1] = next;
        if (std::abs(next) > 1e250) {
            const double factor = 1.0 / std::abs(next);
            for (std::size_t j = 0; j <= k + 1; ++j) u[j] *= factor;
        }
    }
}

inline void numerov_inward(const std::vector<double>& t, std::vector<double>& u, int first) {
    const int n = static_cast<int>(t.size());
    for (int i = n - 2; i > first; --i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const double prev =
            (u[k] * (2.0 + 10.0 * t[k]) - u[k + 1] * (1.0 - t[k + 1])) / (1.0 - t[k - 1]);
        if (!std::isfinite(prev))
            throw numerical_failure_error("Numerov inward sweep produced a non-finite value");
        u[k - 1] = prev;
        if (std::abs(prev) > 1e250) {
            const double factor = 1.0 / std::abs(prev);
            for (std::size_t j = k - 1; j < u.size(); ++j) u[j] *= factor;
        }
    }
}

inline std::vector<double> numerov_t(const std::vector<double>& f_values, double step) {
    std::vector<double> t(f_values.size());
    const double c = step * step / 12.0;
    for (std::size_t i = 0; i < f_values.size(); ++i) t[i] = c * f_values[i];
    return t;
}

// Five-point first derivative at index j; needs samples at j-2 .. j+2.
inline double five_point_derivative(const std::vector<double>& u, int j, double step) {
    const std::size_t k = static_cast<std::size_t>(j);
    return (-u[k + 2] + 8.0 * u[k + 1] - 8.0 * u[k - 1] + u[k - 2]) / (12.0 * step);
}

// f_i = (2m/hbar^2)(V(r_i) + centrifugal - E) for u'' = f u.
template <typename Potential>
std::vector<double> effective_f(Potential&& potential, double E, int l, const RadialGrid& grid,
                                const PotentialParams& params) {
    std::vector<double> f(static_cast<std::size_t>(grid.points));
    const double pref = 2.0 * params.mass / (params.hbar * params.hbar);
    const double centrifugal = l * (l + 1.0) * params.hbar * params.hbar / (2.0 * params.mass);
    for (int i = 0; i < grid.points; ++i) {
        const double r = grid.r(i);
        f[static_cast<std::size_t>(i)] = pref * (potential(r) + centrifugal / (r * r) - E);
    }
    return f;
}

// Outer classical turning point (last grid index still classically allowed),
// clamped so the five-point stencils fit; r_max/3 when no turning point exists
// or when the fixed-fraction mode is selected.
inline int matching_index(const std::vector<double>& f, MatchPoint mode) {
    const int n = static_cast<int>(f.size());
    int m = -1;
    if (mode == MatchPoint::outer_turning_point)
        for (int i = n - 1; i >= 0; --i)
            if (f[static_cast<std::size_t>(i)] < 0.0) {
                m = i;
                break;
            }
    if (m < 0) m = n / 3;
    if (m < 4) m = 4;
    if (m > n - 5) m = n - 5;
    return m;
}

// seed_c1 is the linear coefficient of the regular solution r^{l+1}(1 + c1 r);
// zero keeps the bare power-law start, the Coulomb-core value removes the
// O(h) admixture of the irregular solution that otherwise limits accuracy.
inline ShotResult shoot(const std::vector<double>& f, const RadialGrid& grid, int l, double E,
                        const PotentialParams& params, MatchPoint mode, double seed_c1 = 0.0) {
    const std::vector<double> t = numerov_t(f, grid.step);
    const int n = grid.points;
    const int m = matching_index(f, mode);

    std::vector<double> ul(static_cast<std::size_t>(n), 0.0);
    ul[0] = std::pow(grid.r(0), l + 1) * (1.0 + seed_c1 * grid.r(0));
    ul[1] = std::pow(grid.r(1), l + 1) * (1.0 + seed_c1 * grid.r(1));
    numerov_outward(t, ul, m + 2);

    std::vector<double> ur(static_cast<std::size_t>(n), 0.0);
    const double kappa = std::sqrt(std::max(-2.0 * params.mass * E, 0.0)) / params.hbar;
    ur[static_cast<std::size_t>(n - 1)] = 1e-20;
    ur[static_cast<std::size_t>(n - 2)] = 1e-20 * std::exp(kappa * grid.step);
    numerov_inward(t, ur, m - 2);

    const double ulm = ul[static_cast<std::size_t>(m)];
    const double urm = ur[static_cast<std::size_t>(m)];
    if (ulm == 0.0 || urm == 0.0)
        throw numerical_failure_error("Numerov matching point landed on a node");

    ShotResult shot;
    shot.samples.resize(static_cast<std::size_t>(n));
    const double ratio = ulm / urm;
    for (int i = 0; i <= m; ++i) shot.samples[static_cast<std::size_t>(i)] = ul[static_cast<std::size_t>(i)];
    for (int i = m + 1; i < n; ++i)
        shot.samples[static_cast<std::size_t>(i)] = ur[static_cast<std::size_t>(i)] * ratio;
    shot.log_derivative_mismatch =
        five_point_derivative(ul, m, grid.step) / ulm - five_point_derivative(ur, m, grid.step) / urm;
    shot.node_count = count_nodes(shot.samples);
    return shot;
}

// Node count of the full outward sweep alone. Its (n+1)th sign flip switches
// exactly at the eigenvalue (the divergent admixture changes sign there), which
// makes it the bracketing detector for the solver.
inline int outward_node_count(const std::vector<double>& f, const RadialGrid& grid, int l,
                              double seed_c1 = 0.0) {
    const std::vector<double> t = numerov_t(f, grid.step);
    std::vector<double> u(static_cast<std::size_t>(grid.points), 0.0);
    u[0] = std::pow(grid.r(0), l + 1) * (1.0 + seed_c1 * grid.r(0));
    u[1] = std::pow(grid.r(1), l + 1) * (1.0 + seed_c1 * grid.r(1));
    numerov_outward(t, u, grid.points - 1);
    return count_nodes(u);
}

} // namespace detail

// Single shot at trial energy E: outward from the power-law start, inward from
// the decaying tail, glued at the match point.
template <typename Potential>
ShotResult integrate_numerov(Potential&& potential, double E, int l, const RadialGrid& grid,
                             const PotentialParams& params,
                             MatchPoint match = MatchPoint::outer_turning_point) {
    params.validate();
    grid.validate();
    if (l < 0) throw argument_error("integrate_numerov: l must be >= 0");
    const std::vector<double> f = detail::effective_f(potential, E, l, grid, params);
    return detail::shoot(f, grid, l, E, params, match);
}

// Bound-state energy of the full (untruncated) potential for the state with n
// interior nodes: node-count bisection brackets the eigenvalue, the mismatch
// sign refines it.
inline double solve_eigenvalue(const PotentialParams& params, const QuantumNumbers& qn,
                               const SolverConfig& config = {}) {
    params.validate();
    qn.validate();
    config.validate();
    const RadialGrid grid = config.grid ? *config.grid : build_grid(params, qn, config);
    grid.validate();

    const int n = grid.points;
    const double pref = 2.0 * params.mass / (params.hbar * params.hbar);
    const double centrifugal = qn.l * (qn.l + 1.0) * params.hbar * params.hbar / (2.0 * params.mass);
    std::vector<double> veff(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double r = grid.r(i);
        veff[static_cast<std::size_t>(i)] = eval_mgesc(params, r) + centrifugal / (r * r);
    }
    std::vector<double> f(static_cast<std::size_t>(n));
    const auto fill_f = [&](double energy) {
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = pref * (veff[i] - energy);
    };

    // Seeds carry the first correction of the regular solution around the
    // Coulomb core -2a/r; without it the start injects an O(h) admixture of
    // the irregular solution and the eigenvalue loses its h^4 convergence.
    const double seed_c1 =
        -2.0 * params.mass * params.a / (params.hbar * params.hbar * (qn.l + 1.0));

    int iterations = 0;
    const auto charge_iteration = [&]() {
        if (++iterations > config.max_bisections)
            throw iteration_error("eigenvalue bisection exceeded the iteration cap");
    };
    const auto nodes_at = [&](double energy) {
        fill_f(energy);
        return detail::outward_node_count(f, grid, qn.l, seed_c1);
    };
    const auto mismatch_at = [&](double energy) -> double {
        fill_f(energy);
        try {
            return detail::shoot(f, grid, qn.l, energy, params, config.match_point, seed_c1)
                .log_derivative_mismatch;
        } catch (const numerical_failure_error&) {
            // Match point landed on a node of this trial shot: unusable probe.
            return std::numeric_limits<double>::quiet_NaN();
        }
    };

    // The potential lies above the pure Coulomb core, so the deepest level of
    // this angular sector bounds every eigenvalue from below.
    const double scale = params.energy_scale();
    double lo = -(1.0 + 1e-4) * scale / ((qn.l + 1.0) * (qn.l + 1.0));
    double hi = -1e-9 * scale;
    if (nodes_at(lo) > qn.n || nodes_at(hi) <= qn.n)
        throw no_bound_state_error(
            "no energy bracket encloses the requested node count on this grid");

    // Phase 1: bisect on the outward node count.
    while (hi - lo > std::max(1e-3 * std::abs(lo), 1e-6 * scale)) {
        charge_iteration();
        const double mid = 0.5 * (lo + hi);
        if (nodes_at(mid) >= qn.n + 1)
            hi = mid;
        else
            lo = mid;
    }

    // Phase 2: the log-derivative mismatch changes sign exactly once inside the
    // phase-1 window; bisect on the sign split without assuming an orientation.
    double dlo = mismatch_at(lo);
    const double dhi = mismatch_at(hi);
    bool node_fallback = !(std::isfinite(dlo) && std::isfinite(dhi) && dlo * dhi < 0.0);
    while (!node_fallback && hi - lo > config.energy_tol) {
        charge_iteration();
        const double mid = 0.5 * (lo + hi);
        const double dm = mismatch_at(mid);
        if (!std::isfinite(dm)) {
            node_fallback = true;
            break;
        }
        if (dlo * dm <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            dlo = dm;
        }
    }
    // Roundoff can leave both mismatch signs equal across a microscopic window,
    // and a probe can land its match point on a node; the node detector stays
    // reliable, so finish on it.
    while (node_fallback && hi - lo > config.energy_tol) {
        charge_iteration();
        const double mid = 0.5 * (lo + hi);
        if (nodes_at(mid) >= qn.n + 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace mgesc
