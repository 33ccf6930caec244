#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "mgesc/errors.hpp"

namespace mgesc {

// Numerical knobs of the quadrature oracle. The default scheme maps [0, inf)
// through Gauss-Laguerre nodes scaled by the integrand's exponential decay rate;
// every moment integrand here is polynomial * exp(-decay * r), which such a rule
// integrates exactly up to rounding.
struct QuadratureSpec {
    enum class Scheme { gauss_laguerre_mapped, adaptive_composite };

    int node_count = 200;
    Scheme scheme = Scheme::gauss_laguerre_mapped;
    double rel_tol = 1e-12;

    void validate() const {
        if (node_count < 32) throw argument_error("QuadratureSpec: node_count must be >= 32");
        if (!(rel_tol > 0.0)) throw argument_error("QuadratureSpec: rel_tol must be > 0");
    }
};

// Gauss-Laguerre rule for weight exp(-x) on [0, inf). `weight` stores the
// exp(x)-scaled values w_i * e^{x_i}, so integral(f) = sum_i weight[i] * f(node[i])
// for a plain black-box f that carries its own decay.
struct GaussLaguerreRule {
    std::vector<double> node;
    std::vector<double> weight;
};

namespace detail {

// Laguerre values scaled by exp(-x/2); the three-term recurrence is linear so
// the scaling factors through. Extended precision keeps the starting factor
// exp(-x/2) representable out to node counts in the thousands (the largest
// node of an n-point rule sits near 4n) and holds the recurrence's absolute
// rounding noise below double precision, which the weights at the smallest
// nodes are sensitive to.
inline void scaled_laguerre_pair(int n, long double x, long double& ln, long double& ln_next) {
    long double prev = std::exp(-0.5L * x); // ~L_0
    long double cur = (1.0L - x) * prev;    // ~L_1
    if (n == 0) {
        ln = prev;
        ln_next = cur;
        return;
    }
    for (int j = 2; j <= n + 1; ++j) {
        const long double next = ((2.0L * j - 1.0L - x) * cur - (j - 1.0L) * prev) / j;
        prev = cur;
        cur = next;
    }
    // Loop leaves ~L_n in prev and ~L_{n+1} in cur.
    ln = prev;
    ln_next = cur;
}

inline GaussLaguerreRule build_gauss_laguerre(int n) {
    GaussLaguerreRule rule;
    rule.node.resize(static_cast<std::size_t>(n));
    rule.weight.resize(static_cast<std::size_t>(n));
    long double z = 0.0L;
    for (int i = 0; i < n; ++i) {
        // Stroud-Secrest style initial guesses, then Newton on the scaled polynomial.
        if (i == 0) {
            z = 3.0L / (1.0L + 2.4L * n);
        } else if (i == 1) {
            z += 15.0L / (1.0L + 2.5L * n);
        } else {
            const long double ai = i - 1;
            z += ((1.0L + 2.55L * ai) / (1.9L * ai)) *
                 (z - static_cast<long double>(rule.node[static_cast<std::size_t>(i) - 2]));
        }
        long double ln = 0.0L, ln_next = 0.0L;
        for (int iter = 0; iter < 100; ++iter) {
            scaled_laguerre_pair(n, z, ln, ln_next);
            // ~L_n' = n (~L_n - ~L_{n-1})/x - ~L_n/2; express ~L_{n-1} through the
            // recurrence to reuse the computed pair: (n+1)~L_{n+1} = (2n+1-x)~L_n - n ~L_{n-1}.
            const long double lnm1 = ((2.0L * n + 1.0L - z) * ln - (n + 1.0L) * ln_next) / n;
            const long double deriv = n * (ln - lnm1) / z - 0.5L * ln;
            const long double dz = ln / deriv;
            z -= dz;
            if (std::abs(dz) < 1e-18L * z + 1e-330L) break;
        }
        scaled_laguerre_pair(n, z, ln, ln_next);
        rule.node[static_cast<std::size_t>(i)] = static_cast<double>(z);
        // w_i e^{x_i} = x_i / ((n+1)^2 L_{n+1}(x_i)^2 e^{-x_i}) with the scaled value.
        const long double np1 = n + 1.0L;
        rule.weight[static_cast<std::size_t>(i)] =
            static_cast<double>(z / (np1 * np1 * ln_next * ln_next));
    }
    return rule;
}

} // namespace detail

// Cached rule lookup; safe for concurrent use.
inline const GaussLaguerreRule& gauss_laguerre(int n) {
    if (n < 1) throw argument_error("gauss_laguerre: node count must be >= 1");
    static std::map<int, GaussLaguerreRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, detail::build_gauss_laguerre(n)).first;
    return it->second;
}

// Gauss-Legendre rule on [-1, 1] for finite-interval pieces.
struct GaussLegendreRule {
    std::vector<double> node;
    std::vector<double> weight;
};

namespace detail {

inline GaussLegendreRule build_gauss_legendre(int n) {
    GaussLegendreRule rule;
    rule.node.resize(static_cast<std::size_t>(n));
    rule.weight.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double prev = 0.0, cur = 1.0;
            for (int j = 1; j <= n; ++j) {
                const double next = ((2.0 * j - 1.0) * z * cur - (j - 1.0) * prev) / j;
                prev = cur;
                cur = next;
            }
            pp = n * (z * cur - prev) / (z * z - 1.0);
            const double dz = cur / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        rule.node[static_cast<std::size_t>(i)] = -z;
        rule.node[static_cast<std::size_t>(n - 1 - i)] = z;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weight[static_cast<std::size_t>(i)] = w;
        rule.weight[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

} // namespace detail

inline const GaussLegendreRule& gauss_legendre(int n) {
    if (n < 1) throw argument_error("gauss_legendre: node count must be >= 1");
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, detail::build_gauss_legendre(n)).first;
    return it->second;
}

// integral of f over [lo, hi] with an n-point Gauss-Legendre rule.
template <typename F>
double integrate_interval(F&& f, double lo, double hi, int n = 64) {
    if (!(hi >= lo)) throw argument_error("integrate_interval: need hi >= lo");
    const GaussLegendreRule& rule = gauss_legendre(n);
    const double mid = 0.5 * (lo + hi);
    const double halfwidth = 0.5 * (hi - lo);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.node.size(); ++i)
        sum += rule.weight[i] * f(mid + halfwidth * rule.node[i]);
    return sum * halfwidth;
}

namespace detail {

template <typename F>
double adaptive_simpson(F&& f, double lo, double hi, double flo, double fmid, double fhi,
                        double whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
    const double flmid = f(lmid), frmid = f(rmid);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flmid + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frmid + fhi);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, lo, mid, flo, flmid, fmid, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, mid, hi, fmid, frmid, fhi, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// integral of f over (0, inf) for integrands decaying like exp(-decay_rate * r).
// The default scheme substitutes x = decay_rate * r so the Gauss-Laguerre weight
// matches the decay exactly; the composite scheme is the fallback for integrands
// whose exponent is not exactly polynomial-times-exponential.
template <typename F>
double integrate_decay(F&& f, double decay_rate, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (!(decay_rate > 0.0)) throw argument_error("integrate_decay: decay_rate must be > 0");
    if (spec.scheme == QuadratureSpec::Scheme::adaptive_composite) {
        // Truncation at 745/decay_rate puts the discarded tail below exp(-745) ~ 1e-324.
        const double hi = 745.0 / decay_rate;
        const double lo = hi * 1e-12;
        // Composite pre-pass: fixed Simpson panels pin the integral's magnitude so
        // the refinement tolerance is relative to the real scale. A 3-point seed
        // would sample only the far tail of a localized integrand and set a
        // tolerance hundreds of orders of magnitude too small for the recursion
        // depth limit to ever satisfy.
        constexpr int panels = 128;
        const double h = (hi - lo) / panels;
        std::vector<double> fs(2 * panels + 1);
        for (int i = 0; i <= 2 * panels; ++i) fs[static_cast<std::size_t>(i)] = f(lo + 0.5 * h * i);
        std::vector<double> s(panels);
        double scale = 0.0;
        for (int i = 0; i < panels; ++i) {
            const std::size_t k = 2 * static_cast<std::size_t>(i);
            s[static_cast<std::size_t>(i)] = h / 6.0 * (fs[k] + 4.0 * fs[k + 1] + fs[k + 2]);
            scale += std::abs(s[static_cast<std::size_t>(i)]);
        }
        const double tol = spec.rel_tol * std::max(scale, 1e-300) / panels;
        double sum = 0.0;
        for (int i = 0; i < panels; ++i) {
            const std::size_t k = 2 * static_cast<std::size_t>(i);
            sum += detail::adaptive_simpson(f, lo + i * h, lo + (i + 1) * h, fs[k], fs[k + 1],
                                            fs[k + 2], s[static_cast<std::size_t>(i)], tol, 40);
        }
        return sum;
    }
    const GaussLaguerreRule& rule = gauss_laguerre(spec.node_count);
    double sum = 0.0;
    // Smallest contributions first: Gauss-Laguerre tails carry the least mass.
    for (std::size_t i = rule.node.size(); i-- > 0;)
        sum += rule.weight[i] * f(rule.node[i] / decay_rate);
    return sum / decay_rate;
}

// Same integral with a refinement self-check: node count doubled for the
// Gauss-Laguerre scheme, tolerance tightened 100x for the composite scheme.
// `scale` sets the magnitude against which the check is relative; pass the
// expected result size when the integral itself may legitimately vanish.
template <typename F>
double integrate_decay_checked(F&& f, double decay_rate, const QuadratureSpec& spec = {},
                               double scale = 0.0) {
    const double coarse = integrate_decay(f, decay_rate, spec);
    QuadratureSpec refined = spec;
    if (spec.scheme == QuadratureSpec::Scheme::gauss_laguerre_mapped)
        refined.node_count = 2 * spec.node_count;
    else
        refined.rel_tol = spec.rel_tol / 100.0;
    const double fine = integrate_decay(f, decay_rate, refined);
    const double ref = std::max(std::abs(fine), std::abs(scale));
    if (std::abs(fine - coarse) > spec.rel_tol * std::max(ref, 1e-300))
        throw accuracy_error("quadrature did not converge under refinement");
    return fine;
}

// Monotone piecewise-cubic interpolant (Fritsch-Carlson slopes). Used for
// cumulative integrals over the quadrature mesh: the segment integrals of the
// cubic are exact, so partial integrals are consistent with the full-mesh one.
class PchipInterpolant {
public:
    PchipInterpolant(std::vector<double> xs, std::vector<double> ys)
        : x_(std::move(xs)), y_(std::move(ys)) {
        const std::size_t n = x_.size();
        if (n < 2 || y_.size() != n)
            throw argument_error("PchipInterpolant: need >= 2 matching samples");
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (!(x_[i] < x_[i + 1]))
                throw argument_error("PchipInterpolant: abscissae must be strictly increasing");
        build_slopes();
        build_cumulative();
    }

    double min_x() const { return x_.front(); }
    double max_x() const { return x_.back(); }

    double operator()(double x) const {
        const std::size_t i = segment(x);
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        return y_[i] * (2.0 * t3 - 3.0 * t2 + 1.0) + d_[i] * h * (t3 - 2.0 * t2 + t) +
               y_[i + 1] * (-2.0 * t3 + 3.0 * t2) + d_[i + 1] * h * (t3 - t2);
    }

    // integral of the interpolant from min_x() to x.
    double integral_from_front(double x) const {
        const std::size_t i = segment(x);
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
        const double part = y_[i] * (0.5 * t4 - t3 + t) + d_[i] * h * (0.25 * t4 - 2.0 * t3 / 3.0 + 0.5 * t2) +
                            y_[i + 1] * (-0.5 * t4 + t3) + d_[i + 1] * h * (0.25 * t4 - t3 / 3.0);
        return cum_[i] + h * part;
    }

private:
    std::vector<double> x_, y_, d_, cum_;

    std::size_t segment(double x) const {
        if (x < x_.front() || x > x_.back())
            throw argument_error("PchipInterpolant: evaluation outside the sample range");
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - x_.begin());
        if (i > 0) --i;
        if (i + 1 >= x_.size()) i = x_.size() - 2;
        return i;
    }

    void build_slopes() {
        const std::size_t n = x_.size();
        d_.assign(n, 0.0);
        std::vector<double> h(n - 1), delta(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            delta[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        if (n == 2) {
            d_[0] = d_[1] = delta[0];
            return;
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0) {
                d_[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        d_[0] = endpoint_slope(h[0], h[1], delta[0], delta[1]);
        d_[n - 1] = endpoint_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }

    // One-sided three-point estimate with the standard shape-preserving clamps.
    static double endpoint_slope(double h0, double h1, double del0, double del1) {
        double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
        if (d * del0 <= 0.0) return 0.0;
        if (del0 * del1 < 0.0 && std::abs(d) > 3.0 * std::abs(del0)) return 3.0 * del0;
        return d;
    }

    void build_cumulative() {
        const std::size_t n = x_.size();
        cum_.assign(n - 1, 0.0);
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            cum_[i] = acc;
            const double h = x_[i + 1] - x_[i];
            acc += h * (0.5 * (y_[i] + y_[i + 1]) + h * (d_[i] - d_[i + 1]) / 12.0);
        }
    }
};

} // namespace mgesc
