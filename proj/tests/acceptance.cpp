// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria with known discrepancies against the published tables are
// run faithfully and allowed to fail; the detail lines name the offending
// cells and the diagnosis.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "mgesc/mgesc.hpp"

using namespace mgesc;

namespace {

std::string strf(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

struct Outcome {
    bool pass = true;
    int failures = 0;
    std::string summary;
    std::vector<std::string> details;

    void fail(std::string detail) {
        pass = false;
        ++failures;
        details.push_back(std::move(detail));
    }
};

std::string data_path(const char* name) {
    return std::string(MGESC_DATA_DIR) + "/" + name;
}

QuantumNumbers state_qn(const std::string& label) {
    for (const StateSpec& spec : table_states())
        if (label == spec.label) return spec.qn;
    throw argument_error("unknown state label " + label);
}

// Criterion 1: order-beta^6 series vs every non-blank published series cell,
// 5e-7 absolute (the published cells carry 7 decimals).
Outcome criterion1(const ReferenceTable& ref) {
    Outcome out;
    int total = 0;
    int bad = 0;
    double worst = 0.0;
    for (const ReferenceCell& cell : ref.cells) {
        if (!cell.series) continue;
        ++total;
        PotentialParams params;
        params.b = cell.beta;
        const double series = total_energy(params, state_qn(cell.state), 6);
        const double diff = std::abs(series - *cell.series);
        worst = std::max(worst, diff);
        if (diff > 5e-7) {
            ++bad;
            out.fail(strf("%s beta=%g: series %.7f, published %.7f, |diff| %.2e", cell.state.c_str(),
                          cell.beta, series, *cell.series, diff));
            if (cell.state == "1s" && std::abs(cell.beta - 0.06) <= 1e-12)
                out.details.push_back(
                    "the published 1s beta=0.06 cell equals the series with the beta^4 term "
                    "subtracted instead of added; the series itself evaluates to -1.9400999");
        }
    }
    out.summary = strf("series vs %d published binding-energy cells at 5e-7 absolute "
                       "(%d beyond tolerance, worst |diff| %.2e)",
                       total, bad, worst);
    return out;
}

// Criterion 2: truncation-order study vs every published cell, 5e-7 absolute.
Outcome criterion2(const std::vector<ReferenceOrdersRow>& rows) {
    Outcome out;
    int total = 0;
    int bad = 0;
    double worst = 0.0;
    constexpr int orders[5] = {0, 1, 3, 4, 6};
    for (const ReferenceOrdersRow& row : rows) {
        PotentialParams params;
        params.b = row.beta;
        const EnergyBreakdown breakdown = energy_breakdown(params, state_qn(row.state));
        for (int k = 0; k < 5; ++k) {
            ++total;
            const double value = breakdown.total(orders[k]);
            const double diff = std::abs(value - row.energies[static_cast<std::size_t>(k)]);
            worst = std::max(worst, diff);
            if (diff > 5e-7) {
                ++bad;
                out.fail(strf("%s beta=%g order %d: computed %.7f, published %.7f, |diff| %.2e",
                              row.state.c_str(), row.beta, orders[k], value,
                              row.energies[static_cast<std::size_t>(k)], diff));
            }
        }
    }
    out.summary = strf("truncation study vs %d published cells at 5e-7 absolute "
                       "(%d beyond tolerance, worst |diff| %.2e)",
                       total, bad, worst);
    return out;
}

// Criterion 3: eigensolver vs every non-blank published numerical cell;
// 1e-4 absolute for beta <= 0.1, 5e-3 for the deep-screening cells.
Outcome criterion3(const ReferenceTable& ref) {
    Outcome out;
    int total = 0;
    int bad = 0;
    for (const ReferenceCell& cell : ref.cells) {
        if (!cell.numerical) continue;
        ++total;
        PotentialParams params;
        params.b = cell.beta;
        const double energy = solve_eigenvalue(params, state_qn(cell.state));
        const double tol = cell.beta <= 0.1 ? 1e-4 : 5e-3;
        const double diff = std::abs(energy - *cell.numerical);
        if (diff > tol) {
            ++bad;
            out.fail(strf("%s beta=%g: solver %.7f, published %.7g, |diff| %.2e > %.0e",
                          cell.state.c_str(), cell.beta, energy, *cell.numerical, diff, tol));
            if (cell.state == "2s" && std::abs(cell.beta - 0.08) <= 1e-12)
                out.details.push_back(
                    "a converged solve gives -0.4226687 on step-halved grids; the published "
                    "-0.4221 appears under-converged (its neighbours at beta 0.06 and 0.1 agree "
                    "with this solver to better than 1e-4)");
        }
    }
    out.summary = strf("eigensolver vs %d published numerical cells (%d beyond tolerance)", total,
                       bad);
    return out;
}

// Criterion 4: quadrature first- and second-order shifts vs the closed forms,
// 1e-9 relative over (n, l) in {0,1,2}x{0,1,2,3}, b in {0.01, 0.05, 0.1}.
Outcome criterion4() {
    Outcome out;
    const QuadratureSpec spec{};
    int comparisons = 0;
    int bad = 0;
    int bad_n1 = 0;
    double worst_consistent = 0.0;
    for (const int n : {0, 1, 2})
        for (const int l : {0, 1, 2, 3})
            for (const double b : {0.01, 0.05, 0.1}) {
                PotentialParams params;
                params.b = b;
                const QuantumNumbers qn{n, l};
                const double e1_closed = first_order_shift(params, qn);
                const double e1_quad = first_order_shift_quad(params, qn, spec);
                const double e2_closed = second_order_shift(params, qn).total();
                const double e2_quad = second_order_shift_quad(params, qn, spec);
                ++comparisons;
                const double rel1 = std::abs(e1_quad - e1_closed) / std::abs(e1_closed);
                if (rel1 > 1e-9) {
                    ++bad;
                    out.fail(strf("first order n=%d l=%d b=%g: rel %.2e", n, l, b, rel1));
                }
                ++comparisons;
                const double rel2 = std::abs(e2_quad - e2_closed) / std::abs(e2_closed);
                if (rel2 > 1e-9) {
                    ++bad;
                    if (n == 1) ++bad_n1;
                    out.fail(strf("second order n=%d l=%d b=%g: quad %.6e, closed %.6e, rel %.2e",
                                  n, l, b, e2_quad, e2_closed, rel2));
                }
                if (n == 1) {
                    const double consistent =
                        second_order_shift_integral_consistent(params, qn).total();
                    worst_consistent = std::max(
                        worst_consistent, std::abs(e2_quad - consistent) / std::abs(consistent));
                }
            }
    if (bad_n1 > 0)
        out.details.push_back(strf(
            "every failure is the n=1 second-order b^6 term; the defining integrals give the "
            "factor (l+2)^6 (l+3) (2l+3) (8l^2+111l+232)/1152, and the quadrature route matches "
            "that form to %.1e relative across all twelve (l, b) points",
            worst_consistent));
    out.summary = strf("quadrature vs closed-form shifts, %d comparisons at 1e-9 relative "
                       "(%d beyond tolerance)",
                       comparisons, bad);
    return out;
}

// Criterion 5: the ground-state b^6 coefficient 43/192 from the plus-sign
// superpotential bracket, and rejection of the minus-sign form.
Outcome criterion5() {
    Outcome out;
    const QuadratureSpec spec{};
    PotentialParams params;
    const QuantumNumbers qn{0, 0};
    const double r2 = expectation_power(params, qn, 2, spec);
    const double r3 = expectation_power(params, qn, 3, spec);
    const double r4 = expectation_power(params, qn, 4, spec);
    const double c = 1.0; // hbar^2 (l+1)(l+2) / (2 a m) at the ground state in atomic units
    const double plus_form = (r4 + 2.0 * c * r3 + c * c * r2) / 18.0;
    const double minus_form = (r4 - 2.0 * c * r3 + c * c * r2) / 18.0;
    const double target = 43.0 / 192.0;
    const double plus_rel = std::abs(plus_form - target) / target;
    const double minus_rel = std::abs(minus_form - target) / target;
    if (plus_rel > 1e-9)
        out.fail(strf("plus form %.12f misses 43/192 by %.2e relative", plus_form, plus_rel));
    if (minus_rel <= 0.1)
        out.fail(strf("minus form %.12f lands within 0.1 of 43/192 (rel %.2e); it must not",
                      minus_form, minus_rel));
    out.details.push_back(strf("plus form %.12f (rel %.1e), minus form %.12f (rel %.2f)",
                               plus_form, plus_rel, minus_form, minus_rel));
    out.summary = "bracket-sign discrimination for the ground-state b^6 coefficient";
    return out;
}

// Criterion 6: Coulomb-limit exactness, normalization, node counts,
// boundedness, dimensionless collapse, and the solver's h^4 signature.
Outcome criterion6() {
    Outcome out;
    const QuadratureSpec gl{};
    QuadratureSpec adaptive;
    adaptive.scheme = QuadratureSpec::Scheme::adaptive_composite;
    int checks = 0;

    for (const int n : {0, 1, 2})
        for (const int l : {0, 1, 2}) {
            PotentialParams params;
            const QuantumNumbers qn{n, l};
            ++checks;
            if (total_energy(params, qn, 6) != unperturbed_energy(params, qn))
                out.fail(strf("series at b=0 not exact for n=%d l=%d", n, l));

            const CoulombState chi = coulomb_wavefunction(params, qn, gl);
            const double norm = integrate_decay(
                [&](double r) {
                    const double v = chi(r);
                    return v * v;
                },
                2.0 * chi.kappa, adaptive);
            ++checks;
            if (std::abs(norm - 1.0) > 1e-10)
                out.fail(strf("normalization n=%d l=%d: %.12f", n, l, norm));

            const RadialGrid grid = build_grid(params, qn);
            std::vector<double> samples(4001);
            const double step = grid.r_max / 4000.0;
            for (std::size_t i = 0; i < samples.size(); ++i)
                samples[i] = chi(1e-9 + step * static_cast<double>(i));
            ++checks;
            if (count_nodes(samples) != n)
                out.fail(strf("node count n=%d l=%d: got %d", n, l, count_nodes(samples)));

            PotentialParams screened;
            screened.b = 0.1;
            const QuadratureSpec spec{};
            const CoulombState chi_s = coulomb_wavefunction(screened, qn, spec);
            const double e1 = first_order_shift_quad(screened, qn, spec);
            const double coef = 2.0 * screened.a * std::pow(screened.b, 3) / 3.0;
            const auto chi2 = [&](double r) {
                const double v = chi_s(r);
                return v * v;
            };
            const double i0 = integrate_decay(chi2, 2.0 * chi_s.kappa, adaptive);
            const double i2 = integrate_decay([&](double r) { return chi2(r) * r * r; },
                                              2.0 * chi_s.kappa, adaptive);
            ++checks;
            const double bounded = std::abs(e1 * i0 + coef * i2) / std::abs(e1);
            if (bounded > 1e-10)
                out.fail(strf("boundedness n=%d l=%d: %.2e", n, l, bounded));
        }

    for (const int n : {0, 1, 2})
        for (const int l : {0, 1}) {
            PotentialParams params;
            const QuantumNumbers qn{n, l};
            const double big_n = qn.principal();
            const double exact = -2.0 / (big_n * big_n);
            const double solved = solve_eigenvalue(params, qn);
            ++checks;
            if (std::abs(solved - exact) / std::abs(exact) > 1e-8)
                out.fail(strf("Numerov b=0 n=%d l=%d: %.10f vs %.10f", n, l, solved, exact));
        }

    for (const double a : {0.5, 2.0, 5.0})
        for (const int n : {0, 1, 2}) {
            PotentialParams unit;
            unit.b = 0.1;
            PotentialParams scaled;
            scaled.a = a;
            scaled.b = 0.1 * a;
            const QuantumNumbers qn{n, 0};
            const double e_unit = total_energy(unit, qn, 6);
            const double e_scaled = total_energy(scaled, qn, 6) / (a * a);
            ++checks;
            if (std::abs(e_scaled - e_unit) / std::abs(e_unit) > 1e-12)
                out.fail(strf("collapse a=%g n=%d: %.15f vs %.15f", a, n, e_scaled, e_unit));
        }

    {
        PotentialParams params;
        const QuantumNumbers qn{0, 0};
        std::array<double, 3> levels{};
        int idx = 0;
        for (const int points : {2001, 4001, 8001}) {
            SolverConfig config;
            config.grid = RadialGrid::uniform(1e-6 * params.length_scale(),
                                              40.0 * params.length_scale(), points);
            config.energy_tol = 1e-13;
            levels[static_cast<std::size_t>(idx++)] = solve_eigenvalue(params, qn, config);
        }
        const double richardson = levels[2] + (levels[2] - levels[1]) / 15.0;
        const double ratio = (levels[0] - richardson) / (levels[1] - richardson);
        ++checks;
        if (!(ratio >= 12.0 && ratio <= 20.0))
            out.fail(strf("h^4 step-halving ratio %.2f outside [12, 20]", ratio));
        else
            out.details.push_back(strf("h^4 step-halving ratio %.2f", ratio));
    }

    out.summary = strf("property battery, %d sub-checks (%d failed)", checks, out.failures);
    return out;
}

// Criterion 7: the cross-path wavefunction report exists for the 1s state at
// beta in {0.01, 0.05} and the numeric-integral path is normalized; agreement
// of the closed-form path is reported, not required.
Outcome criterion7(const ReferenceTable& ref) {
    Outcome out;
    VerifyOptions opts;
    opts.reference = &ref;
    const std::vector<VerifyRecord> records = verify(opts);
    int cross = 0;
    int norms = 0;
    for (const VerifyRecord& rec : records) {
        if (rec.check_name.rfind("psi_cross_path_1s_", 0) == 0) {
            ++cross;
            out.details.push_back(strf("%s: numeric %.10e, closed %.10e, rel %.2e",
                                       rec.check_name.c_str(), rec.lhs, rec.rhs, rec.rel_err));
        }
        if (rec.check_name.rfind("norm_ground_numeric_1s_", 0) == 0) {
            ++norms;
            out.details.push_back(strf("%s: %.12f (tolerance 1e-10, %s)", rec.check_name.c_str(),
                                       rec.lhs, rec.pass ? "pass" : "fail"));
            if (!rec.pass) out.pass = false;
        }
    }
    if (cross != 6) out.fail(strf("expected 6 cross-path records, found %d", cross));
    if (norms != 2) out.fail(strf("expected 2 numeric-path norm records, found %d", norms));
    out.details.push_back("closed-form agreement is reported, not required");
    out.summary = strf("cross-path wavefunction report emitted (%d records, numeric-path norms %s)",
                       cross + norms, out.pass ? "pass" : "fail");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            const int k = std::atoi(argv[++i]);
            if (k < 1 || k > 7) {
                std::fprintf(stderr, "criterion must lie in 1..7, got %s\n", argv[i]);
                return 2;
            }
            wanted.push_back(k);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion k]...\n", argv[0]);
            return 2;
        }
    }
    if (wanted.empty()) wanted = {1, 2, 3, 4, 5, 6, 7};

    ReferenceTable ref;
    std::vector<ReferenceOrdersRow> orders;
    try {
        ref = load_table1_reference(data_path("table1_reference.csv"));
        orders = load_table2_reference(data_path("table2_reference.csv"));
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "cannot load reference data: %s\n", ex.what());
        return 2;
    }

    struct Guard {
        int criterion;
        double seconds;
    };
    constexpr Guard guards[] = {{1, 1.0}, {2, 1.0}, {3, 30.0}, {4, 10.0}};

    bool any_fail = false;
    for (const int k : wanted) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            switch (k) {
            case 1: out = criterion1(ref); break;
            case 2: out = criterion2(orders); break;
            case 3: out = criterion3(ref); break;
            case 4: out = criterion4(); break;
            case 5: out = criterion5(); break;
            case 6: out = criterion6(); break;
            case 7: out = criterion7(ref); break;
            }
        } catch (const std::exception& ex) {
            out.pass = false;
            out.summary = strf("aborted: %s", ex.what());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (const Guard& guard : guards)
            if (guard.criterion == k && seconds > guard.seconds)
                out.fail(strf("runtime %.2f s exceeds the %g s limit", seconds, guard.seconds));
        std::printf("%s criterion %d: %s [%.2f s]\n", out.pass ? "PASS" : "FAIL", k,
                    out.summary.c_str(), seconds);
        for (const std::string& detail : out.details) std::printf("  - %s\n", detail.c_str());
        any_fail = any_fail || !out.pass;
    }
    return any_fail ? 1 : 0;
}
