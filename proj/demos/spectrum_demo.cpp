// Usage sample: perturbation series vs direct eigenvalues across the
// screening range, plus the truncation-order breakdown for one state.
#include <cstdio>

#include "mgesc/mgesc.hpp"

int main() {
    using namespace mgesc;

    std::printf("E/a^2 for V(r) = -(a/r)[1+(1+br)exp(-2br)], atomic units\n\n");
    std::printf("%-6s %-5s %-13s %-13s\n", "beta", "state", "series", "eigensolver");
    for (const double beta : {0.02, 0.1, 0.5}) {
        for (const StateSpec& state : table_states()) {
            PotentialParams params;
            params.b = beta;
            const double series = total_energy(params, state.qn, 6);
            const double direct = solve_eigenvalue(params, state.qn);
            std::printf("%-6g %-5s %-13.7f %-13.7f\n", beta, state.label, series, direct);
        }
    }

    std::printf("\ntruncation orders for the 1s state at beta = 0.5\n");
    PotentialParams params;
    params.b = 0.5;
    const EnergyBreakdown breakdown = energy_breakdown(params, {0, 0});
    for (const int order : {0, 1, 3, 4, 6})
        std::printf("  through beta^%d: %.7f\n", order, breakdown.total(order));

    std::printf("\nground-state wavefunction at beta = 0.05 (both correction paths)\n");
    const QuadratureSpec spec{};
    PotentialParams shallow;
    shallow.b = 0.05;
    const GroundStateWavefunction numeric =
        ground_state_wavefunction(shallow, 0, Path::numeric, spec);
    const GroundStateWavefunction closed =
        ground_state_wavefunction(shallow, 0, Path::closed_form, spec);
    for (const double r : {0.5, 1.0, 2.0})
        std::printf("  r = %-4g numeric %.10f   closed %.10f\n", r, numeric(r), closed(r));
    return 0;
}
