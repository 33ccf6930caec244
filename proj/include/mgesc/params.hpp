#pragma once

#include <string>

#include "mgesc/errors.hpp"

namespace mgesc {

// Physical configuration consumed by every computation. Atomic units by default
// (hbar = mass = 1); general hbar and mass are carried through all formulas so
// dimensional checks can be run.
struct PotentialParams {
    double a = 1.0;    // coupling strength (energy * length), > 0
    double b = 0.0;    // screening parameter (inverse length), >= 0
    double mass = 1.0; // particle mass, > 0
    double hbar = 1.0; // reduced Planck constant, > 0

    // Dimensionless screening strength; every tabulated energy is a pure
    // function of beta when expressed as E/a^2 in atomic units.
    constexpr double beta() const { return b / a; }

    // Characteristic length of the unscreened problem, hbar^2/(2 m a).
    constexpr double length_scale() const { return hbar * hbar / (2.0 * mass * a); }

    // Characteristic energy of the unscreened problem, 2 m a^2 / hbar^2.
    constexpr double energy_scale() const { return 2.0 * mass * a * a / (hbar * hbar); }

    void validate() const {
        if (!(a > 0.0)) throw argument_error("PotentialParams: a must be > 0");
        if (!(b >= 0.0)) throw argument_error("PotentialParams: b must be >= 0");
        if (!(mass > 0.0)) throw argument_error("PotentialParams: mass must be > 0");
        if (!(hbar > 0.0)) throw argument_error("PotentialParams: hbar must be > 0");
    }
};

// Radial quantum number n (interior node count) and orbital quantum number l.
// The principal-like combination is n + l + 1.
struct QuantumNumbers {
    int n = 0;
    int l = 0;

    constexpr int principal() const { return n + l + 1; }

    void validate() const {
        if (n < 0) throw argument_error("QuantumNumbers: n must be >= 0");
        if (l < 0) throw argument_error("QuantumNumbers: l must be >= 0");
    }
};

} // namespace mgesc
