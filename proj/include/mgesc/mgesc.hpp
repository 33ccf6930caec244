#pragma once

// Umbrella header: bound states of the screened Coulomb potential
// V(r) = -(a/r) [1 + (1 + b r) exp(-2 b r)]
// via three mutually checking routes: closed-form perturbation series,
// quadrature of the correction integrals, and a Numerov shooting solver.

#include "mgesc/coulomb.hpp"
#include "mgesc/errors.hpp"
#include "mgesc/numerov.hpp"
#include "mgesc/params.hpp"
#include "mgesc/perturbation.hpp"
#include "mgesc/perturbation_quad.hpp"
#include "mgesc/potential.hpp"
#include "mgesc/quadrature.hpp"
#include "mgesc/rational.hpp"
#include "mgesc/tables.hpp"
