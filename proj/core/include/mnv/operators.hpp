#pragma once

#include "mnv/weierstrass.hpp"

namespace mnv {

enum class OperatorKind {
    DiracMnv,   // [[d_z, -U], [U, d_zbar]]
    APlus,      // d_z^3 + first-order and zero-order blocks in U, V
    AMinus,     // d_zbar^3 mirror with the mirrored potential
    BPlus,
    BMinus,
    DiracMkdv,  // d_x - 1/2 [[-1, 4U], [-4U, 1]] (x-direction only)
};

// Coefficient fields for the matrix operators. V solves d_zbar V = d_z(U^2);
// Vbar solves the mirrored constraint d_z Vbar = d_zbar(U^2) (equal to
// conj(V) for real U, independent otherwise).
struct OperatorCoefficients {
    GridField U;
    GridField V;
    GridField Vbar;
};

OperatorCoefficients make_operator_coefficients(const GridField& U);

SpinorPair apply_operator(OperatorKind kind, const OperatorCoefficients& co,
                          const SpinorPair& phi);

enum class FlowSign { Plus, Minus };

// Relative residual of dL/dt + [L, A] - B L applied to a test spinor, with
// dL/dt carrying the analytic half-flow derivative of U. Vanishes (to
// roundoff) for any smooth U, real or complex. corrupt_b flips one sign in
// the zero-order block of B as a negative control.
double triple_residual(const GridField& U, FlowSign sign, const SpinorPair& phi,
                       bool corrupt_b = false);

}  // namespace mnv
