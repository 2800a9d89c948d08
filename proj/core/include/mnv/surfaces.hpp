#pragma once

#include "mnv/profile.hpp"
#include "mnv/weierstrass.hpp"

namespace mnv {

struct MonodromyError : Error {
    MonodromyError(const std::string& what, cplx e1, cplx e2)
        : Error(what), ev1(e1), ev2(e2) {}
    cplx ev1, ev2;
};

struct CliffordTorus {
    WeierstrassData data;
    Immersion immersion;
    PeriodicLattice lattice;
};

// The Clifford torus on the lattice (2 pi, 2 pi i): potential
// U(x) = sin x / (2 sqrt2 (sqrt2 - sin x)), spinors r_i(x) exp(iy/2) with the
// closed-form revolution profiles (spin character (1/2, 1/2)), and the
// stereographic immersion with conformal factor D = 2/(sqrt2 - sin x),
// mean-centered.
CliffordTorus clifford_torus(int n1, int n2);

// closed-form Clifford quantities, exposed for oracles and reports
double clifford_potential(double x);
double clifford_profile1(double x);
double clifford_profile2(double x);

// Solves the revolution system r' = 1/2 [[-1, 4U],[-4U, 1]] r for a periodic
// potential profile, by classical 4th-order one-step integration on an
// oversampled grid. Accepts only profiles whose monodromy admits (anti)
// periodic solutions; the found sign becomes the x-component of the spin
// character (the y-component is always 1/2 for the revolution ansatz
// psi_i = r_i(x) exp(iy/2)). The solution is scaled so the period mean of
// D = r1^2 + r2^2 equals 2. U identically zero returns the constant minimal
// datum psi = (0, 1).
WeierstrassData revolution_data(const Profile& u_profile, int n2,
                                double monodromy_tol = 1e-6,
                                int oversample = 32);

}  // namespace mnv
