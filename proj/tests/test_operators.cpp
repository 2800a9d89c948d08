#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mnv/flows.hpp"
#include "mnv/operators.hpp"
#include "mnv/surfaces.hpp"
#include "test_support.hpp"

using namespace mnv;
using namespace mnvtest;
using std::numbers::pi;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("the Dirac operator annihilates constant kernel pairs at U = 0") {
    auto lat = make_lattice(cplx(2 * pi, 0), cplx(0, 2 * pi), 16, 16);
    OperatorCoefficients co = make_operator_coefficients(GridField::zeros(lat));
    SpinorPair p{GridField::zeros(lat), GridField::constant(lat, 1.0)};
    SpinorPair r = apply_operator(OperatorKind::DiracMnv, co, p);
    CHECK(linf(r.psi1) < 1e-14);
    CHECK(linf(r.psi2) < 1e-14);
}

TEST_CASE("the Dirac operator annihilates the Clifford spinors") {
    auto ct = clifford_torus(64, 64);
    OperatorCoefficients co = make_operator_coefficients(ct.data.U);
    SpinorPair r = apply_operator(OperatorKind::DiracMnv, co, ct.data.psis);
    CHECK(linf(r.psi1) < 1e-8);
    CHECK(linf(r.psi2) < 1e-8);
    // matches the dedicated residual evaluator
    auto [d1, d2] = dirac_residual(ct.data.U, ct.data.psis);
    CHECK(linf(r.psi1 - d1) < 1e-13);
    CHECK(linf(r.psi2 - d2) < 1e-13);
}

TEST_CASE("A+ degenerates to the pure third derivative for zero potential") {
    auto lat = make_lattice(cplx(1, 0), cplx(0, 1), 16, 16);
    OperatorCoefficients co = make_operator_coefficients(GridField::zeros(lat));
    std::mt19937_64 rng(3);
    SpinorPair p{random_field(lat, 4, rng), random_field(lat, 4, rng)};
    SpinorPair r = apply_operator(OperatorKind::APlus, co, p);
    CHECK(linf(r.psi1 - d_z(p.psi1, 3)) < 1e-10);
    CHECK(linf(r.psi2 - d_z(p.psi2, 3)) < 1e-10);
}

TEST_CASE("the revolution Dirac operator annihilates revolution spinors") {
    const int n1 = 64;
    Profile prof{std::vector<double>(n1), 2 * pi};
    for (int j = 0; j < n1; ++j)
        prof.values[j] = clifford_potential(2 * pi * j / n1);
    WeierstrassData data = revolution_data(prof, 16);
    // psi_i = r_i(x) exp(iy/2): strip the angular factor to get the profile
    // pair on which the x-direction operator acts
    auto lat = data.U.lattice();
    GridField r1 = GridField::zeros(lat), r2 = GridField::zeros(lat);
    for (int j1 = 0; j1 < lat.n1(); ++j1)
        for (int j2 = 0; j2 < lat.n2(); ++j2) {
            const double y = 2 * pi * j2 / lat.n2();
            const cplx e(std::cos(y / 2), -std::sin(y / 2));
            r1.at(j1, j2) = data.psis.psi1.at(j1, j2) * e;
            r2.at(j1, j2) = data.psis.psi2.at(j1, j2) * e;
        }
    // r profiles are antiperiodic in x only
    GridField rr1(lat, SpinCharacter{1, 0}, r1.values());
    GridField rr2(lat, SpinCharacter{1, 0}, r2.values());
    OperatorCoefficients co = make_operator_coefficients(data.U);
    SpinorPair out = apply_operator(OperatorKind::DiracMkdv, co,
                                    SpinorPair{rr1, rr2});
    CHECK(linf(out.psi1) < 1e-7);
    CHECK(linf(out.psi2) < 1e-7);
}

TEST_CASE("triple identity holds for both half-flows on random data") {
    auto lat = make_lattice(cplx(1, 0), cplx(0, 1), 64, 64);
    std::mt19937_64 rng(0x5eed);
    for (int rep = 0; rep < 3; ++rep) {
        GridField U = random_field(lat, 6, rng);  // complex potential
        SpinorPair phi{random_field(lat, 6, rng), random_field(lat, 6, rng)};
        CHECK(triple_residual(U, FlowSign::Plus, phi) < 1e-8);
        CHECK(triple_residual(U, FlowSign::Minus, phi) < 1e-8);
    }
}

TEST_CASE("triple identity holds trivially for zero potential") {
    auto lat = make_lattice(cplx(1, 0), cplx(0, 1), 32, 32);
    std::mt19937_64 rng(5);
    SpinorPair phi{random_field(lat, 5, rng), random_field(lat, 5, rng)};
    CHECK(triple_residual(GridField::zeros(lat), FlowSign::Plus, phi) < 1e-9);
}

TEST_CASE("a sign corruption in B raises the residual by many orders") {
    auto lat = make_lattice(cplx(1, 0), cplx(0, 1), 64, 64);
    std::mt19937_64 rng(0xbad);
    GridField U = random_field(lat, 6, rng);
    SpinorPair phi{random_field(lat, 6, rng), random_field(lat, 6, rng)};
    const double ok = triple_residual(U, FlowSign::Plus, phi);
    const double bad = triple_residual(U, FlowSign::Plus, phi, true);
    CHECK(ok < 1e-8);
    CHECK(bad > 1e-2);
    CHECK(bad / std::max(ok, 1e-300) > 1e6);
    const double bad_minus = triple_residual(U, FlowSign::Minus, phi, true);
    CHECK(bad_minus > 1e-2);
}

TEST_CASE("exactness: the deformation forms are differentials of potentials") {
    // Omega_0 = d(f1 + g1 - f2 - g2) and Omega_1 = d(h1 + h2) for the full
    // flow, evaluated spectrally on Clifford data
    auto ct = clifford_torus(128, 128);
    const GridField& U = ct.data.U;
    const GridField& p1 = ct.data.psis.psi1;
    const GridField& p2 = ct.data.psis.psi2;
    GridField V = solve_V(U);
    GridField Vb = conjugate(V);
    SpinorPair pt = psi_rhs(U, V, ct.data.psis);
    GridField q1 = conjugate(p1), q2 = conjugate(p2);
    GridField q1t = conjugate(pt.psi1), q2t = conjugate(pt.psi2);

    auto P = [](const GridField& a, const GridField& b) {
        return pointwise_product(a, b);
    };

    GridField f1 = 1.5 * P(V, P(p2, p2));
    GridField g1 = P(p2, d_z(p2, 2)) - 0.5 * P(d_z(p2), d_z(p2));
    GridField f2 = 1.5 * P(Vb, P(p1, p1));
    GridField g2 = P(p1, d_zbar(p1, 2)) - 0.5 * P(d_zbar(p1), d_zbar(p1));
    GridField F0 = f1 + g1 - f2 - g2;

    GridField omega0_dz = P(p2, pt.psi2);        // (1/2) d/dt psi2^2
    GridField omega0_dzb = -1.0 * P(p1, pt.psi1);
    const double s0 = std::max(linf(omega0_dz), 1.0);
    CHECK(linf(d_z(F0) - omega0_dz) < 1e-8 * s0);
    CHECK(linf(d_zbar(F0) - omega0_dzb) < 1e-8 * s0);

    GridField h1 = P(q1, d_z(p2, 2)) + P(p2, d_z(q1, 2)) -
                   P(d_z(p2), d_z(q1)) + 3.0 * P(V, P(q1, p2));
    GridField h2 = P(p1, d_zbar(q2, 2)) + P(q2, d_zbar(p1, 2)) -
                   P(d_zbar(q2), d_zbar(p1)) + 3.0 * P(Vb, P(p1, q2));
    GridField F1 = h1 + h2;

    GridField omega1_dz = P(pt.psi2, q1) + P(p2, q1t);
    GridField omega1_dzb = P(pt.psi1, q2) + P(p1, q2t);
    const double s1 = std::max(linf(omega1_dz), 1.0);
    CHECK(linf(d_z(F1) - omega1_dz) < 1e-8 * s1);
    CHECK(linf(d_zbar(F1) - omega1_dzb) < 1e-8 * s1);
}
