#pragma once

#include <array>
#include <utility>

#include "mnv/grid_field.hpp"
#include "mnv/spectral.hpp"

namespace mnv {

// The two Weierstrass spinor components, sharing one lattice and one spin
// character (one sign per generator acts on both components).
struct SpinorPair {
    GridField psi1, psi2;

    SpinorPair(GridField a, GridField b) : psi1(std::move(a)), psi2(std::move(b)) {
        psi1.require_combinable(psi2);
        if (!(psi1.character() == psi2.character()))
            throw Error("spinor components must share one spin character");
    }
    const PeriodicLattice& lattice() const { return psi1.lattice(); }
    SpinCharacter character() const { return psi1.character(); }
};

// Real potential plus spinor pair: the full state advanced by the flow.
struct WeierstrassData {
    GridField U;
    SpinorPair psis;
};

// Three real coordinate fields (the periodic part, mean zero) plus the
// translation of the immersion along each lattice generator. The defect
// vanishes exactly when the surface closes into a torus.
struct Immersion {
    GridField x1, x2, x3;
    std::array<std::array<double, 3>, 2> period_defect{};

    double defect_norm() const;
    bool closed(double tol = 1e-8) const;
    // full coordinate value including the linear (non-periodic) part
    std::array<double, 3> position(int j1, int j2) const;
    // d/dz of component a including the linear part's constant contribution
    std::array<cplx, 2> linear_gradient(int component) const;  // (df/dz, df/dzbar)
};

// residuals of the Dirac system d_z psi1 - U psi2, d_zbar psi2 + U psi1
std::pair<GridField, GridField> dirac_residual(const GridField& U,
                                               const SpinorPair& psis);

// conformal factor D = |psi1|^2 + |psi2|^2 (metric D^2 (dx^2 + dy^2))
GridField induced_metric_density(const SpinorPair& psis);

// H = 2U / D; throws when D vanishes (location reported)
GridField mean_curvature(const GridField& U, const SpinorPair& psis);

// K = -(1/D^2) Laplacian(log D), log taken pointwise
GridField gaussian_curvature(const SpinorPair& psis);

// (i(conj(psi1)^2 + psi2^2)/2, (conj(psi1)^2 - psi2^2)/2, -psi2 conj(psi1)),
// evaluated pointwise so the isotropy relation G1^2+G2^2+G3^2 = 0 is exact
std::array<GridField, 3> gauss_map(const SpinorPair& psis);

// Integrates the Weierstrass forms by Fourier mode matching. Zero modes of
// the integrands become the period defect; the periodic part is normalized to
// mean zero. Throws when the overdetermined mode system is inconsistent
// beyond `consistency_tol` (a Dirac-residual violation).
Immersion synthesize_immersion(const SpinorPair& psis,
                               double consistency_tol = 1e-4);

struct SpinorExtraction {
    GridField U;
    SpinorPair psis;
};

// Recovers Weierstrass data from a conformally parametrized immersion.
// The square-root branch is fixed by predictor continuation along rows then
// columns; wrap signs determine the spin character. U = H D / 2 with H from
// the flat Laplacian of the immersion and the unit normal.
SpinorExtraction extract_spinors(const Immersion& X,
                                 double conformal_tol = 1e-6);

}  // namespace mnv
