#pragma once

#include <iosfwd>
#include <vector>

#include "mnv/flows.hpp"
#include "mnv/weierstrass.hpp"

namespace mnv {

// W = 4 integral(U^2) with dz dzbar read as dx dy
double willmore_from_potential(const GridField& U);
// W = integral(H^2 D^2 dx dy); equals the potential form since H^2 D^2 = 4 U^2
double willmore_direct(const SpinorPair& psis, const GridField& U);

// Euler-Lagrange residual in Weierstrass form:
// Lap(U) D - 2 (U_x D_x + U_y D_y) + U Lap(D) + 8 U^3 D, Lap = dxx + dyy
GridField el_residual(const GridField& U, const GridField& D);
// covariant form Lap_LB(H) + 2 H (H^2 - K), Lap_LB = (4/D^2) d_z d_zbar;
// relates to the Weierstrass form by el_residual = D^4 / 2 * this
GridField el_residual_covariant(const GridField& H, const GridField& K,
                                const GridField& D);

// modulus of the period lattice reduced to the fundamental domain
// |tau| >= 1, |Re tau| <= 1/2, Im tau > 0 (boundary ties toward Re tau >= 0)
struct ConformalClass {
    cplx tau;
    bool operator==(const ConformalClass&) const = default;
};
ConformalClass conformal_class(const PeriodicLattice& lattice);

// Li-Yau region: (a, b) = (|Re tau|, Im tau) with 0 <= a <= 1/2 and
// sqrt(1 - a^2) <= b <= 1
bool li_yau_region(const ConformalClass& cc);

struct WillmoreReport {
    double t = 0.0;
    double willmore = 0.0;         // potential form
    double willmore_direct = 0.0;  // curvature form
    double bound_gap = 0.0;        // W - 2 pi^2
    double el_residual_inf = 0.0;
    double el_residual_weighted = 0.0;  // D-weighted L2
    ConformalClass conformal_class;
    bool in_li_yau_region = false;
    double constraint_residual = 0.0;
    double dirac_residual = 0.0;
    double period_defect = 0.0;
    double imag_u = 0.0;
    double mean_u = 0.0;
};

WillmoreReport analyze_state(const FlowState& state);

struct FlowReportSummary {
    std::vector<WillmoreReport> rows;
    double willmore_drift = 0.0;  // max |W(t) - W(0)| / W(0)
    double max_constraint_residual = 0.0;
    double max_period_defect = 0.0;
    double max_imag_u = 0.0;
    bool conformal_class_fixed = true;
    bool bound_violated = false;  // W < 2 pi^2 - 1e-6 on a closed torus
};

FlowReportSummary flow_report(const std::vector<FlowState>& snapshots);

std::ostream& operator<<(std::ostream& os, const WillmoreReport& r);

}  // namespace mnv
