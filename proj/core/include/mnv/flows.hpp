#pragma once

#include "mnv/profile.hpp"
#include "mnv/weierstrass.hpp"

namespace mnv {

// State advanced by the modified Novikov-Veselov flow: t, (U, psi), and the
// auxiliary potential V solving d_zbar V = d_z(U^2) with zero mean (plus an
// optional constant gauge).
struct FlowState {
    double t = 0.0;
    WeierstrassData data;
    GridField V;
};

enum class GaugeMode {
    ZeroMean,     // mean(V) = gauge constant 0
    MeanUSquared  // constant chosen as mean(U^2); V = U^2 for 1-D potentials
};

struct FlowOptions {
    GaugeMode gauge_mode = GaugeMode::ZeroMean;
    double gauge = 0.0;       // extra constant added to V
    double blowup_factor = 10.0;
};

// V = dbar_inverse(d_z(dealiased U^2)) + gauge
GridField solve_V(const GridField& U, cplx gauge = 0.0);
double gauge_constant(const GridField& U, const FlowOptions& opt);

// U_t = (U_zzz + 3 U_z V + 3/2 U V_z) + (U_zbzbzb + 3 U_zb conj(V)
//        + 3/2 U conj(V)_zb); transforms real potentials into real ones
GridField mnv_rhs(const GridField& U, const GridField& V);

// the third-order deformation of the Dirac kernel matching mnv_rhs
SpinorPair psi_rhs(const GridField& U, const GridField& V,
                   const SpinorPair& psis);
SpinorPair psi_rhs(const FlowState& state);

// Novikov-Veselov flow: U_t = d_z^3 U + d_zbar^3 U + d_z(V U) + d_zbar(conj(V) U)
// with V = 3 dbar_inverse(d_z U) + gauge
GridField nv_rhs(const GridField& U, cplx gauge = 0.0);

// second flows of the hierarchies (right-hand sides only)
GridField nv2_rhs(const GridField& U);
enum class WConstraintReading {
    DerivativeSquared,   // (U_z)^2 in the W constraint (default)
    DerivativeOfSquare,  // (U^2)_z
};
GridField mnv2_rhs(const GridField& U,
                   WConstraintReading reading = WConstraintReading::DerivativeSquared);

// 1-D flows: 1/4 u_xxx + 3/2 u u_x and u_xxx + 24 u^2 u_x
Profile kdv_rhs(const Profile& u);
Profile mkdv_rhs(const Profile& u);

// |integral(U * mnv_rhs)| / integral(U^2): instantaneous relative drift of
// the Willmore integrand, zero for the exact flow
double willmore_density_drift(const FlowState& state);

enum class Scheme {
    IntegratingFactor,  // 4-stage with exact diagonal d^3 + dbar^3 transport
    Classical           // plain 4-stage explicit
};

struct BlowUpError : Error {
    using Error::Error;
};

FlowState make_flow_state(WeierstrassData data, double t = 0.0,
                          const FlowOptions& opt = {});

// one joint step of (U, psi); V is re-solved at every stage. Throws
// BlowUpError when |U| grows by more than opt.blowup_factor in one step.
FlowState step(const FlowState& state, double dt, Scheme scheme,
               const FlowOptions& opt = {});

// residual of the nonlocal constraint, |d_zbar V - d_z(U^2)|_inf
double constraint_residual(const GridField& U, const GridField& V);

}  // namespace mnv
