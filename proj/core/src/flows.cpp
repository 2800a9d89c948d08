#include "mnv/flows.hpp"

#include <cmath>
#include <numbers>

namespace mnv {
namespace {

using std::numbers::pi;

int signed_freq(int index, int n) { return index < n / 2 ? index : index - n; }

// nonlinear (coefficient) part of the mNV right-hand side; the diagonal
// d_z^3 + d_zbar^3 is handled separately so the integrating-factor scheme can
// transport it exactly
GridField mnv_rhs_nonlinear(const GridField& U, const GridField& V) {
    GridField Vb = conjugate(V);
    GridField out = 3.0 * dealiased_product(d_z(U), V) +
                    1.5 * dealiased_product(U, d_z(V)) +
                    3.0 * dealiased_product(d_zbar(U), Vb) +
                    1.5 * dealiased_product(U, d_zbar(Vb));
    return out;
}

SpinorPair psi_rhs_nonlinear(const GridField& U, const GridField& V,
                             const SpinorPair& psis) {
    GridField Vb = conjugate(V);
    const GridField& p1 = psis.psi1;
    const GridField& p2 = psis.psi2;
    GridField a1 = -3.0 * dealiased_product(d_z(U), d_z(p2)) +
                   3.0 * dealiased_product(Vb, d_zbar(p1)) +
                   3.0 * dealiased_product(U, V, p2) +
                   1.5 * dealiased_product(d_zbar(Vb), p1);
    GridField a2 = 3.0 * dealiased_product(V, d_z(p2)) +
                   3.0 * dealiased_product(d_zbar(U), d_zbar(p1)) +
                   1.5 * dealiased_product(d_z(V), p2) -
                   3.0 * dealiased_product(U, Vb, p1);
    return SpinorPair{std::move(a1), std::move(a2)};
}

GridField third_diagonal(const GridField& f) { return d_z(f, 3) + d_zbar(f, 3); }

bool numerically_real(const GridField& f) {
    return linf_imag(f) <= 1e-12 * std::max(linf(f), 1.0);
}

// real potentials must produce real flows; a violation means a transcription
// or dealiasing defect upstream
void assert_reality(const GridField& U, const GridField& rhs, const char* what) {
    if (!numerically_real(U)) return;
    if (linf_imag(rhs) > 1e-10 * std::max(linf(rhs), 1.0))
        throw Error(std::string(what) +
                    " lost reality on a real potential (imag norm " +
                    std::to_string(linf_imag(rhs)) + ")");
}

}  // namespace

GridField solve_V(const GridField& U, cplx gauge) {
    return dbar_inverse(d_z(dealiased_product(U, U)), gauge);
}

double gauge_constant(const GridField& U, const FlowOptions& opt) {
    double g = opt.gauge;
    if (opt.gauge_mode == GaugeMode::MeanUSquared)
        g += mean(dealiased_product(U, U)).real();
    return g;
}

GridField mnv_rhs(const GridField& U, const GridField& V) {
    const double cres = constraint_residual(U, V);
    if (cres > 1e-6 * std::max(linf(dealiased_product(U, U)), 1.0))
        throw Error("auxiliary potential violates its constraint (residual " +
                    std::to_string(cres) + ")");
    GridField rhs = third_diagonal(U) + mnv_rhs_nonlinear(U, V);
    assert_reality(U, rhs, "mNV right-hand side");
    return rhs;
}

SpinorPair psi_rhs(const GridField& U, const GridField& V,
                   const SpinorPair& psis) {
    SpinorPair nl = psi_rhs_nonlinear(U, V, psis);
    return SpinorPair{third_diagonal(psis.psi1) + nl.psi1,
                      third_diagonal(psis.psi2) + nl.psi2};
}

SpinorPair psi_rhs(const FlowState& state) {
    return psi_rhs(state.data.U, state.V, state.data.psis);
}

GridField nv_rhs(const GridField& U, cplx gauge) {
    GridField V = dbar_inverse(3.0 * d_z(U), gauge);
    GridField Vb = conjugate(V);
    GridField rhs = third_diagonal(U) + d_z(dealiased_product(V, U)) +
                    d_zbar(dealiased_product(Vb, U));
    assert_reality(U, rhs, "NV right-hand side");
    return rhs;
}

GridField nv2_rhs(const GridField& U) {
    GridField V = dbar_inverse(5.0 * d_z(U));
    GridField W = dbar_inverse(5.0 * d_z(U, 3) +
                               3.0 * dealiased_product(V, d_z(U)) +
                               dealiased_product(d_z(V), U));
    GridField plus =
        d_z(U, 5) + d_z(dealiased_product(V, d_z(U, 2)) +
                        dealiased_product(d_z(V), d_z(U)) +
                        dealiased_product(W, U));
    GridField Vb = conjugate(V);
    GridField Wb = conjugate(W);
    GridField minus =
        d_zbar(U, 5) + d_zbar(dealiased_product(Vb, d_zbar(U, 2)) +
                              dealiased_product(d_zbar(Vb), d_zbar(U)) +
                              dealiased_product(Wb, U));
    GridField rhs = plus + minus;
    assert_reality(U, rhs, "second NV right-hand side");
    return rhs;
}

GridField mnv2_rhs(const GridField& U, WConstraintReading reading) {
    GridField Usq = dealiased_product(U, U);
    GridField V = dbar_inverse(d_z(Usq));
    GridField warg = reading == WConstraintReading::DerivativeSquared
                         ? dealiased_product(U, U, V) -
                               dealiased_product(d_z(U), d_z(U))
                         : dealiased_product(U, U, V) - d_z(Usq);
    GridField W = dbar_inverse(d_z(warg));

    GridField plus = d_z(U, 5) + 5.0 * dealiased_product(V, d_z(U, 3)) +
                     7.5 * dealiased_product(d_z(V), d_z(U, 2)) +
                     5.0 * (dealiased_product(V, V, d_z(U)) -
                            1.5 * dealiased_product(d_z(V, 2), d_z(U)) +
                            dealiased_product(W, d_z(U))) +
                     5.0 * (dealiased_product(V, d_z(V), U) -
                            dealiased_product(d_z(V, 3), U) +
                            0.5 * dealiased_product(d_z(W), U));

    GridField Vb = conjugate(V);
    GridField Wb = conjugate(W);
    GridField minus = d_zbar(U, 5) + 5.0 * dealiased_product(Vb, d_zbar(U, 3)) +
                      7.5 * dealiased_product(d_zbar(Vb), d_zbar(U, 2)) +
                      5.0 * (dealiased_product(Vb, Vb, d_zbar(U)) -
                             1.5 * dealiased_product(d_zbar(Vb, 2), d_zbar(U)) +
                             dealiased_product(Wb, d_zbar(U))) +
                      5.0 * (dealiased_product(Vb, d_zbar(Vb), U) -
                             dealiased_product(d_zbar(Vb, 3), U) +
                             0.5 * dealiased_product(d_zbar(Wb), U));
    return plus + minus;
}

Profile kdv_rhs(const Profile& u) {
    Profile uxxx = profile_derivative(u, 3);
    Profile ux = profile_derivative(u, 1);
    Profile out{std::vector<double>(u.values.size()), u.period};
    for (std::size_t i = 0; i < u.values.size(); ++i)
        out.values[i] = 0.25 * uxxx.values[i] + 1.5 * u.values[i] * ux.values[i];
    return out;
}

Profile mkdv_rhs(const Profile& u) {
    Profile uxxx = profile_derivative(u, 3);
    Profile ux = profile_derivative(u, 1);
    Profile out{std::vector<double>(u.values.size()), u.period};
    for (std::size_t i = 0; i < u.values.size(); ++i)
        out.values[i] = uxxx.values[i] +
                        24.0 * u.values[i] * u.values[i] * ux.values[i];
    return out;
}

double willmore_density_drift(const FlowState& state) {
    GridField rhs = mnv_rhs(state.data.U, state.V);
    const cplx num = integrate(pointwise_product(state.data.U, rhs)).value;
    const cplx den =
        integrate(pointwise_product(state.data.U, state.data.U)).value;
    if (std::abs(den) == 0.0) return 0.0;
    return std::abs(num) / std::abs(den);
}

double constraint_residual(const GridField& U, const GridField& V) {
    return linf(d_zbar(V) - d_z(dealiased_product(U, U)));
}

FlowState make_flow_state(WeierstrassData data, double t,
                          const FlowOptions& opt) {
    GridField V = solve_V(data.U, gauge_constant(data.U, opt));
    return FlowState{t, std::move(data), std::move(V)};
}

namespace {

// joint (U, psi1, psi2) coefficient vector in mode space
struct ModeVec {
    std::vector<cplx> u, p1, p2;

    static ModeVec axpy(const ModeVec& a, double s, const ModeVec& b) {
        ModeVec r = a;
        for (std::size_t i = 0; i < r.u.size(); ++i) r.u[i] += s * b.u[i];
        for (std::size_t i = 0; i < r.p1.size(); ++i) {
            r.p1[i] += s * b.p1[i];
            r.p2[i] += s * b.p2[i];
        }
        return r;
    }
    void scale_by(const std::vector<cplx>& eu, const std::vector<cplx>& ep) {
        for (std::size_t i = 0; i < u.size(); ++i) u[i] *= eu[i];
        for (std::size_t i = 0; i < p1.size(); ++i) {
            p1[i] *= ep[i];
            p2[i] *= ep[i];
        }
    }
    ModeVec scaled(const std::vector<cplx>& eu,
                   const std::vector<cplx>& ep) const {
        ModeVec r = *this;
        r.scale_by(eu, ep);
        return r;
    }
};

// eigenvalues of d_z^3 + d_zbar^3 per mode (purely imaginary), with the
// annihilated Nyquist lines set to zero to match the derivative operators
std::vector<cplx> diagonal_symbol(const PeriodicLattice& lat, SpinCharacter ch) {
    const int n1 = lat.n1(), n2 = lat.n2();
    std::vector<cplx> lam(lat.size());
    for (int i1 = 0; i1 < n1; ++i1)
        for (int i2 = 0; i2 < n2; ++i2) {
            auto& l = lam[static_cast<std::size_t>(i1) * n2 + i2];
            if ((ch.half1 == 0 && i1 == n1 / 2) ||
                (ch.half2 == 0 && i2 == n2 / 2)) {
                l = 0.0;
                continue;
            }
            const cplx c = lat.mode_frequency(signed_freq(i1, n1) + ch.delta1(),
                                              signed_freq(i2, n2) + ch.delta2());
            const cplx a = cplx(0.0, pi) * std::conj(c);
            const cplx b = cplx(0.0, pi) * c;
            l = a * a * a + b * b * b;
        }
    return lam;
}

struct Stepper {
    const PeriodicLattice& lat;
    SpinCharacter psi_ch;
    const FlowOptions& opt;

    ModeVec pack(const FlowState& s) const {
        return ModeVec{to_modes(s.data.U), to_modes(s.data.psis.psi1),
                       to_modes(s.data.psis.psi2)};
    }
    FlowState unpack(const ModeVec& m, double t) const {
        GridField U = from_modes(lat, SpinCharacter{}, m.u);
        SpinorPair psis{from_modes(lat, psi_ch, m.p1),
                        from_modes(lat, psi_ch, m.p2)};
        GridField V = solve_V(U, gauge_constant(U, opt));
        return FlowState{t, WeierstrassData{std::move(U), std::move(psis)},
                         std::move(V)};
    }

    // nonlinear part of the joint right-hand side
    ModeVec eval_nonlinear(const ModeVec& m) const {
        GridField U = from_modes(lat, SpinCharacter{}, m.u);
        SpinorPair psis{from_modes(lat, psi_ch, m.p1),
                        from_modes(lat, psi_ch, m.p2)};
        GridField V = solve_V(U, gauge_constant(U, opt));
        GridField nu = mnv_rhs_nonlinear(U, V);
        SpinorPair np = psi_rhs_nonlinear(U, V, psis);
        return ModeVec{to_modes(nu), to_modes(np.psi1), to_modes(np.psi2)};
    }

    // full right-hand side (classical scheme)
    ModeVec eval_full(const ModeVec& m, const std::vector<cplx>& lam_u,
                      const std::vector<cplx>& lam_p) const {
        ModeVec r = eval_nonlinear(m);
        for (std::size_t i = 0; i < r.u.size(); ++i) r.u[i] += lam_u[i] * m.u[i];
        for (std::size_t i = 0; i < r.p1.size(); ++i) {
            r.p1[i] += lam_p[i] * m.p1[i];
            r.p2[i] += lam_p[i] * m.p2[i];
        }
        return r;
    }
};

std::vector<cplx> exp_of(const std::vector<cplx>& lam, double s) {
    std::vector<cplx> e(lam.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::exp(s * lam[i]);
    return e;
}

}  // namespace

FlowState step(const FlowState& state, double dt, Scheme scheme,
               const FlowOptions& opt) {
    if (dt <= 0.0) throw Error("time step must be positive");
    const auto& lat = state.data.U.lattice();
    Stepper st{lat, state.data.psis.character(), opt};
    const auto lam_u = diagonal_symbol(lat, SpinCharacter{});
    const auto lam_p = diagonal_symbol(lat, st.psi_ch);

    ModeVec y = st.pack(state);
    ModeVec ynew;
    if (scheme == Scheme::Classical) {
        ModeVec k1 = st.eval_full(y, lam_u, lam_p);
        ModeVec k2 = st.eval_full(ModeVec::axpy(y, dt / 2, k1), lam_u, lam_p);
        ModeVec k3 = st.eval_full(ModeVec::axpy(y, dt / 2, k2), lam_u, lam_p);
        ModeVec k4 = st.eval_full(ModeVec::axpy(y, dt, k3), lam_u, lam_p);
        ynew = y;
        for (std::size_t i = 0; i < y.u.size(); ++i)
            ynew.u[i] += dt / 6.0 * (k1.u[i] + 2.0 * k2.u[i] + 2.0 * k3.u[i] +
                                     k4.u[i]);
        for (std::size_t i = 0; i < y.p1.size(); ++i) {
            ynew.p1[i] += dt / 6.0 * (k1.p1[i] + 2.0 * k2.p1[i] +
                                      2.0 * k3.p1[i] + k4.p1[i]);
            ynew.p2[i] += dt / 6.0 * (k1.p2[i] + 2.0 * k2.p2[i] +
                                      2.0 * k3.p2[i] + k4.p2[i]);
        }
    } else {
        const auto eu_h = exp_of(lam_u, dt / 2), eu_f = exp_of(lam_u, dt);
        const auto ep_h = exp_of(lam_p, dt / 2), ep_f = exp_of(lam_p, dt);
        ModeVec k1 = st.eval_nonlinear(y);
        ModeVec k2 = st.eval_nonlinear(
            ModeVec::axpy(y, dt / 2, k1).scaled(eu_h, ep_h));
        ModeVec k3 = st.eval_nonlinear(
            ModeVec::axpy(y.scaled(eu_h, ep_h), dt / 2, k2));
        ModeVec k4 = st.eval_nonlinear(
            ModeVec::axpy(y.scaled(eu_f, ep_f), dt, k3.scaled(eu_h, ep_h)));
        ynew = y.scaled(eu_f, ep_f);
        ModeVec k1s = k1.scaled(eu_f, ep_f);
        ModeVec k2s = k2.scaled(eu_h, ep_h);
        ModeVec k3s = k3.scaled(eu_h, ep_h);
        for (std::size_t i = 0; i < y.u.size(); ++i)
            ynew.u[i] += dt / 6.0 * (k1s.u[i] + 2.0 * (k2s.u[i] + k3s.u[i]) +
                                     k4.u[i]);
        for (std::size_t i = 0; i < y.p1.size(); ++i) {
            ynew.p1[i] += dt / 6.0 * (k1s.p1[i] + 2.0 * (k2s.p1[i] + k3s.p1[i]) +
                                      k4.p1[i]);
            ynew.p2[i] += dt / 6.0 * (k1s.p2[i] + 2.0 * (k2s.p2[i] + k3s.p2[i]) +
                                      k4.p2[i]);
        }
    }

    FlowState next = st.unpack(ynew, state.t + dt);
    const double before = std::max(linf(state.data.U), 1e-300);
    if (linf(next.data.U) > opt.blowup_factor * before)
        throw BlowUpError("potential grew by more than the blow-up guard factor "
                          "in one step; aborting the run");
    return next;
}

}  // namespace mnv
