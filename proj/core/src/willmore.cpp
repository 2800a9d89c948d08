#include "mnv/willmore.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace mnv {
namespace {

using std::numbers::pi;

}  // namespace

double willmore_from_potential(const GridField& U) {
    return 4.0 * integrate(pointwise_product(U, U)).value.real();
}

double willmore_direct(const SpinorPair& psis, const GridField& U) {
    GridField H = mean_curvature(U, psis);
    GridField D = induced_metric_density(psis);
    GridField dens = pointwise_product(pointwise_product(H, H),
                                       pointwise_product(D, D));
    return integrate(dens).value.real();
}

GridField el_residual(const GridField& U, const GridField& D) {
    U.require_combinable(D);
    GridField lapU = laplacian(U);
    GridField lapD = laplacian(D);
    GridField Ux = d_x(U), Uy = d_y(U), Dx = d_x(D), Dy = d_y(D);
    const std::size_t n = U.size();
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = U.values()[i].real();
        const double d = D.values()[i].real();
        v[i] = lapU.values()[i].real() * d -
               2.0 * (Ux.values()[i].real() * Dx.values()[i].real() +
                      Uy.values()[i].real() * Dy.values()[i].real()) +
               u * lapD.values()[i].real() + 8.0 * u * u * u * d;
    }
    return GridField(U.lattice(), SpinCharacter{}, std::move(v));
}

GridField el_residual_covariant(const GridField& H, const GridField& K,
                                const GridField& D) {
    GridField lapH = laplacian(H);  // 4 d_z d_zbar = dxx + dyy
    const std::size_t n = H.size();
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double h = H.values()[i].real();
        const double k = K.values()[i].real();
        const double d = D.values()[i].real();
        v[i] = lapH.values()[i].real() / (d * d) + 2.0 * h * (h * h - k);
    }
    return GridField(H.lattice(), SpinCharacter{}, std::move(v));
}

ConformalClass conformal_class(const PeriodicLattice& lattice) {
    cplx tau = lattice.gen2() / lattice.gen1();
    if (tau.imag() < 0.0) tau = 1.0 / tau;  // relabel generators
    if (tau.imag() <= 0.0)
        throw Error("degenerate lattice: modulus has no positive imaginary part");
    for (int iter = 0; iter < 1000; ++iter) {
        tau -= std::round(tau.real());
        if (std::norm(tau) < 1.0 - 1e-15) {
            tau = -1.0 / tau;
            continue;
        }
        break;
    }
    // boundary ties toward Re tau >= 0
    const double eps = 1e-12;
    if (std::abs(tau.real() + 0.5) < eps) tau += 1.0;
    if (std::abs(std::norm(tau) - 1.0) < eps && tau.real() < -eps)
        tau = -1.0 / tau;
    return ConformalClass{tau};
}

bool li_yau_region(const ConformalClass& cc) {
    const double a = std::abs(cc.tau.real());
    const double b = cc.tau.imag();
    if (a < 0.0 || a > 0.5) return false;
    return std::sqrt(1.0 - a * a) <= b && b <= 1.0;
}

WillmoreReport analyze_state(const FlowState& state) {
    WillmoreReport r;
    r.t = state.t;
    r.willmore = willmore_from_potential(state.data.U);
    r.willmore_direct = willmore_direct(state.data.psis, state.data.U);
    r.bound_gap = r.willmore - 2.0 * pi * pi;
    GridField D = induced_metric_density(state.data.psis);
    GridField el = el_residual(state.data.U, D);
    r.el_residual_inf = linf(el);
    double wsum = 0.0, dsum = 0.0;
    for (std::size_t i = 0; i < el.size(); ++i) {
        const double d = D.values()[i].real();
        wsum += std::norm(el.values()[i]) * d;
        dsum += d;
    }
    r.el_residual_weighted = std::sqrt(wsum / std::max(dsum, 1e-300));
    r.conformal_class = conformal_class(state.data.U.lattice());
    r.in_li_yau_region = li_yau_region(r.conformal_class);
    r.constraint_residual = constraint_residual(state.data.U, state.V);
    auto [d1, d2] = dirac_residual(state.data.U, state.data.psis);
    r.dirac_residual = std::max(linf(d1), linf(d2));
    // reporting measures badness instead of rejecting it: synthesize without
    // the closedness gate (inconsistency already shows in dirac_residual)
    r.period_defect =
        synthesize_immersion(state.data.psis, 1e300).defect_norm();
    r.imag_u = linf_imag(state.data.U);
    r.mean_u = mean(state.data.U).real();
    return r;
}

FlowReportSummary flow_report(const std::vector<FlowState>& snapshots) {
    FlowReportSummary s;
    if (snapshots.empty()) return s;
    const ConformalClass cc0 = conformal_class(snapshots.front().data.U.lattice());
    const double W0 = willmore_from_potential(snapshots.front().data.U);
    for (const auto& snap : snapshots) {
        WillmoreReport r = analyze_state(snap);
        if (W0 != 0.0)
            s.willmore_drift =
                std::max(s.willmore_drift, std::abs(r.willmore - W0) / std::abs(W0));
        s.max_constraint_residual =
            std::max(s.max_constraint_residual, r.constraint_residual);
        s.max_period_defect = std::max(s.max_period_defect, r.period_defect);
        s.max_imag_u = std::max(s.max_imag_u, r.imag_u);
        if (!(r.conformal_class == cc0)) s.conformal_class_fixed = false;
        const bool closed =
            r.period_defect < 1e-6 * std::max(1.0, std::abs(r.willmore));
        if (closed && r.willmore > 0.0 && r.bound_gap < -1e-6)
            s.bound_violated = true;
        s.rows.push_back(std::move(r));
    }
    return s;
}

std::ostream& operator<<(std::ostream& os, const WillmoreReport& r) {
    os << "t=" << r.t << " W=" << r.willmore << " (direct " << r.willmore_direct
       << ", gap " << r.bound_gap << ") EL(inf)=" << r.el_residual_inf
       << " tau=" << r.conformal_class.tau.real() << "+"
       << r.conformal_class.tau.imag() << "i"
       << (r.in_li_yau_region ? " [Li-Yau region]" : "")
       << " constraint=" << r.constraint_residual
       << " dirac=" << r.dirac_residual << " defect=" << r.period_defect;
    return os;
}

}  // namespace mnv
