#include "mnv/operators.hpp"

#include <cmath>

#include "mnv/flows.hpp"

namespace mnv {
namespace {

// B operators share the structure 3 [[0, s],[−s, 0]] d + 3 [[0, m12],[m21, 0]]
SpinorPair b_apply(const GridField& s, const GridField& m12,
                   const GridField& m21, const SpinorPair& phi, bool zbar) {
    auto d = [&](const GridField& f) { return zbar ? d_zbar(f) : d_z(f); };
    GridField b1 = 3.0 * dealiased_product(s, d(phi.psi2)) +
                   3.0 * dealiased_product(m12, phi.psi2);
    GridField b2 = -3.0 * dealiased_product(s, d(phi.psi1)) +
                   3.0 * dealiased_product(m21, phi.psi1);
    return SpinorPair{std::move(b1), std::move(b2)};
}

}  // namespace

OperatorCoefficients make_operator_coefficients(const GridField& U) {
    GridField Usq = dealiased_product(U, U);
    GridField V = dbar_inverse(d_z(Usq));
    GridField Vbar = dz_inverse(d_zbar(Usq));
    return OperatorCoefficients{U, std::move(V), std::move(Vbar)};
}

SpinorPair apply_operator(OperatorKind kind, const OperatorCoefficients& co,
                          const SpinorPair& phi) {
    const GridField& U = co.U;
    const GridField& V = co.V;
    const GridField& Vb = co.Vbar;
    switch (kind) {
        case OperatorKind::DiracMnv:
            return SpinorPair{d_z(phi.psi1) - dealiased_product(U, phi.psi2),
                              dealiased_product(U, phi.psi1) + d_zbar(phi.psi2)};
        case OperatorKind::APlus: {
            GridField a1 = d_z(phi.psi1, 3) -
                           3.0 * dealiased_product(d_z(U), d_z(phi.psi2)) +
                           3.0 * dealiased_product(U, V, phi.psi2);
            GridField a2 = d_z(phi.psi2, 3) +
                           3.0 * dealiased_product(V, d_z(phi.psi2)) +
                           1.5 * dealiased_product(d_z(V), phi.psi2);
            return SpinorPair{std::move(a1), std::move(a2)};
        }
        case OperatorKind::AMinus: {
            GridField a1 = d_zbar(phi.psi1, 3) +
                           3.0 * dealiased_product(Vb, d_zbar(phi.psi1)) +
                           1.5 * dealiased_product(d_zbar(Vb), phi.psi1);
            GridField a2 = d_zbar(phi.psi2, 3) +
                           3.0 * dealiased_product(d_zbar(U), d_zbar(phi.psi1)) -
                           3.0 * dealiased_product(U, Vb, phi.psi1);
            return SpinorPair{std::move(a1), std::move(a2)};
        }
        case OperatorKind::BPlus: {
            GridField m12 = -1.0 * dealiased_product(U, V);
            GridField m21 = -1.0 * (d_z(U, 2) + dealiased_product(U, V));
            return b_apply(d_z(U), m12, m21, phi, false);
        }
        case OperatorKind::BMinus: {
            GridField m12 = d_zbar(U, 2) + dealiased_product(U, Vb);
            GridField m21 = dealiased_product(U, Vb);
            return b_apply(d_zbar(U), m12, m21, phi, true);
        }
        case OperatorKind::DiracMkdv: {
            GridField a1 = d_x(phi.psi1) + 0.5 * phi.psi1 -
                           2.0 * dealiased_product(U, phi.psi2);
            GridField a2 = d_x(phi.psi2) - 0.5 * phi.psi2 +
                           2.0 * dealiased_product(U, phi.psi1);
            return SpinorPair{std::move(a1), std::move(a2)};
        }
    }
    throw Error("unknown operator kind");
}

double triple_residual(const GridField& U, FlowSign sign, const SpinorPair& phi,
                       bool corrupt_b) {
    OperatorCoefficients co = make_operator_coefficients(U);
    const bool plus = sign == FlowSign::Plus;

    // analytic half-flow derivative of the potential
    GridField Ut = plus ? d_z(U, 3) + 3.0 * dealiased_product(d_z(U), co.V) +
                              1.5 * dealiased_product(U, d_z(co.V))
                        : d_zbar(U, 3) +
                              3.0 * dealiased_product(d_zbar(U), co.Vbar) +
                              1.5 * dealiased_product(U, d_zbar(co.Vbar));

    const OperatorKind A = plus ? OperatorKind::APlus : OperatorKind::AMinus;
    SpinorPair Af = apply_operator(A, co, phi);
    SpinorPair LAf = apply_operator(OperatorKind::DiracMnv, co, Af);
    SpinorPair Lf = apply_operator(OperatorKind::DiracMnv, co, phi);
    SpinorPair ALf = apply_operator(A, co, Lf);

    SpinorPair BLf = [&] {
        if (plus) {
            GridField m12 = -1.0 * dealiased_product(U, co.V);
            GridField m21 = (corrupt_b ? 1.0 : -1.0) *
                            (d_z(U, 2) + dealiased_product(U, co.V));
            return b_apply(d_z(U), m12, m21, Lf, false);
        }
        GridField m12 = d_zbar(U, 2) + dealiased_product(U, co.Vbar);
        GridField m21 =
            (corrupt_b ? -1.0 : 1.0) * dealiased_product(U, co.Vbar);
        return b_apply(d_zbar(U), m12, m21, Lf, true);
    }();

    GridField r1 = -1.0 * dealiased_product(Ut, phi.psi2) + LAf.psi1 -
                   ALf.psi1 - BLf.psi1;
    GridField r2 = dealiased_product(Ut, phi.psi1) + LAf.psi2 - ALf.psi2 -
                   BLf.psi2;
    const double pn = std::max(std::sqrt(l2(phi.psi1) * l2(phi.psi1) +
                                         l2(phi.psi2) * l2(phi.psi2)),
                               1e-300);
    return std::sqrt(l2(r1) * l2(r1) + l2(r2) * l2(r2)) / pn;
}

}  // namespace mnv
