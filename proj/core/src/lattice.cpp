#include "mnv/lattice.hpp"

#include <cmath>

namespace mnv {

PeriodicLattice::PeriodicLattice(cplx gen1, cplx gen2, int n1, int n2)
    : gen1_(gen1), gen2_(gen2), n1_(n1), n2_(n2) {
    if (n1 < 4 || n2 < 4 || n1 % 2 != 0 || n2 % 2 != 0)
        throw Error("lattice resolution must be even and at least 4 per axis");

    const double det = gen1.real() * gen2.imag() - gen1.imag() * gen2.real();
    const double big = std::max(std::abs(gen1), std::abs(gen2));
    if (big == 0.0 || std::abs(det) < 1e-8 * big * big)
        throw Error("lattice generators are degenerate (collinear or a sliver)");

    // rows of the inverse-transpose of [[Re g1, Im g1], [Re g2, Im g2]]
    dual1_ = cplx(gen2.imag(), -gen2.real()) / det;
    dual2_ = cplx(-gen1.imag(), gen1.real()) / det;
    area_ = std::abs(det);
}

PeriodicLattice make_lattice(cplx gen1, cplx gen2, int n1, int n2) {
    return PeriodicLattice(gen1, gen2, n1, n2);
}

}  // namespace mnv
