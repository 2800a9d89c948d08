#pragma once

#include <initializer_list>
#include <vector>

#include "mnv/grid_field.hpp"

namespace mnv {

// Fourier coefficients of a field in FFT index layout (row-major n1 x n2,
// frequency k = index for index < n/2, index - n otherwise). The character
// twist exp(2 pi i (d1 j1/n1 + d2 j2/n2)) is removed before analysis, so
// coefficient (k1, k2) multiplies the plane wave with frequency vector
// (k1 + d1) dual1 + (k2 + d2) dual2.
std::vector<cplx> to_modes(const GridField& f);
GridField from_modes(const PeriodicLattice& lat, SpinCharacter ch,
                     std::vector<cplx> modes);

// spectral derivatives; mode (k1,k2) with frequency c = a + ib is multiplied
// by (i pi conj(c))^order for d_z and (i pi c)^order for d_zbar. Unmatched
// Nyquist lines of integer-character fields are annihilated so odd-order
// derivatives of real fields stay real.
GridField d_z(const GridField& f, int order = 1);
GridField d_zbar(const GridField& f, int order = 1);
GridField d_x(const GridField& f, int order = 1);
GridField d_y(const GridField& f, int order = 1);
GridField laplacian(const GridField& f);

struct ZeroModeError : Error {
    ZeroModeError(const std::string& what, double magnitude)
        : Error(what), zero_mode_magnitude(magnitude) {}
    double zero_mode_magnitude;
};

// Inverts d_zbar on a trivial-character field with (numerically) vanishing
// mean; the result has mean equal to `gauge` (zero-mean normalization by
// default). Throws ZeroModeError reporting |mean(f)| when the kernel mode
// exceeds tol_mean * max(|f|, 1e-300).
GridField dbar_inverse(const GridField& f, cplx gauge = 0.0,
                       double tol_mean = 1e-10);
GridField dz_inverse(const GridField& f, cplx gauge = 0.0,
                     double tol_mean = 1e-10);

// Pointwise product evaluated alias-free: factors are spectrally upsampled to
// a grid of at least (p+1)/2 times the resolution for p factors, multiplied,
// and the result projected back onto the original band. Verification hook:
// dealiasing_enabled(false) degrades this to the plain pointwise product.
GridField dealiased_product(std::initializer_list<const GridField*> factors);
GridField dealiased_product(const GridField& a, const GridField& b);
GridField dealiased_product(const GridField& a, const GridField& b,
                            const GridField& c);
bool dealiasing_enabled();
void set_dealiasing_enabled(bool on);

struct Integral {
    cplx value;
    bool antiperiodic_zero;  // character was nontrivial; value is exactly 0
};

// mean(samples) * area of the fundamental domain; exact for band-limited
// integrands. Integrals of fields with nontrivial character vanish
// identically and are flagged.
Integral integrate(const GridField& f);

// trigonometric resampling to a new resolution on the same lattice
GridField resample(const GridField& f, int n1, int n2);

}  // namespace mnv
