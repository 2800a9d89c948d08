#pragma once

#include <random>
#include <vector>

#include "mnv/spectral.hpp"

namespace mnvtest {

using namespace mnv;

// band-limited random field: modes |k1|,|k2| <= K with gaussian-decayed
// complex amplitudes. real_valued takes the real part (Hermitian spectrum).
inline GridField random_field(const PeriodicLattice& lat, int K,
                              std::mt19937_64& rng, SpinCharacter ch = {},
                              bool real_valued = false) {
    std::normal_distribution<double> g;
    std::vector<cplx> m(lat.size(), cplx(0.0));
    const int n1 = lat.n1(), n2 = lat.n2();
    for (int a = -K; a <= K; ++a)
        for (int b = -K; b <= K; ++b) {
            const double decay = std::exp(-0.25 * (a * a + b * b));
            m[static_cast<std::size_t>((a + n1) % n1) * n2 + (b + n2) % n2] =
                cplx(g(rng), g(rng)) * decay;
        }
    GridField f = from_modes(lat, ch, std::move(m));
    return real_valued ? real_part(f) : f;
}

// zero-mean variant (for d-bar inversion domains)
inline GridField random_zero_mean(const PeriodicLattice& lat, int K,
                                  std::mt19937_64& rng) {
    GridField f = random_field(lat, K, rng);
    return f - GridField::constant(lat, mean(f));
}

// 8th-order centered finite differences along the grid axes; valid for
// rectangular lattices with gen1 real and gen2 imaginary. Stencil samples
// that wrap a period pick up the character sign.
inline cplx fd_sample(const GridField& f, int j1, int j2) {
    double sign = 1.0;
    const int n1 = f.n1(), n2 = f.n2();
    int w1 = 0, w2 = 0;
    while (j1 < 0) {
        j1 += n1;
        --w1;
    }
    while (j1 >= n1) {
        j1 -= n1;
        ++w1;
    }
    while (j2 < 0) {
        j2 += n2;
        --w2;
    }
    while (j2 >= n2) {
        j2 -= n2;
        ++w2;
    }
    if (f.character().half1 && (w1 % 2 != 0)) sign = -sign;
    if (f.character().half2 && (w2 % 2 != 0)) sign = -sign;
    return sign * f.at(j1, j2);
}

inline GridField fd_dx(const GridField& f) {
    static const double c[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    const int n1 = f.n1(), n2 = f.n2();
    const double h = f.lattice().gen1().real() / n1;
    GridField out = GridField::zeros(f.lattice(), f.character());
    for (int j1 = 0; j1 < n1; ++j1)
        for (int j2 = 0; j2 < n2; ++j2) {
            cplx acc(0.0);
            for (int m = 1; m <= 4; ++m)
                acc += c[m - 1] *
                       (fd_sample(f, j1 + m, j2) - fd_sample(f, j1 - m, j2));
            out.at(j1, j2) = acc / h;
        }
    return out;
}

inline GridField fd_dy(const GridField& f) {
    static const double c[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    const int n1 = f.n1(), n2 = f.n2();
    const double h = f.lattice().gen2().imag() / n2;
    GridField out = GridField::zeros(f.lattice(), f.character());
    for (int j1 = 0; j1 < n1; ++j1)
        for (int j2 = 0; j2 < n2; ++j2) {
            cplx acc(0.0);
            for (int m = 1; m <= 4; ++m)
                acc += c[m - 1] *
                       (fd_sample(f, j1, j2 + m) - fd_sample(f, j1, j2 - m));
            out.at(j1, j2) = acc / h;
        }
    return out;
}

inline GridField fd_dz(const GridField& f) {
    GridField dx = fd_dx(f), dy = fd_dy(f);
    return 0.5 * (dx - cplx(0.0, 1.0) * dy);
}

inline GridField fd_dzbar(const GridField& f) {
    GridField dx = fd_dx(f), dy = fd_dy(f);
    return 0.5 * (dx + cplx(0.0, 1.0) * dy);
}

// product oracle: direct convolution of coefficient spectra (no FFT, no
// padding), projected onto the coarse band. Trivial characters only.
inline GridField convolution_product(const std::vector<const GridField*>& fs) {
    const PeriodicLattice& lat = fs.front()->lattice();
    const int n1 = lat.n1(), n2 = lat.n2();
    std::vector<std::vector<cplx>> factor_spectra;
    for (const GridField* f : fs) factor_spectra.push_back(to_modes(*f));

    const int half1 = n1 / 2, half2 = n2 / 2;
    auto coef = [&](const std::vector<cplx>& s, int k1, int k2) -> cplx {
        if (k1 < -half1 || k1 >= half1 || k2 < -half2 || k2 >= half2) return 0.0;
        return s[static_cast<std::size_t>((k1 + n1) % n1) * n2 + (k2 + n2) % n2];
    };
    // accumulate the full product spectrum over the expanded range
    const int p = static_cast<int>(fs.size());
    const int R1 = p * half1, R2 = p * half2;
    std::vector<cplx> full(static_cast<std::size_t>(2 * R1 + 1) * (2 * R2 + 1),
                           cplx(0.0));
    auto fidx = [&](int k1, int k2) {
        return static_cast<std::size_t>(k1 + R1) * (2 * R2 + 1) + (k2 + R2);
    };
    // seed with the first factor
    for (int k1 = -half1; k1 < half1; ++k1)
        for (int k2 = -half2; k2 < half2; ++k2)
            full[fidx(k1, k2)] = coef(factor_spectra[0], k1, k2);
    std::vector<cplx> next(full.size());
    for (int f = 1; f < p; ++f) {
        std::fill(next.begin(), next.end(), cplx(0.0));
        for (int k1 = -f * half1; k1 <= f * half1; ++k1)
            for (int k2 = -f * half2; k2 <= f * half2; ++k2) {
                const cplx a = full[fidx(k1, k2)];
                if (a == cplx(0.0)) continue;
                for (int l1 = -half1; l1 < half1; ++l1)
                    for (int l2 = -half2; l2 < half2; ++l2) {
                        const cplx b = coef(factor_spectra[f], l1, l2);
                        if (b == cplx(0.0)) continue;
                        next[fidx(k1 + l1, k2 + l2)] += a * b;
                    }
            }
        std::swap(full, next);
    }
    // project to the unambiguous coarse band (the index-n/2 Nyquist lines
    // have no conjugate partner and are excluded, matching the library)
    std::vector<cplx> m(lat.size(), cplx(0.0));
    for (int k1 = -half1 + 1; k1 < half1; ++k1)
        for (int k2 = -half2 + 1; k2 < half2; ++k2)
            m[static_cast<std::size_t>((k1 + n1) % n1) * n2 + (k2 + n2) % n2] =
                full[fidx(k1, k2)];
    return from_modes(lat, SpinCharacter{}, std::move(m));
}

inline double rel_linf(const GridField& a, const GridField& b) {
    return linf(a - b) / std::max(linf(b), 1e-300);
}

}  // namespace mnvtest
