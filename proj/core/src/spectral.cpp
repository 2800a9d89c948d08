#include "mnv/spectral.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

#include "fft_engine.hpp"

namespace mnv {
namespace {

using std::numbers::pi;

std::atomic<bool> g_dealias{true};

// character twist exp(2 pi i (d1 j1/n1 + d2 j2/n2)) sampled on an n1 x n2 grid
std::vector<cplx> twist(int n1, int n2, SpinCharacter ch) {
    std::vector<cplx> t(static_cast<std::size_t>(n1) * n2);
    for (int j1 = 0; j1 < n1; ++j1)
        for (int j2 = 0; j2 < n2; ++j2) {
            const double phase =
                2.0 * pi * (ch.delta1() * j1 / n1 + ch.delta2() * j2 / n2);
            t[static_cast<std::size_t>(j1) * n2 + j2] =
                cplx(std::cos(phase), std::sin(phase));
        }
    return t;
}

int signed_freq(int index, int n) { return index < n / 2 ? index : index - n; }

// applies a per-mode multiplier; annihilates the unmatched Nyquist line of
// each integer-offset axis (self-conjugate modes that would break reality
// under odd-order derivative factors)
template <typename Factor>
GridField apply_multiplier(const GridField& f, Factor&& factor) {
    const auto& lat = f.lattice();
    const int n1 = lat.n1(), n2 = lat.n2();
    const SpinCharacter ch = f.character();
    std::vector<cplx> m = to_modes(f);
    for (int i1 = 0; i1 < n1; ++i1) {
        const bool nyq1 = (ch.half1 == 0 && i1 == n1 / 2);
        const double k1 = signed_freq(i1, n1) + ch.delta1();
        for (int i2 = 0; i2 < n2; ++i2) {
            const bool nyq2 = (ch.half2 == 0 && i2 == n2 / 2);
            auto& c = m[static_cast<std::size_t>(i1) * n2 + i2];
            if (nyq1 || nyq2) {
                c = 0.0;
                continue;
            }
            const double k2 = signed_freq(i2, n2) + ch.delta2();
            c *= factor(lat.mode_frequency(k1, k2), i1, i2);
        }
    }
    return from_modes(lat, ch, std::move(m));
}

cplx ipow(cplx base, int order) {
    cplx r(1.0);
    for (int i = 0; i < order; ++i) r *= base;
    return r;
}

// copies spectrum quadrants between FFT layouts of different resolutions;
// handles both zero-padding and truncation per axis
std::vector<cplx> reshape_spectrum(const std::vector<cplx>& in, int n1, int n2,
                                   int m1, int m2) {
    std::vector<cplx> out(static_cast<std::size_t>(m1) * m2, cplx(0.0));
    const int h1 = std::min(n1, m1) / 2;
    const int h2 = std::min(n2, m2) / 2;
    auto src = [&](int i1, int i2) -> cplx {
        return in[static_cast<std::size_t>(i1) * n2 + i2];
    };
    auto dst = [&](int i1, int i2) -> cplx& {
        return out[static_cast<std::size_t>(i1) * m2 + i2];
    };
    for (int a = 0; a < h1; ++a)
        for (int b = 0; b < h2; ++b) {
            dst(a, b) = src(a, b);
            dst(a, m2 - 1 - b) = src(a, n2 - 1 - b);
            dst(m1 - 1 - a, b) = src(n1 - 1 - a, b);
            dst(m1 - 1 - a, m2 - 1 - b) = src(n1 - 1 - a, n2 - 1 - b);
        }
    return out;
}

int padded_size(int n, int nfactors) {
    const int m = (nfactors + 1) * n / 2 + (((nfactors + 1) * n) % 2 ? 1 : 0);
    return m % 2 ? m + 1 : m;
}

// The index-n/2 line carries frequency -n/2 with no +n/2 partner, which is
// ambiguous under multiplication (and breaks Hermitian symmetry of real
// fields on the padded grid). Products are defined on the unambiguous band:
// those lines are projected away for integer-offset axes, exactly as the
// derivative operators do.
void zero_nyquist_lines(std::vector<cplx>& m, int n1, int n2, SpinCharacter ch) {
    if (ch.half1 == 0)
        for (int i2 = 0; i2 < n2; ++i2)
            m[static_cast<std::size_t>(n1 / 2) * n2 + i2] = 0.0;
    if (ch.half2 == 0)
        for (int i1 = 0; i1 < n1; ++i1)
            m[static_cast<std::size_t>(i1) * n2 + n2 / 2] = 0.0;
}

}  // namespace

std::vector<cplx> to_modes(const GridField& f) {
    const int n1 = f.n1(), n2 = f.n2();
    std::vector<cplx> buf(f.size());
    if (f.character().trivial()) {
        buf = f.values();
    } else {
        const auto t = twist(n1, n2, f.character());
        for (std::size_t i = 0; i < buf.size(); ++i)
            buf[i] = f.values()[i] * std::conj(t[i]);
    }
    detail::fft2_forward(buf.data(), buf.data(), n1, n2);
    const double inv = 1.0 / static_cast<double>(f.size());
    for (auto& v : buf) v *= inv;
    return buf;
}

GridField from_modes(const PeriodicLattice& lat, SpinCharacter ch,
                     std::vector<cplx> modes) {
    if (modes.size() != lat.size())
        throw Error("mode array does not match lattice resolution");
    detail::fft2_backward(modes.data(), modes.data(), lat.n1(), lat.n2());
    if (!ch.trivial()) {
        const auto t = twist(lat.n1(), lat.n2(), ch);
        for (std::size_t i = 0; i < modes.size(); ++i) modes[i] *= t[i];
    }
    return GridField(lat, ch, std::move(modes));
}

GridField d_z(const GridField& f, int order) {
    return apply_multiplier(f, [order](cplx c, int, int) {
        return ipow(cplx(0.0, pi) * std::conj(c), order);
    });
}

GridField d_zbar(const GridField& f, int order) {
    return apply_multiplier(f, [order](cplx c, int, int) {
        return ipow(cplx(0.0, pi) * c, order);
    });
}

GridField d_x(const GridField& f, int order) {
    return apply_multiplier(f, [order](cplx c, int, int) {
        return ipow(cplx(0.0, 2.0 * pi * c.real()), order);
    });
}

GridField d_y(const GridField& f, int order) {
    return apply_multiplier(f, [order](cplx c, int, int) {
        return ipow(cplx(0.0, 2.0 * pi * c.imag()), order);
    });
}

GridField laplacian(const GridField& f) {
    return apply_multiplier(f, [](cplx c, int, int) {
        return cplx(-4.0 * pi * pi * std::norm(c), 0.0);
    });
}

namespace {

GridField inverse_impl(const GridField& f, cplx gauge, double tol_mean,
                       bool zbar) {
    if (!f.character().trivial())
        throw Error("d-bar inversion requires a trivial spin character");
    const auto& lat = f.lattice();
    const int n1 = lat.n1(), n2 = lat.n2();
    std::vector<cplx> m = to_modes(f);
    const double zero_mode = std::abs(m[0]);
    const double scale = std::max(linf(f), 1e-300);
    if (zero_mode > tol_mean * scale)
        throw ZeroModeError(
            "field has a zero mode (mean) of magnitude " +
                std::to_string(zero_mode) + "; it is not in the range of the operator",
            zero_mode);
    for (int i1 = 0; i1 < n1; ++i1)
        for (int i2 = 0; i2 < n2; ++i2) {
            auto& c = m[static_cast<std::size_t>(i1) * n2 + i2];
            if (i1 == 0 && i2 == 0) {
                c = gauge;
                continue;
            }
            if (i1 == n1 / 2 || i2 == n2 / 2) {
                c = 0.0;
                continue;
            }
            const cplx freq = lat.mode_frequency(signed_freq(i1, n1),
                                                 signed_freq(i2, n2));
            c /= cplx(0.0, pi) * (zbar ? freq : std::conj(freq));
        }
    return from_modes(lat, SpinCharacter{}, std::move(m));
}

}  // namespace

GridField dbar_inverse(const GridField& f, cplx gauge, double tol_mean) {
    return inverse_impl(f, gauge, tol_mean, true);
}

GridField dz_inverse(const GridField& f, cplx gauge, double tol_mean) {
    return inverse_impl(f, gauge, tol_mean, false);
}

bool dealiasing_enabled() { return g_dealias.load(); }
void set_dealiasing_enabled(bool on) { g_dealias.store(on); }

GridField dealiased_product(std::initializer_list<const GridField*> factors) {
    const int p = static_cast<int>(factors.size());
    if (p < 2 || p > 4)
        throw Error("dealiased products support 2 to 4 factors");
    const GridField& first = **factors.begin();
    const auto& lat = first.lattice();
    SpinCharacter result_ch{};
    for (const GridField* f : factors) {
        first.require_combinable(*f);
        result_ch = result_ch.combined(f->character());
    }

    if (!g_dealias.load()) {
        // verification hook: plain aliased pointwise product
        std::vector<cplx> v(first.size(), cplx(1.0));
        for (const GridField* f : factors)
            for (std::size_t i = 0; i < v.size(); ++i) v[i] *= f->values()[i];
        return GridField(lat, result_ch, std::move(v));
    }

    const int n1 = lat.n1(), n2 = lat.n2();
    const int m1 = padded_size(n1, p), m2 = padded_size(n2, p);
    const std::size_t fine_n = static_cast<std::size_t>(m1) * m2;

    // evaluate each factor on the fine grid (spectral upsampling plus its
    // character twist), multiply, then analyze the product as a field of the
    // combined character: half-offsets summing to 1 are ordinary integer
    // frequencies of the product, which the fine FFT resolves exactly
    std::vector<cplx> acc(fine_n, cplx(1.0));
    for (const GridField* f : factors) {
        auto coarse_modes = to_modes(*f);
        zero_nyquist_lines(coarse_modes, n1, n2, f->character());
        auto fine = reshape_spectrum(coarse_modes, n1, n2, m1, m2);
        detail::fft2_backward(fine.data(), fine.data(), m1, m2);
        const double d1 = f->character().delta1(), d2 = f->character().delta2();
        if (d1 != 0.0 || d2 != 0.0) {
            for (int j1 = 0; j1 < m1; ++j1)
                for (int j2 = 0; j2 < m2; ++j2) {
                    const double phase = 2.0 * pi * (d1 * j1 / m1 + d2 * j2 / m2);
                    fine[static_cast<std::size_t>(j1) * m2 + j2] *=
                        cplx(std::cos(phase), std::sin(phase));
                }
        }
        for (std::size_t i = 0; i < fine_n; ++i) acc[i] *= fine[i];
    }
    const double s1 = result_ch.delta1(), s2 = result_ch.delta2();
    if (s1 != 0.0 || s2 != 0.0) {
        for (int j1 = 0; j1 < m1; ++j1)
            for (int j2 = 0; j2 < m2; ++j2) {
                const double phase = -2.0 * pi * (s1 * j1 / m1 + s2 * j2 / m2);
                acc[static_cast<std::size_t>(j1) * m2 + j2] *=
                    cplx(std::cos(phase), std::sin(phase));
            }
    }
    detail::fft2_forward(acc.data(), acc.data(), m1, m2);
    const double inv = 1.0 / static_cast<double>(fine_n);
    for (auto& v : acc) v *= inv;
    auto coarse = reshape_spectrum(acc, m1, m2, n1, n2);
    zero_nyquist_lines(coarse, n1, n2, result_ch);
    return from_modes(lat, result_ch, std::move(coarse));
}

GridField dealiased_product(const GridField& a, const GridField& b) {
    return dealiased_product({&a, &b});
}

GridField dealiased_product(const GridField& a, const GridField& b,
                            const GridField& c) {
    return dealiased_product({&a, &b, &c});
}

Integral integrate(const GridField& f) {
    if (!f.character().trivial()) return {cplx(0.0), true};
    return {mean(f) * f.lattice().area(), false};
}

GridField resample(const GridField& f, int n1, int n2) {
    PeriodicLattice lat(f.lattice().gen1(), f.lattice().gen2(), n1, n2);
    auto m = reshape_spectrum(to_modes(f), f.n1(), f.n2(), n1, n2);
    return from_modes(lat, f.character(), std::move(m));
}

}  // namespace mnv
