#include "mnv/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mnv {
namespace {

using std::numbers::pi;

int signed_freq(int index, int n) { return index < n / 2 ? index : index - n; }

std::array<double, 2> solve_linear_part(const PeriodicLattice& lat, double v1,
                                        double v2) {
    // p Re g + q Im g = v for both generators
    const double a = lat.gen1().real(), b = lat.gen1().imag();
    const double c = lat.gen2().real(), d = lat.gen2().imag();
    const double det = a * d - b * c;
    return {(v1 * d - v2 * b) / det, (a * v2 - c * v1) / det};
}

}  // namespace

double Immersion::defect_norm() const {
    double s = 0.0;
    for (const auto& row : period_defect)
        for (double v : row) s += v * v;
    return std::sqrt(s);
}

bool Immersion::closed(double tol) const {
    double diam = std::max({linf(x1), linf(x2), linf(x3), 1e-300});
    return defect_norm() < tol * diam;
}

std::array<double, 3> Immersion::position(int j1, int j2) const {
    const auto& lat = x1.lattice();
    const cplx z = lat.point(j1, j2);
    std::array<double, 3> out{};
    const GridField* comps[3] = {&x1, &x2, &x3};
    for (int a = 0; a < 3; ++a) {
        const auto [p, q] =
            solve_linear_part(lat, period_defect[0][a], period_defect[1][a]);
        out[a] = comps[a]->at(j1, j2).real() + p * z.real() + q * z.imag();
    }
    return out;
}

std::array<cplx, 2> Immersion::linear_gradient(int component) const {
    const auto [p, q] = solve_linear_part(x1.lattice(), period_defect[0][component],
                                          period_defect[1][component]);
    return {cplx(p, -q) * 0.5, cplx(p, q) * 0.5};
}

std::pair<GridField, GridField> dirac_residual(const GridField& U,
                                               const SpinorPair& psis) {
    U.require_combinable(psis.psi1);
    GridField r1 = d_z(psis.psi1) - dealiased_product(U, psis.psi2);
    GridField r2 = d_zbar(psis.psi2) + dealiased_product(U, psis.psi1);
    return {std::move(r1), std::move(r2)};
}

GridField induced_metric_density(const SpinorPair& psis) {
    std::vector<cplx> v(psis.psi1.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = std::norm(psis.psi1.values()[i]) + std::norm(psis.psi2.values()[i]);
    return GridField(psis.lattice(), SpinCharacter{}, std::move(v));
}

GridField mean_curvature(const GridField& U, const SpinorPair& psis) {
    U.require_combinable(psis.psi1);
    GridField D = induced_metric_density(psis);
    std::vector<cplx> v(D.size());
    for (int j1 = 0; j1 < D.n1(); ++j1)
        for (int j2 = 0; j2 < D.n2(); ++j2) {
            const double d = D.at(j1, j2).real();
            if (d <= 0.0)
                throw Error("metric density vanishes at grid node (" +
                            std::to_string(j1) + ", " + std::to_string(j2) +
                            "); the surface is not regular there");
            v[static_cast<std::size_t>(j1) * D.n2() + j2] =
                2.0 * U.at(j1, j2) / d;
        }
    return GridField(U.lattice(), SpinCharacter{}, std::move(v));
}

GridField gaussian_curvature(const SpinorPair& psis) {
    GridField D = induced_metric_density(psis);
    const double floor = 1e-300;
    GridField logD = map_values(D, [&](cplx d) {
        if (d.real() <= 0.0)
            throw Error("metric density vanishes; Gaussian curvature undefined");
        return cplx(std::log(std::max(d.real(), floor)), 0.0);
    });
    GridField lap = laplacian(logD);
    std::vector<cplx> v(D.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double d = D.values()[i].real();
        v[i] = cplx(-lap.values()[i].real() / (d * d), 0.0);
    }
    return GridField(D.lattice(), SpinCharacter{}, std::move(v));
}

std::array<GridField, 3> gauss_map(const SpinorPair& psis) {
    const std::size_t n = psis.psi1.size();
    std::vector<cplx> g1(n), g2(n), g3(n);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx a = std::conj(psis.psi1.values()[i]);
        const cplx b = psis.psi2.values()[i];
        g1[i] = cplx(0.0, 0.5) * (a * a + b * b);
        g2[i] = 0.5 * (a * a - b * b);
        g3[i] = -b * a;
    }
    const auto& lat = psis.lattice();
    return {GridField(lat, SpinCharacter{}, std::move(g1)),
            GridField(lat, SpinCharacter{}, std::move(g2)),
            GridField(lat, SpinCharacter{}, std::move(g3))};
}

Immersion synthesize_immersion(const SpinorPair& psis, double consistency_tol) {
    const auto& lat = psis.lattice();
    const int n1 = lat.n1(), n2 = lat.n2();

    // integrand fields: dW = i conj(psi1)^2 dz - i conj(psi2)^2 dzbar for
    // W = X1 + i X2, and d_z X3 = -psi2 conj(psi1)
    const std::size_t n = lat.size();
    std::vector<cplx> P(n), Q(n), R(n);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx a = psis.psi1.values()[i];
        const cplx b = psis.psi2.values()[i];
        P[i] = std::conj(a) * std::conj(a);
        Q[i] = std::conj(b) * std::conj(b);
        R[i] = b * std::conj(a);
    }
    auto p = to_modes(GridField(lat, SpinCharacter{}, std::move(P)));
    auto q = to_modes(GridField(lat, SpinCharacter{}, std::move(Q)));
    auto r = to_modes(GridField(lat, SpinCharacter{}, std::move(R)));

    Immersion out{GridField::zeros(lat), GridField::zeros(lat),
                  GridField::zeros(lat)};

    // zero modes: the linear (non-periodic) part, reported as period defects
    const cplx p0 = p[0], q0 = q[0], r0 = r[0];
    const cplx gens[2] = {lat.gen1(), lat.gen2()};
    for (int i = 0; i < 2; ++i) {
        const cplx dW = cplx(0.0, 1.0) * (p0 * gens[i] - q0 * std::conj(gens[i]));
        out.period_defect[i] = {dW.real(), dW.imag(),
                                -2.0 * (r0 * gens[i]).real()};
    }

    std::vector<cplx> w(n, cplx(0.0)), x3(n, cplx(0.0));
    double res2 = 0.0, data2 = 0.0;
    for (int i1 = 0; i1 < n1; ++i1)
        for (int i2 = 0; i2 < n2; ++i2) {
            if (i1 == 0 && i2 == 0) continue;
            if (i1 == n1 / 2 || i2 == n2 / 2) continue;
            const std::size_t idx = static_cast<std::size_t>(i1) * n2 + i2;
            const cplx c =
                lat.mode_frequency(signed_freq(i1, n1), signed_freq(i2, n2));
            const cplx A = cplx(0.0, pi) * std::conj(c);
            const cplx B = cplx(0.0, pi) * c;
            const double den = std::norm(A) + std::norm(B);
            const cplx b1 = cplx(0.0, 1.0) * p[idx];
            const cplx b2 = cplx(0.0, -1.0) * q[idx];
            w[idx] = (std::conj(A) * b1 + std::conj(B) * b2) / den;
            res2 += std::norm(A * w[idx] - b1) + std::norm(B * w[idx] - b2);
            data2 += std::norm(b1) + std::norm(b2);
            // X3: d_z X3 = -R and d_zbar X3 = -conj(R) solved jointly
            const std::size_t midx =
                static_cast<std::size_t>((n1 - i1) % n1) * n2 + (n2 - i2) % n2;
            const cplx c1 = -r[idx];
            const cplx c2 = -std::conj(r[midx]);
            x3[idx] = (std::conj(A) * c1 + std::conj(B) * c2) / den;
            res2 += std::norm(A * x3[idx] - c1) + std::norm(B * x3[idx] - c2);
            data2 += std::norm(c1) + std::norm(c2);
        }
    if (data2 > 0.0 && std::sqrt(res2 / data2) > consistency_tol)
        throw Error(
            "Weierstrass integrands are not closed forms (relative mode "
            "inconsistency " +
            std::to_string(std::sqrt(res2 / data2)) +
            "); the spinor pair violates the Dirac system");

    GridField W = from_modes(lat, SpinCharacter{}, std::move(w));
    out.x1 = real_part(W);
    out.x2 = imag_part(W);
    out.x3 = real_part(from_modes(lat, SpinCharacter{}, std::move(x3)));
    return out;
}

namespace {

// predictor-based square-root continuation over the (rolled) grid; returns
// the branch field and the wrap signs along both axes
struct Continuation {
    std::vector<cplx> phi;  // row-major n1 x n2
    int wrap1 = +1;         // sign picked when closing a row loop
    int wrap2 = +1;
    bool degenerate = false;  // |s| ~ 0 everywhere
};

Continuation continue_sqrt(const std::vector<cplx>& s, int n1, int n2) {
    Continuation out;
    out.phi.assign(s.size(), cplx(0.0));
    auto at = [n2](const std::vector<cplx>& v, int a, int b) -> cplx {
        return v[static_cast<std::size_t>(a) * n2 + b];
    };
    auto set = [n2](std::vector<cplx>& v, int a, int b, cplx val) {
        v[static_cast<std::size_t>(a) * n2 + b] = val;
    };
    double smax = 0.0;
    for (const auto& v : s) smax = std::max(smax, std::abs(v));
    if (smax < 1e-26) {
        out.degenerate = true;
        return out;
    }
    const double strong = 0.05 * std::sqrt(smax);

    auto pick = [](cplx cand, cplx pred) {
        return (std::abs(cand - pred) <= std::abs(-cand - pred)) ? cand : -cand;
    };

    set(out.phi, 0, 0, std::sqrt(at(s, 0, 0)));
    for (int a = 1; a < n1; ++a) {
        const cplx pred = (a == 1) ? at(out.phi, 0, 0)
                                   : 2.0 * at(out.phi, a - 1, 0) -
                                         at(out.phi, a - 2, 0);
        set(out.phi, a, 0, pick(std::sqrt(at(s, a, 0)), pred));
    }
    {
        const cplx pred = 2.0 * at(out.phi, n1 - 1, 0) - at(out.phi, n1 - 2, 0);
        out.wrap1 = (std::abs(pred - at(out.phi, 0, 0)) <=
                     std::abs(pred + at(out.phi, 0, 0)))
                        ? +1
                        : -1;
    }
    for (int a = 0; a < n1; ++a)
        for (int b = 1; b < n2; ++b) {
            const cplx pred = (b == 1) ? at(out.phi, a, 0)
                                       : 2.0 * at(out.phi, a, b - 1) -
                                             at(out.phi, a, b - 2);
            set(out.phi, a, b, pick(std::sqrt(at(s, a, b)), pred));
        }
    // column wrap sign: majority vote over columns with adequate signal
    int votes_plus = 0, votes_minus = 0;
    for (int a = 0; a < n1; ++a) {
        const cplx last = at(out.phi, a, n2 - 1);
        const cplx prev = at(out.phi, a, n2 - 2);
        const cplx first = at(out.phi, a, 0);
        if (std::abs(first) < strong || std::abs(last) < strong) continue;
        const cplx pred = 2.0 * last - prev;
        (std::abs(pred - first) <= std::abs(pred + first)) ? ++votes_plus
                                                           : ++votes_minus;
    }
    if (votes_plus == 0 && votes_minus == 0)
        out.wrap2 = +1;
    else if (votes_plus >= votes_minus && votes_minus == 0)
        out.wrap2 = +1;
    else if (votes_minus > 0 && votes_plus == 0)
        out.wrap2 = -1;
    else
        throw Error("square-root branch continuation is inconsistent across "
                    "columns; input is not a conformal immersion of a torus");
    // row wrap re-check across rows reached through columns
    int agree = 0, disagree = 0;
    for (int b = 0; b < n2; ++b) {
        const cplx last = at(out.phi, n1 - 1, b);
        const cplx prev = at(out.phi, n1 - 2, b);
        const cplx first = at(out.phi, 0, b);
        if (std::abs(first) < strong || std::abs(last) < strong) continue;
        const cplx pred = 2.0 * last - prev;
        const int sign =
            (std::abs(pred - first) <= std::abs(pred + first)) ? +1 : -1;
        (sign == out.wrap1) ? ++agree : ++disagree;
    }
    if (disagree > 0 && agree > 0)
        throw Error("square-root branch continuation is inconsistent across "
                    "rows; input is not a conformal immersion of a torus");
    if (disagree > 0 && agree == 0) out.wrap1 = -out.wrap1;
    return out;
}

}  // namespace

SpinorExtraction extract_spinors(const Immersion& X, double conformal_tol) {
    const auto& lat = X.x1.lattice();
    const int n1 = lat.n1(), n2 = lat.n2();
    const std::size_t n = lat.size();
    const GridField* comps[3] = {&X.x1, &X.x2, &X.x3};

    // full first derivatives, linear part included
    std::vector<GridField> Fx, Fy, Fz, Fzb;
    for (int a = 0; a < 3; ++a) {
        const auto [gz, gzb] = X.linear_gradient(a);
        const auto [px, qy] = std::array<double, 2>{2.0 * gz.real(),
                                                    -2.0 * gz.imag()};
        GridField dx = d_x(*comps[a]) + GridField::constant(lat, px);
        GridField dy = d_y(*comps[a]) + GridField::constant(lat, qy);
        Fx.push_back(std::move(dx));
        Fy.push_back(std::move(dy));
        Fz.push_back(d_z(*comps[a]) + GridField::constant(lat, gz));
        Fzb.push_back(d_zbar(*comps[a]) + GridField::constant(lat, gzb));
    }

    // conformality: |F_x| = |F_y|, F_x . F_y = 0
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = 0.0, g = 0.0, f = 0.0;
        for (int a = 0; a < 3; ++a) {
            const double ax = Fx[a].values()[i].real();
            const double ay = Fy[a].values()[i].real();
            e += ax * ax;
            g += ay * ay;
            f += ax * ay;
        }
        worst = std::max({worst, std::abs(e - g), std::abs(f)});
        scale = std::max(scale, e);
    }
    if (scale <= 0.0 || worst > conformal_tol * scale)
        throw Error("parametrization is not conformal (relative metric defect " +
                    std::to_string(worst / std::max(scale, 1e-300)) + ")");

    // phi1^2 = F2_zbar + i F1_zbar, phi2^2 = -(F2_z + i F1_z)
    std::vector<cplx> s1(n), s2(n);
    for (std::size_t i = 0; i < n; ++i) {
        s1[i] = Fzb[1].values()[i] + cplx(0.0, 1.0) * Fzb[0].values()[i];
        s2[i] = -(Fz[1].values()[i] + cplx(0.0, 1.0) * Fz[0].values()[i]);
    }

    auto continue_component = [&](const std::vector<cplx>& s) {
        // roll the strongest sample to the origin, continue, unroll with the
        // detected wrap signs
        std::size_t best = 0;
        double bestmag = -1.0;
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(s[i]) > bestmag) {
                bestmag = std::abs(s[i]);
                best = i;
            }
        const int a1 = static_cast<int>(best) / n2;
        const int a2 = static_cast<int>(best) % n2;
        std::vector<cplx> rolled(n);
        for (int j1 = 0; j1 < n1; ++j1)
            for (int j2 = 0; j2 < n2; ++j2)
                rolled[static_cast<std::size_t>(j1) * n2 + j2] =
                    s[static_cast<std::size_t>((j1 + a1) % n1) * n2 +
                      (j2 + a2) % n2];
        Continuation c = continue_sqrt(rolled, n1, n2);
        if (c.degenerate) return c;
        std::vector<cplx> phi(n);
        for (int j1 = 0; j1 < n1; ++j1)
            for (int j2 = 0; j2 < n2; ++j2) {
                double sign = 1.0;
                if (j1 < a1 && c.wrap1 < 0) sign = -sign;
                if (j2 < a2 && c.wrap2 < 0) sign = -sign;
                phi[static_cast<std::size_t>(j1) * n2 + j2] =
                    sign * c.phi[static_cast<std::size_t>((j1 - a1 + n1) % n1) *
                                     n2 +
                                 (j2 - a2 + n2) % n2];
            }
        c.phi = std::move(phi);
        return c;
    };

    Continuation c1 = continue_component(s1);
    Continuation c2 = continue_component(s2);
    if (c1.degenerate && c2.degenerate)
        throw Error("both Weierstrass integrands vanish; immersion is degenerate");
    SpinCharacter ch;
    if (c1.degenerate) {
        ch = SpinCharacter{static_cast<std::uint8_t>(c2.wrap1 < 0),
                           static_cast<std::uint8_t>(c2.wrap2 < 0)};
    } else if (c2.degenerate) {
        ch = SpinCharacter{static_cast<std::uint8_t>(c1.wrap1 < 0),
                           static_cast<std::uint8_t>(c1.wrap2 < 0)};
    } else {
        if (c1.wrap1 != c2.wrap1 || c1.wrap2 != c2.wrap2)
            throw Error("spinor components disagree on the spin character; "
                        "input is not a valid Weierstrass immersion");
        ch = SpinCharacter{static_cast<std::uint8_t>(c1.wrap1 < 0),
                           static_cast<std::uint8_t>(c1.wrap2 < 0)};
    }

    // relative sign between components fixed by F3_z = -phi2 conj(phi1)
    if (!c1.degenerate && !c2.degenerate) {
        double match = 0.0, mismatch = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx prod = -c2.phi[i] * std::conj(c1.phi[i]);
            match += std::norm(Fz[2].values()[i] - prod);
            mismatch += std::norm(Fz[2].values()[i] + prod);
        }
        if (mismatch < match)
            for (auto& v : c2.phi) v = -v;

        // near the zeros of a component the square root only resolves it to
        // sqrt(noise); rebuild small values from the cross-relation with the
        // large component, phi1 = -conj(F3_z)/conj(phi2) and symmetrically
        for (std::size_t i = 0; i < n; ++i) {
            const double a1 = std::abs(c1.phi[i]);
            const double a2 = std::abs(c2.phi[i]);
            const cplx f3 = Fz[2].values()[i];
            if (a1 < 0.1 * a2)
                c1.phi[i] = -std::conj(f3) / std::conj(c2.phi[i]);
            else if (a2 < 0.1 * a1)
                c2.phi[i] = -f3 / std::conj(c1.phi[i]);
        }
    }

    GridField phi1(lat, ch, std::move(c1.phi));
    GridField phi2(lat, ch, std::move(c2.phi));
    SpinorPair psis{std::move(phi1), std::move(phi2)};

    // U = H D / 2 with H from the flat Laplacian and the unit normal
    GridField D = induced_metric_density(psis);
    std::vector<GridField> lap;
    for (int a = 0; a < 3; ++a) lap.push_back(laplacian(*comps[a]));
    std::vector<cplx> u(n);
    for (std::size_t i = 0; i < n; ++i) {
        double nx = Fx[1].values()[i].real() * Fy[2].values()[i].real() -
                    Fx[2].values()[i].real() * Fy[1].values()[i].real();
        double ny = Fx[2].values()[i].real() * Fy[0].values()[i].real() -
                    Fx[0].values()[i].real() * Fy[2].values()[i].real();
        double nz = Fx[0].values()[i].real() * Fy[1].values()[i].real() -
                    Fx[1].values()[i].real() * Fy[0].values()[i].real();
        const double nn = std::sqrt(nx * nx + ny * ny + nz * nz);
        const double d = D.values()[i].real();
        if (nn <= 0.0 || d <= 0.0)
            throw Error("degenerate tangent frame during spinor extraction");
        nx /= nn;
        ny /= nn;
        nz /= nn;
        const double lapdotn = lap[0].values()[i].real() * nx +
                               lap[1].values()[i].real() * ny +
                               lap[2].values()[i].real() * nz;
        const double H = lapdotn / (2.0 * d * d);
        u[i] = cplx(H * d / 2.0, 0.0);
    }
    GridField U(lat, SpinCharacter{}, std::move(u));
    return SpinorExtraction{std::move(U), std::move(psis)};
}

}  // namespace mnv
