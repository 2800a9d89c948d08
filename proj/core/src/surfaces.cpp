#include "mnv/surfaces.hpp"

#include <cmath>
#include <numbers>

#include "fft_engine.hpp"

namespace mnv {
namespace {

using std::numbers::pi;
const double sqrt2 = std::sqrt(2.0);

}  // namespace

Profile profile_derivative(const Profile& p, int order) {
    const int n = p.size();
    std::vector<cplx> m(n);
    for (int i = 0; i < n; ++i) m[i] = p.values[i];
    detail::fft1_forward(m.data(), m.data(), n);
    for (int i = 0; i < n; ++i) {
        if (i == n / 2) {
            m[i] = 0.0;
            continue;
        }
        const int k = i < n / 2 ? i : i - n;
        cplx fac(1.0);
        for (int o = 0; o < order; ++o) fac *= cplx(0.0, 2.0 * pi * k / p.period);
        m[i] *= fac / static_cast<double>(n);
    }
    detail::fft1_backward(m.data(), m.data(), n);
    Profile out{std::vector<double>(n), p.period};
    for (int i = 0; i < n; ++i) out.values[i] = m[i].real();
    return out;
}

Profile profile_resample(const Profile& p, int mres) {
    const int n = p.size();
    std::vector<cplx> m(n);
    for (int i = 0; i < n; ++i) m[i] = p.values[i];
    detail::fft1_forward(m.data(), m.data(), n);
    std::vector<cplx> big(mres, cplx(0.0));
    const int h = std::min(n, mres) / 2;
    for (int k = 0; k < h; ++k) {
        big[k] = m[k] / static_cast<double>(n);
        big[mres - 1 - k] = m[n - 1 - k] / static_cast<double>(n);
    }
    detail::fft1_backward(big.data(), big.data(), mres);
    Profile out{std::vector<double>(mres), p.period};
    for (int i = 0; i < mres; ++i) out.values[i] = big[i].real();
    return out;
}

double profile_mean(const Profile& p) {
    double s = 0.0;
    for (double v : p.values) s += v;
    return s / p.size();
}

double clifford_potential(double x) {
    return std::sin(x) / (2.0 * sqrt2 * (sqrt2 - std::sin(x)));
}

double clifford_profile1(double x) {
    return std::pow(2.0, 0.75) * std::sin(x / 2.0 - pi / 8.0) /
           (sqrt2 - std::sin(x));
}

double clifford_profile2(double x) {
    return std::pow(2.0, 0.75) * std::cos(x / 2.0 + pi / 8.0) /
           (sqrt2 - std::sin(x));
}

CliffordTorus clifford_torus(int n1, int n2) {
    PeriodicLattice lat(cplx(2.0 * pi, 0.0), cplx(0.0, 2.0 * pi), n1, n2);
    const SpinCharacter ch{1, 1};

    GridField U = GridField::zeros(lat);
    GridField psi1 = GridField::zeros(lat, ch);
    GridField psi2 = GridField::zeros(lat, ch);
    GridField x1 = GridField::zeros(lat), x2 = GridField::zeros(lat),
              x3 = GridField::zeros(lat);

    double x3mean = 0.0;
    for (int j1 = 0; j1 < n1; ++j1) x3mean += 2.0 * std::cos(2.0 * pi * j1 / n1) /
                                              (sqrt2 - std::sin(2.0 * pi * j1 / n1));
    x3mean /= n1;

    for (int j1 = 0; j1 < n1; ++j1) {
        const double x = 2.0 * pi * j1 / n1;
        const double u = clifford_potential(x);
        const double r1 = clifford_profile1(x);
        const double r2 = clifford_profile2(x);
        const double D = 2.0 / (sqrt2 - std::sin(x));
        for (int j2 = 0; j2 < n2; ++j2) {
            const double y = 2.0 * pi * j2 / n2;
            const cplx e(std::cos(y / 2.0), std::sin(y / 2.0));
            U.at(j1, j2) = u;
            psi1.at(j1, j2) = r1 * e;
            psi2.at(j1, j2) = r2 * e;
            x1.at(j1, j2) = -D * std::sin(y);
            x2.at(j1, j2) = -D * std::cos(y);
            x3.at(j1, j2) = 2.0 * std::cos(x) / (sqrt2 - std::sin(x)) - x3mean;
        }
    }
    WeierstrassData data{std::move(U), SpinorPair{std::move(psi1), std::move(psi2)}};
    Immersion imm{std::move(x1), std::move(x2), std::move(x3)};
    return CliffordTorus{std::move(data), std::move(imm), lat};
}

namespace {

struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;  // [[a, b], [c, d]]
};

// one classical 4th-order step of r' = M(x) r for the 2x2 fundamental system,
// with the coefficient matrix evaluated from the oversampled potential
Mat2 rk4_step(const Mat2& Phi, double u0, double um, double u1, double h) {
    auto apply = [](double u, double r1, double r2) {
        return std::array<double, 2>{0.5 * (-r1 + 4.0 * u * r2),
                                     0.5 * (-4.0 * u * r1 + r2)};
    };
    Mat2 out = Phi;
    // advance both columns
    for (int col = 0; col < 2; ++col) {
        double r1 = col == 0 ? Phi.a : Phi.b;
        double r2 = col == 0 ? Phi.c : Phi.d;
        const auto k1 = apply(u0, r1, r2);
        const auto k2 = apply(um, r1 + 0.5 * h * k1[0], r2 + 0.5 * h * k1[1]);
        const auto k3 = apply(um, r1 + 0.5 * h * k2[0], r2 + 0.5 * h * k2[1]);
        const auto k4 = apply(u1, r1 + h * k3[0], r2 + h * k3[1]);
        r1 += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        r2 += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        if (col == 0) {
            out.a = r1;
            out.c = r2;
        } else {
            out.b = r1;
            out.d = r2;
        }
    }
    return out;
}

}  // namespace

WeierstrassData revolution_data(const Profile& u_profile, int n2,
                                double monodromy_tol, int oversample) {
    const int n1 = u_profile.size();
    if (n1 < 4 || n1 % 2 != 0)
        throw Error("revolution profile needs an even sample count of at least 4");
    PeriodicLattice lat(cplx(u_profile.period, 0.0), cplx(0.0, 2.0 * pi), n1, n2);

    double umax = 0.0;
    for (double v : u_profile.values) umax = std::max(umax, std::abs(v));
    if (umax < 1e-14) {
        // minimal flat datum: the revolution system has no periodic solutions
        // for a zero potential, so return the constant kernel element instead
        GridField U = GridField::zeros(lat);
        GridField psi1 = GridField::zeros(lat);
        GridField psi2 = GridField::constant(lat, 1.0);
        return WeierstrassData{std::move(U),
                               SpinorPair{std::move(psi1), std::move(psi2)}};
    }

    // potential at integration nodes and midpoints
    const int steps = oversample * n1;
    Profile fine = profile_resample(u_profile, 2 * steps);
    const double h = u_profile.period / steps;

    Mat2 T;
    std::vector<Mat2> checkpoints(n1);  // fundamental solution at coarse nodes
    for (int s = 0; s < steps; ++s) {
        if (s % oversample == 0) checkpoints[s / oversample] = T;
        T = rk4_step(T, fine.values[2 * s], fine.values[2 * s + 1],
                     fine.values[(2 * s + 2) % (2 * steps)], h);
    }

    const double tr = T.a + T.d;
    double sign;
    if (std::abs(tr - 2.0) < monodromy_tol)
        sign = 1.0;
    else if (std::abs(tr + 2.0) < monodromy_tol)
        sign = -1.0;
    else {
        const double disc = tr * tr / 4.0 - (T.a * T.d - T.b * T.c);
        const cplx root = std::sqrt(cplx(disc, 0.0));
        throw MonodromyError(
            "monodromy of the revolution system admits no (anti)periodic "
            "solution (trace " + std::to_string(tr) + ")",
            tr / 2.0 + root, tr / 2.0 - root);
    }

    // null direction of (T - sign I); for a Jordan monodromy this is the
    // unique (anti)periodic initial vector
    const double r11 = T.a - sign, r12 = T.b, r21 = T.c, r22 = T.d - sign;
    double v1, v2;
    if (r11 * r11 + r12 * r12 >= r21 * r21 + r22 * r22) {
        v1 = -r12;
        v2 = r11;
    } else {
        v1 = -r22;
        v2 = r21;
    }
    const double vn = std::sqrt(v1 * v1 + v2 * v2);
    if (vn < 1e-14) {
        v1 = 1.0;
        v2 = 0.0;
    } else {
        v1 /= vn;
        v2 /= vn;
    }

    // restrict the solution to the coarse nodes and normalize mean(D) = 2
    std::vector<double> r1(n1), r2(n1);
    double dmean = 0.0;
    for (int j = 0; j < n1; ++j) {
        const Mat2& Phi = checkpoints[j];
        r1[j] = Phi.a * v1 + Phi.b * v2;
        r2[j] = Phi.c * v1 + Phi.d * v2;
        dmean += r1[j] * r1[j] + r2[j] * r2[j];
    }
    dmean /= n1;
    const double scale = std::sqrt(2.0 / dmean);
    double anchor = std::abs(r1[0]) >= std::abs(r2[0]) ? r1[0] : r2[0];
    const double flip = anchor < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n1; ++j) {
        r1[j] *= scale * flip;
        r2[j] *= scale * flip;
    }

    const SpinCharacter ch{static_cast<std::uint8_t>(sign < 0.0), 1};
    GridField U = GridField::zeros(lat);
    GridField psi1 = GridField::zeros(lat, ch);
    GridField psi2 = GridField::zeros(lat, ch);
    for (int j1 = 0; j1 < n1; ++j1)
        for (int j2 = 0; j2 < n2; ++j2) {
            const double y = 2.0 * pi * j2 / n2;
            const cplx e(std::cos(y / 2.0), std::sin(y / 2.0));
            U.at(j1, j2) = u_profile.values[j1];
            psi1.at(j1, j2) = r1[j1] * e;
            psi2.at(j1, j2) = r2[j1] * e;
        }
    return WeierstrassData{std::move(U),
                           SpinorPair{std::move(psi1), std::move(psi2)}};
}

}  // namespace mnv
