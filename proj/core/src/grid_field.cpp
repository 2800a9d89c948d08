#include "mnv/grid_field.hpp"

#include <cmath>
#include <numbers>

namespace mnv {

GridField::GridField(PeriodicLattice lattice, SpinCharacter character,
                     std::vector<cplx> values)
    : lattice_(lattice), character_(character), values_(std::move(values)) {
    if (values_.size() != lattice_.size())
        throw Error("grid field sample count does not match lattice resolution");
}

GridField GridField::zeros(const PeriodicLattice& lat, SpinCharacter ch) {
    return GridField(lat, ch, std::vector<cplx>(lat.size(), cplx(0.0)));
}

GridField GridField::constant(const PeriodicLattice& lat, cplx value) {
    return GridField(lat, SpinCharacter{}, std::vector<cplx>(lat.size(), value));
}

GridField GridField::sample(const PeriodicLattice& lat,
                            const std::function<cplx(cplx)>& f, SpinCharacter ch) {
    std::vector<cplx> v(lat.size());
    for (int j1 = 0; j1 < lat.n1(); ++j1)
        for (int j2 = 0; j2 < lat.n2(); ++j2)
            v[static_cast<std::size_t>(j1) * lat.n2() + j2] = f(lat.point(j1, j2));
    return GridField(lat, ch, std::move(v));
}

GridField GridField::fourier_mode(const PeriodicLattice& lat, int k1, int k2,
                                  SpinCharacter ch) {
    using std::numbers::pi;
    std::vector<cplx> v(lat.size());
    const double f1 = k1 + ch.delta1();
    const double f2 = k2 + ch.delta2();
    for (int j1 = 0; j1 < lat.n1(); ++j1)
        for (int j2 = 0; j2 < lat.n2(); ++j2) {
            const double phase =
                2.0 * pi * (f1 * j1 / lat.n1() + f2 * j2 / lat.n2());
            v[static_cast<std::size_t>(j1) * lat.n2() + j2] =
                cplx(std::cos(phase), std::sin(phase));
        }
    return GridField(lat, ch, std::move(v));
}

void GridField::require_combinable(const GridField& o) const {
    if (!(lattice_ == o.lattice_))
        throw Error("grid fields live on different lattices");
}

GridField& GridField::operator+=(const GridField& o) {
    require_combinable(o);
    if (!(character_ == o.character_))
        throw Error("cannot add grid fields with different spin characters");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

GridField& GridField::operator-=(const GridField& o) {
    require_combinable(o);
    if (!(character_ == o.character_))
        throw Error("cannot subtract grid fields with different spin characters");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}

GridField& GridField::operator*=(cplx s) {
    for (auto& v : values_) v *= s;
    return *this;
}

GridField operator+(GridField a, const GridField& b) { return a += b; }
GridField operator-(GridField a, const GridField& b) { return a -= b; }
GridField operator*(cplx s, GridField a) { return a *= s; }
GridField operator*(GridField a, cplx s) { return a *= s; }

GridField pointwise_product(const GridField& a, const GridField& b) {
    a.require_combinable(b);
    std::vector<cplx> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] * b.values()[i];
    return GridField(a.lattice(), a.character().combined(b.character()), std::move(v));
}

GridField conjugate(const GridField& f) {
    std::vector<cplx> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::conj(f.values()[i]);
    return GridField(f.lattice(), f.character(), std::move(v));
}

GridField real_part(const GridField& f) {
    std::vector<cplx> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.values()[i].real();
    return GridField(f.lattice(), f.character(), std::move(v));
}

GridField imag_part(const GridField& f) {
    std::vector<cplx> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.values()[i].imag();
    return GridField(f.lattice(), f.character(), std::move(v));
}

GridField map_values(const GridField& f, const std::function<cplx(cplx)>& fn) {
    std::vector<cplx> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(f.values()[i]);
    return GridField(f.lattice(), f.character(), std::move(v));
}

double linf(const GridField& f) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

double l2(const GridField& f) {
    double s = 0.0;
    for (const auto& v : f.values()) s += std::norm(v);
    return std::sqrt(s / f.size() * f.lattice().area());
}

double linf_imag(const GridField& f) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v.imag()));
    return m;
}

cplx mean(const GridField& f) {
    cplx s(0.0);
    for (const auto& v : f.values()) s += v;
    return s / static_cast<double>(f.size());
}

}  // namespace mnv
