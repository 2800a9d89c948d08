#pragma once

#include <functional>
#include <vector>

#include "mnv/lattice.hpp"

namespace mnv {

// Complex scalar samples on the fundamental domain of a lattice, tagged with
// a spin character. Sample (j1, j2) lives at z = (j1/n1) gen1 + (j2/n2) gen2
// and is stored row-major with j1 as the row index.
class GridField {
  public:
    GridField(PeriodicLattice lattice, SpinCharacter character,
              std::vector<cplx> values);

    static GridField zeros(const PeriodicLattice& lat, SpinCharacter ch = {});
    static GridField constant(const PeriodicLattice& lat, cplx value);
    // samples f(z, j1, j2) over the grid
    static GridField sample(const PeriodicLattice& lat,
                            const std::function<cplx(cplx)>& f,
                            SpinCharacter ch = {});
    // the plane wave exp(2 pi i <k1 dual1 + k2 dual2 + offsets, z>)
    static GridField fourier_mode(const PeriodicLattice& lat, int k1, int k2,
                                  SpinCharacter ch = {});

    const PeriodicLattice& lattice() const { return lattice_; }
    SpinCharacter character() const { return character_; }
    int n1() const { return lattice_.n1(); }
    int n2() const { return lattice_.n2(); }
    std::size_t size() const { return values_.size(); }

    cplx& at(int j1, int j2) { return values_[static_cast<std::size_t>(j1) * n2() + j2]; }
    cplx at(int j1, int j2) const { return values_[static_cast<std::size_t>(j1) * n2() + j2]; }
    std::vector<cplx>& values() { return values_; }
    const std::vector<cplx>& values() const { return values_; }

    GridField& operator+=(const GridField& o);
    GridField& operator-=(const GridField& o);
    GridField& operator*=(cplx s);

    // checks lattice equality and throws if incompatible
    void require_combinable(const GridField& o) const;

  private:
    PeriodicLattice lattice_;
    SpinCharacter character_;
    std::vector<cplx> values_;
};

GridField operator+(GridField a, const GridField& b);
GridField operator-(GridField a, const GridField& b);
GridField operator*(cplx s, GridField a);
GridField operator*(GridField a, cplx s);

// pointwise product of samples (aliased; see dealiased_product for the
// projection-exact version). Characters combine mod 1.
GridField pointwise_product(const GridField& a, const GridField& b);
GridField conjugate(const GridField& f);
GridField real_part(const GridField& f);
GridField imag_part(const GridField& f);
// pointwise application, character preserved
GridField map_values(const GridField& f, const std::function<cplx(cplx)>& fn);

double linf(const GridField& f);
double l2(const GridField& f);        // grid L2: sqrt(mean |f|^2 * area)
double linf_imag(const GridField& f);
cplx mean(const GridField& f);

}  // namespace mnv
