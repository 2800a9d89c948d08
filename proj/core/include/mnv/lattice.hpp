#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>

namespace mnv {

using cplx = std::complex<double>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Spin structure of a field on the torus: offsets into the dual lattice along
// each dual generator, stored in half-units (0 -> periodic, 1 -> offset 1/2,
// i.e. antiperiodic along the corresponding generator). Products of fields
// combine characters by addition mod 1, which is XOR in half-units.
struct SpinCharacter {
    std::uint8_t half1 = 0;
    std::uint8_t half2 = 0;

    bool trivial() const { return half1 == 0 && half2 == 0; }
    double delta1() const { return 0.5 * half1; }
    double delta2() const { return 0.5 * half2; }

    SpinCharacter combined(SpinCharacter o) const {
        return {static_cast<std::uint8_t>(half1 ^ o.half1),
                static_cast<std::uint8_t>(half2 ^ o.half2)};
    }
    bool operator==(const SpinCharacter&) const = default;
};

// Period lattice Gamma = {m*gen1 + n*gen2} together with the grid resolution
// of its fundamental domain and the dual basis used for Fourier
// differentiation. Dual vectors are real 2-vectors (a, b) packed as a + ib;
// the pairing is <(a,b), z> = a Re z + b Im z and <dual_i, gen_j> = delta_ij.
class PeriodicLattice {
  public:
    PeriodicLattice(cplx gen1, cplx gen2, int n1, int n2);

    cplx gen1() const { return gen1_; }
    cplx gen2() const { return gen2_; }
    int n1() const { return n1_; }
    int n2() const { return n2_; }
    std::size_t size() const { return static_cast<std::size_t>(n1_) * n2_; }

    cplx dual1() const { return dual1_; }
    cplx dual2() const { return dual2_; }

    // area of the fundamental domain, |Im(conj(gen1) gen2)|
    double area() const { return area_; }

    // grid node (j1/n1) gen1 + (j2/n2) gen2
    cplx point(int j1, int j2) const {
        return gen1_ * (static_cast<double>(j1) / n1_) +
               gen2_ * (static_cast<double>(j2) / n2_);
    }

    // frequency vector c = a + ib of the plane wave exp(2 pi i <c, z>) for the
    // mode with signed integer indices (k1, k2) and character offsets
    cplx mode_frequency(double k1, double k2) const {
        return k1 * dual1_ + k2 * dual2_;
    }

    bool operator==(const PeriodicLattice& o) const {
        return gen1_ == o.gen1_ && gen2_ == o.gen2_ && n1_ == o.n1_ && n2_ == o.n2_;
    }

  private:
    cplx gen1_, gen2_;
    int n1_, n2_;
    cplx dual1_, dual2_;
    double area_;
};

PeriodicLattice make_lattice(cplx gen1, cplx gen2, int n1, int n2);

}  // namespace mnv
