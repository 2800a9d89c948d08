#pragma once

#include <vector>

#include "mnv/lattice.hpp"

namespace mnv {

// Uniform samples of a real periodic function of one variable.
struct Profile {
    std::vector<double> values;
    double period = 2.0 * 3.14159265358979323846;

    int size() const { return static_cast<int>(values.size()); }
    double spacing() const { return period / size(); }
};

// spectral d/dx of the given order; the unmatched Nyquist mode is annihilated
Profile profile_derivative(const Profile& p, int order = 1);
// trigonometric interpolation onto m uniform samples of the same period
Profile profile_resample(const Profile& p, int m);
double profile_mean(const Profile& p);

}  // namespace mnv
