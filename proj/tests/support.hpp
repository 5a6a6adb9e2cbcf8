#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "qglab/qglab.hpp"

namespace qgtest {

inline double max_diff(const qglab::SpectralField& a, const qglab::SpectralField& b) {
    double m = 0.0;
    auto da = a.data();
    auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) m = std::max(m, std::abs(da[i] - db[i]));
    return m;
}

inline double max_diff(const qglab::PhysicalField& a, const qglab::PhysicalField& b) {
    double m = 0.0;
    auto va = a.values();
    auto vb = b.values();
    for (std::size_t i = 0; i < va.size(); ++i) m = std::max(m, std::abs(va[i] - vb[i]));
    return m;
}

inline qglab::SpectralField sample(const qglab::Grid& g, const std::function<double(double, double)>& f) {
    return qglab::forward_transform(qglab::PhysicalField::from_function(g, f));
}

}  // namespace qgtest
