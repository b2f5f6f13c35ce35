#pragma once

#include <algorithm>
#include <cmath>

namespace hyperrig {

/// Comparison policy used by every tolerance decision in the library:
/// absolute below scale 1, relative above. Default 1e-10, overridable per call.
struct Tolerance {
    double eps = 1e-10;

    double scaled(double scale) const { return eps * std::max(1.0, scale); }

    bool zero(double value, double scale = 1.0) const {
        return std::abs(value) <= scaled(scale);
    }

    bool close(double a, double b, double scale = 1.0) const {
        return zero(a - b, scale);
    }
};

} // namespace hyperrig
