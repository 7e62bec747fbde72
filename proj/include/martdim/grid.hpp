#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace martdim {

/// Uniform discretization of [0, T] into N steps.
struct TimeGrid {
    double horizon = 1.0;
    std::int64_t steps = 1;

    double dt() const { return horizon / static_cast<double>(steps); }

    /// time(0) == 0 and time(N) == T exactly; interior points are T * i/N.
    double time(std::int64_t i) const {
        return horizon * (static_cast<double>(i) / static_cast<double>(steps));
    }

    std::vector<double> times() const {
        std::vector<double> out(static_cast<std::size_t>(steps) + 1);
        for (std::int64_t i = 0; i <= steps; ++i) out[static_cast<std::size_t>(i)] = time(i);
        return out;
    }

    bool operator==(const TimeGrid&) const = default;
};

inline TimeGrid make_grid(double horizon, std::int64_t steps) {
    if (!(horizon > 0.0)) throw std::invalid_argument("grid horizon must be positive");
    if (steps < 1) throw std::invalid_argument("grid must have at least one step");
    return TimeGrid{horizon, steps};
}

}  // namespace martdim
