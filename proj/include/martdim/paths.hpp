#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "martdim/errors.hpp"
#include "martdim/grid.hpp"

namespace martdim {

/// Gaussian sampling transform, recorded in the file header so stored runs
/// stay comparable across versions.
enum class GaussTransform : std::uint8_t { BoxMullerPhilox4x32 = 1 };

/// Seeded d-dimensional driver trajectories on a uniform grid, path-major:
/// value(m, i, j) lives at values[(m * (N+1) + i) * d + j].
///
/// Path m is a pure function of (seed, first_path + m); neither the total
/// path count nor the generation schedule affects it.
struct BrownianPaths {
    TimeGrid grid{};
    int d = 1;
    std::int64_t path_count = 0;
    std::uint64_t seed = 0;
    std::uint64_t first_path = 0;
    bool derived = false;  // true for drivers produced by a reduction, not by seed
    GaussTransform transform = GaussTransform::BoxMullerPhilox4x32;
    std::vector<double> values;

    std::int64_t steps() const { return grid.steps; }
    std::int64_t points() const { return grid.steps + 1; }

    double value(std::int64_t m, std::int64_t i, int j) const {
        return values[static_cast<std::size_t>((m * points() + i) * d + j)];
    }
    const double* at(std::int64_t m, std::int64_t i) const {
        return values.data() + static_cast<std::size_t>((m * points() + i) * d);
    }
    double* at(std::int64_t m, std::int64_t i) {
        return values.data() + static_cast<std::size_t>((m * points() + i) * d);
    }

    Eigen::Map<const Eigen::VectorXd> point(std::int64_t m, std::int64_t i) const {
        return {at(m, i), d};
    }
    Eigen::VectorXd increment(std::int64_t m, std::int64_t i) const {
        return point(m, i + 1) - point(m, i);
    }
};

BrownianPaths generate_brownian(const TimeGrid& grid, int d, std::int64_t path_count,
                                std::uint64_t seed);

/// Paths [first_path, first_path + count) of the same logical ensemble;
/// generate_brownian(g, d, M, s) equals generate_brownian_range(g, d, 0, M, s).
BrownianPaths generate_brownian_range(const TimeGrid& grid, int d, std::int64_t first_path,
                                      std::int64_t count, std::uint64_t seed);

void save_paths(const BrownianPaths& paths, const std::filesystem::path& destination);
BrownianPaths load_paths(const std::filesystem::path& source);

/// CSV export with header `t,path,coord,value`; coord is 1-based (Z1..Zd).
void export_paths_csv(const BrownianPaths& paths, std::ostream& out);
void export_paths_csv(const BrownianPaths& paths, const std::filesystem::path& destination);

}  // namespace martdim
