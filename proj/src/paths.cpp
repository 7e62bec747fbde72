#include "martdim/paths.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>

#include "martdim/parallel.hpp"
#include "martdim/rng.hpp"

namespace martdim {

static_assert(std::endian::native == std::endian::little,
              "path files are little-endian; big-endian hosts are unsupported");

namespace {

constexpr char kMagic[8] = {'M', 'D', 'I', 'M', 'P', 'A', 'T', 'H'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kFlagDerived = 1u << 0;

#pragma pack(push, 1)
struct FileHeader {
    char magic[8];
    std::uint32_t version;
    std::uint32_t flags;
    std::uint8_t transform;
    std::uint8_t reserved[3];
    std::uint32_t d;
    double horizon;
    std::uint64_t steps;
    std::uint64_t path_count;
    std::uint64_t first_path;
    std::uint64_t seed;
};
#pragma pack(pop)

static_assert(sizeof(FileHeader) == 64);

void fill_path(BrownianPaths& out, std::int64_t m) {
    const std::int64_t n_steps = out.grid.steps;
    const int d = out.d;
    const double scale = std::sqrt(out.grid.dt());
    const std::uint64_t stream = out.first_path + static_cast<std::uint64_t>(m);

    std::vector<double> normals(static_cast<std::size_t>(n_steps) * d);
    fill_normals(out.seed, stream, 0, n_steps * d, normals.data());

    double* v = out.at(m, 0);
    for (int j = 0; j < d; ++j) v[j] = 0.0;
    for (std::int64_t i = 0; i < n_steps; ++i) {
        const double* prev = out.at(m, i);
        double* next = out.at(m, i + 1);
        const double* z = normals.data() + static_cast<std::size_t>(i) * d;
        for (int j = 0; j < d; ++j) next[j] = prev[j] + scale * z[j];
    }
}

}  // namespace

BrownianPaths generate_brownian_range(const TimeGrid& grid, int d, std::int64_t first_path,
                                      std::int64_t count, std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("driver dimension must be at least 1");
    if (count < 1) throw std::invalid_argument("path count must be at least 1");
    if (first_path < 0) throw std::invalid_argument("first path index must be non-negative");

    BrownianPaths out;
    out.grid = grid;
    out.d = d;
    out.path_count = count;
    out.seed = seed;
    out.first_path = static_cast<std::uint64_t>(first_path);
    out.values.resize(static_cast<std::size_t>(count) * out.points() * d);

    parallel::for_each_index(count, [&out](std::int64_t m) { fill_path(out, m); });
    return out;
}

BrownianPaths generate_brownian(const TimeGrid& grid, int d, std::int64_t path_count,
                                std::uint64_t seed) {
    return generate_brownian_range(grid, d, 0, path_count, seed);
}

void save_paths(const BrownianPaths& paths, const std::filesystem::path& destination) {
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + destination.string());

    FileHeader h{};
    std::memcpy(h.magic, kMagic, sizeof(kMagic));
    h.version = kVersion;
    h.flags = paths.derived ? kFlagDerived : 0u;
    h.transform = static_cast<std::uint8_t>(paths.transform);
    h.d = static_cast<std::uint32_t>(paths.d);
    h.horizon = paths.grid.horizon;
    h.steps = static_cast<std::uint64_t>(paths.grid.steps);
    h.path_count = static_cast<std::uint64_t>(paths.path_count);
    h.first_path = paths.first_path;
    h.seed = paths.seed;

    out.write(reinterpret_cast<const char*>(&h), sizeof(h));
    out.write(reinterpret_cast<const char*>(paths.values.data()),
              static_cast<std::streamsize>(paths.values.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write failed: " + destination.string());
}

BrownianPaths load_paths(const std::filesystem::path& source) {
    std::ifstream in(source, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + source.string());

    FileHeader h{};
    in.read(reinterpret_cast<char*>(&h), sizeof(h));
    if (in.gcount() != sizeof(h))
        throw FormatError("truncated header", static_cast<std::uint64_t>(in.gcount()));
    if (std::memcmp(h.magic, kMagic, sizeof(kMagic)) != 0)
        throw FormatError("bad magic", 0);
    if (h.version != kVersion)
        throw FormatError("unsupported version " + std::to_string(h.version), 8);
    if (h.d == 0) throw FormatError("driver dimension is zero", offsetof(FileHeader, d));
    if (h.steps == 0) throw FormatError("step count is zero", offsetof(FileHeader, steps));
    if (h.path_count == 0)
        throw FormatError("path count is zero", offsetof(FileHeader, path_count));
    if (!(h.horizon > 0.0))
        throw FormatError("non-positive horizon", offsetof(FileHeader, horizon));

    BrownianPaths out;
    out.grid = TimeGrid{h.horizon, static_cast<std::int64_t>(h.steps)};
    out.d = static_cast<int>(h.d);
    out.path_count = static_cast<std::int64_t>(h.path_count);
    out.seed = h.seed;
    out.first_path = h.first_path;
    out.derived = (h.flags & kFlagDerived) != 0;
    out.transform = static_cast<GaussTransform>(h.transform);

    const std::uint64_t expected =
        h.path_count * (h.steps + 1) * static_cast<std::uint64_t>(h.d);
    out.values.resize(expected);
    in.read(reinterpret_cast<char*>(out.values.data()),
            static_cast<std::streamsize>(expected * sizeof(double)));
    const auto got = static_cast<std::uint64_t>(in.gcount());
    if (got != expected * sizeof(double))
        throw FormatError("payload shorter than header declares", sizeof(FileHeader) + got);
    // Anything after the declared payload means the header is inconsistent
    // with the file; reject rather than silently ignore.
    char extra;
    in.read(&extra, 1);
    if (in.gcount() != 0)
        throw FormatError("payload longer than header declares",
                          sizeof(FileHeader) + expected * sizeof(double));
    return out;
}

void export_paths_csv(const BrownianPaths& paths, std::ostream& out) {
    out << "t,path,coord,value\n";
    char buf[64];
    for (std::int64_t m = 0; m < paths.path_count; ++m) {
        for (std::int64_t i = 0; i <= paths.grid.steps; ++i) {
            const double t = paths.grid.time(i);
            for (int j = 0; j < paths.d; ++j) {
                std::snprintf(buf, sizeof(buf), "%.17g", t);
                out << buf << ',' << m << ',' << (j + 1) << ',';
                std::snprintf(buf, sizeof(buf), "%.17g", paths.value(m, i, j));
                out << buf << '\n';
            }
        }
    }
}

void export_paths_csv(const BrownianPaths& paths, const std::filesystem::path& destination) {
    std::ofstream out(destination, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + destination.string());
    export_paths_csv(paths, out);
}

}  // namespace martdim
