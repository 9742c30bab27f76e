#pragma once
// Binary container for spectral fields.
//
// Layout (little-endian):
//   bytes 0..3   magic "PMNS"
//   u32          version (1)
//   u32          n_per_axis
//   f64          delta_xi
//   3 arrays of n^3 complex values, row-major in the centered storage order
//   of FrequencyGrid::index, each value as (real f64, imag f64).

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <memory>
#include <string>

#include "pmns/grid.hpp"

namespace pmns {

namespace detail {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace detail

inline void write_field(const std::filesystem::path& path, const SpectralVectorField& f) {
    detail::FilePtr fp(std::fopen(path.string().c_str(), "wb"));
    if (!fp) throw IOError("write_field: cannot open " + path.string());
    const char magic[4] = {'P', 'M', 'N', 'S'};
    const std::uint32_t version = 1;
    const std::uint32_t n = static_cast<std::uint32_t>(f.grid().n);
    const double dxi = f.grid().delta_xi;
    bool ok = std::fwrite(magic, 1, 4, fp.get()) == 4 &&
              std::fwrite(&version, sizeof version, 1, fp.get()) == 1 &&
              std::fwrite(&n, sizeof n, 1, fp.get()) == 1 &&
              std::fwrite(&dxi, sizeof dxi, 1, fp.get()) == 1;
    for (int j = 0; ok && j < 3; ++j) {
        const auto& c = f.comp(j);
        // std::complex<double> is layout-compatible with double[2]
        ok = std::fwrite(c.data(), sizeof(cplx), c.size(), fp.get()) == c.size();
    }
    if (!ok) throw IOError("write_field: short write to " + path.string());
}

inline SpectralVectorField read_field(const std::filesystem::path& path) {
    detail::FilePtr fp(std::fopen(path.string().c_str(), "rb"));
    if (!fp) throw IOError("read_field: cannot open " + path.string());
    char magic[4];
    std::uint32_t version = 0, n = 0;
    double dxi = 0;
    if (std::fread(magic, 1, 4, fp.get()) != 4 || std::memcmp(magic, "PMNS", 4) != 0)
        throw IOError("read_field: bad magic in " + path.string());
    if (std::fread(&version, sizeof version, 1, fp.get()) != 1 || version != 1)
        throw IOError("read_field: unsupported container version in " + path.string());
    if (std::fread(&n, sizeof n, 1, fp.get()) != 1 || std::fread(&dxi, sizeof dxi, 1, fp.get()) != 1)
        throw IOError("read_field: truncated header in " + path.string());
    SpectralVectorField f(FrequencyGrid(static_cast<int>(n), dxi));
    for (int j = 0; j < 3; ++j) {
        auto& c = f.comp(j);
        if (std::fread(c.data(), sizeof(cplx), c.size(), fp.get()) != c.size())
            throw IOError("read_field: truncated payload in " + path.string());
    }
    return f;
}

}  // namespace pmns
