#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fastgabor/image.hpp"
#include "fastgabor/metrics.hpp"

namespace fastgabor::tools {

struct BenchConfig {
    std::size_t size = 1024;       // bank image is size x size
    std::size_t sdft_size = 256;   // localized DFT image is sdft_size x sdft_size
    std::vector<std::size_t> orientations{8, 14, 20, 26, 32};
    std::vector<std::size_t> windows{4, 8, 16};
    std::size_t runs = 5;
    unsigned threads = 1;
    double omega = 0.5;            // one frequency, sigma = 2 pi / omega
    std::uint32_t seed = 20170401;
};

void validate(const BenchConfig& cfg);

/// Uniform samples in [0, 255] from a fixed 32-bit generator, so the image
/// is identical on every platform.
RealImage synthetic_image(std::size_t width, std::size_t height, std::uint32_t seed);

/// Times reuse and no-reuse schedules alternately `runs` times per
/// parameter and reports medians plus counter-derived per-pixel counts.
/// Progress lines go to `log` when it is non-null.
std::vector<BenchRow> run_bench(const BenchConfig& cfg, std::ostream* log = nullptr);

}  // namespace fastgabor::tools
