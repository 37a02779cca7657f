#pragma once

// Direct reference implementations. They share no code with the fast paths
// beyond the image containers and run in O(r^2) or O(Mx*My) per pixel.

#include <cstddef>

#include "fastgabor/gabor.hpp"
#include "fastgabor/image.hpp"
#include "fastgabor/sdft.hpp"

namespace fastgabor::oracle {

struct OracleConfig {
    /// Gaussian taps cover [-ceil(radius*sigma), ceil(radius*sigma)].
    double radius = 6.0;
};

void validate(const OracleConfig& cfg);

/// Truncated, unit-sum sampled Gaussian applied as a 2-D double sum with the
/// same replicate convention as the fast filters: a tap that falls outside
/// the image reads the nearest edge pixel, and its phase is taken at that
/// edge pixel while its weight stays at the unclamped offset.
ComplexImage fir_gabor(const RealImage& f, const GaborParams& p, const OracleConfig& cfg = {});

/// Localized DFT bin (u, v) of `spec`. Gaussian windows use the same
/// boundary convention as fir_gabor. A Box smoother gives weight 1 over
/// [x - Mx/2, x - Mx/2 + Mx - 1] (and likewise in y) with zero outside the image.
ComplexImage localized_dft(const RealImage& f, std::size_t u, std::size_t v, const SdftSpec& spec,
                           const OracleConfig& cfg = {});

/// Textbook DFT of the Mx x My patch whose corner sits at
/// (x - Mx/2, y - My/2): sum f(x^+i, y^+j) exp(-2 pi i (u i / Mx + v j / My)).
/// Pixels outside the image count as zero.
ComplexImage windowed_dft(const RealImage& f, std::size_t u, std::size_t v, std::size_t mx, std::size_t my);

}  // namespace fastgabor::oracle
