#pragma once

#include <cstddef>
#include <vector>

#include "fastgabor/counters.hpp"
#include "fastgabor/gaussian.hpp"
#include "fastgabor/image.hpp"

namespace fastgabor {

/// Localized sliding DFT over an My x Mx window.
///
/// Bin (u, v) at pixel (x, y) is
///   sum_{m,n} f(m,n) exp(i w0x u (x^ - m)) exp(i w0y v (y^ - n)) S(x - m) S(y - n)
/// with w0x = 2 pi / Mx, w0y = 2 pi / My, x^ = x - Mx/2, y^ = y - My/2
/// (integer division). With a Box smoother the window weights are 1 over
/// [x - Mx/2, x - Mx/2 + Mx - 1] and the bins equal the textbook DFT of that
/// patch; the Box extents of `smoother` are replaced by the window.
struct SdftSpec {
    std::size_t mx = 8;
    std::size_t my = 8;
    /// Gaussian scale; 0 selects floor(min(Mx, My) / 2) / 3.
    double sigma = 0.0;
    SmootherKind smoother = RecursiveIir{};

    double effective_sigma() const noexcept;
};

void validate(const SdftSpec& spec);

struct SdftOutput {
    std::size_t mx = 0;
    std::size_t my = 0;
    double sigma = 0.0;
    std::vector<ComplexImage> bins;  // index v * mx + u
    OpCounters counters;

    const ComplexImage& bin(std::size_t u, std::size_t v) const { return bins.at(v * mx + u); }
    ComplexImage& bin(std::size_t u, std::size_t v) { return bins.at(v * mx + u); }
};

/// Row stage J_u. Two row smoothings per row.
ComplexImage sdft_horizontal(const RealImage& f, std::size_t u, const SdftSpec& spec, OpCounters& counters);

/// All Mx*My bins. Row stages run for u <= floor(Mx/2) and are conjugated for
/// the rest; column stages run for every u and v <= floor(My/2); the other
/// bins are conjugate fills F(u,v) = conj(F((Mx-u) mod Mx, My-v)). When
/// My < Mx the axes swap roles. Counters cover computed bins only.
SdftOutput sdft_full(const RealImage& f, const SdftSpec& spec, OpCounters& counters, unsigned threads = 1);

/// Same bins, but every computed bin runs its own row stage.
SdftOutput sdft_full_noreuse(const RealImage& f, const SdftSpec& spec, OpCounters& counters,
                             unsigned threads = 1);

/// One bin computed directly.
ComplexImage sdft_bin(const RealImage& f, std::size_t u, std::size_t v, const SdftSpec& spec,
                      OpCounters& counters);

}  // namespace fastgabor
