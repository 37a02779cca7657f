#pragma once

// Modulate / smooth / demodulate passes shared by the Gabor, filter-bank and
// localized-DFT code paths.

#include <cstddef>
#include <vector>

#include "fastgabor/counters.hpp"
#include "fastgabor/gaussian.hpp"
#include "fastgabor/image.hpp"

namespace fastgabor::detail {

struct PhaseTable {
    std::vector<double> cos;
    std::vector<double> sin;
};

/// cos/sin(freq * k) for k = 0..n-1.
PhaseTable phase_table(std::size_t n, double freq);

/// cos/sin(2 pi * bin * (k - offset) / period) for k = 0..n-1, reduced with
/// integer arithmetic so that bins b and period-b are exact conjugates.
PhaseTable dft_phase_table(std::size_t n, std::size_t bin, std::size_t period, std::ptrdiff_t offset);

/// Row pass: for each row, smooth f*cos(mod) and f*sin(mod) and recombine
///   Re = c_out * Sc + s_out * Ss,  Im = s_out * Sc - c_out * Ss.
void horizontal_pass(const RealImage& f, const PhaseTable& mod, const PhaseTable& out,
                     const Smoother& smoother, ComplexImage& dst, OpCounters& counters);

/// Column pass on complex J (or its conjugate): smooth
///   P = Re*c + Im*s, Q = Re*s - Im*c   (conjugate: P = Re*c - Im*s, Q = Re*s + Im*c)
/// and recombine Re = c_out*P' + s_out*Q', Im = s_out*P' - c_out*Q'.
void vertical_pass(const ComplexImage& j, bool conjugate, const PhaseTable& mod, const PhaseTable& out,
                   const Smoother& smoother, ComplexImage& dst, OpCounters& counters);

}  // namespace fastgabor::detail
