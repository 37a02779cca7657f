#pragma once

#include <cstddef>
#include <vector>

#include "fastgabor/gabor.hpp"

namespace fastgabor {

/// Frequencies, N orientations k*pi/N, and either explicit sigmas (one per
/// frequency) or the rule sigma = 2*pi/omega when `sigmas` is empty.
struct BankSpec {
    std::vector<double> frequencies;
    std::size_t orientations = 8;
    std::vector<double> sigmas;

    /// Five frequencies 2^(-(i+2)/2), eight orientations, sigma = 2*pi/omega.
    static BankSpec fig1();

    double sigma_for(std::size_t frequency_index) const;
    double orientation(std::size_t k) const noexcept;
};

void validate(const BankSpec& spec);

struct BankEntry {
    GaborParams params;
    ComplexImage image;
};

/// Entries ordered frequency-major, then orientation.
struct BankOutput {
    std::vector<BankEntry> entries;
    OpCounters counters;
};

ComplexImage conjugate_image(const ComplexImage& j);

/// F at orientation pi - theta from the row stage stored for theta: the
/// column pass runs on conj(J). No row smoothing is performed.
ComplexImage vertical_stage_conjugate(const HorizontalStage& h, OpCounters& counters);

/// Filter bank with conjugate reuse: per frequency, orientations
/// k = 0..floor(N/2) run both stages and orientation N-k (when it lies above
/// floor(N/2)) reuses the row stage of k.
BankOutput compute_bank(const RealImage& f, const BankSpec& spec, const SmootherKind& kind,
                        OpCounters& counters, unsigned threads = 1);

/// Baseline that runs both stages for every orientation.
BankOutput compute_bank_noreuse(const RealImage& f, const BankSpec& spec, const SmootherKind& kind,
                                OpCounters& counters, unsigned threads = 1);

}  // namespace fastgabor
