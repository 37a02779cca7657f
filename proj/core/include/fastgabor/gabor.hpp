#pragma once

#include "fastgabor/counters.hpp"
#include "fastgabor/gaussian.hpp"
#include "fastgabor/image.hpp"

namespace fastgabor {

/// Frequency omega (radians per pixel), orientation theta in [0, pi), and
/// Gaussian scale sigma (pixels).
struct GaborParams {
    double omega = 0.0;
    double theta = 0.0;
    double sigma = 0.0;

    /// Validates and folds theta into [0, pi).
    static GaborParams make(double omega, double theta, double sigma);

    double omega_c() const noexcept;  // omega * cos(theta)
    double omega_s() const noexcept;  // omega * sin(theta)

    bool operator==(const GaborParams&) const = default;
};

double normalize_orientation(double theta) noexcept;
void validate(const GaborParams& p);

/// Row-filtered intermediate J for one (omega, theta, sigma).
struct HorizontalStage {
    ComplexImage j;
    GaborParams params;
    SmootherKind smoother;
};

HorizontalStage horizontal_stage(const RealImage& f, const GaborParams& p, const SmootherKind& kind,
                                 OpCounters& counters);

ComplexImage vertical_stage(const HorizontalStage& h, OpCounters& counters);

/// 2-D complex Gabor response: rows first, then columns. Two 1-D smoothings
/// per row and two per column.
ComplexImage gabor_filter(const RealImage& f, const GaborParams& p, const SmootherKind& kind,
                          OpCounters& counters);

}  // namespace fastgabor
