#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fastgabor/gaussian.hpp"
#include "fastgabor/image.hpp"

namespace fastgabor::tools {

/// Sweep grid. Scales are wavelengths in pixels: omega = 2 pi / lambda and,
/// under the default sigma rule, sigma = lambda. Angles are in degrees.
struct Sweep {
    std::vector<double> wavelengths;
    std::vector<double> degrees;

    /// Wavelengths 3.5 .. 13 and angles 18, 36, .., 162.
    static Sweep defaults();
};

/// "default", or "L1,L2,...;A1,A2,..." (wavelengths; degrees).
Sweep parse_sweep(std::string_view text);

enum class Reference {
    oracle,     // brute-force FIR double sum
    exact_fir,  // separable path with the truncated FIR smoother
};

struct CompareConfig {
    Sweep sweep = Sweep::defaults();
    SmootherKind fast = RecursiveIir{};
    Reference reference = Reference::oracle;
    std::optional<double> sigma;  // unset: sigma = 2 pi / omega
    unsigned threads = 1;
};

struct ComparePoint {
    double wavelength = 0.0;
    double omega = 0.0;
    double degrees = 0.0;
    double sigma = 0.0;
    double ser_real = 0.0;
    double ser_imag = 0.0;
    double control_real = 0.0;  // ExactFir path against the same reference
    double control_imag = 0.0;
};

std::vector<ComparePoint> run_compare(const RealImage& f, const CompareConfig& cfg);

std::string compare_csv_header();
std::string to_csv_row(const ComparePoint& p);

/// Lowest control SER over all points and both parts.
double min_control_ser(const std::vector<ComparePoint>& points);

/// Centered crop of at most size x size pixels.
RealImage center_crop(const RealImage& f, std::size_t size);

}  // namespace fastgabor::tools
