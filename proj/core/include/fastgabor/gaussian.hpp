#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fastgabor/counters.hpp"

namespace fastgabor {

/// Constant-cost recursive Gaussian. The design is picked from sigma, see
/// make_coeffs().
struct RecursiveIir {
    bool operator==(const RecursiveIir&) const = default;
};

/// Direct convolution with the unit-sum sampled Gaussian truncated at
/// radius * sigma, replicate padding.
struct ExactFir {
    double radius = 6.0;
    bool operator==(const ExactFir&) const = default;
};

/// Unnormalized moving sum over [x - before, x + after], zero padding.
struct Box {
    std::size_t before = 0;
    std::size_t after = 0;

    static Box symmetric(std::size_t half_width) { return {half_width, half_width}; }
    /// Window of m samples whose phase origin sits m/2 samples left of x.
    static Box window(std::size_t m) { return {m / 2, m - 1 - m / 2}; }
    std::size_t length() const noexcept { return before + after + 1; }
    bool operator==(const Box&) const = default;
};

using SmootherKind = std::variant<RecursiveIir, ExactFir, Box>;

void validate(const SmootherKind& kind);
std::string describe(const SmootherKind& kind);
bool is_box(const SmootherKind& kind) noexcept;

enum class IirDesign {
    young_van_vliet3,  // third-order cascade, causal then anticausal
    deriche4,          // fourth-order parallel causal + anticausal
};

/// Smallest sigma for which the third-order cascade keeps the impulse
/// response within 1e-3 of the sampled Gaussian.
inline constexpr double kCascadeMinSigma = 5.0;
inline constexpr double kIirMinSigma = 0.5;

/// Recursive Gaussian coefficients. Immutable once built.
struct GaussianCoeffs {
    double sigma = 0.0;
    IirDesign design = IirDesign::young_van_vliet3;

    /// Shared denominator 1 + d1 z^-1 + ... (d4 = 0 for the cascade).
    std::array<double, 5> denominator{};

    /// Cascade: per-pass DC normalization B = 1 + d1 + d2 + d3. The forward
    /// pass runs without gain and the backward pass multiplies by B^2.
    double gain = 1.0;
    /// Cascade: maps forward end-state deviations to the anticausal initial
    /// state for a replicated right edge.
    std::array<std::array<double, 3>, 3> boundary{};

    /// Parallel form numerators, causal n0..n3 and anticausal m1..m4.
    std::array<double, 4> causal{};
    std::array<double, 4> anticausal{};
    /// Steady-state output per unit constant input, causal and anticausal.
    double causal_dc = 0.0;
    double anticausal_dc = 0.0;
};

/// Builds recursive coefficients. sigma >= 5 selects the Young-van Vliet
/// third-order cascade with exact-variance pole scaling; 0.5 <= sigma < 5 the
/// Deriche fourth-order parallel form. Throws std::invalid_argument when
/// sigma <= 0 or sigma < 0.5.
GaussianCoeffs make_coeffs(double sigma);

/// Unit-sum sampled Gaussian taps for offsets -r..r with r = ceil(radius * sigma).
std::vector<double> sampled_gaussian(double sigma, double radius);

enum class Axis { rows, columns };

/// A prepared 1-D smoothing operator for one (kind, sigma).
///
/// The lane form smooths `lanes` interleaved signals of length n stored as
/// data[i * lanes + lane]; columns of a row-major plane are lanes with the
/// plane width as lane count. Each lane is processed with exactly the
/// arithmetic of the single-signal form.
class Smoother {
public:
    Smoother(const SmootherKind& kind, double sigma);

    const SmootherKind& kind() const noexcept { return kind_; }
    double sigma() const noexcept { return sigma_; }
    const GaussianCoeffs* coeffs() const noexcept { return iir_ ? &coeffs_ : nullptr; }

    /// Cost of one smoothing of an n-sample signal.
    OpCounters line_cost(std::size_t n) const noexcept;

    void smooth(std::span<const double> in, std::span<double> out, OpCounters& counters,
                Axis axis = Axis::rows) const;

    /// In-place smoothing of interleaved lanes.
    void smooth_lanes(std::span<double> data, std::size_t n, std::size_t lanes, OpCounters& counters,
                      Axis axis) const;

private:
    SmootherKind kind_;
    double sigma_ = 0.0;
    bool iir_ = false;
    GaussianCoeffs coeffs_{};
    std::vector<double> taps_;  // ExactFir
};

std::vector<double> smooth_1d(std::span<const double> signal, const SmootherKind& kind, double sigma,
                              OpCounters& counters);

std::pair<std::vector<double>, std::vector<double>> smooth_pair_1d(std::span<const double> a,
                                                                   std::span<const double> b,
                                                                   const SmootherKind& kind,
                                                                   double sigma, OpCounters& counters);

}  // namespace fastgabor
