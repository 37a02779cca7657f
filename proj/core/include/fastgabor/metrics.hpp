#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fastgabor/counters.hpp"
#include "fastgabor/image.hpp"

namespace fastgabor {

enum class Part { real, imag };

/// Signal-to-error ratio in dB of one plane:
///   10 log10( sum truth^2 / sum (approx - truth)^2 ).
/// +inf when the error is zero, -inf when the truth plane is zero and the
/// error is not. Throws std::invalid_argument on a shape mismatch.
double ser(const ComplexImage& approx, const ComplexImage& truth, Part part);

/// max |approx - truth| over both planes divided by max |truth| over both
/// planes (the plain maximum difference when truth is zero).
double max_relative_error(const ComplexImage& approx, const ComplexImage& truth);

struct SerReport {
    double ser_real = 0.0;
    double ser_imag = 0.0;
    std::string params;    // "omega=..,theta=..,sigma=.." or "u=..,v=.."
    std::string image_id;

    /// One key=value pair per line.
    std::string to_key_value() const;
};

SerReport make_ser_report(const ComplexImage& approx, const ComplexImage& truth, std::string params,
                          std::string image_id);

/// Formats a dB value; infinities become "inf" and "-inf".
std::string format_db(double db);

struct PerPixelCounts {
    double multiplications = 0.0;  // R_M
    double additions = 0.0;        // R_A
};

PerPixelCounts per_pixel_counts(const OpCounters& counters, std::size_t width, std::size_t height);

/// Totals and per-pixel figures as key=value lines.
std::string counters_key_value(const OpCounters& counters, std::size_t width, std::size_t height);

struct AffineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Least squares y = slope * x + intercept. Needs two distinct x values.
AffineFit fit_affine(std::span<const double> x, std::span<const double> y);

struct TwoTermFit {
    double a = 0.0;
    double b = 0.0;
    double r_squared = 0.0;
};

/// Least squares y = a * x1 + b * x2 without intercept. R^2 is taken
/// against the mean of y.
TwoTermFit fit_two_term(std::span<const double> x1, std::span<const double> x2, std::span<const double> y);

/// Benchmark report: one CSV row per (section, parameter).
struct BenchRow {
    std::string section;  // "bank" (parameter N) or "sdft" (parameter M)
    std::size_t param = 0;
    std::size_t runs = 0;
    double reuse_ms = 0.0;
    double noreuse_ms = 0.0;
    double speedup = 0.0;
    PerPixelCounts reuse;
    PerPixelCounts noreuse;
};

std::string bench_csv_header();
std::string to_csv_row(const BenchRow& row);

struct BenchCheck {
    std::vector<BenchRow> rows;
    std::vector<std::string> problems;

    bool ok() const noexcept { return problems.empty(); }
};

/// Parses and validates a report written by the bench command: header,
/// column count, numeric fields, known sections, at least five runs and a
/// speedup column consistent with the two medians.
BenchCheck check_bench_report(std::string_view csv);

}  // namespace fastgabor
