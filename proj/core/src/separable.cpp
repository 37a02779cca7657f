#include "fastgabor/detail/separable.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>
#include <stdexcept>

namespace fastgabor::detail {

namespace {

constexpr std::size_t kRowBlock = 8;
constexpr std::size_t kStrip = 128;

thread_local std::vector<double> tl_rows;
thread_local std::vector<double> tl_plane;

}  // namespace

PhaseTable phase_table(std::size_t n, double freq) {
    PhaseTable t{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        const double a = freq * static_cast<double>(k);
        t.cos[k] = std::cos(a);
        t.sin[k] = std::sin(a);
    }
    return t;
}

PhaseTable dft_phase_table(std::size_t n, std::size_t bin, std::size_t period, std::ptrdiff_t offset) {
    if (period == 0) throw std::invalid_argument("DFT period must be positive");
    PhaseTable t{std::vector<double>(n), std::vector<double>(n)};
    const auto p = static_cast<std::ptrdiff_t>(period);
    for (std::size_t k = 0; k < n; ++k) {
        const std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(k) - offset;
        std::ptrdiff_t r = (static_cast<std::ptrdiff_t>(bin) * pos) % p;
        if (r < 0) r += p;
        const double a = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(period);
        t.cos[k] = std::cos(a);
        t.sin[k] = std::sin(a);
    }
    return t;
}

void horizontal_pass(const RealImage& f, const PhaseTable& mod, const PhaseTable& out,
                     const Smoother& smoother, ComplexImage& dst, OpCounters& counters) {
    const std::size_t w = f.width();
    const std::size_t h = f.height();
    if (mod.cos.size() != w || out.cos.size() != w) throw std::invalid_argument("phase table width mismatch");
    if (dst.width() != w || dst.height() != h) dst = ComplexImage(w, h);

    // Rows are smoothed kRowBlock at a time: lane 2r holds f*cos and lane
    // 2r+1 holds f*sin of row y0+r, so independent recursions interleave.
    std::vector<double>& buf = tl_rows;
    for (std::size_t y0 = 0; y0 < h; y0 += kRowBlock) {
        const std::size_t rows = std::min(kRowBlock, h - y0);
        const std::size_t lanes = 2 * rows;
        if (buf.size() < lanes * w) buf.resize(lanes * w);
        for (std::size_t r = 0; r < rows; ++r) {
            const auto src = f.row(y0 + r);
            for (std::size_t x = 0; x < w; ++x) {
                buf[x * lanes + 2 * r] = src[x] * mod.cos[x];
                buf[x * lanes + 2 * r + 1] = src[x] * mod.sin[x];
            }
        }
        smoother.smooth_lanes(std::span<double>(buf.data(), lanes * w), w, lanes, counters, Axis::rows);
        for (std::size_t r = 0; r < rows; ++r) {
            double* re = dst.real().data() + (y0 + r) * w;
            double* im = dst.imag().data() + (y0 + r) * w;
            for (std::size_t x = 0; x < w; ++x) {
                const double sc = buf[x * lanes + 2 * r];
                const double ss = buf[x * lanes + 2 * r + 1];
                re[x] = out.cos[x] * sc + out.sin[x] * ss;
                im[x] = out.sin[x] * sc - out.cos[x] * ss;
            }
        }
    }
    counters.multiplications += 6 * w * h;
    counters.additions += 2 * w * h;
}

void vertical_pass(const ComplexImage& j, bool conjugate, const PhaseTable& mod, const PhaseTable& out,
                   const Smoother& smoother, ComplexImage& dst, OpCounters& counters) {
    const std::size_t w = j.width();
    const std::size_t h = j.height();
    if (mod.cos.size() != h || out.cos.size() != h) throw std::invalid_argument("phase table height mismatch");
    if (dst.width() != w || dst.height() != h) dst = ComplexImage(w, h);

    // Columns are processed in strips of kStrip pixels. Each strip is an
    // interleaved P/Q buffer (row y holds P0 Q0 P1 Q1 ...) small enough to stay
    // in cache across the forward and backward recursions.
    std::vector<double>& buf = tl_plane;
    for (std::size_t x0 = 0; x0 < w; x0 += kStrip) {
        const std::size_t sw = std::min(kStrip, w - x0);
        const std::size_t lanes = 2 * sw;
        if (buf.size() < lanes * h) buf.resize(lanes * h);
        for (std::size_t y = 0; y < h; ++y) {
            const double c = mod.cos[y];
            const double s = mod.sin[y];
            const double* re = j.real().data() + y * w + x0;
            const double* im = j.imag().data() + y * w + x0;
            double* row = buf.data() + y * lanes;
            if (!conjugate) {
                for (std::size_t x = 0; x < sw; ++x) {
                    row[2 * x] = re[x] * c + im[x] * s;
                    row[2 * x + 1] = re[x] * s - im[x] * c;
                }
            } else {
                for (std::size_t x = 0; x < sw; ++x) {
                    row[2 * x] = re[x] * c - im[x] * s;
                    row[2 * x + 1] = re[x] * s + im[x] * c;
                }
            }
        }
        smoother.smooth_lanes(std::span<double>(buf.data(), lanes * h), h, lanes, counters, Axis::columns);
        for (std::size_t y = 0; y < h; ++y) {
            const double c = out.cos[y];
            const double s = out.sin[y];
            const double* row = buf.data() + y * lanes;
            double* re = dst.real().data() + y * w + x0;
            double* im = dst.imag().data() + y * w + x0;
            for (std::size_t x = 0; x < sw; ++x) {
                const double p = row[2 * x];
                const double q = row[2 * x + 1];
                re[x] = c * p + s * q;
                im[x] = s * p - c * q;
            }
        }
    }
    counters.multiplications += 8 * w * h;
    counters.additions += 4 * w * h;
}

}  // namespace fastgabor::detail
