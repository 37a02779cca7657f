#include "fastgabor/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fastgabor::oracle {

namespace {

using cd = std::complex<double>;

// Weights w(d) for offsets d = x - m in [lo, hi].
struct Taps {
    std::ptrdiff_t lo = 0;
    std::ptrdiff_t hi = 0;
    std::vector<double> w;
    bool replicate = true;

    double at(std::ptrdiff_t d) const { return w[static_cast<std::size_t>(d - lo)]; }
};

Taps gaussian_taps(double sigma, double radius) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("oracle sigma must be positive");
    const auto r = static_cast<std::ptrdiff_t>(std::ceil(radius * sigma));
    Taps t{-r, r, std::vector<double>(static_cast<std::size_t>(2 * r + 1)), true};
    double sum = 0.0;
    for (std::ptrdiff_t d = -r; d <= r; ++d) {
        const double x = static_cast<double>(d);
        const double g = std::exp(-x * x / (2.0 * sigma * sigma));
        t.w[static_cast<std::size_t>(d + r)] = g;
        sum += g;
    }
    for (double& g : t.w) g /= sum;
    return t;
}

// m runs over [x - m/2, x - m/2 + m - 1], so d = x - m runs over [m/2 - m + 1, m/2].
Taps box_taps(std::size_t m) {
    const auto sm = static_cast<std::ptrdiff_t>(m);
    return {sm / 2 - sm + 1, sm / 2, std::vector<double>(m, 1.0), false};
}

std::ptrdiff_t clamp_index(std::ptrdiff_t i, std::size_t n) {
    return std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 1);
}

// Phase as a function of the integer offset d = x - m, tabulated for
// d in [-(n-1), n-1].
template <class Phase>
std::vector<cd> offset_table(std::size_t n, Phase phase) {
    std::vector<cd> t(2 * n - 1);
    const auto sn = static_cast<std::ptrdiff_t>(n);
    for (std::ptrdiff_t d = -(sn - 1); d < sn; ++d) t[static_cast<std::size_t>(d + sn - 1)] = phase(d);
    return t;
}

// sum_{dx,dy} wx(dx) wy(dy) f(m, n) px(x - m) py(y - n) with m = x - dx and
// n = y - dy. Replicate taps read the nearest edge pixel and take the phase
// there; zero taps skip samples outside the image.
ComplexImage separable_window_sum(const RealImage& f, const Taps& tx, const Taps& ty, const std::vector<cd>& px,
                                  const std::vector<cd>& py) {
    const std::size_t w = f.width();
    const std::size_t h = f.height();
    const auto sw = static_cast<std::ptrdiff_t>(w);
    const auto sh = static_cast<std::ptrdiff_t>(h);
    ComplexImage out(w, h);
    for (std::ptrdiff_t y = 0; y < sh; ++y) {
        for (std::ptrdiff_t x = 0; x < sw; ++x) {
            cd acc{0.0, 0.0};
            for (std::ptrdiff_t dy = ty.lo; dy <= ty.hi; ++dy) {
                std::ptrdiff_t n = y - dy;
                if (n < 0 || n >= sh) {
                    if (!ty.replicate) continue;
                    n = clamp_index(n, h);
                }
                const auto frow = f.row(static_cast<std::size_t>(n));
                cd row{0.0, 0.0};
                for (std::ptrdiff_t dx = tx.lo; dx <= tx.hi; ++dx) {
                    std::ptrdiff_t m = x - dx;
                    if (m < 0 || m >= sw) {
                        if (!tx.replicate) continue;
                        m = clamp_index(m, w);
                    }
                    row += (tx.at(dx) * frow[static_cast<std::size_t>(m)]) * px[static_cast<std::size_t>(x - m + sw - 1)];
                }
                acc += ty.at(dy) * row * py[static_cast<std::size_t>(y - n + sh - 1)];
            }
            out.re(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = acc.real();
            out.im(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = acc.imag();
        }
    }
    return out;
}

// exp(i 2 pi bin (d - period/2) / period) for d = x - m, reduced modulo the period.
std::vector<cd> dft_offset_table(std::size_t n, std::size_t bin, std::size_t period) {
    const auto sp = static_cast<std::ptrdiff_t>(period);
    const auto sb = static_cast<std::ptrdiff_t>(bin);
    return offset_table(n, [=](std::ptrdiff_t d) {
        std::ptrdiff_t k = (sb * (d - sp / 2)) % sp;
        if (k < 0) k += sp;
        return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(sp));
    });
}

}  // namespace

void validate(const OracleConfig& cfg) {
    if (!(cfg.radius >= 3.0) || !std::isfinite(cfg.radius)) throw std::invalid_argument("oracle radius must be >= 3");
}

ComplexImage fir_gabor(const RealImage& f, const GaborParams& p, const OracleConfig& cfg) {
    validate(p);
    validate(cfg);
    const Taps g = gaussian_taps(p.sigma, cfg.radius);
    const double wc = p.omega * std::cos(p.theta);
    const double ws = p.omega * std::sin(p.theta);
    const auto px =
        offset_table(f.width(), [wc](std::ptrdiff_t d) { return std::polar(1.0, wc * static_cast<double>(d)); });
    const auto py =
        offset_table(f.height(), [ws](std::ptrdiff_t d) { return std::polar(1.0, ws * static_cast<double>(d)); });
    return separable_window_sum(f, g, g, px, py);
}

ComplexImage localized_dft(const RealImage& f, std::size_t u, std::size_t v, const SdftSpec& spec,
                           const OracleConfig& cfg) {
    validate(spec);
    validate(cfg);
    if (u >= spec.mx || v >= spec.my) throw std::invalid_argument("bin index out of range");
    const auto px = dft_offset_table(f.width(), u, spec.mx);
    const auto py = dft_offset_table(f.height(), v, spec.my);
    if (is_box(spec.smoother)) return separable_window_sum(f, box_taps(spec.mx), box_taps(spec.my), px, py);
    const Taps g = gaussian_taps(spec.effective_sigma(), cfg.radius);
    return separable_window_sum(f, g, g, px, py);
}

ComplexImage windowed_dft(const RealImage& f, std::size_t u, std::size_t v, std::size_t mx, std::size_t my) {
    if (mx < 1 || my < 1) throw std::invalid_argument("window must be at least 1x1");
    const auto w = static_cast<std::ptrdiff_t>(f.width());
    const auto h = static_cast<std::ptrdiff_t>(f.height());
    ComplexImage out(f.width(), f.height());
    for (std::ptrdiff_t y = 0; y < h; ++y) {
        for (std::ptrdiff_t x = 0; x < w; ++x) {
            const std::ptrdiff_t x0 = x - static_cast<std::ptrdiff_t>(mx / 2);
            const std::ptrdiff_t y0 = y - static_cast<std::ptrdiff_t>(my / 2);
            cd acc{0.0, 0.0};
            for (std::size_t j = 0; j < my; ++j) {
                const std::ptrdiff_t yy = y0 + static_cast<std::ptrdiff_t>(j);
                if (yy < 0 || yy >= h) continue;
                for (std::size_t i = 0; i < mx; ++i) {
                    const std::ptrdiff_t xx = x0 + static_cast<std::ptrdiff_t>(i);
                    if (xx < 0 || xx >= w) continue;
                    const double angle = -2.0 * std::numbers::pi *
                                         (static_cast<double>(u * i) / static_cast<double>(mx) +
                                          static_cast<double>(v * j) / static_cast<double>(my));
                    acc += f.at(static_cast<std::size_t>(xx), static_cast<std::size_t>(yy)) * std::polar(1.0, angle);
                }
            }
            out.re(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = acc.real();
            out.im(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = acc.imag();
        }
    }
    return out;
}

}  // namespace fastgabor::oracle
