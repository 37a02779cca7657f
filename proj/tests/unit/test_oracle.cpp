#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "fastgabor/metrics.hpp"
#include "fastgabor/oracle.hpp"
#include "support.hpp"

using namespace fastgabor;
using std::numbers::pi;

TEST_CASE("oracle impulse response is the sampled Gabor kernel") {
    const std::size_t n = 41, c0 = 20;
    const auto p = GaborParams::make(1.2, 0.7, 1.5);
    const auto out = oracle::fir_gabor(testing::impulse(n, n, c0, c0), p);
    const std::size_t r = testing::fir_radius(p.sigma);
    const auto k = testing::gaussian_kernel(p.sigma, r);
    double err = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
            const long dx = static_cast<long>(x) - static_cast<long>(c0);
            const long dy = static_cast<long>(y) - static_cast<long>(c0);
            std::complex<double> want = 0.0;
            if (std::abs(dx) <= static_cast<long>(r) && std::abs(dy) <= static_cast<long>(r)) {
                want = k[static_cast<std::size_t>(dx + static_cast<long>(r))] *
                       k[static_cast<std::size_t>(dy + static_cast<long>(r))] *
                       std::polar(1.0, p.omega * (std::cos(p.theta) * static_cast<double>(dx) +
                                                  std::sin(p.theta) * static_cast<double>(dy)));
            }
            err = std::max({err, std::abs(out.re(x, y) - want.real()), std::abs(out.im(x, y) - want.imag())});
        }
    }
    CHECK(err <= 1e-14);
}

TEST_CASE("oracle at a vanishing frequency is a Gaussian blur") {
    const auto f = testing::random_image(20, 16, 31);
    const double sigma = 1.5;
    const auto out = oracle::fir_gabor(f, GaborParams::make(1e-9, 1.0, sigma));
    const std::size_t r = testing::fir_radius(sigma);
    const auto k = testing::gaussian_kernel(sigma, r);
    double fmax = 0.0;
    for (double v : f.data()) fmax = std::max(fmax, std::abs(v));
    const auto clamp = [](long i, std::size_t n) { return static_cast<std::size_t>(std::clamp(i, 0L, static_cast<long>(n) - 1)); };
    for (std::size_t y = 0; y < f.height(); ++y) {
        for (std::size_t x = 0; x < f.width(); ++x) {
            double blur = 0.0;
            for (std::size_t j = 0; j < k.size(); ++j) {
                for (std::size_t i = 0; i < k.size(); ++i) {
                    const long sx = static_cast<long>(x) - static_cast<long>(i) + static_cast<long>(r);
                    const long sy = static_cast<long>(y) - static_cast<long>(j) + static_cast<long>(r);
                    blur += k[i] * k[j] * f.at(clamp(sx, f.width()), clamp(sy, f.height()));
                }
            }
            CHECK(std::abs(out.re(x, y) - blur) <= 1e-9 * fmax);
            CHECK(std::abs(out.im(x, y)) <= 1e-6 * fmax);
        }
    }
}

TEST_CASE("box-mode localized DFT equals the textbook windowed DFT") {
    const auto f = testing::random_image(12, 10, 32);
    for (const auto& [mx, my] : {std::pair<std::size_t, std::size_t>{4, 4}, {3, 5}, {6, 2}}) {
        SdftSpec spec;
        spec.mx = mx;
        spec.my = my;
        spec.smoother = Box{};
        for (std::size_t v = 0; v < my; ++v) {
            for (std::size_t u = 0; u < mx; ++u) {
                CAPTURE(u);
                CAPTURE(v);
                CHECK(max_relative_error(oracle::localized_dft(f, u, v, spec), oracle::windowed_dft(f, u, v, mx, my)) <=
                      1e-12);
            }
        }
    }
}

TEST_CASE("windowed DFT of a constant") {
    const RealImage f(10, 10, 2.0);
    const auto dc = oracle::windowed_dft(f, 0, 0, 4, 4);
    const auto ac = oracle::windowed_dft(f, 1, 2, 4, 4);
    for (std::size_t y = 2; y + 2 < 10; ++y) {
        for (std::size_t x = 2; x + 2 < 10; ++x) {
            CHECK(dc.re(x, y) == doctest::Approx(32.0));
            CHECK(std::abs(ac.re(x, y)) <= 1e-12);
            CHECK(std::abs(ac.im(x, y)) <= 1e-12);
        }
    }
    CHECK(dc.re(0, 0) == doctest::Approx(2.0 * 2.0 * 2.0));
}

TEST_CASE("oracle argument checks") {
    const auto f = testing::random_image(6, 6, 33);
    CHECK_THROWS_AS(oracle::validate(oracle::OracleConfig{2.0}), std::invalid_argument);
    CHECK_NOTHROW(oracle::validate(oracle::OracleConfig{}));
    SdftSpec spec;
    spec.mx = 4;
    spec.my = 4;
    CHECK_THROWS_AS(oracle::localized_dft(f, 4, 0, spec), std::invalid_argument);
    CHECK_THROWS_AS(oracle::localized_dft(f, 0, 4, spec), std::invalid_argument);
    CHECK_THROWS_AS(oracle::windowed_dft(f, 0, 0, 0, 4), std::invalid_argument);
}
