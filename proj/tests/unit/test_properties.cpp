#include <doctest.h>

#include <numbers>
#include <random>

#include "fastgabor/bank.hpp"
#include "fastgabor/metrics.hpp"
#include "fastgabor/oracle.hpp"
#include "fastgabor/sdft.hpp"
#include "support.hpp"

using namespace fastgabor;
using std::numbers::pi;

// Randomized checks over shapes and parameters; each trial prints its seed on failure.

TEST_CASE("random shapes: ExactFir filtering equals the oracle") {
    std::mt19937_64 gen(101);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t w = 1 + gen() % 24;
        const std::size_t h = 1 + gen() % 24;
        const double omega = std::uniform_real_distribution<double>(0.05, 3.0)(gen);
        const double theta = std::uniform_real_distribution<double>(0.0, pi)(gen);
        const double sigma = std::uniform_real_distribution<double>(0.6, 3.0)(gen);
        CAPTURE(trial);
        CAPTURE(w);
        CAPTURE(h);
        const auto f = testing::random_image(w, h, gen());
        const auto p = GaborParams::make(omega, theta, sigma);
        OpCounters c;
        CHECK(max_relative_error(gabor_filter(f, p, ExactFir{}, c), oracle::fir_gabor(f, p)) <= 1e-10);
    }
}

TEST_CASE("random shapes: reuse schedule equals the direct schedule") {
    std::mt19937_64 gen(202);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t w = 2 + gen() % 30;
        const std::size_t h = 2 + gen() % 30;
        BankSpec spec;
        spec.frequencies = {std::uniform_real_distribution<double>(0.2, 2.0)(gen)};
        spec.orientations = 4 + 2 * (gen() % 7);
        spec.sigmas = {std::uniform_real_distribution<double>(0.6, 4.0)(gen)};
        CAPTURE(trial);
        CAPTURE(spec.orientations);
        const auto f = testing::random_image(w, h, gen());
        OpCounters a, b;
        const auto reuse = compute_bank(f, spec, ExactFir{}, a);
        const auto base = compute_bank_noreuse(f, spec, ExactFir{}, b);
        for (std::size_t i = 0; i < reuse.entries.size(); ++i)
            CHECK(max_relative_error(reuse.entries[i].image, base.entries[i].image) <= 1e-10);
    }
}

TEST_CASE("random shapes: localized DFT bins are conjugate symmetric") {
    std::mt19937_64 gen(303);
    for (int trial = 0; trial < 8; ++trial) {
        SdftSpec spec;
        spec.mx = 2 + gen() % 7;
        spec.my = 2 + gen() % 7;
        spec.sigma = std::uniform_real_distribution<double>(0.6, 2.5)(gen);
        spec.smoother = ExactFir{};
        CAPTURE(spec.mx);
        CAPTURE(spec.my);
        const auto f = testing::random_image(3 + gen() % 14, 3 + gen() % 14, gen());
        OpCounters c;
        const auto out = sdft_full(f, spec, c);
        for (std::size_t v = 0; v < spec.my; ++v) {
            for (std::size_t u = 0; u < spec.mx; ++u) {
                const auto& a = out.bin(u, v);
                const auto& b = out.bin((spec.mx - u) % spec.mx, (spec.my - v) % spec.my);
                CHECK(max_relative_error(a, conjugate_image(b)) <= 1e-12);
            }
        }
        const std::size_t u = gen() % spec.mx;
        const std::size_t v = gen() % spec.my;
        CHECK(max_relative_error(out.bin(u, v), oracle::localized_dft(f, u, v, spec)) <= 1e-10);
    }
}

TEST_CASE("random inputs: filtering is linear") {
    std::mt19937_64 gen(404);
    for (int trial = 0; trial < 5; ++trial) {
        const auto a = testing::random_image(17, 13, gen());
        const auto b = testing::random_image(17, 13, gen());
        const double s = std::uniform_real_distribution<double>(-2.0, 2.0)(gen);
        RealImage mix(17, 13);
        for (std::size_t i = 0; i < mix.size(); ++i) mix.data()[i] = a.data()[i] + s * b.data()[i];
        const auto p = GaborParams::make(0.7, 0.4 + 0.3 * trial, 1.0 + trial);
        OpCounters c;
        const auto fa = gabor_filter(a, p, RecursiveIir{}, c);
        const auto fb = gabor_filter(b, p, RecursiveIir{}, c);
        auto want = fa;
        for (std::size_t i = 0; i < want.size(); ++i) {
            want.real()[i] += s * fb.real()[i];
            want.imag()[i] += s * fb.imag()[i];
        }
        CHECK(max_relative_error(gabor_filter(mix, p, RecursiveIir{}, c), want) <= 1e-10);
    }
}
