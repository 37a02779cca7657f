#include "fastgabor/sdft.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "fastgabor/bank.hpp"
#include "fastgabor/detail/parallel.hpp"
#include "fastgabor/detail/separable.hpp"

namespace fastgabor {

double SdftSpec::effective_sigma() const noexcept {
    if (sigma > 0.0) return sigma;
    return static_cast<double>(std::min(mx, my) / 2) / 3.0;
}

void validate(const SdftSpec& spec) {
    if (spec.mx < 1 || spec.my < 1) throw std::invalid_argument("SDFT window must be at least 1x1");
    validate(spec.smoother);
    if (!is_box(spec.smoother) && !(spec.effective_sigma() > 0.0)) {
        throw std::invalid_argument("SDFT sigma must be positive for Gaussian windows");
    }
    if (spec.sigma < 0.0 || !std::isfinite(spec.sigma)) throw std::invalid_argument("SDFT sigma must be >= 0");
}

namespace {

Smoother axis_smoother(const SdftSpec& spec, std::size_t m) {
    if (is_box(spec.smoother)) return Smoother(Box::window(m), 0.0);
    return Smoother(spec.smoother, spec.effective_sigma());
}

struct AxisTables {
    detail::PhaseTable mod;
    detail::PhaseTable out;
};

AxisTables axis_tables(std::size_t n, std::size_t bin, std::size_t m) {
    return {detail::dft_phase_table(n, bin, m, 0),
            detail::dft_phase_table(n, bin, m, static_cast<std::ptrdiff_t>(m / 2))};
}

void check_input(const RealImage& f, const SdftSpec& spec) {
    validate(spec);
    if (f.empty()) throw std::invalid_argument("input image is empty");
}

ComplexImage vertical_bin(const ComplexImage& j, bool conjugate, std::size_t v, const SdftSpec& spec,
                          const Smoother& smoother, OpCounters& counters) {
    const auto t = axis_tables(j.height(), v, spec.my);
    ComplexImage out(j.width(), j.height());
    detail::vertical_pass(j, conjugate, t.mod, t.out, smoother, out, counters);
    return out;
}

void fill_conjugates(SdftOutput& out) {
    const std::size_t half = out.my / 2;
    for (std::size_t v = half + 1; v < out.my; ++v) {
        for (std::size_t u = 0; u < out.mx; ++u) {
            out.bin(u, v) = conjugate_image(out.bin((out.mx - u) % out.mx, out.my - v));
        }
    }
}

SdftOutput transposed(const RealImage& f, const SdftSpec& spec, OpCounters& counters, unsigned threads,
                      SdftOutput (*run)(const RealImage&, const SdftSpec&, OpCounters&, unsigned)) {
    SdftSpec swapped = spec;
    std::swap(swapped.mx, swapped.my);
    OpCounters local;
    SdftOutput t = run(transpose(f), swapped, local, threads);
    std::swap(local.smoothings_h, local.smoothings_v);
    SdftOutput out;
    out.mx = spec.mx;
    out.my = spec.my;
    out.sigma = t.sigma;
    out.bins.resize(spec.mx * spec.my);
    for (std::size_t v = 0; v < spec.my; ++v) {
        for (std::size_t u = 0; u < spec.mx; ++u) out.bin(u, v) = transpose(t.bin(v, u));
    }
    out.counters = local;
    counters += local;
    return out;
}

}  // namespace

ComplexImage sdft_horizontal(const RealImage& f, std::size_t u, const SdftSpec& spec, OpCounters& counters) {
    check_input(f, spec);
    if (u >= spec.mx) throw std::invalid_argument("horizontal bin index out of range");
    const Smoother smoother = axis_smoother(spec, spec.mx);
    const auto t = axis_tables(f.width(), u, spec.mx);
    ComplexImage j(f.width(), f.height());
    detail::horizontal_pass(f, t.mod, t.out, smoother, j, counters);
    return j;
}

ComplexImage sdft_bin(const RealImage& f, std::size_t u, std::size_t v, const SdftSpec& spec,
                      OpCounters& counters) {
    if (v >= spec.my) throw std::invalid_argument("vertical bin index out of range");
    const ComplexImage j = sdft_horizontal(f, u, spec, counters);
    return vertical_bin(j, false, v, spec, axis_smoother(spec, spec.my), counters);
}

SdftOutput sdft_full(const RealImage& f, const SdftSpec& spec, OpCounters& counters, unsigned threads) {
    check_input(f, spec);
    if (spec.my < spec.mx) return transposed(f, spec, counters, threads, &sdft_full);

    SdftOutput out;
    out.mx = spec.mx;
    out.my = spec.my;
    out.sigma = spec.effective_sigma();
    out.bins.resize(spec.mx * spec.my);

    const std::size_t ux = spec.mx / 2;
    const std::size_t vy = spec.my / 2;
    std::vector<ComplexImage> rows(ux + 1);
    detail::parallel_for(ux + 1, threads, out.counters, [&](std::size_t u, OpCounters& local) {
        rows[u] = sdft_horizontal(f, u, spec, local);
    });

    const Smoother vsmooth = axis_smoother(spec, spec.my);
    const std::size_t computed = spec.mx * (vy + 1);
    detail::parallel_for(computed, threads, out.counters, [&](std::size_t task, OpCounters& local) {
        const std::size_t u = task / (vy + 1);
        const std::size_t v = task % (vy + 1);
        const bool reuse = u > ux;
        const ComplexImage& j = reuse ? rows[spec.mx - u] : rows[u];
        out.bin(u, v) = vertical_bin(j, reuse, v, spec, vsmooth, local);
    });

    fill_conjugates(out);
    counters += out.counters;
    return out;
}

SdftOutput sdft_full_noreuse(const RealImage& f, const SdftSpec& spec, OpCounters& counters, unsigned threads) {
    check_input(f, spec);
    if (spec.my < spec.mx) return transposed(f, spec, counters, threads, &sdft_full_noreuse);

    SdftOutput out;
    out.mx = spec.mx;
    out.my = spec.my;
    out.sigma = spec.effective_sigma();
    out.bins.resize(spec.mx * spec.my);

    const std::size_t vy = spec.my / 2;
    detail::parallel_for(spec.mx * (vy + 1), threads, out.counters, [&](std::size_t task, OpCounters& local) {
        const std::size_t u = task / (vy + 1);
        const std::size_t v = task % (vy + 1);
        out.bin(u, v) = sdft_bin(f, u, v, spec, local);
    });
    fill_conjugates(out);
    counters += out.counters;
    return out;
}

}  // namespace fastgabor
