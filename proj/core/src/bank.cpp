#include "fastgabor/bank.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fastgabor/detail/parallel.hpp"
#include "fastgabor/detail/separable.hpp"

namespace fastgabor {

BankSpec BankSpec::fig1() {
    BankSpec spec;
    for (int i = 0; i < 5; ++i) spec.frequencies.push_back(std::pow(2.0, -(i + 2) / 2.0));
    spec.orientations = 8;
    return spec;
}

double BankSpec::sigma_for(std::size_t frequency_index) const {
    if (!sigmas.empty()) return sigmas.at(frequency_index);
    return 2.0 * std::numbers::pi / frequencies.at(frequency_index);
}

double BankSpec::orientation(std::size_t k) const noexcept {
    return std::numbers::pi * static_cast<double>(k) / static_cast<double>(orientations);
}

void validate(const BankSpec& spec) {
    if (spec.orientations < 1) throw std::invalid_argument("bank needs at least one orientation");
    if (spec.frequencies.empty()) throw std::invalid_argument("bank needs at least one frequency");
    for (double w : spec.frequencies) {
        if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("bank frequencies must be positive");
    }
    if (!spec.sigmas.empty()) {
        if (spec.sigmas.size() != spec.frequencies.size()) {
            throw std::invalid_argument("explicit sigma list must match the frequency list in length");
        }
        for (double s : spec.sigmas) {
            if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("bank sigmas must be positive");
        }
    }
}

ComplexImage conjugate_image(const ComplexImage& j) {
    ComplexImage out = j;
    for (double& v : out.imag()) v = -v;
    return out;
}

ComplexImage vertical_stage_conjugate(const HorizontalStage& h, OpCounters& counters) {
    validate(h.params);
    const Smoother smoother(h.smoother, h.params.sigma);
    // sin(pi - theta) = sin(theta): the column tables of theta serve pi - theta.
    const auto table = detail::phase_table(h.j.height(), h.params.omega_s());
    ComplexImage out(h.j.width(), h.j.height());
    detail::vertical_pass(h.j, true, table, table, smoother, out, counters);
    return out;
}

namespace {

BankOutput allocate(const RealImage& f, const BankSpec& spec) {
    validate(spec);
    if (f.empty()) throw std::invalid_argument("input image is empty");
    BankOutput out;
    out.entries.resize(spec.frequencies.size() * spec.orientations);
    for (std::size_t i = 0; i < spec.frequencies.size(); ++i) {
        for (std::size_t k = 0; k < spec.orientations; ++k) {
            out.entries[i * spec.orientations + k].params =
                GaborParams::make(spec.frequencies[i], spec.orientation(k), spec.sigma_for(i));
        }
    }
    return out;
}

}  // namespace

BankOutput compute_bank(const RealImage& f, const BankSpec& spec, const SmootherKind& kind,
                        OpCounters& counters, unsigned threads) {
    BankOutput out = allocate(f, spec);
    const std::size_t n = spec.orientations;
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < spec.frequencies.size(); ++i) {
        BankEntry* row = out.entries.data() + i * n;
        // One task per directly computed orientation; its row stage is used
        // for the partner orientation and released when the task ends.
        detail::parallel_for(std::min(half + 1, n), threads, out.counters,
                             [&](std::size_t k, OpCounters& local) {
                                 const HorizontalStage h = horizontal_stage(f, row[k].params, kind, local);
                                 row[k].image = vertical_stage(h, local);
                                 const std::size_t partner = n - k;
                                 if (k >= 1 && partner > half && partner < n) {
                                     row[partner].image = vertical_stage_conjugate(h, local);
                                 }
                             });
    }
    counters += out.counters;
    return out;
}

BankOutput compute_bank_noreuse(const RealImage& f, const BankSpec& spec, const SmootherKind& kind,
                                OpCounters& counters, unsigned threads) {
    BankOutput out = allocate(f, spec);
    detail::parallel_for(out.entries.size(), threads, out.counters, [&](std::size_t e, OpCounters& local) {
        out.entries[e].image = gabor_filter(f, out.entries[e].params, kind, local);
    });
    counters += out.counters;
    return out;
}

}  // namespace fastgabor
