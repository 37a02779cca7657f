#include "fastgabor/gabor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fastgabor/detail/separable.hpp"

namespace fastgabor {

double normalize_orientation(double theta) noexcept {
    double t = std::fmod(theta, std::numbers::pi);
    if (t < 0.0) t += std::numbers::pi;
    if (t >= std::numbers::pi) t = 0.0;
    return t;
}

void validate(const GaborParams& p) {
    if (!(p.omega > 0.0) || !std::isfinite(p.omega)) throw std::invalid_argument("omega must be positive");
    if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) throw std::invalid_argument("sigma must be positive");
    if (!(p.theta >= 0.0 && p.theta < std::numbers::pi)) throw std::invalid_argument("theta must lie in [0, pi)");
}

GaborParams GaborParams::make(double omega, double theta, double sigma) {
    if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
    GaborParams p{omega, normalize_orientation(theta), sigma};
    validate(p);
    return p;
}

double GaborParams::omega_c() const noexcept { return omega * std::cos(theta); }
double GaborParams::omega_s() const noexcept { return omega * std::sin(theta); }

HorizontalStage horizontal_stage(const RealImage& f, const GaborParams& p, const SmootherKind& kind,
                                 OpCounters& counters) {
    validate(p);
    if (f.empty()) throw std::invalid_argument("input image is empty");
    const Smoother smoother(kind, p.sigma);
    const auto table = detail::phase_table(f.width(), p.omega_c());
    HorizontalStage h{ComplexImage(f.width(), f.height()), p, kind};
    detail::horizontal_pass(f, table, table, smoother, h.j, counters);
    return h;
}

ComplexImage vertical_stage(const HorizontalStage& h, OpCounters& counters) {
    validate(h.params);
    const Smoother smoother(h.smoother, h.params.sigma);
    const auto table = detail::phase_table(h.j.height(), h.params.omega_s());
    ComplexImage out(h.j.width(), h.j.height());
    detail::vertical_pass(h.j, false, table, table, smoother, out, counters);
    return out;
}

ComplexImage gabor_filter(const RealImage& f, const GaborParams& p, const SmootherKind& kind,
                          OpCounters& counters) {
    return vertical_stage(horizontal_stage(f, p, kind, counters), counters);
}

}  // namespace fastgabor
