#include "fastgabor/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace fastgabor {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Unscaled third-order poles, van Vliet, Young and Verbeek (ICPR 1998).
constexpr std::array<std::complex<double>, 3> kCascadePoles{
    std::complex<double>{1.4165, 1.00829},
    std::complex<double>{1.4165, -1.00829},
    std::complex<double>{1.86543, 0.0},
};

double cascade_variance(double q) {
    double var = 0.0;
    for (const auto& d : kCascadePoles) {
        const auto p = std::pow(d, 1.0 / q);
        var += (2.0 * p / ((p - 1.0) * (p - 1.0))).real();
    }
    return var;
}

double cascade_variance_slope(double q) {
    double slope = 0.0;
    for (const auto& d : kCascadePoles) {
        const auto p = std::pow(d, 1.0 / q);
        slope += (2.0 * p * (p + 1.0) * std::log(d) / ((p - 1.0) * (p - 1.0) * (p - 1.0) * q * q)).real();
    }
    return slope;
}

// Scale exponent q such that the cascade variance equals sigma^2 exactly.
double solve_cascade_scale(double sigma) {
    double q = sigma / 2.0;
    for (int iter = 0; iter < 100; ++iter) {
        const double step = (cascade_variance(q) - sigma * sigma) / cascade_variance_slope(q);
        q -= step;
        if (std::abs(step) <= 1e-15 * q) break;
    }
    return q;
}

void build_cascade(GaussianCoeffs& c) {
    const double q = solve_cascade_scale(c.sigma);
    // Expand prod_k (1 - r_k z^-1), r_k = 1 / p_k.
    std::array<std::complex<double>, 4> poly{1.0, 0.0, 0.0, 0.0};
    double max_r = 0.0;
    for (const auto& d : kCascadePoles) {
        const auto r = 1.0 / std::pow(d, 1.0 / q);
        max_r = std::max(max_r, std::abs(r));
        for (int k = 3; k >= 1; --k) poly[k] -= r * poly[k - 1];
    }
    c.denominator = {1.0, poly[1].real(), poly[2].real(), poly[3].real(), 0.0};
    const double a1 = c.denominator[1];
    const double a2 = c.denominator[2];
    const double a3 = c.denominator[3];
    c.gain = 1.0 + a1 + a2 + a3;
    const double g2 = c.gain * c.gain;

    // Right-edge state map (Triggs and Sdika): run the forward recursion past
    // the edge from a unit deviation, then the backward recursion from rest,
    // and read back the three states just past the edge.
    const auto tail = static_cast<std::size_t>(std::ceil(std::log(1e-20) / std::log(max_r))) + 16;
    std::vector<double> fwd(tail + 3);
    std::vector<double> bwd(tail + 3);
    for (std::size_t j = 0; j < 3; ++j) {
        std::fill(fwd.begin(), fwd.end(), 0.0);
        std::fill(bwd.begin(), bwd.end(), 0.0);
        // fwd[2 - j] is w[N-1-j]; fwd[3 + i] is w[N+i].
        fwd[2 - j] = 1.0;
        for (std::size_t i = 3; i < tail + 3; ++i) {
            fwd[i] = -a1 * fwd[i - 1] - a2 * fwd[i - 2] - a3 * fwd[i - 3];
        }
        for (std::size_t i = tail + 3; i-- > 3;) {
            const double b1 = i + 1 < tail + 3 ? bwd[i + 1] : 0.0;
            const double b2 = i + 2 < tail + 3 ? bwd[i + 2] : 0.0;
            const double b3 = i + 3 < tail + 3 ? bwd[i + 3] : 0.0;
            bwd[i] = g2 * fwd[i] - a1 * b1 - a2 * b2 - a3 * b3;
        }
        for (std::size_t i = 0; i < 3; ++i) c.boundary[i][j] = bwd[3 + i];
    }
}

// Deriche (1993) fourth-order fit of the Gaussian over x >= 0.
double deriche_fit(double x, double sigma) {
    constexpr double a0 = 1.680, a1 = 3.735, b0 = 1.783, w0 = 0.6318;
    constexpr double c0 = -0.6803, c1 = -0.2598, b1 = 1.723, w1 = 1.997;
    const double t = x / sigma;
    return (a0 * std::cos(w0 * t) + a1 * std::sin(w0 * t)) * std::exp(-b0 * t) +
           (c0 * std::cos(w1 * t) + c1 * std::sin(w1 * t)) * std::exp(-b1 * t);
}

void build_parallel(GaussianCoeffs& c) {
    constexpr double b0 = 1.783, w0 = 0.6318, b1 = 1.723, w1 = 1.997;
    const double s = c.sigma;
    const std::array<double, 3> q0{1.0, -2.0 * std::exp(-b0 / s) * std::cos(w0 / s), std::exp(-2.0 * b0 / s)};
    const std::array<double, 3> q1{1.0, -2.0 * std::exp(-b1 / s) * std::cos(w1 / s), std::exp(-2.0 * b1 / s)};
    c.denominator = {};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) c.denominator[i + j] += q0[i] * q1[j];

    std::array<double, 5> g{};
    for (std::size_t k = 0; k < 5; ++k) g[k] = deriche_fit(static_cast<double>(k), s);
    for (std::size_t k = 0; k < 4; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= k; ++j) acc += c.denominator[j] * g[k - j];
        c.causal[k] = acc;
    }
    for (std::size_t k = 1; k <= 4; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < k; ++j) acc += c.denominator[j] * g[k - j];
        c.anticausal[k - 1] = acc;
    }
    double sum_d = 0.0;
    for (double d : c.denominator) sum_d += d;
    double sum_n = 0.0, sum_m = 0.0;
    for (double v : c.causal) sum_n += v;
    for (double v : c.anticausal) sum_m += v;
    const double dc = (sum_n + sum_m) / sum_d;
    for (double& v : c.causal) v /= dc;
    for (double& v : c.anticausal) v /= dc;
    c.causal_dc = sum_n / dc / sum_d;
    c.anticausal_dc = sum_m / dc / sum_d;
}

thread_local std::vector<double> tl_scratch_a;
thread_local std::vector<double> tl_scratch_b;
thread_local std::vector<double> tl_state;

std::vector<double>& sized(std::vector<double>& v, std::size_t n) {
    if (v.size() < n) v.resize(n);
    return v;
}

void run_cascade(const GaussianCoeffs& c, double* data, std::size_t n, std::size_t lanes) {
    const double a1 = c.denominator[1];
    const double a2 = c.denominator[2];
    const double a3 = c.denominator[3];
    const double inv_gain = 1.0 / c.gain;
    const double g2 = c.gain * c.gain;

    // state rows: [0] left steady state, [1] right edge input, [2..4] right states
    auto& st = sized(tl_state, 5 * lanes);
    double* left = st.data();
    double* edge = left + lanes;
    double* right = edge + lanes;
    const double* last = data + (n - 1) * lanes;
    for (std::size_t l = 0; l < lanes; ++l) {
        left[l] = data[l] * inv_gain;
        edge[l] = last[l];
    }

    auto fwd_row = [&](std::ptrdiff_t i) -> const double* {
        return i < 0 ? left : data + static_cast<std::size_t>(i) * lanes;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const auto si = static_cast<std::ptrdiff_t>(i);
        double* row = data + i * lanes;
        const double* p1 = fwd_row(si - 1);
        const double* p2 = fwd_row(si - 2);
        const double* p3 = fwd_row(si - 3);
        for (std::size_t l = 0; l < lanes; ++l) {
            row[l] = row[l] - a1 * p1[l] - a2 * p2[l] - a3 * p3[l];
        }
    }

    const auto sn = static_cast<std::ptrdiff_t>(n);
    const double* w0 = fwd_row(sn - 1);
    const double* w1 = fwd_row(sn - 2);
    const double* w2 = fwd_row(sn - 3);
    for (std::size_t l = 0; l < lanes; ++l) {
        const double u = edge[l];
        const double ub = u * inv_gain;
        const double e0 = w0[l] - ub;
        const double e1 = w1[l] - ub;
        const double e2 = w2[l] - ub;
        for (std::size_t i = 0; i < 3; ++i) {
            right[i * lanes + l] = u + c.boundary[i][0] * e0 + c.boundary[i][1] * e1 + c.boundary[i][2] * e2;
        }
    }

    auto bwd_row = [&](std::size_t i) -> const double* {
        return i < n ? data + i * lanes : right + (i - n) * lanes;
    };
    for (std::size_t i = n; i-- > 0;) {
        double* row = data + i * lanes;
        const double* q1 = bwd_row(i + 1);
        const double* q2 = bwd_row(i + 2);
        const double* q3 = bwd_row(i + 3);
        for (std::size_t l = 0; l < lanes; ++l) {
            row[l] = g2 * row[l] - a1 * q1[l] - a2 * q2[l] - a3 * q3[l];
        }
    }
}

void run_parallel(const GaussianCoeffs& c, double* data, std::size_t n, std::size_t lanes) {
    const auto& d = c.denominator;
    const auto& nc = c.causal;
    const auto& ma = c.anticausal;
    const std::size_t total = n * lanes;

    auto& in = sized(tl_scratch_a, total);
    auto& anti = sized(tl_scratch_b, total);
    std::copy(data, data + total, in.begin());

    auto& st = sized(tl_state, 2 * lanes);
    double* left = st.data();
    double* right = left + lanes;
    const double* first = in.data();
    const double* last = in.data() + (n - 1) * lanes;
    for (std::size_t l = 0; l < lanes; ++l) {
        left[l] = first[l] * c.causal_dc;
        right[l] = last[l] * c.anticausal_dc;
    }

    const auto sn = static_cast<std::ptrdiff_t>(n);
    auto x_at = [&](std::ptrdiff_t i) -> const double* {
        return in.data() + static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, sn - 1)) * lanes;
    };
    auto yc_at = [&](std::ptrdiff_t i) -> const double* {
        return i < 0 ? left : data + static_cast<std::size_t>(i) * lanes;
    };
    for (std::ptrdiff_t i = 0; i < sn; ++i) {
        double* row = data + static_cast<std::size_t>(i) * lanes;
        const double *x0 = x_at(i), *x1 = x_at(i - 1), *x2 = x_at(i - 2), *x3 = x_at(i - 3);
        const double *y1 = yc_at(i - 1), *y2 = yc_at(i - 2), *y3 = yc_at(i - 3), *y4 = yc_at(i - 4);
        for (std::size_t l = 0; l < lanes; ++l) {
            row[l] = nc[0] * x0[l] + nc[1] * x1[l] + nc[2] * x2[l] + nc[3] * x3[l] - d[1] * y1[l] -
                     d[2] * y2[l] - d[3] * y3[l] - d[4] * y4[l];
        }
    }

    auto ya_at = [&](std::ptrdiff_t i) -> const double* {
        return i >= sn ? right : anti.data() + static_cast<std::size_t>(i) * lanes;
    };
    for (std::ptrdiff_t i = sn - 1; i >= 0; --i) {
        double* row = anti.data() + static_cast<std::size_t>(i) * lanes;
        const double *x1 = x_at(i + 1), *x2 = x_at(i + 2), *x3 = x_at(i + 3), *x4 = x_at(i + 4);
        const double *y1 = ya_at(i + 1), *y2 = ya_at(i + 2), *y3 = ya_at(i + 3), *y4 = ya_at(i + 4);
        for (std::size_t l = 0; l < lanes; ++l) {
            row[l] = ma[0] * x1[l] + ma[1] * x2[l] + ma[2] * x3[l] + ma[3] * x4[l] - d[1] * y1[l] -
                     d[2] * y2[l] - d[3] * y3[l] - d[4] * y4[l];
        }
    }
    for (std::size_t k = 0; k < total; ++k) data[k] += anti[k];
}

void run_fir(const std::vector<double>& taps, double* data, std::size_t n, std::size_t lanes) {
    const std::size_t total = n * lanes;
    auto& in = sized(tl_scratch_a, total);
    std::copy(data, data + total, in.begin());
    const auto r = static_cast<std::ptrdiff_t>(taps.size() / 2);
    const auto sn = static_cast<std::ptrdiff_t>(n);
    for (std::ptrdiff_t i = 0; i < sn; ++i) {
        double* row = data + static_cast<std::size_t>(i) * lanes;
        const double* src = in.data() + static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i - r, 0, sn - 1)) * lanes;
        const double w = taps[0];
        for (std::size_t l = 0; l < lanes; ++l) row[l] = w * src[l];
        for (std::ptrdiff_t k = -r + 1; k <= r; ++k) {
            const double wk = taps[static_cast<std::size_t>(k + r)];
            const double* s = in.data() + static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i + k, 0, sn - 1)) * lanes;
            for (std::size_t l = 0; l < lanes; ++l) row[l] += wk * s[l];
        }
    }
}

void run_box(const Box& box, double* data, std::size_t n, std::size_t lanes) {
    const std::size_t total = n * lanes;
    auto& in = sized(tl_scratch_a, total);
    std::copy(data, data + total, in.begin());
    auto& sum = sized(tl_state, lanes);
    std::fill(sum.begin(), sum.begin() + static_cast<std::ptrdiff_t>(lanes), 0.0);
    const auto sn = static_cast<std::ptrdiff_t>(n);
    const auto before = static_cast<std::ptrdiff_t>(box.before);
    const auto after = static_cast<std::ptrdiff_t>(box.after);
    for (std::ptrdiff_t m = 0; m <= std::min(after, sn - 1); ++m) {
        const double* s = in.data() + static_cast<std::size_t>(m) * lanes;
        for (std::size_t l = 0; l < lanes; ++l) sum[l] += s[l];
    }
    for (std::ptrdiff_t i = 0; i < sn; ++i) {
        double* row = data + static_cast<std::size_t>(i) * lanes;
        std::copy(sum.begin(), sum.begin() + static_cast<std::ptrdiff_t>(lanes), row);
        const std::ptrdiff_t enter = i + 1 + after;
        const std::ptrdiff_t leave = i - before;
        if (enter < sn) {
            const double* s = in.data() + static_cast<std::size_t>(enter) * lanes;
            for (std::size_t l = 0; l < lanes; ++l) sum[l] += s[l];
        }
        if (leave >= 0) {
            const double* s = in.data() + static_cast<std::size_t>(leave) * lanes;
            for (std::size_t l = 0; l < lanes; ++l) sum[l] -= s[l];
        }
    }
}

}  // namespace

void validate(const SmootherKind& kind) {
    if (const auto* fir = std::get_if<ExactFir>(&kind)) {
        if (!(fir->radius >= 3.0) || !std::isfinite(fir->radius)) {
            throw std::invalid_argument("ExactFir truncation radius must be >= 3 sigma");
        }
    }
}

std::string describe(const SmootherKind& kind) {
    return std::visit(Overloaded{
                          [](const RecursiveIir&) { return std::string("iir"); },
                          [](const ExactFir& f) {
                              std::ostringstream os;
                              os << "fir(radius=" << f.radius << ")";
                              return os.str();
                          },
                          [](const Box& b) {
                              std::ostringstream os;
                              os << "box(" << b.before << "," << b.after << ")";
                              return os.str();
                          },
                      },
                      kind);
}

bool is_box(const SmootherKind& kind) noexcept { return std::holds_alternative<Box>(kind); }

GaussianCoeffs make_coeffs(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("sigma must be positive and finite");
    }
    if (sigma < kIirMinSigma) {
        throw std::invalid_argument("sigma below 0.5 is outside the recursive design range; use ExactFir");
    }
    GaussianCoeffs c;
    c.sigma = sigma;
    if (sigma >= kCascadeMinSigma) {
        c.design = IirDesign::young_van_vliet3;
        build_cascade(c);
    } else {
        c.design = IirDesign::deriche4;
        build_parallel(c);
    }

    // Unit DC gain check on a constant signal.
    std::vector<double> probe(64, 1.0);
    if (c.design == IirDesign::young_van_vliet3) {
        run_cascade(c, probe.data(), probe.size(), 1);
    } else {
        run_parallel(c, probe.data(), probe.size(), 1);
    }
    for (double v : probe) {
        if (!(std::abs(v - 1.0) <= 1e-6)) {
            throw std::logic_error("recursive Gaussian coefficients fail the unit DC gain check");
        }
    }
    return c;
}

std::vector<double> sampled_gaussian(double sigma, double radius) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    const auto r = static_cast<std::ptrdiff_t>(std::ceil(radius * sigma));
    std::vector<double> taps(static_cast<std::size_t>(2 * r + 1));
    double sum = 0.0;
    for (std::ptrdiff_t k = -r; k <= r; ++k) {
        const double v = std::exp(-0.5 * static_cast<double>(k * k) / (sigma * sigma));
        taps[static_cast<std::size_t>(k + r)] = v;
        sum += v;
    }
    for (double& v : taps) v /= sum;
    return taps;
}

Smoother::Smoother(const SmootherKind& kind, double sigma) : kind_(kind), sigma_(sigma) {
    validate(kind_);
    if (std::holds_alternative<RecursiveIir>(kind_)) {
        coeffs_ = make_coeffs(sigma);
        iir_ = true;
    } else if (const auto* fir = std::get_if<ExactFir>(&kind_)) {
        if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be positive and finite");
        taps_ = sampled_gaussian(sigma, fir->radius);
    }
}

OpCounters Smoother::line_cost(std::size_t n) const noexcept {
    OpCounters c;
    if (iir_) {
        if (coeffs_.design == IirDesign::young_van_vliet3) {
            // forward 3M 3A, backward 4M 3A; boundary 11M 12A
            c.multiplications = 7 * n + 11;
            c.additions = 6 * n + 12;
        } else {
            // causal 8M 7A, anticausal 8M 7A, merge 1A; boundary 2M
            c.multiplications = 16 * n + 2;
            c.additions = 15 * n;
        }
    } else if (!taps_.empty()) {
        c.multiplications = taps_.size() * n;
        c.additions = (taps_.size() - 1) * n;
    } else {
        c.additions = 2 * n;
    }
    return c;
}

void Smoother::smooth(std::span<const double> in, std::span<double> out, OpCounters& counters, Axis axis) const {
    if (in.empty()) throw std::invalid_argument("signal length must be >= 1");
    if (out.size() != in.size()) throw std::invalid_argument("output length must match input length");
    std::copy(in.begin(), in.end(), out.begin());
    smooth_lanes(out, in.size(), 1, counters, axis);
}

void Smoother::smooth_lanes(std::span<double> data, std::size_t n, std::size_t lanes, OpCounters& counters,
                            Axis axis) const {
    if (n == 0 || lanes == 0) throw std::invalid_argument("signal length must be >= 1");
    if (data.size() < n * lanes) throw std::invalid_argument("lane buffer too small");
    if (iir_) {
        if (coeffs_.design == IirDesign::young_van_vliet3) {
            run_cascade(coeffs_, data.data(), n, lanes);
        } else {
            run_parallel(coeffs_, data.data(), n, lanes);
        }
    } else if (!taps_.empty()) {
        run_fir(taps_, data.data(), n, lanes);
    } else {
        run_box(std::get<Box>(kind_), data.data(), n, lanes);
    }
    OpCounters cost = line_cost(n);
    counters.multiplications += cost.multiplications * lanes;
    counters.additions += cost.additions * lanes;
    (axis == Axis::rows ? counters.smoothings_h : counters.smoothings_v) += lanes;
}

std::vector<double> smooth_1d(std::span<const double> signal, const SmootherKind& kind, double sigma,
                              OpCounters& counters) {
    const Smoother smoother(kind, sigma);
    std::vector<double> out(signal.size());
    smoother.smooth(signal, out, counters);
    return out;
}

std::pair<std::vector<double>, std::vector<double>> smooth_pair_1d(std::span<const double> a,
                                                                   std::span<const double> b,
                                                                   const SmootherKind& kind,
                                                                   double sigma, OpCounters& counters) {
    if (a.size() != b.size()) throw std::invalid_argument("paired signals must have equal length");
    const Smoother smoother(kind, sigma);
    std::pair<std::vector<double>, std::vector<double>> out{std::vector<double>(a.size()),
                                                            std::vector<double>(b.size())};
    smoother.smooth(a, out.first, counters);
    smoother.smooth(b, out.second, counters);
    return out;
}

}  // namespace fastgabor
