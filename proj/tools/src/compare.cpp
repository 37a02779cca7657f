#include "fastgabor/tools/compare.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fastgabor/detail/parallel.hpp"
#include "fastgabor/gabor.hpp"
#include "fastgabor/metrics.hpp"
#include "fastgabor/oracle.hpp"

namespace fastgabor::tools {

Sweep Sweep::defaults() {
    Sweep s;
    s.wavelengths = {3.5, 3.9, 4.4, 4.9, 5.5, 6.2, 7.0, 7.9, 8.8, 9.8, 13.0};
    for (int k = 1; k <= 9; ++k) s.degrees.push_back(18.0 * k);
    return s;
}

namespace {

std::vector<double> parse_numbers(std::string_view text, const char* what) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        std::string_view item = text.substr(start, comma - start);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
            throw std::invalid_argument(std::string("bad number in ") + what + " list: '" + std::string(item) + "'");
        }
        out.push_back(v);
        start = comma + 1;
    }
    return out;
}

}  // namespace

Sweep parse_sweep(std::string_view text) {
    if (text == "default") return Sweep::defaults();
    const std::size_t semi = text.find(';');
    if (semi == std::string_view::npos) throw std::invalid_argument("sweep must be 'default' or 'L1,L2,..;A1,A2,..'");
    Sweep s;
    s.wavelengths = parse_numbers(text.substr(0, semi), "wavelength");
    s.degrees = parse_numbers(text.substr(semi + 1), "angle");
    for (double l : s.wavelengths) {
        if (!(l > 0.0)) throw std::invalid_argument("sweep wavelengths must be positive");
    }
    return s;
}

std::vector<ComparePoint> run_compare(const RealImage& f, const CompareConfig& cfg) {
    if (cfg.sweep.wavelengths.empty() || cfg.sweep.degrees.empty()) throw std::invalid_argument("empty sweep");
    if (cfg.sigma && !(*cfg.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    validate(cfg.fast);

    std::vector<ComparePoint> points;
    for (double lambda : cfg.sweep.wavelengths) {
        for (double deg : cfg.sweep.degrees) {
            ComparePoint p;
            p.wavelength = lambda;
            p.omega = 2.0 * std::numbers::pi / lambda;
            p.degrees = deg;
            p.sigma = cfg.sigma.value_or(2.0 * std::numbers::pi / p.omega);
            points.push_back(p);
        }
    }
    // Validate every point before the expensive work starts.
    for (const auto& p : points) (void)GaborParams::make(p.omega, p.degrees * std::numbers::pi / 180.0, p.sigma);

    OpCounters unused;
    detail::parallel_for(points.size(), cfg.threads, unused, [&](std::size_t i, OpCounters& counters) {
        ComparePoint& p = points[i];
        const GaborParams params = GaborParams::make(p.omega, p.degrees * std::numbers::pi / 180.0, p.sigma);
        const ComplexImage control = gabor_filter(f, params, ExactFir{}, counters);
        const ComplexImage truth =
            cfg.reference == Reference::oracle ? oracle::fir_gabor(f, params) : control;
        const ComplexImage fast = gabor_filter(f, params, cfg.fast, counters);
        p.ser_real = ser(fast, truth, Part::real);
        p.ser_imag = ser(fast, truth, Part::imag);
        p.control_real = ser(control, truth, Part::real);
        p.control_imag = ser(control, truth, Part::imag);
    });
    return points;
}

std::string compare_csv_header() {
    return "wavelength,omega,theta_deg,sigma,ser_real,ser_imag,control_ser_real,control_ser_imag";
}

std::string to_csv_row(const ComparePoint& p) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.6g,%.9f,%.6g,%.9f,", p.wavelength, p.omega, p.degrees, p.sigma);
    return buf + format_db(p.ser_real) + "," + format_db(p.ser_imag) + "," + format_db(p.control_real) + "," +
           format_db(p.control_imag);
}

double min_control_ser(const std::vector<ComparePoint>& points) {
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& p : points) lowest = std::min({lowest, p.control_real, p.control_imag});
    return lowest;
}

RealImage center_crop(const RealImage& f, std::size_t size) {
    if (size == 0) throw std::invalid_argument("crop size must be positive");
    const std::size_t w = std::min(size, f.width());
    const std::size_t h = std::min(size, f.height());
    const std::size_t x0 = (f.width() - w) / 2;
    const std::size_t y0 = (f.height() - h) / 2;
    std::vector<double> data;
    data.reserve(w * h);
    for (std::size_t y = 0; y < h; ++y) {
        const auto row = f.row(y0 + y);
        data.insert(data.end(), row.begin() + static_cast<std::ptrdiff_t>(x0),
                    row.begin() + static_cast<std::ptrdiff_t>(x0 + w));
    }
    return RealImage(w, h, std::move(data));
}

}  // namespace fastgabor::tools
