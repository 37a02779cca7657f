#include "fastgabor/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fastgabor {

namespace {

void require_same_shape(const ComplexImage& a, const ComplexImage& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("images differ in size");
}

std::span<const double> plane(const ComplexImage& img, Part part) {
    return part == Part::real ? img.real() : img.imag();
}

}  // namespace

double ser(const ComplexImage& approx, const ComplexImage& truth, Part part) {
    require_same_shape(approx, truth);
    const auto a = plane(approx, part);
    const auto t = plane(truth, part);
    double signal = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        signal += t[i] * t[i];
        const double d = a[i] - t[i];
        error += d * d;
    }
    if (error == 0.0) return std::numeric_limits<double>::infinity();
    if (signal == 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(signal / error);
}

double max_relative_error(const ComplexImage& approx, const ComplexImage& truth) {
    require_same_shape(approx, truth);
    double diff = 0.0;
    double scale = 0.0;
    for (Part part : {Part::real, Part::imag}) {
        const auto a = plane(approx, part);
        const auto t = plane(truth, part);
        for (std::size_t i = 0; i < t.size(); ++i) {
            diff = std::max(diff, std::abs(a[i] - t[i]));
            scale = std::max(scale, std::abs(t[i]));
        }
    }
    return scale > 0.0 ? diff / scale : diff;
}

std::string format_db(double db) {
    if (std::isinf(db)) return db > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", db);
    return buf;
}

std::string SerReport::to_key_value() const {
    std::ostringstream os;
    os << "image=" << image_id << '\n'
       << "params=" << params << '\n'
       << "ser_real=" << format_db(ser_real) << '\n'
       << "ser_imag=" << format_db(ser_imag) << '\n';
    return os.str();
}

SerReport make_ser_report(const ComplexImage& approx, const ComplexImage& truth, std::string params,
                          std::string image_id) {
    return {ser(approx, truth, Part::real), ser(approx, truth, Part::imag), std::move(params), std::move(image_id)};
}

PerPixelCounts per_pixel_counts(const OpCounters& counters, std::size_t width, std::size_t height) {
    if (width == 0 || height == 0) throw std::invalid_argument("per-pixel counts need a non-empty image");
    const double pixels = static_cast<double>(width) * static_cast<double>(height);
    return {static_cast<double>(counters.multiplications) / pixels, static_cast<double>(counters.additions) / pixels};
}

std::string counters_key_value(const OpCounters& counters, std::size_t width, std::size_t height) {
    const PerPixelCounts pp = per_pixel_counts(counters, width, height);
    char buf[64];
    std::ostringstream os;
    os << "multiplications=" << counters.multiplications << '\n'
       << "additions=" << counters.additions << '\n'
       << "smoothings_h=" << counters.smoothings_h << '\n'
       << "smoothings_v=" << counters.smoothings_v << '\n';
    std::snprintf(buf, sizeof buf, "%.6f", pp.multiplications);
    os << "per_pixel_multiplications=" << buf << '\n';
    std::snprintf(buf, sizeof buf, "%.6f", pp.additions);
    os << "per_pixel_additions=" << buf << '\n';
    return os.str();
}

namespace {

double r_squared(std::span<const double> y, std::span<const double> fitted) {
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
    double total = 0.0;
    double residual = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        total += (y[i] - mean) * (y[i] - mean);
        residual += (y[i] - fitted[i]) * (y[i] - fitted[i]);
    }
    if (total == 0.0) return residual == 0.0 ? 1.0 : 0.0;
    return 1.0 - residual / total;
}

}  // namespace

AffineFit fit_affine(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("affine fit needs matching samples, n >= 2");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("affine fit needs two distinct x values");
    AffineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    std::vector<double> fitted(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) fitted[i] = fit.slope * x[i] + fit.intercept;
    fit.r_squared = r_squared(y, fitted);
    return fit;
}

TwoTermFit fit_two_term(std::span<const double> x1, std::span<const double> x2, std::span<const double> y) {
    if (x1.size() != y.size() || x2.size() != y.size() || y.size() < 2) {
        throw std::invalid_argument("two-term fit needs matching samples, n >= 2");
    }
    double s11 = 0.0, s12 = 0.0, s22 = 0.0, s1y = 0.0, s2y = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        s11 += x1[i] * x1[i];
        s12 += x1[i] * x2[i];
        s22 += x2[i] * x2[i];
        s1y += x1[i] * y[i];
        s2y += x2[i] * y[i];
    }
    const double det = s11 * s22 - s12 * s12;
    if (std::abs(det) <= 1e-12 * s11 * s22) throw std::invalid_argument("two-term fit regressors are collinear");
    TwoTermFit fit;
    fit.a = (s1y * s22 - s2y * s12) / det;
    fit.b = (s2y * s11 - s1y * s12) / det;
    std::vector<double> fitted(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) fitted[i] = fit.a * x1[i] + fit.b * x2[i];
    fit.r_squared = r_squared(y, fitted);
    return fit;
}

std::string bench_csv_header() {
    return "section,param,runs,reuse_median_ms,noreuse_median_ms,speedup,reuse_rm,reuse_ra,noreuse_rm,noreuse_ra";
}

std::string to_csv_row(const BenchRow& row) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f", row.section.c_str(), row.param,
                  row.runs, row.reuse_ms, row.noreuse_ms, row.speedup, row.reuse.multiplications,
                  row.reuse.additions, row.noreuse.multiplications, row.noreuse.additions);
    return buf;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

template <class T>
bool parse_number(std::string_view s, T& out) {
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

}  // namespace

BenchCheck check_bench_report(std::string_view csv) {
    BenchCheck check;
    std::vector<std::string_view> lines;
    for (auto line : split(csv, '\n')) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) {
        check.problems.emplace_back("empty report");
        return check;
    }
    if (lines.front() != bench_csv_header()) check.problems.emplace_back("unexpected header");
    const std::size_t columns = split(bench_csv_header(), ',').size();
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string where = "line " + std::to_string(i + 1) + ": ";
        const auto f = split(lines[i], ',');
        if (f.size() != columns) {
            check.problems.push_back(where + "expected " + std::to_string(columns) + " fields");
            continue;
        }
        BenchRow row;
        row.section = std::string(f[0]);
        double* reals[] = {&row.reuse_ms,
                           &row.noreuse_ms,
                           &row.speedup,
                           &row.reuse.multiplications,
                           &row.reuse.additions,
                           &row.noreuse.multiplications,
                           &row.noreuse.additions};
        bool numeric = parse_number(f[1], row.param) && parse_number(f[2], row.runs);
        for (std::size_t k = 0; k < 7; ++k) numeric = numeric && parse_number(f[3 + k], *reals[k]);
        if (!numeric) {
            check.problems.push_back(where + "non-numeric field");
            continue;
        }
        if (row.section != "bank" && row.section != "sdft") check.problems.push_back(where + "unknown section");
        if (row.runs < 5) check.problems.push_back(where + "fewer than 5 runs");
        if (!(row.reuse_ms > 0.0) || !(row.noreuse_ms > 0.0)) check.problems.push_back(where + "non-positive time");
        else if (std::abs(row.speedup - row.noreuse_ms / row.reuse_ms) > 1e-3 * row.speedup + 1e-6) {
            check.problems.push_back(where + "speedup does not match the medians");
        }
        check.rows.push_back(std::move(row));
    }
    if (check.rows.empty()) check.problems.emplace_back("no data rows");
    return check;
}

}  // namespace fastgabor
