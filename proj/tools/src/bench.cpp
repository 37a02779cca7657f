#include "fastgabor/tools/bench.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "fastgabor/bank.hpp"
#include "fastgabor/sdft.hpp"

namespace fastgabor::tools {

void validate(const BenchConfig& cfg) {
    if (cfg.size == 0 || cfg.sdft_size == 0) throw std::invalid_argument("bench image size must be positive");
    if (cfg.runs < 1) throw std::invalid_argument("bench needs at least one run");
    if (cfg.orientations.empty() && cfg.windows.empty()) throw std::invalid_argument("nothing to benchmark");
    for (auto n : cfg.orientations) {
        if (n < 1) throw std::invalid_argument("orientation counts must be positive");
    }
    for (auto m : cfg.windows) {
        if (m < 2) throw std::invalid_argument("bench windows must be at least 2");
    }
    if (!(cfg.omega > 0.0)) throw std::invalid_argument("bench frequency must be positive");
}

RealImage synthetic_image(std::size_t width, std::size_t height, std::uint32_t seed) {
    std::mt19937 gen(seed);
    std::vector<double> data(width * height);
    for (double& v : data) v = static_cast<double>(gen() >> 8) * (255.0 / 16777215.0);
    return RealImage(width, height, std::move(data));
}

namespace {

using Clock = std::chrono::steady_clock;

// Output planes are several megabytes each. Keeping freed planes in the heap
// stops every run from paying for fresh page faults.
void retain_freed_memory() {
#if defined(__GLIBC__)
    mallopt(M_MMAP_THRESHOLD, 32 * 1024 * 1024);
    mallopt(M_TRIM_THRESHOLD, std::numeric_limits<int>::max());
#endif
}

template <class Fn>
double time_ms(Fn&& fn) {
    const auto start = Clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct Point {
    const char* section;
    std::size_t param;
    std::size_t w;
    std::size_t h;
    std::function<void(OpCounters&)> reuse;
    std::function<void(OpCounters&)> noreuse;
    std::vector<double> a;
    std::vector<double> b;
    OpCounters ca;
    OpCounters cb;
};

// Each run visits every point once, and the two schedules swap order from
// run to run, so slow drift in machine load spreads over all points.
std::vector<BenchRow> measure(std::vector<Point>& points, std::size_t runs, std::ostream* log) {
    for (std::size_t r = 0; r < runs; ++r) {
        for (auto& p : points) {
            OpCounters la;
            OpCounters lb;
            if (r % 2 == 0) {
                p.a.push_back(time_ms([&] { p.reuse(la); }));
                p.b.push_back(time_ms([&] { p.noreuse(lb); }));
            } else {
                p.b.push_back(time_ms([&] { p.noreuse(lb); }));
                p.a.push_back(time_ms([&] { p.reuse(la); }));
            }
            p.ca = la;
            p.cb = lb;
        }
        if (log) *log << "bench: run " << r + 1 << "/" << runs << " done\n";
    }
    std::vector<BenchRow> rows;
    for (auto& p : points) {
        BenchRow row;
        row.section = p.section;
        row.param = p.param;
        row.runs = runs;
        row.reuse_ms = median(p.a);
        row.noreuse_ms = median(p.b);
        row.speedup = row.noreuse_ms / row.reuse_ms;
        row.reuse = per_pixel_counts(p.ca, p.w, p.h);
        row.noreuse = per_pixel_counts(p.cb, p.w, p.h);
        if (log) *log << "bench: " << row.section << " " << row.param << " speedup=" << row.speedup << '\n';
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& cfg, std::ostream* log) {
    validate(cfg);
    retain_freed_memory();
    const RealImage bank_image = synthetic_image(cfg.size, cfg.size, cfg.seed);
    const RealImage sdft_image = synthetic_image(cfg.sdft_size, cfg.sdft_size, cfg.seed + 1);
    std::vector<Point> points;
    for (std::size_t n : cfg.orientations) {
        BankSpec spec;
        spec.frequencies = {cfg.omega};
        spec.orientations = n;
        const RealImage& f = bank_image;
        points.push_back({"bank", n, f.width(), f.height(),
                          [&f, spec, &cfg](OpCounters& c) { (void)compute_bank(f, spec, RecursiveIir{}, c, cfg.threads); },
                          [&f, spec, &cfg](OpCounters& c) {
                              (void)compute_bank_noreuse(f, spec, RecursiveIir{}, c, cfg.threads);
                          },
                          {}, {}, {}, {}});
    }
    for (std::size_t m : cfg.windows) {
        SdftSpec spec;
        spec.mx = m;
        spec.my = m;
        const RealImage& f = sdft_image;
        points.push_back({"sdft", m, f.width(), f.height(),
                          [&f, spec, &cfg](OpCounters& c) { (void)sdft_full(f, spec, c, cfg.threads); },
                          [&f, spec, &cfg](OpCounters& c) { (void)sdft_full_noreuse(f, spec, c, cfg.threads); },
                          {}, {}, {}, {}});
    }
    return measure(points, cfg.runs, log);
}

}  // namespace fastgabor::tools
