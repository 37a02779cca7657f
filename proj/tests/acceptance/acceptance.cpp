// Acceptance suite: one PASS/FAIL line per criterion.
//
//   fastgabor_acceptance [--only N ...] [--data-dir DIR] [--bench-runs R]

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fastgabor/bank.hpp"
#include "fastgabor/image_io.hpp"
#include "fastgabor/metrics.hpp"
#include "fastgabor/oracle.hpp"
#include "fastgabor/sdft.hpp"
#include "fastgabor/tools/bench.hpp"
#include "fastgabor/tools/compare.hpp"

namespace fs = std::filesystem;
using namespace fastgabor;
using std::numbers::pi;

namespace {

struct Options {
    std::string data_dir = FASTGABOR_TEST_DATA_DIR;
    std::size_t bench_runs = 15;
};

struct Verdict {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

RealImage random_image(std::size_t w, std::size_t h, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> dist(0.0, 255.0);
    std::vector<double> data(w * h);
    for (double& v : data) v = dist(gen);
    return RealImage(w, h, std::move(data));
}

double worst_bank_error(const BankOutput& a, const BankOutput& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i) e = std::max(e, max_relative_error(a.entries[i].image, b.entries[i].image));
    return e;
}

std::vector<double> sampled_gaussian_ref(double sigma, std::size_t n, std::size_t c) {
    std::vector<double> g(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = static_cast<double>(i) - static_cast<double>(c);
        g[i] = std::exp(-d * d / (2.0 * sigma * sigma));
        sum += g[i];
    }
    for (double& v : g) v /= sum;
    return g;
}

Verdict criterion1(const Options&) {
    const auto t0 = Clock::now();
    std::mt19937_64 gen(1);
    const double omegas[] = {0.3, 0.8, 1.5};
    const double thetas[] = {0.0, pi / 5.0, pi / 2.0, 4.0 * pi / 5.0};
    const double sigmas[] = {1.0, 2.0, 3.0};
    double worst = 0.0;
    std::size_t cases = 0;
    for (int img = 0; img < 20; ++img) {
        const RealImage f = random_image(32, 32, gen);
        std::size_t combo = 0;
        for (double w : omegas) {
            for (double t : thetas) {
                const auto p = GaborParams::make(w, t, sigmas[combo++ % 3]);
                OpCounters c;
                worst = std::max(worst, max_relative_error(gabor_filter(f, p, ExactFir{}, c), oracle::fir_gabor(f, p)));
                ++cases;
            }
        }
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-10 && secs < 30.0,
            fmt("%zu cases, max relative error %.3g (limit 1e-10), %.1f s (limit 30 s)", cases, worst, secs)};
}

Verdict criterion2(const Options&) {
    std::mt19937_64 gen(2);
    double fir = 0.0, iir = 0.0;
    for (int img = 0; img < 3; ++img) {
        const RealImage f = random_image(32, 32, gen);
        for (std::size_t n : {4, 7, 8, 16}) {
            BankSpec spec;
            spec.frequencies = {0.5, 1.2};
            spec.orientations = n;
            spec.sigmas = {2.0, 1.5};
            OpCounters c;
            fir = std::max(fir, worst_bank_error(compute_bank(f, spec, ExactFir{}, c),
                                                 compute_bank_noreuse(f, spec, ExactFir{}, c)));
            spec.sigmas.clear();  // sigma = 2 pi / omega, cascade and fourth-order designs
            iir = std::max(iir, worst_bank_error(compute_bank(f, spec, RecursiveIir{}, c),
                                                 compute_bank_noreuse(f, spec, RecursiveIir{}, c)));
        }
    }
    return {fir <= 1e-10 && iir <= 1e-8,
            fmt("N in {4,7,8,16}: ExactFir %.3g (limit 1e-10), RecursiveIir %.3g (limit 1e-8)", fir, iir)};
}

Verdict criterion3(const Options&) {
    std::mt19937_64 gen(3);
    double oracle_err = 0.0, fill_err = 0.0;
    std::size_t filled = 0;
    for (int img = 0; img < 3; ++img) {
        const RealImage f = random_image(16, 16, gen);
        for (std::size_t m : {4, 8}) {
            for (const SmootherKind& kind : {SmootherKind{ExactFir{}}, SmootherKind{Box{}}}) {
                SdftSpec spec;
                spec.mx = spec.my = m;
                spec.smoother = kind;
                OpCounters c;
                const SdftOutput out = sdft_full(f, spec, c);
                for (std::size_t v = 0; v < m; ++v) {
                    for (std::size_t u = 0; u < m; ++u) {
                        oracle_err = std::max(oracle_err,
                                              max_relative_error(out.bin(u, v), oracle::localized_dft(f, u, v, spec)));
                        if (v > m / 2) {
                            OpCounters unused;
                            fill_err = std::max(fill_err, max_relative_error(out.bin(u, v), sdft_bin(f, u, v, spec, unused)));
                            ++filled;
                        }
                    }
                }
            }
        }
    }
    return {oracle_err <= 1e-10 && fill_err <= 1e-12 && filled > 0,
            fmt("M in {4,8}, ExactFir and Box: oracle %.3g (limit 1e-10); %zu filled bins vs direct %.3g (limit 1e-12)",
                oracle_err, filled, fill_err)};
}

Verdict criterion4(const Options&) {
    std::mt19937_64 gen(4);
    double worst = 0.0;
    for (int img = 0; img < 3; ++img) {
        const RealImage f = random_image(16, 16, gen);
        for (const auto& [mx, my] : {std::pair<std::size_t, std::size_t>{4, 4}, {8, 8}, {4, 8}, {8, 4}}) {
            SdftSpec spec;
            spec.mx = mx;
            spec.my = my;
            spec.smoother = Box{};
            OpCounters c;
            const SdftOutput out = sdft_full(f, spec, c);
            for (std::size_t v = 0; v < my; ++v) {
                for (std::size_t u = 0; u < mx; ++u) {
                    const ComplexImage ref = oracle::windowed_dft(f, u, v, mx, my);
                    double diff = 0.0, peak = 0.0;
                    // Interior: the whole window lies inside the image.
                    for (std::size_t y = my / 2; y + my - my / 2 <= f.height(); ++y) {
                        for (std::size_t x = mx / 2; x + mx - mx / 2 <= f.width(); ++x) {
                            diff = std::max({diff, std::abs(out.bin(u, v).re(x, y) - ref.re(x, y)),
                                             std::abs(out.bin(u, v).im(x, y) - ref.im(x, y))});
                            peak = std::max({peak, std::abs(ref.re(x, y)), std::abs(ref.im(x, y))});
                        }
                    }
                    worst = std::max(worst, peak > 0.0 ? diff / peak : diff);
                }
            }
        }
    }
    return {worst <= 1e-10, fmt("box windows 4x4, 8x8, 4x8, 8x4 at interior pixels: %.3g (limit 1e-10)", worst)};
}

Verdict criterion5(const Options& opt) {
    const char* names[] = {"camera", "brick", "gravel", "coins"};
    double min_imag = std::numeric_limits<double>::infinity();
    std::string worst_case;
    std::string dips;
    bool dip_everywhere = true;
    for (const char* name : names) {
        const RealImage f = tools::center_crop(load_grayscale(fs::path(opt.data_dir) / (std::string(name) + ".pgm")), 64);
        if (f.width() != 64 || f.height() != 64) return {false, std::string(name) + " is smaller than 64x64"};
        for (double omega : {0.5, 0.8}) {
            for (int k = 0; k < 8; ++k) {
                const auto p = GaborParams::make(omega, k * pi / 8.0, 2.0 * pi / omega);
                OpCounters c;
                const double s = ser(gabor_filter(f, p, RecursiveIir{}, c), oracle::fir_gabor(f, p), Part::imag);
                if (s < min_imag) {
                    min_imag = s;
                    worst_case = fmt("%s omega=%.1f theta=%d pi/8", name, omega, k);
                }
            }
        }
        tools::CompareConfig cfg;
        const auto points = tools::run_compare(f, cfg);
        double re = std::numeric_limits<double>::infinity(), im = re;
        for (const auto& pt : points) {
            re = std::min(re, pt.ser_real);
            im = std::min(im, pt.ser_imag);
        }
        dip_everywhere = dip_everywhere && re < im;
        dips += fmt(" %s %.1f/%.1f", name, re, im);
    }
    return {min_imag >= 20.0 && dip_everywhere,
            fmt("min imaginary SER %.2f dB at %s (limit 20 dB); sweep min real/imag dB:", min_imag, worst_case.c_str()) +
                dips + " (real below imag on every image)"};
}

Verdict criterion6(const Options&) {
    const RealImage f = tools::synthetic_image(64, 64, 6);
    std::vector<double> ns, rm, ra, nm, na;
    for (std::size_t n : {8, 14, 20, 26, 32}) {
        BankSpec spec;
        spec.frequencies = {0.5};
        spec.orientations = n;
        OpCounters cr, cn;
        (void)compute_bank(f, spec, RecursiveIir{}, cr);
        (void)compute_bank_noreuse(f, spec, RecursiveIir{}, cn);
        const auto pr = per_pixel_counts(cr, f.width(), f.height());
        const auto pn = per_pixel_counts(cn, f.width(), f.height());
        ns.push_back(static_cast<double>(n));
        rm.push_back(pr.multiplications);
        ra.push_back(pr.additions);
        nm.push_back(pn.multiplications);
        na.push_back(pn.additions);
    }
    const auto fm = fit_affine(ns, rm), fa = fit_affine(ns, ra), gm = fit_affine(ns, nm), ga = fit_affine(ns, na);
    const double affine_r2 = std::min({fm.r_squared, fa.r_squared, gm.r_squared, ga.r_squared});
    const bool bank_ok = affine_r2 >= 0.999 && fm.slope < gm.slope && fa.slope < ga.slope &&
                         std::abs(fm.slope - 30.0) <= 0.25 * 30.0 && std::abs(fa.slope - 22.0) <= 0.25 * 22.0;

    const RealImage g = tools::synthetic_image(64, 64, 7);
    std::vector<double> x1, x2, sm, sa;
    for (const auto& [mx, my] : {std::pair<std::size_t, std::size_t>{4, 4}, {8, 8}, {16, 16}, {4, 8}, {4, 16}, {8, 16}}) {
        SdftSpec spec;
        spec.mx = mx;
        spec.my = my;
        OpCounters c;
        (void)sdft_full(g, spec, c);
        const auto pp = per_pixel_counts(c, g.width(), g.height());
        x1.push_back(static_cast<double>(mx * my));
        x2.push_back(static_cast<double>(mx));
        sm.push_back(pp.multiplications);
        sa.push_back(pp.additions);
    }
    const auto tm = fit_two_term(x1, x2, sm), ta = fit_two_term(x1, x2, sa);
    const bool sdft_ok = tm.r_squared >= 0.999 && ta.r_squared >= 0.999;
    return {bank_ok && sdft_ok,
            fmt("bank reuse slopes R_M %.2f R_A %.2f (targets 30, 22 within 25%%), no-reuse %.2f %.2f, affine R^2 %.6f; "
                "localized DFT R_M = %.2f MxMy + %.2f Mx (R^2 %.6f), R_A = %.2f MxMy + %.2f Mx (R^2 %.6f), limit 0.999",
                fm.slope, fa.slope, gm.slope, ga.slope, affine_r2, tm.a, tm.b, tm.r_squared, ta.a, ta.b, ta.r_squared)};
}

Verdict criterion7(const Options& opt) {
    tools::BenchConfig cfg;
    cfg.runs = opt.bench_runs;
    const auto t0 = Clock::now();
    const auto rows = tools::run_bench(cfg, nullptr);
    const double secs = seconds_since(t0);
    std::string speedups;
    double n8 = 0.0;
    bool monotone = true;
    double prev = 0.0;
    for (const auto& r : rows) {
        if (r.section != "bank") continue;
        if (r.param == 8) n8 = r.speedup;
        if (r.speedup < prev) monotone = false;
        prev = r.speedup;
        speedups += fmt(" N=%zu:%.3f", r.param, r.speedup);
    }
    return {n8 >= 1.15 && monotone && secs < 300.0,
            fmt("1024x1024, %zu runs, median speedup", cfg.runs) + speedups +
                fmt(" (N=8 limit 1.15, non-decreasing %s), bench %.0f s (limit 300 s)", monotone ? "yes" : "no", secs)};
}

Verdict criterion8(const Options&) {
    double impulse_err = 0.0, dc_err = 0.0, lin_err = 0.0;
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int step = 0; step <= 36; ++step) {
        const double sigma = 1.0 + 0.25 * step;
        const Smoother s(RecursiveIir{}, sigma);
        const std::size_t n = 2 * static_cast<std::size_t>(std::ceil(12.0 * sigma)) + 1;
        std::vector<double> in(n, 0.0), out(n);
        in[n / 2] = 1.0;
        OpCounters c;
        s.smooth(in, out, c);
        const auto ref = sampled_gaussian_ref(sigma, n, n / 2);
        for (std::size_t i = 0; i < n; ++i) impulse_err = std::max(impulse_err, std::abs(out[i] - ref[i]));

        std::fill(in.begin(), in.end(), 1.0);
        s.smooth(in, out, c);
        for (double v : out) dc_err = std::max(dc_err, std::abs(v - 1.0));

        std::vector<double> a(n), b(n), mix(n), sa(n), sb(n), smix(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = dist(gen);
            b[i] = dist(gen);
            mix[i] = 1.75 * a[i] - 0.5 * b[i];
        }
        s.smooth(a, sa, c);
        s.smooth(b, sb, c);
        s.smooth(mix, smix, c);
        double peak = 0.0, diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double want = 1.75 * sa[i] - 0.5 * sb[i];
            diff = std::max(diff, std::abs(smix[i] - want));
            peak = std::max(peak, std::abs(want));
        }
        lin_err = std::max(lin_err, diff / peak);
    }
    return {impulse_err <= 1e-3 && dc_err <= 1e-6 && lin_err <= 1e-10,
            fmt("sigma 1..10 step 0.25: impulse %.3g (limit 1e-3), DC gain deviation %.3g (limit 1e-6), "
                "linearity %.3g (limit 1e-10)",
                impulse_err, dc_err, lin_err)};
}

Verdict criterion9(const Options&) {
    const RealImage f = tools::synthetic_image(64, 64, 9);
    OpCounters c;
    const BankOutput bank = compute_bank(f, BankSpec::fig1(), RecursiveIir{}, c);
    const fs::path dir = fs::temp_directory_path() / ("fastgabor_acceptance_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    const auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    };
    write_bank_container(bank.entries, dir / "a.gbnk");
    const auto back = read_bank_container(dir / "a.gbnk");
    write_bank_container(back, dir / "b.gbnk");
    const std::string a = slurp(dir / "a.gbnk");
    const std::string b = slurp(dir / "b.gbnk");
    bool same_entries = back.size() == bank.entries.size();
    for (std::size_t i = 0; same_entries && i < back.size(); ++i) {
        same_entries = back[i].params == bank.entries[i].params && back[i].image == bank.entries[i].image;
    }
    fs::remove_all(dir);
    return {bank.entries.size() == 40 && same_entries && !a.empty() && a == b,
            fmt("%zu entries, %zu bytes, rewrite byte-identical: %s, decoded entries identical: %s", bank.entries.size(),
                a.size(), a == b ? "yes" : "no", same_entries ? "yes" : "no")};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Verdict(const Options&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    std::vector<int> only;
    CLI::App app{"fastgabor acceptance suite"};
    app.add_option("--only", only, "Run only these criteria")->check(CLI::Range(1, 9));
    app.add_option("--data-dir", opt.data_dir, "Directory with camera, brick, gravel and coins PGMs")->capture_default_str();
    app.add_option("--bench-runs", opt.bench_runs, "Timed runs per point for the speedup criterion")
        ->check(CLI::Range(std::size_t{5}, std::size_t{1000}))
        ->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria = {
        {1, "exact decomposition", criterion1},  {2, "bank reuse equivalence", criterion2},
        {3, "localized DFT oracle", criterion3}, {4, "box window DFT", criterion4},
        {5, "recursive quality", criterion5},    {6, "complexity laws", criterion6},
        {7, "reuse speedup", criterion7},        {8, "Gaussian engine", criterion8},
        {9, "container round trip", criterion9},
    };
    const std::set<int> selected(only.begin(), only.end());
    int failed = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        Verdict v;
        try {
            v = c.run(opt);
        } catch (const std::exception& e) {
            v = {false, std::string("error: ") + e.what()};
        }
        std::cout << "criterion " << c.id << " (" << c.name << "): " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail
                  << std::endl;
        failed += v.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
