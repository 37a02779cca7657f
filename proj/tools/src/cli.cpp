#include "fastgabor/tools/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fastgabor/bank.hpp"
#include "fastgabor/image_io.hpp"
#include "fastgabor/metrics.hpp"
#include "fastgabor/sdft.hpp"
#include "fastgabor/tools/bench.hpp"
#include "fastgabor/tools/compare.hpp"

namespace fastgabor::tools {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class T>
T parse_number(std::string_view text, const char* what) {
    T v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw UsageError(std::string("invalid ") + what + ": '" + std::string(text) + "'");
    }
    return v;
}

template <class T>
std::vector<T> parse_list(std::string_view text, const char* what) {
    std::vector<T> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        out.push_back(parse_number<T>(text.substr(start, comma - start), what));
        start = comma + 1;
    }
    return out;
}

std::optional<double> parse_sigma(const std::string& text) {
    if (text == "rule") return std::nullopt;
    const double s = parse_number<double>(text, "sigma");
    if (!(s > 0.0) || !std::isfinite(s)) throw UsageError("sigma must be positive");
    return s;
}

struct SmootherFlags {
    std::string name = "iir";
    std::size_t box_half_width = 0;
    bool box_half_width_set = false;
};

SmootherKind parse_smoother(const SmootherFlags& flags, bool window_box) {
    if (flags.name == "iir") return RecursiveIir{};
    if (flags.name == "fir") return ExactFir{};
    if (flags.name == "box") {
        if (window_box) return Box{};
        if (!flags.box_half_width_set) throw UsageError("--smoother box needs --box-half-width");
        return Box::symmetric(flags.box_half_width);
    }
    throw UsageError("unknown smoother '" + flags.name + "' (expected iir, fir or box)");
}

unsigned resolve_threads(unsigned threads) {
    return threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError(IoErrc::write_failed, "cannot open " + path + " for writing");
    file << text;
    if (!file) throw IoError(IoErrc::write_failed, "cannot write " + path);
}

fs::path prepare_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(IoErrc::write_failed, "cannot create " + dir + ": " + ec.message());
    return dir;
}

// Flag storage per subcommand; filled by CLI11, validated by the handlers.
struct BankFlags {
    std::string input;
    std::string output;
    std::string frequencies = "fig1";
    std::size_t orientations = 8;
    std::string sigma = "rule";
    SmootherFlags smoother;
    std::string magnitudes;
    unsigned threads = 1;
};

struct SdftFlags {
    std::string input;
    std::string output;
    std::string window = "8x8";
    std::string sigma = "rule";
    SmootherFlags smoother;
    std::string magnitudes;
    unsigned threads = 1;
};

struct CompareFlags {
    std::string input;
    std::string output = "-";
    std::string sweep = "default";
    std::string frequencies;
    std::string sigma = "rule";
    SmootherFlags smoother;
    std::string reference = "oracle";
    std::size_t crop = 0;
    bool force = false;
    unsigned threads = 1;
};

struct BenchFlags {
    std::string output = "-";
    std::size_t size = 1024;
    std::size_t sdft_size = 256;
    std::string orientations = "8,14,20,26,32";
    std::string windows = "4,8,16";
    std::size_t runs = 5;
    double frequency = 0.5;
    std::uint32_t seed = BenchConfig{}.seed;
    unsigned threads = 1;
};

struct CheckFlags {
    std::string input;
};

void add_smoother_flags(CLI::App* cmd, SmootherFlags& flags) {
    cmd->add_option("--smoother", flags.name, "Smoother: iir, fir or box")->capture_default_str();
    cmd->add_option_function<std::size_t>(
        "--box-half-width",
        [&flags](const std::size_t& hw) {
            flags.box_half_width = hw;
            flags.box_half_width_set = true;
        },
        "Half-width of the box smoother in samples");
}

int cmd_bank(const BankFlags& flags, std::ostream& out) {
    BankSpec spec;
    if (flags.frequencies == "fig1") {
        spec = BankSpec::fig1();
    } else {
        spec.frequencies = parse_list<double>(flags.frequencies, "frequency");
    }
    spec.orientations = flags.orientations;
    if (const auto s = parse_sigma(flags.sigma)) spec.sigmas.assign(spec.frequencies.size(), *s);
    const SmootherKind kind = parse_smoother(flags.smoother, false);
    validate(spec);
    validate(kind);

    const RealImage f = load_grayscale(flags.input);
    OpCounters counters;
    const BankOutput bank = compute_bank(f, spec, kind, counters, resolve_threads(flags.threads));
    write_bank_container(bank.entries, flags.output);
    if (!flags.magnitudes.empty()) {
        const fs::path dir = prepare_dir(flags.magnitudes);
        for (std::size_t i = 0; i < spec.frequencies.size(); ++i) {
            for (std::size_t k = 0; k < spec.orientations; ++k) {
                const std::string name = "bank_f" + std::to_string(i) + "_o" + std::to_string(k) + ".pgm";
                write_magnitude(bank.entries[i * spec.orientations + k].image, dir / name);
            }
        }
    }
    out << "entries=" << bank.entries.size() << '\n'
        << "width=" << f.width() << '\n'
        << "height=" << f.height() << '\n'
        << counters_key_value(counters, f.width(), f.height());
    return exit_ok;
}

int cmd_sdft(const SdftFlags& flags, std::ostream& out) {
    SdftSpec spec;
    std::tie(spec.my, spec.mx) = parse_window(flags.window.c_str());
    if (const auto s = parse_sigma(flags.sigma)) spec.sigma = *s;
    spec.smoother = parse_smoother(flags.smoother, true);
    validate(spec);

    const RealImage f = load_grayscale(flags.input);
    OpCounters counters;
    const SdftOutput bins = sdft_full(f, spec, counters, resolve_threads(flags.threads));
    write_sdft_container(bins, flags.output);
    if (!flags.magnitudes.empty()) {
        const fs::path dir = prepare_dir(flags.magnitudes);
        for (std::size_t v = 0; v < spec.my; ++v) {
            for (std::size_t u = 0; u < spec.mx; ++u) {
                const std::string name = "sdft_u" + std::to_string(u) + "_v" + std::to_string(v) + ".pgm";
                write_magnitude(bins.bin(u, v), dir / name);
            }
        }
    }
    out << "bins=" << bins.bins.size() << '\n'
        << "window=" << spec.my << 'x' << spec.mx << '\n'
        << "sigma=" << bins.sigma << '\n'
        << "width=" << f.width() << '\n'
        << "height=" << f.height() << '\n'
        << counters_key_value(counters, f.width(), f.height());
    return exit_ok;
}

int cmd_compare(const CompareFlags& flags, std::ostream& out, std::ostream& err) {
    CompareConfig cfg;
    cfg.sweep = parse_sweep(flags.sweep);
    if (!flags.frequencies.empty()) {
        cfg.sweep.wavelengths.clear();
        for (double w : parse_list<double>(flags.frequencies, "frequency")) {
            if (!(w > 0.0)) throw UsageError("frequencies must be positive");
            cfg.sweep.wavelengths.push_back(2.0 * std::numbers::pi / w);
        }
    }
    cfg.sigma = parse_sigma(flags.sigma);
    cfg.fast = parse_smoother(flags.smoother, false);
    validate(cfg.fast);
    if (flags.reference == "oracle") {
        cfg.reference = Reference::oracle;
    } else if (flags.reference == "fir") {
        cfg.reference = Reference::exact_fir;
    } else {
        throw UsageError("unknown reference '" + flags.reference + "' (expected oracle or fir)");
    }
    cfg.threads = resolve_threads(flags.threads);

    RealImage f = load_grayscale(flags.input);
    if (flags.crop > 0) f = center_crop(f, flags.crop);
    if (f.size() > kOracleMaxPixels && !flags.force) {
        throw GuardError("image has " + std::to_string(f.size()) + " pixels; the oracle limit is " +
                         std::to_string(kOracleMaxPixels) + " (use --crop or --force)");
    }
    const auto points = run_compare(f, cfg);
    std::string csv = compare_csv_header() + '\n';
    for (const auto& p : points) csv += to_csv_row(p) + '\n';
    write_text(flags.output, csv, out);
    const double control = min_control_ser(points);
    if (control < kControlMinDb) {
        err << "fastgabor: control column fell to " << format_db(control) << " dB (limit " << kControlMinDb
            << " dB)\n";
        return exit_guard;
    }
    return exit_ok;
}

int cmd_bench(const BenchFlags& flags, std::ostream& out, std::ostream& err) {
    BenchConfig cfg;
    cfg.size = flags.size;
    cfg.sdft_size = flags.sdft_size;
    cfg.orientations = flags.orientations.empty() ? std::vector<std::size_t>{}
                                                  : parse_list<std::size_t>(flags.orientations, "orientation count");
    cfg.windows = flags.windows.empty() ? std::vector<std::size_t>{} : parse_list<std::size_t>(flags.windows, "window");
    cfg.runs = flags.runs;
    cfg.omega = flags.frequency;
    cfg.seed = flags.seed;
    cfg.threads = resolve_threads(flags.threads);
    if (cfg.runs < 5) throw UsageError("bench needs at least 5 runs");
    validate(cfg);

    const auto rows = run_bench(cfg, &err);
    std::string csv = bench_csv_header() + '\n';
    for (const auto& r : rows) csv += to_csv_row(r) + '\n';
    write_text(flags.output, csv, out);
    return exit_ok;
}

int cmd_check(const CheckFlags& flags, std::ostream& out, std::ostream& err) {
    std::ifstream in(flags.input, std::ios::binary);
    if (!in) throw IoError(IoErrc::unreadable, "cannot open " + flags.input);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const BenchCheck check = check_bench_report(text);
    for (const auto& p : check.problems) err << "fastgabor: " << flags.input << ": " << p << '\n';
    out << "rows=" << check.rows.size() << '\n' << "valid=" << (check.ok() ? "true" : "false") << '\n';
    return check.ok() ? exit_ok : exit_usage;
}

}  // namespace

std::pair<std::size_t, std::size_t> parse_window(const char* text) {
    const std::string_view s(text);
    const std::size_t x = s.find('x');
    if (x == std::string_view::npos) {
        const auto m = parse_number<std::size_t>(s, "window");
        return {m, m};
    }
    return {parse_number<std::size_t>(s.substr(0, x), "window height"),
            parse_number<std::size_t>(s.substr(x + 1), "window width")};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Complex Gabor filter banks and localized sliding DFTs", "fastgabor"};
    app.require_subcommand(1);

    BankFlags bank;
    auto* bank_cmd = app.add_subcommand("bank", "Filter an image with a Gabor bank and write a GBNK container");
    bank_cmd->add_option("--input", bank.input, "Input PGM (P5)")->required();
    bank_cmd->add_option("--output", bank.output, "Output container")->required();
    bank_cmd->add_option("--frequencies", bank.frequencies, "Comma list of omega or 'fig1'")->capture_default_str();
    bank_cmd->add_option("--orientations", bank.orientations, "Orientations N")->capture_default_str();
    bank_cmd->add_option("--sigma", bank.sigma, "Gaussian scale or 'rule' (2 pi / omega)")->capture_default_str();
    add_smoother_flags(bank_cmd, bank.smoother);
    bank_cmd->add_option("--magnitudes", bank.magnitudes, "Directory for per-entry magnitude PGMs");
    bank_cmd->add_option("--threads", bank.threads, "Worker threads (0: all cores)")->capture_default_str();

    SdftFlags sdft;
    auto* sdft_cmd = app.add_subcommand("sdft", "Localized sliding DFT of an image");
    sdft_cmd->add_option("--input", sdft.input, "Input PGM (P5)")->required();
    sdft_cmd->add_option("--output", sdft.output, "Output container")->required();
    sdft_cmd->add_option("--window", sdft.window, "Window MxM or MyxMx")->capture_default_str();
    sdft_cmd->add_option("--sigma", sdft.sigma, "Gaussian scale or 'rule' (floor(M/2)/3)")->capture_default_str();
    add_smoother_flags(sdft_cmd, sdft.smoother);
    sdft_cmd->add_option("--magnitudes", sdft.magnitudes, "Directory for per-bin magnitude PGMs");
    sdft_cmd->add_option("--threads", sdft.threads, "Worker threads (0: all cores)")->capture_default_str();

    CompareFlags compare;
    auto* compare_cmd = app.add_subcommand("compare", "SER of the fast path against the brute-force oracle");
    compare_cmd->add_option("--input", compare.input, "Input PGM (P5)")->required();
    compare_cmd->add_option("--output", compare.output, "CSV path or '-'")->capture_default_str();
    compare_cmd->add_option("--sweep", compare.sweep, "'default' or 'L1,L2,..;A1,A2,..' (wavelengths; degrees)")
        ->capture_default_str();
    compare_cmd->add_option("--frequencies", compare.frequencies, "Comma list of omega replacing the wavelengths");
    compare_cmd->add_option("--sigma", compare.sigma, "Gaussian scale or 'rule'")->capture_default_str();
    add_smoother_flags(compare_cmd, compare.smoother);
    compare_cmd->add_option("--reference", compare.reference, "Reference: oracle or fir")->capture_default_str();
    compare_cmd->add_option("--crop", compare.crop, "Center crop size (0: whole image)")->capture_default_str();
    compare_cmd->add_flag("--force", compare.force, "Run the oracle on images above the size limit");
    compare_cmd->add_option("--threads", compare.threads, "Worker threads (0: all cores)")->capture_default_str();

    BenchFlags bench;
    auto* bench_cmd = app.add_subcommand("bench", "Time reuse against no-reuse schedules");
    bench_cmd->add_option("--output", bench.output, "CSV path or '-'")->capture_default_str();
    bench_cmd->add_option("--size", bench.size, "Bank image size")->capture_default_str();
    bench_cmd->add_option("--sdft-size", bench.sdft_size, "Localized DFT image size")->capture_default_str();
    bench_cmd->add_option("--orientations", bench.orientations, "Comma list of N (empty: skip)")
        ->capture_default_str();
    bench_cmd->add_option("--windows", bench.windows, "Comma list of M (empty: skip)")->capture_default_str();
    bench_cmd->add_option("--runs", bench.runs, "Timed runs per point (>= 5)")->capture_default_str();
    bench_cmd->add_option("--frequency", bench.frequency, "Bank frequency omega")->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed, "Synthetic image seed")->capture_default_str();
    bench_cmd->add_option("--threads", bench.threads, "Worker threads (0: all cores)")->capture_default_str();

    CheckFlags check;
    auto* check_cmd = app.add_subcommand("check-report", "Validate a bench CSV report");
    check_cmd->add_option("--input", check.input, "Report CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "fastgabor: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (bank_cmd->parsed()) return cmd_bank(bank, out);
        if (sdft_cmd->parsed()) return cmd_sdft(sdft, out);
        if (compare_cmd->parsed()) return cmd_compare(compare, out, err);
        if (bench_cmd->parsed()) return cmd_bench(bench, out, err);
        if (check_cmd->parsed()) return cmd_check(check, out, err);
    } catch (const GuardError& e) {
        err << "fastgabor: " << e.what() << '\n';
        return exit_guard;
    } catch (const std::exception& e) {
        err << "fastgabor: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace fastgabor::tools
