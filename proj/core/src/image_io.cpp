#include "fastgabor/image_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

namespace fastgabor {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(IoErrc::unreadable, "cannot open " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError(IoErrc::unreadable, "cannot read " + path.string());
    return bytes;
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(IoErrc::write_failed, "cannot open " + path.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw IoError(IoErrc::write_failed, "cannot write " + path.string());
}

class HeaderReader {
public:
    explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

    std::size_t number(const char* what) {
        skip_space_and_comments();
        std::size_t value = 0;
        std::size_t digits = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            value = value * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
            if (value > std::numeric_limits<std::uint32_t>::max()) {
                throw IoError(IoErrc::malformed_header, std::string("PGM ") + what + " out of range");
            }
            ++pos_;
            ++digits;
        }
        if (digits == 0) throw IoError(IoErrc::malformed_header, std::string("PGM header: missing ") + what);
        return value;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_start() {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
            throw IoError(IoErrc::malformed_header, "PGM header: expected whitespace before raster");
        }
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view bytes_;
    std::size_t pos_ = 2;
};

}  // namespace

RealImage parse_pgm(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P') throw IoError(IoErrc::malformed_header, "not a PNM file");
    if (bytes[1] != '5') {
        if (bytes[1] >= '1' && bytes[1] <= '7') {
            throw IoError(IoErrc::unsupported_format, std::string("unsupported format P") + bytes[1]);
        }
        throw IoError(IoErrc::malformed_header, "not a PNM file");
    }
    HeaderReader header(bytes);
    const std::size_t w = header.number("width");
    const std::size_t h = header.number("height");
    const std::size_t maxval = header.number("maxval");
    if (w == 0 || h == 0) throw IoError(IoErrc::malformed_header, "PGM dimensions must be positive");
    if (maxval == 0 || maxval > 65535) throw IoError(IoErrc::malformed_header, "PGM maxval must be in 1..65535");
    const std::size_t start = header.raster_start();
    const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
    const std::size_t need = w * h * sample_bytes;
    if (bytes.size() - std::min(start, bytes.size()) < need) {
        throw IoError(IoErrc::unexpected_end, "unexpected end of data");
    }
    std::vector<double> data(w * h);
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + start);
    for (std::size_t i = 0; i < data.size(); ++i) {
        data[i] = sample_bytes == 1 ? p[i] : static_cast<double>((p[2 * i] << 8) | p[2 * i + 1]);
    }
    return RealImage(w, h, std::move(data));
}

RealImage load_grayscale(const std::filesystem::path& path) {
    try {
        return parse_pgm(read_file(path));
    } catch (const IoError& e) {
        if (e.code() == IoErrc::unreadable) throw;
        throw IoError(e.code(), path.string() + ": " + e.what());
    }
}

void write_pgm(const RealImage& img, const std::filesystem::path& path) {
    std::string bytes = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    for (double v : img.data()) {
        bytes.push_back(static_cast<char>(static_cast<unsigned char>(std::clamp(std::floor(v + 0.5), 0.0, 255.0))));
    }
    write_file(path, bytes);
}

std::vector<std::uint8_t> magnitude_pixels(const ComplexImage& img) {
    std::vector<double> mag(img.width() * img.height());
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::hypot(img.real()[i], img.imag()[i]);
    const double peak = mag.empty() ? 0.0 : *std::max_element(mag.begin(), mag.end());
    std::vector<std::uint8_t> out(mag.size(), 0);
    if (peak > 0.0) {
        for (std::size_t i = 0; i < mag.size(); ++i) {
            out[i] = static_cast<std::uint8_t>(std::min(255.0, std::floor(255.0 * mag[i] / peak + 0.5)));
        }
    }
    return out;
}

void write_magnitude(const ComplexImage& img, const std::filesystem::path& path) {
    const auto px = magnitude_pixels(img);
    std::string bytes = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    bytes.append(reinterpret_cast<const char*>(px.data()), px.size());
    write_file(path, bytes);
}

namespace {

template <class T>
void put(std::string& out, T value) {
    if constexpr (std::endian::native == std::endian::big) {
        auto raw = std::bit_cast<std::array<char, sizeof(T)>>(value);
        std::reverse(raw.begin(), raw.end());
        out.append(raw.data(), raw.size());
    } else {
        char raw[sizeof(T)];
        std::memcpy(raw, &value, sizeof(T));
        out.append(raw, sizeof(T));
    }
}

class Cursor {
public:
    explicit Cursor(std::string_view bytes) : bytes_(bytes) {}

    template <class T>
    T get() {
        if (bytes_.size() - pos_ < sizeof(T)) throw IoError(IoErrc::truncated, "truncated container");
        std::array<char, sizeof(T)> raw;
        std::memcpy(raw.data(), bytes_.data() + pos_, sizeof(T));
        if constexpr (std::endian::native == std::endian::big) std::reverse(raw.begin(), raw.end());
        pos_ += sizeof(T);
        return std::bit_cast<T>(raw);
    }

    void plane(std::span<double> out) {
        for (double& v : out) v = get<double>();
    }

    std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

constexpr std::string_view kMagic = "GBNK";

}  // namespace

std::string encode_container(const Container& c) {
    if (c.entries.empty()) throw std::invalid_argument("container needs at least one entry");
    const std::size_t w = c.entries.front().image.width();
    const std::size_t h = c.entries.front().image.height();
    for (const auto& e : c.entries) {
        if (e.image.width() != w || e.image.height() != h) {
            throw IoError(IoErrc::dimension_mismatch, "container entries differ in size");
        }
    }
    if (w > std::numeric_limits<std::uint32_t>::max() || h > std::numeric_limits<std::uint32_t>::max() ||
        c.entries.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw std::invalid_argument("container dimensions exceed 32 bits");
    }
    std::string out;
    out.reserve(20 + c.entries.size() * (24 + 16 * w * h));
    out.append(kMagic);
    put<std::uint32_t>(out, kContainerVersion | (c.sdft ? kSdftFlag : 0u));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(w));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(h));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(c.entries.size()));
    for (const auto& e : c.entries) {
        for (double p : e.params) put(out, p);
        for (double v : e.image.real()) put(out, v);
        for (double v : e.image.imag()) put(out, v);
    }
    return out;
}

Container decode_container(std::string_view bytes) {
    if (bytes.substr(0, kMagic.size()) != kMagic) throw IoError(IoErrc::bad_magic, "not a GBNK container");
    Cursor cur(bytes.substr(kMagic.size()));
    const auto version = cur.get<std::uint32_t>();
    const std::uint32_t flags = version & 0xff000000u;
    if ((version & 0x00ffffffu) != kContainerVersion || (flags != 0 && flags != kSdftFlag)) {
        throw IoError(IoErrc::version_mismatch, "unsupported GBNK version " + std::to_string(version));
    }
    const auto w = cur.get<std::uint32_t>();
    const auto h = cur.get<std::uint32_t>();
    const auto count = cur.get<std::uint32_t>();
    if (w == 0 || h == 0) throw IoError(IoErrc::dimension_mismatch, "container declares an empty image");
    if (count == 0) throw IoError(IoErrc::truncated, "container holds no entries");
    const std::size_t entry_bytes = 24 + 16 * static_cast<std::size_t>(w) * h;
    if (cur.remaining() / entry_bytes < count) throw IoError(IoErrc::truncated, "truncated container");
    Container c;
    c.sdft = flags == kSdftFlag;
    c.entries.resize(count);
    for (auto& e : c.entries) {
        for (double& p : e.params) p = cur.get<double>();
        e.image = ComplexImage(w, h);
        cur.plane(e.image.real());
        cur.plane(e.image.imag());
    }
    if (cur.remaining() != 0) throw IoError(IoErrc::trailing_data, "container has trailing bytes");
    return c;
}

void write_container(const Container& c, const std::filesystem::path& path) {
    write_file(path, encode_container(c));
}

Container read_container(const std::filesystem::path& path) {
    return decode_container(read_file(path));
}

void write_bank_container(std::span<const BankEntry> entries, const std::filesystem::path& path) {
    Container c;
    for (const auto& e : entries) c.entries.push_back({{e.params.omega, e.params.theta, e.params.sigma}, e.image});
    write_container(c, path);
}

std::vector<BankEntry> read_bank_container(const std::filesystem::path& path) {
    Container c = read_container(path);
    if (c.sdft) throw IoError(IoErrc::version_mismatch, "container holds localized DFT bins, not a filter bank");
    std::vector<BankEntry> out;
    out.reserve(c.entries.size());
    for (auto& e : c.entries) {
        GaborParams p;
        p.omega = e.params[0];
        p.theta = e.params[1];
        p.sigma = e.params[2];
        out.push_back({p, std::move(e.image)});
    }
    return out;
}

void write_sdft_container(const SdftOutput& out, const std::filesystem::path& path) {
    Container c;
    c.sdft = true;
    for (std::size_t v = 0; v < out.my; ++v) {
        for (std::size_t u = 0; u < out.mx; ++u) {
            c.entries.push_back({{static_cast<double>(u), static_cast<double>(v), out.sigma}, out.bin(u, v)});
        }
    }
    write_container(c, path);
}

SdftOutput read_sdft_container(const std::filesystem::path& path) {
    Container c = read_container(path);
    if (!c.sdft) throw IoError(IoErrc::version_mismatch, "container holds a filter bank, not localized DFT bins");
    SdftOutput out;
    for (const auto& e : c.entries) {
        for (int k = 0; k < 2; ++k) {
            const double idx = e.params[static_cast<std::size_t>(k)];
            if (!(idx >= 0.0 && idx < 65536.0) || idx != std::floor(idx)) {
                throw IoError(IoErrc::dimension_mismatch, "bin index is not a small non-negative integer");
            }
        }
        out.mx = std::max(out.mx, static_cast<std::size_t>(e.params[0]) + 1);
        out.my = std::max(out.my, static_cast<std::size_t>(e.params[1]) + 1);
    }
    if (out.mx * out.my != c.entries.size()) {
        throw IoError(IoErrc::dimension_mismatch, "bin indices do not form a full window");
    }
    out.sigma = c.entries.front().params[2];
    out.bins.resize(c.entries.size());
    for (auto& e : c.entries) {
        out.bin(static_cast<std::size_t>(e.params[0]), static_cast<std::size_t>(e.params[1])) = std::move(e.image);
    }
    return out;
}

}  // namespace fastgabor
