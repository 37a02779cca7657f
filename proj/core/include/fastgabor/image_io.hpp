#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fastgabor/bank.hpp"
#include "fastgabor/image.hpp"
#include "fastgabor/sdft.hpp"

namespace fastgabor {

enum class IoErrc {
    unreadable = 1,
    malformed_header,
    unsupported_format,
    unexpected_end,
    write_failed,
    bad_magic,
    version_mismatch,
    truncated,
    trailing_data,
    dimension_mismatch,
};

class IoError : public std::runtime_error {
public:
    IoError(IoErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    IoErrc code() const noexcept { return code_; }

private:
    IoErrc code_;
};

/// Binary PGM (P5), maxval up to 65535 (two bytes, big-endian, above 255).
/// Samples keep their native range.
RealImage load_grayscale(const std::filesystem::path& path);
RealImage parse_pgm(std::string_view bytes);

/// 8-bit P5 writer; samples are rounded and clamped to [0, 255].
void write_pgm(const RealImage& img, const std::filesystem::path& path);

/// round(255 * |F| / max |F|), half up; all zeros when max |F| is 0.
std::vector<std::uint8_t> magnitude_pixels(const ComplexImage& img);
void write_magnitude(const ComplexImage& img, const std::filesystem::path& path);

/// GBNK container. Layout, little-endian: "GBNK", u32 version (1, with bit 24
/// set for localized DFT outputs), u32 W, u32 H, u32 count, then per entry
/// three f64 parameters followed by the W*H f64 real plane and the W*H f64
/// imaginary plane, row-major. Bank entries store (omega, theta, sigma);
/// localized DFT entries store (u, v, sigma).
inline constexpr std::uint32_t kContainerVersion = 1;
inline constexpr std::uint32_t kSdftFlag = 1u << 24;

struct ContainerEntry {
    std::array<double, 3> params{};
    ComplexImage image;

    bool operator==(const ContainerEntry&) const = default;
};

struct Container {
    bool sdft = false;
    std::vector<ContainerEntry> entries;

    bool operator==(const Container&) const = default;
};

std::string encode_container(const Container& c);
Container decode_container(std::string_view bytes);
void write_container(const Container& c, const std::filesystem::path& path);
Container read_container(const std::filesystem::path& path);

void write_bank_container(std::span<const BankEntry> entries, const std::filesystem::path& path);
std::vector<BankEntry> read_bank_container(const std::filesystem::path& path);

/// Bins in index order v * Mx + u.
void write_sdft_container(const SdftOutput& out, const std::filesystem::path& path);
SdftOutput read_sdft_container(const std::filesystem::path& path);

}  // namespace fastgabor
