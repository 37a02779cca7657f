#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "fastgabor/image.hpp"

namespace testing {

inline fastgabor::RealImage random_image(std::size_t w, std::size_t h, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(0.0, 255.0);
    std::vector<double> data(w * h);
    for (double& v : data) v = dist(gen);
    return fastgabor::RealImage(w, h, std::move(data));
}

inline fastgabor::RealImage impulse(std::size_t w, std::size_t h, std::size_t x0, std::size_t y0) {
    fastgabor::RealImage f(w, h);
    f.at(x0, y0) = 1.0;
    return f;
}

// Sampled Gaussian on offsets -r..r, normalized to unit sum.
inline std::vector<double> gaussian_kernel(double sigma, std::size_t r) {
    std::vector<double> k(2 * r + 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        const double d = static_cast<double>(i) - static_cast<double>(r);
        k[i] = std::exp(-d * d / (2.0 * sigma * sigma));
        sum += k[i];
    }
    for (double& v : k) v /= sum;
    return k;
}

inline std::size_t fir_radius(double sigma, double radius = 6.0) {
    return static_cast<std::size_t>(std::ceil(radius * sigma));
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(const fastgabor::ComplexImage& img) {
    double m = 0.0;
    for (double v : img.real()) m = std::max(m, std::abs(v));
    for (double v : img.imag()) m = std::max(m, std::abs(v));
    return m;
}

class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("fastgabor_test_" + std::to_string(std::random_device{}()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace testing
