#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace fastgabor {

/// Row-major grid of real samples.
class RealImage {
public:
    RealImage() = default;
    RealImage(std::size_t width, std::size_t height, double fill = 0.0);
    RealImage(std::size_t width, std::size_t height, std::vector<double> data);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& at(std::size_t x, std::size_t y) { return data_[y * width_ + x]; }
    double at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }

    std::span<double> row(std::size_t y) { return {data_.data() + y * width_, width_}; }
    std::span<const double> row(std::size_t y) const { return {data_.data() + y * width_, width_}; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    bool operator==(const RealImage&) const = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<double> data_;
};

/// Complex image stored as two planar row-major planes.
class ComplexImage {
public:
    ComplexImage() = default;
    ComplexImage(std::size_t width, std::size_t height);
    ComplexImage(std::size_t width, std::size_t height, std::vector<double> re, std::vector<double> im);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return re_.size(); }
    bool empty() const noexcept { return re_.empty(); }

    double& re(std::size_t x, std::size_t y) { return re_[y * width_ + x]; }
    double re(std::size_t x, std::size_t y) const { return re_[y * width_ + x]; }
    double& im(std::size_t x, std::size_t y) { return im_[y * width_ + x]; }
    double im(std::size_t x, std::size_t y) const { return im_[y * width_ + x]; }

    std::span<double> real() noexcept { return re_; }
    std::span<const double> real() const noexcept { return re_; }
    std::span<double> imag() noexcept { return im_; }
    std::span<const double> imag() const noexcept { return im_; }

    bool same_shape(const ComplexImage& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    bool operator==(const ComplexImage&) const = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<double> re_;
    std::vector<double> im_;
};

/// True when every sample is finite.
bool all_finite(const RealImage& img) noexcept;
bool all_finite(const ComplexImage& img) noexcept;

RealImage transpose(const RealImage& img);
ComplexImage transpose(const ComplexImage& img);

}  // namespace fastgabor
