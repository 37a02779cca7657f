#include "fastgabor/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fastgabor {

namespace {

void check_dims(std::size_t width, std::size_t height) {
    if (width == 0 || height == 0) {
        throw std::invalid_argument("image dimensions must be at least 1x1");
    }
}

}  // namespace

RealImage::RealImage(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height), data_(width * height, fill) {
    check_dims(width, height);
}

RealImage::RealImage(std::size_t width, std::size_t height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != width * height) {
        throw std::invalid_argument("image data length " + std::to_string(data_.size()) +
                                    " does not match " + std::to_string(width) + "x" +
                                    std::to_string(height));
    }
}

ComplexImage::ComplexImage(std::size_t width, std::size_t height)
    : width_(width), height_(height), re_(width * height, 0.0), im_(width * height, 0.0) {
    check_dims(width, height);
}

ComplexImage::ComplexImage(std::size_t width, std::size_t height, std::vector<double> re,
                           std::vector<double> im)
    : width_(width), height_(height), re_(std::move(re)), im_(std::move(im)) {
    check_dims(width, height);
    if (re_.size() != width * height || im_.size() != width * height) {
        throw std::invalid_argument("complex image planes do not match dimensions");
    }
}

bool all_finite(const RealImage& img) noexcept {
    return std::all_of(img.data().begin(), img.data().end(), [](double v) { return std::isfinite(v); });
}

bool all_finite(const ComplexImage& img) noexcept {
    auto finite = [](double v) { return std::isfinite(v); };
    return std::all_of(img.real().begin(), img.real().end(), finite) &&
           std::all_of(img.imag().begin(), img.imag().end(), finite);
}

RealImage transpose(const RealImage& img) {
    RealImage out(img.height(), img.width());
    for (std::size_t y = 0; y < img.height(); ++y) {
        for (std::size_t x = 0; x < img.width(); ++x) {
            out.at(y, x) = img.at(x, y);
        }
    }
    return out;
}

ComplexImage transpose(const ComplexImage& img) {
    ComplexImage out(img.height(), img.width());
    for (std::size_t y = 0; y < img.height(); ++y) {
        for (std::size_t x = 0; x < img.width(); ++x) {
            out.re(y, x) = img.re(x, y);
            out.im(y, x) = img.im(x, y);
        }
    }
    return out;
}

}  // namespace fastgabor
