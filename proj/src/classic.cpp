#include "eigedge/classic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>

namespace eigedge {

namespace {

GradientField gradient_from_masks(const Image& src, const Kernel& kx, const Kernel& ky) {
    if (src.width < 3 || src.height < 3) {
        throw std::invalid_argument("gradient: image smaller than 3x3");
    }
    GradientField f;
    f.gx = convolve(src, kx, Border::replicate);
    f.gy = convolve(src, ky, Border::replicate);
    f.magnitude = Image(src.width, src.height);
    f.direction = Image(src.width, src.height);
    for (size_t i = 0; i < src.size(); ++i) {
        const double gx = f.gx.data[i], gy = f.gy.data[i];
        f.magnitude.data[i] = std::sqrt(gx * gx + gy * gy);
        f.direction.data[i] = std::atan2(gy, gx);
    }
    return f;
}

// Neighbor offset along the quantized gradient direction, 4 bins over
// [0, pi).
std::pair<int, int> direction_offset(double theta) {
    double a = theta < 0 ? theta + std::numbers::pi : theta;
    if (a >= std::numbers::pi) a -= std::numbers::pi;
    constexpr double b = std::numbers::pi / 8.0;
    if (a < b || a >= 7.0 * b) return {1, 0};
    if (a < 3.0 * b) return {1, 1};
    if (a < 5.0 * b) return {0, 1};
    return {-1, 1};
}

} // namespace

GradientField sobel(const Image& src) {
    static const Kernel kx(3, 3, {-1, 0, 1, -2, 0, 2, -1, 0, 1});
    static const Kernel ky(3, 3, {-1, -2, -1, 0, 0, 0, 1, 2, 1});
    return gradient_from_masks(src, kx, ky);
}

GradientField prewitt(const Image& src) {
    static const Kernel kx(3, 3, {-1, 0, 1, -1, 0, 1, -1, 0, 1});
    static const Kernel ky(3, 3, {-1, -1, -1, 0, 0, 0, 1, 1, 1});
    return gradient_from_masks(src, kx, ky);
}

Kernel log_kernel(double sigma, int size) {
    if (sigma <= 0.0) throw std::invalid_argument("log_kernel: sigma must be positive");
    if (size % 2 == 0 || size < 1) throw std::invalid_argument("log_kernel: size must be odd");

    Kernel k(size, size);
    const int half = size / 2;
    const double s2 = sigma * sigma;
    const double norm = -1.0 / (std::numbers::pi * s2 * s2);
    for (int y = -half; y <= half; ++y) {
        for (int x = -half; x <= half; ++x) {
            const double r2 = static_cast<double>(x * x + y * y);
            k.at(x + half, y + half) = norm * (1.0 - r2 / (2.0 * s2)) * std::exp(-r2 / (2.0 * s2));
        }
    }
    const double mean = k.sum() / static_cast<double>(size * size);
    for (double& c : k.coeffs) c -= mean;
    return k;
}

Image log_detect(const Image& src, double sigma, double slope_floor_frac) {
    const int size = 2 * static_cast<int>(std::ceil(3.0 * sigma)) + 1;
    const Image resp = convolve(src, log_kernel(sigma, size), Border::replicate);

    double max_abs = 0.0;
    for (double v : resp.data) max_abs = std::max(max_abs, std::fabs(v));
    const double floor = slope_floor_frac * max_abs;

    Image out(src.width, src.height);
    if (max_abs == 0.0) return out;

    auto mark = [&](int x0, int y0, int x1, int y1) {
        const double a = resp.at(x0, y0), b = resp.at(x1, y1);
        if (a * b < 0.0 && std::fabs(a - b) >= floor) {
            if (std::fabs(a) <= std::fabs(b)) {
                out.at(x0, y0) = 1.0;
            } else {
                out.at(x1, y1) = 1.0;
            }
        }
    };
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < src.width; ++x) {
            if (x + 1 < src.width) mark(x, y, x + 1, y);
            if (y + 1 < src.height) mark(x, y, x, y + 1);
        }
    }
    return out;
}

Image gaussian_smooth(const Image& src, double sigma) {
    if (sigma <= 0.0) throw std::invalid_argument("gaussian_smooth: sigma must be positive");
    const int half = static_cast<int>(std::ceil(3.0 * sigma));
    const int size = 2 * half + 1;
    Kernel k(size, size);
    for (int y = -half; y <= half; ++y) {
        for (int x = -half; x <= half; ++x) {
            k.at(x + half, y + half) = std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
        }
    }
    const double total = k.sum();
    for (double& c : k.coeffs) c /= total;
    return convolve(src, k, Border::replicate);
}

Image canny(const Image& src, const CannyParams& params) {
    if (!(params.sigma > 0.0) || !(params.low > 0.0) || !(params.low < params.high) ||
        !(params.high <= 1.0)) {
        throw std::invalid_argument("canny: need sigma > 0 and 0 < low < high <= 1");
    }
    const GradientField f = sobel(gaussian_smooth(src, params.sigma));
    const int w = src.width, h = src.height;

    double max_mag = 0.0;
    for (double v : f.magnitude.data) max_mag = std::max(max_mag, v);
    Image out(w, h);
    if (max_mag == 0.0) return out;

    auto mag_at = [&](int x, int y) {
        return (x >= 0 && x < w && y >= 0 && y < h) ? f.magnitude.at(x, y) : 0.0;
    };

    // Nonmaxima suppression. The asymmetric tie rule (strict against the
    // backward neighbor, non-strict forward) keeps exactly one pixel of a
    // two-wide symmetric ridge.
    Image thin(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double m = f.magnitude.at(x, y);
            if (m <= 0.0) continue;
            const auto [dx, dy] = direction_offset(f.direction.at(x, y));
            if (m > mag_at(x - dx, y - dy) && m >= mag_at(x + dx, y + dy)) {
                thin.at(x, y) = m;
            }
        }
    }

    const double high = params.high * max_mag;
    const double low = params.low * max_mag;

    // Hysteresis: seed from strong pixels, grow through weak ones
    // (8-connectivity).
    std::deque<std::pair<int, int>> frontier;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (thin.at(x, y) >= high) {
                out.at(x, y) = 1.0;
                frontier.emplace_back(x, y);
            }
        }
    }
    while (!frontier.empty()) {
        const auto [x, y] = frontier.front();
        frontier.pop_front();
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                const int nx = x + dx, ny = y + dy;
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                if (out.at(nx, ny) == 0.0 && thin.at(nx, ny) >= low) {
                    out.at(nx, ny) = 1.0;
                    frontier.emplace_back(nx, ny);
                }
            }
        }
    }
    return out;
}

Image binarize_magnitude(const Image& magnitude, double percentile) {
    const Image norm = normalize(magnitude);
    const double cutoff = percentile_value(norm, percentile);
    Image out(norm.width, norm.height);
    for (size_t i = 0; i < norm.size(); ++i) {
        out.data[i] = (norm.data[i] >= cutoff && norm.data[i] > 0.0) ? 1.0 : 0.0;
    }
    return out;
}

} // namespace eigedge
