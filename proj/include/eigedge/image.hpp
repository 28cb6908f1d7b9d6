#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace eigedge {

/// 2-D grid of real-valued pixels, row-major, working range [0,1] after
/// load/normalize. Value-semantic; safe to share read-only across threads.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    Image() = default;
    Image(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

    double& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }

    size_t size() const { return data.size(); }
    bool same_size(const Image& o) const { return width == o.width && height == o.height; }
};

/// Small convolution mask. Side lengths may be even (the 4x4 eigenfilters);
/// the anchor marks the output-alignment cell and defaults to
/// (floor((w-1)/2), floor((h-1)/2)).
struct Kernel {
    int width = 0;
    int height = 0;
    int anchor_x = 0;
    int anchor_y = 0;
    std::vector<double> coeffs;

    Kernel() = default;
    Kernel(int w, int h)
        : width(w), height(h),
          anchor_x((w - 1) / 2), anchor_y((h - 1) / 2),
          coeffs(static_cast<size_t>(w) * h, 0.0) {}
    Kernel(int w, int h, std::vector<double> c)
        : width(w), height(h),
          anchor_x((w - 1) / 2), anchor_y((h - 1) / 2),
          coeffs(std::move(c)) {
        assert(coeffs.size() == static_cast<size_t>(w) * h);
    }

    double& at(int x, int y) { return coeffs[static_cast<size_t>(y) * width + x]; }
    double at(int x, int y) const { return coeffs[static_cast<size_t>(y) * width + x]; }

    double sum() const;
};

enum class Border { replicate, zero };

/// True convolution (kernel flipped), output the same size as src.
/// Out-of-range samples are clamped (replicate) or read as zero.
Image convolve(const Image& src, const Kernel& k, Border border = Border::replicate);

/// Luminance combination 0.299 r + 0.587 g + 0.114 b, clamped to [0,1].
Image to_grayscale(const Image& r, const Image& g, const Image& b);

/// Affine min-max map onto [0,1]; a constant image maps to all zeros.
Image normalize(const Image& src);

struct ThresholdResult {
    Image image;
    double cutoff = 0.0;
};

/// Value at the cumulative-histogram percentile p in [0,1]
/// (nearest rank: sorted[min(N-1, floor(p*N))]).
double percentile_value(const Image& src, double percentile);

/// Zeroes pixels strictly below the percentile cutoff, keeps the rest,
/// and reports the cutoff that was applied.
ThresholdResult threshold(const Image& src, double percentile);

} // namespace eigedge
