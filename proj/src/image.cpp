#include "eigedge/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eigedge/parallel.hpp"

namespace eigedge {

double Kernel::sum() const {
    double s = 0.0;
    for (double c : coeffs) s += c;
    return s;
}

namespace {

inline int clamp_coord(int v, int hi) {
    return v < 0 ? 0 : (v > hi ? hi : v);
}

} // namespace

Image convolve(const Image& src, const Kernel& k, Border border) {
    if (k.width > src.width || k.height > src.height) {
        throw std::invalid_argument("convolve: kernel larger than image");
    }
    const int w = src.width, h = src.height;
    const int kw = k.width, kh = k.height;
    const int ax = k.anchor_x, ay = k.anchor_y;

    Image out(w, h);
    // A pixel is interior when every sample lands in range; the interior
    // path skips the clamping but performs the identical arithmetic.
    const int x_lo = kw - 1 - ax, x_hi = w - 1 - ax;  // sample x in [x-(kw-1)+ax, x+ax]
    const int y_lo = kh - 1 - ay, y_hi = h - 1 - ay;

    auto rows = [&](size_t y_begin, size_t y_end) {
        for (size_t yi = y_begin; yi < y_end; ++yi) {
            const int y = static_cast<int>(yi);
            const bool y_in = y >= y_lo && y <= y_hi;
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                if (y_in && x >= x_lo && x <= x_hi) {
                    for (int ky = 0; ky < kh; ++ky) {
                        const double* row = &src.data[static_cast<size_t>(y - (ky - ay)) * w];
                        const double* kc = &k.coeffs[static_cast<size_t>(ky) * kw];
                        for (int kx = 0; kx < kw; ++kx) {
                            acc += kc[kx] * row[x - (kx - ax)];
                        }
                    }
                } else {
                    for (int ky = 0; ky < kh; ++ky) {
                        const int sy = y - (ky - ay);
                        const double* kc = &k.coeffs[static_cast<size_t>(ky) * kw];
                        for (int kx = 0; kx < kw; ++kx) {
                            const int sx = x - (kx - ax);
                            double v;
                            if (border == Border::replicate) {
                                v = src.at(clamp_coord(sx, w - 1), clamp_coord(sy, h - 1));
                            } else {
                                v = (sx >= 0 && sx < w && sy >= 0 && sy < h) ? src.at(sx, sy) : 0.0;
                            }
                            acc += kc[kx] * v;
                        }
                    }
                }
                out.at(x, y) = acc;
            }
        }
    };

    if (static_cast<long long>(w) * h * kw * kh >= (1 << 18)) {
        parallel_for(static_cast<size_t>(h), rows);
    } else {
        rows(0, static_cast<size_t>(h));
    }
    return out;
}

Image to_grayscale(const Image& r, const Image& g, const Image& b) {
    if (!r.same_size(g) || !r.same_size(b)) {
        throw std::invalid_argument("to_grayscale: channel dimensions differ");
    }
    Image out(r.width, r.height);
    for (size_t i = 0; i < out.size(); ++i) {
        double v = 0.299 * r.data[i] + 0.587 * g.data[i] + 0.114 * b.data[i];
        out.data[i] = std::clamp(v, 0.0, 1.0);
    }
    return out;
}

Image normalize(const Image& src) {
    Image out(src.width, src.height);
    if (src.data.empty()) return out;
    auto [lo_it, hi_it] = std::minmax_element(src.data.begin(), src.data.end());
    const double lo = *lo_it, hi = *hi_it;
    if (hi > lo) {
        const double scale = 1.0 / (hi - lo);
        for (size_t i = 0; i < src.size(); ++i) {
            out.data[i] = (src.data[i] - lo) * scale;
        }
    }
    return out;
}

double percentile_value(const Image& src, double percentile) {
    if (percentile < 0.0 || percentile > 1.0) {
        throw std::invalid_argument("percentile outside [0,1]");
    }
    if (src.data.empty()) {
        throw std::invalid_argument("percentile of an empty image");
    }
    std::vector<double> sorted(src.data);
    std::sort(sorted.begin(), sorted.end());
    const size_t n = sorted.size();
    size_t idx = static_cast<size_t>(std::floor(percentile * static_cast<double>(n)));
    if (idx >= n) idx = n - 1;
    return sorted[idx];
}

ThresholdResult threshold(const Image& src, double percentile) {
    ThresholdResult result;
    result.cutoff = percentile_value(src, percentile);
    result.image = src;
    for (double& v : result.image.data) {
        if (v < result.cutoff) v = 0.0;
    }
    return result;
}

} // namespace eigedge
