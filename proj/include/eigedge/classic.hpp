#pragma once

#include "eigedge/image.hpp"

namespace eigedge {

/// First-derivative responses plus magnitude G = sqrt(gx^2 + gy^2) and
/// direction atan2(gy, gx) in (-pi, pi].
struct GradientField {
    Image gx;
    Image gy;
    Image magnitude;
    Image direction;
};

struct CannyParams {
    double sigma = 1.4;
    double low = 0.1;   // fraction of max magnitude
    double high = 0.3;  // fraction of max magnitude
};

/// Gradient field from the standard 3x3 Sobel masks. src must be >= 3x3.
GradientField sobel(const Image& src);

/// As sobel but with the Prewitt masks (center weight 1).
GradientField prewitt(const Image& src);

/// Laplacian-of-Gaussian kernel sampled on an odd size x size grid and
/// mean-corrected so the coefficients sum to exactly zero.
Kernel log_kernel(double sigma, int size);

/// Zero-crossing edge map of the LoG response. A crossing is kept when the
/// response-slope across the pixel pair exceeds slope_floor_frac times the
/// maximum absolute response.
Image log_detect(const Image& src, double sigma, double slope_floor_frac = 0.01);

/// Convolution with a unit-sum sampled Gaussian, half-width ceil(3 sigma).
Image gaussian_smooth(const Image& src, double sigma);

/// Smoothing, Sobel gradient, 4-bin nonmaxima suppression, and
/// double-threshold hysteresis with 8-connectivity. Output is binary 0/1.
Image canny(const Image& src, const CannyParams& params);

/// Binary map of the top (1 - percentile) fraction of the normalized
/// magnitude; used to display Sobel/Prewitt results as edge figures.
Image binarize_magnitude(const Image& magnitude, double percentile);

} // namespace eigedge
