#pragma once

#include <vector>

#include "eigedge/image.hpp"
#include "eigedge/sym_eigen.hpp"

namespace eigedge {

struct DictConfig {
    int patch_size = 4;                 // n, 2..8
    double threshold_percentile = 0.0;  // 0 = off
    Border border = Border::replicate;
};

/// Centered patch dictionary: column c holds one vectorized n x n tile with
/// the mean patch already removed, entries row-major [patch_dim][count].
struct PatchMatrix {
    int patch_dim = 0;  // n^2
    int count = 0;
    std::vector<double> entries;
    std::vector<double> patch_mean;  // the averaged patch, vectorized

    double& at(int row, int col) { return entries[static_cast<size_t>(row) * count + col]; }
    double at(int row, int col) const { return entries[static_cast<size_t>(row) * count + col]; }
};

/// n^2 eigenfilters of size n x n, ascending by eigenvalue. The vectorized
/// filters are orthonormal; the last one carries the largest eigenvalue
/// (the averaging-like filter).
struct EigenfilterBank {
    int n = 0;
    std::vector<Kernel> filters;
    std::vector<double> eigenvalues;
};

/// Ordered stack of same-size images at one pipeline stage.
struct EdgeStack {
    enum class Stage { filtered, centered, fused };

    Stage stage = Stage::filtered;
    std::vector<Image> layers;

    int depth() const { return static_cast<int>(layers.size()); }
};

/// Tiles the image into non-overlapping n x n patches (row-major scan,
/// row-major vectorization), cropping any bottom/right remainder. The
/// stored columns are centered on the mean patch.
PatchMatrix extract_patches(const Image& src, int n);

/// A A^T over the centered columns; exactly symmetric by construction.
SymMatrix covariance(const PatchMatrix& p);

/// extract_patches -> covariance -> jacobi_eigen, eigenvectors reshaped
/// row-major to n x n. Throws FeaturelessImageError when the covariance is
/// numerically zero (constant image).
EigenfilterBank build_filter_bank(const Image& src, const DictConfig& cfg);

/// Depth-n^2 stack, layer i = convolve(src, filter i, border).
EdgeStack apply_filter_bank(const Image& src, const EigenfilterBank& bank,
                            Border border = Border::replicate);

/// Subtracts the pixelwise mean layer (divisor = depth) from every layer.
EdgeStack center_stack(const EdgeStack& s);

/// Pixelwise max of each consecutive layer pair; output depth = depth - 1.
EdgeStack fuse_pairwise_max(const EdgeStack& s);

/// Full pipeline. The centered layers enter fusion as magnitudes, the
/// second-last fused layer is selected, min-max normalized, and optionally
/// percentile-thresholded.
Image detect_edges(const Image& src, const DictConfig& cfg);

} // namespace eigedge
