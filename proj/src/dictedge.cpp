#include "eigedge/dictedge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eigedge/errors.hpp"

namespace eigedge {

PatchMatrix extract_patches(const Image& src, int n) {
    if (n < 2 || n > 8) {
        throw std::invalid_argument("extract_patches: patch size must be in [2,8]");
    }
    if (src.width < n || src.height < n) {
        throw std::invalid_argument("extract_patches: image smaller than one patch");
    }
    const int tiles_x = src.width / n;   // crop any remainder on the right/bottom
    const int tiles_y = src.height / n;

    PatchMatrix p;
    p.patch_dim = n * n;
    p.count = tiles_x * tiles_y;
    p.entries.resize(static_cast<size_t>(p.patch_dim) * p.count);

    int col = 0;
    for (int ty = 0; ty < tiles_y; ++ty) {
        for (int tx = 0; tx < tiles_x; ++tx, ++col) {
            for (int dy = 0; dy < n; ++dy) {
                for (int dx = 0; dx < n; ++dx) {
                    p.at(dy * n + dx, col) = src.at(tx * n + dx, ty * n + dy);
                }
            }
        }
    }

    p.patch_mean.assign(p.patch_dim, 0.0);
    for (int row = 0; row < p.patch_dim; ++row) {
        double s = 0.0;
        for (int c = 0; c < p.count; ++c) s += p.at(row, c);
        p.patch_mean[row] = s / p.count;
    }
    for (int row = 0; row < p.patch_dim; ++row) {
        const double mean = p.patch_mean[row];
        for (int c = 0; c < p.count; ++c) p.at(row, c) -= mean;
    }
    return p;
}

SymMatrix covariance(const PatchMatrix& p) {
    SymMatrix c(p.patch_dim);
    for (int i = 0; i < p.patch_dim; ++i) {
        const double* ri = &p.entries[static_cast<size_t>(i) * p.count];
        for (int j = i; j < p.patch_dim; ++j) {
            const double* rj = &p.entries[static_cast<size_t>(j) * p.count];
            double s = 0.0;
            for (int k = 0; k < p.count; ++k) s += ri[k] * rj[k];
            c.at(i, j) = s;
            c.at(j, i) = s;
        }
    }
    return c;
}

EigenfilterBank build_filter_bank(const Image& src, const DictConfig& cfg) {
    const int n = cfg.patch_size;
    const PatchMatrix patches = extract_patches(src, n);
    const SymMatrix cov = covariance(patches);
    const EigenDecomposition dec = jacobi_eigen(cov);

    // Centering a constant image leaves roundoff-sized residuals, so the
    // trace is compared against the natural energy scale of unit-range
    // patches rather than zero.
    const double scale = cov.trace();
    const double energy_floor =
        1e-12 * static_cast<double>(patches.count) * static_cast<double>(patches.patch_dim);
    if (scale <= energy_floor || dec.eigenvalues.back() < 1e-12 * scale) {
        throw FeaturelessImageError(
            "featureless image: patch covariance is numerically zero");
    }

    EigenfilterBank bank;
    bank.n = n;
    bank.eigenvalues = dec.eigenvalues;
    bank.filters.reserve(static_cast<size_t>(n) * n);
    for (int j = 0; j < n * n; ++j) {
        Kernel k(n, n);
        for (int i = 0; i < n * n; ++i) {
            k.coeffs[static_cast<size_t>(i)] = dec.eigenvectors[j][i];
        }
        bank.filters.push_back(std::move(k));
    }
    return bank;
}

EdgeStack apply_filter_bank(const Image& src, const EigenfilterBank& bank, Border border) {
    EdgeStack s;
    s.stage = EdgeStack::Stage::filtered;
    s.layers.reserve(bank.filters.size());
    for (const Kernel& k : bank.filters) {
        s.layers.push_back(convolve(src, k, border));
    }
    return s;
}

EdgeStack center_stack(const EdgeStack& s) {
    if (s.stage != EdgeStack::Stage::filtered) {
        throw std::invalid_argument("center_stack: expected a filtered stack");
    }
    if (s.layers.empty()) {
        throw std::invalid_argument("center_stack: empty stack");
    }
    const Image& first = s.layers.front();
    Image mean(first.width, first.height);
    for (const Image& layer : s.layers) {
        for (size_t i = 0; i < mean.size(); ++i) mean.data[i] += layer.data[i];
    }
    const double inv = 1.0 / static_cast<double>(s.layers.size());
    for (double& v : mean.data) v *= inv;

    EdgeStack out;
    out.stage = EdgeStack::Stage::centered;
    out.layers.reserve(s.layers.size());
    for (const Image& layer : s.layers) {
        Image d(first.width, first.height);
        for (size_t i = 0; i < d.size(); ++i) d.data[i] = layer.data[i] - mean.data[i];
        out.layers.push_back(std::move(d));
    }
    return out;
}

EdgeStack fuse_pairwise_max(const EdgeStack& s) {
    if (s.stage != EdgeStack::Stage::centered) {
        throw std::invalid_argument("fuse_pairwise_max: expected a centered stack");
    }
    if (s.depth() < 2) {
        throw std::invalid_argument("fuse_pairwise_max: need at least 2 layers");
    }
    EdgeStack out;
    out.stage = EdgeStack::Stage::fused;
    out.layers.reserve(s.layers.size() - 1);
    for (size_t l = 1; l < s.layers.size(); ++l) {
        const Image& a = s.layers[l - 1];
        const Image& b = s.layers[l];
        Image f(a.width, a.height);
        for (size_t i = 0; i < f.size(); ++i) {
            f.data[i] = std::max(a.data[i], b.data[i]);
        }
        out.layers.push_back(std::move(f));
    }
    return out;
}

Image detect_edges(const Image& src, const DictConfig& cfg) {
    const EigenfilterBank bank = build_filter_bank(src, cfg);
    const EdgeStack filtered = apply_filter_bank(src, bank, cfg.border);
    EdgeStack centered = center_stack(filtered);
    // Fuse response magnitudes: a filter answers an edge with opposite
    // polarity on opposite sides of an object, and the signed max would keep
    // only one of them.
    for (Image& layer : centered.layers) {
        for (double& v : layer.data) v = std::fabs(v);
    }
    const EdgeStack fused = fuse_pairwise_max(centered);

    Image result = normalize(fused.layers[static_cast<size_t>(fused.depth() - 2)]);
    if (cfg.threshold_percentile > 0.0) {
        result = threshold(result, cfg.threshold_percentile).image;
    }
    return result;
}

} // namespace eigedge
