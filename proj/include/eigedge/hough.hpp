#pragma once

#include <string>
#include <utility>
#include <vector>

#include "eigedge/image.hpp"

namespace eigedge {

struct HoughConfig {
    int r_min = 3;
    int r_max = 8;
    double accumulator_threshold = 0.4;   // fraction of a full circumference
    double min_center_distance = 3.0;     // defaults to r_min
    double edge_binarize_percentile = 0.9;
};

struct Circle {
    double cx = 0.0;
    double cy = 0.0;
    int r = 0;
    double score = 0.0;
};

struct CellCountReport {
    std::vector<Circle> circles;  // completely inside the image
    int count = 0;
    double mean_radius = 0.0;
    double radius_stddev = 0.0;   // population std-dev over the counted circles
    int border_excluded = 0;      // peaks whose disk crosses the image border
};

/// Integer vote array over (cx, cy, r). Scores are votes normalized by the
/// circumference point count, so an ideally rasterized circle scores 1.
struct HoughAccumulator {
    int width = 0;
    int height = 0;
    int r_min = 0;
    int r_max = 0;
    std::vector<int> votes;             // [r_index][cy][cx]
    std::vector<int> circumference;     // points per radius

    int radius_count() const { return r_max - r_min + 1; }
    int vote_at(int cx, int cy, int ri) const {
        return votes[(static_cast<size_t>(ri) * height + cy) * width + cx];
    }
    double score_at(int cx, int cy, int ri) const {
        return static_cast<double>(vote_at(cx, cy, ri)) / circumference[ri];
    }
};

/// Midpoint-circle offsets for radius r (8-way symmetric set).
std::vector<std::pair<int, int>> circle_points(int r);

/// Edge pixels at or above the binarization percentile (and strictly
/// positive) vote on every (center, r) at midpoint-circle distance r.
/// Throws std::invalid_argument when the radius range exceeds half the
/// image extent.
HoughAccumulator hough_accumulate(const Image& edges, const HoughConfig& cfg);

/// Local accumulator maxima at or above the score threshold, greedily
/// accepted in descending score (ties by (cx, cy, r)) with centers at
/// least min_center_distance apart. Centers are refined per axis by
/// 3-point parabolic interpolation before the distance test.
std::vector<Circle> find_circles(const HoughAccumulator& votes, const HoughConfig& cfg);

/// hough_accumulate + find_circles + border exclusion + radius statistics.
CellCountReport count_cells(const Image& edges, const HoughConfig& cfg);

/// Key/value summary plus a circle table.
std::string report_to_text(const CellCountReport& report);

/// "count=<n> mean_r=<x> std_r=<y> border_excluded=<m>" then one
/// "cx,cy,r,score" line per circle.
std::string report_to_records(const CellCountReport& report);

/// Draws midpoint-circle outlines (rounded centers) at the given value.
void draw_circles(Image& img, const std::vector<Circle>& circles, double value = 1.0);

} // namespace eigedge
