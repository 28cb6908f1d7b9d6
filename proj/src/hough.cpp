#include "eigedge/hough.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "eigedge/parallel.hpp"

namespace eigedge {

std::vector<std::pair<int, int>> circle_points(int r) {
    std::set<std::pair<int, int>> pts;
    int x = r, y = 0;
    int d = 1 - r;
    while (x >= y) {
        pts.insert({x, y});
        pts.insert({y, x});
        pts.insert({-x, y});
        pts.insert({-y, x});
        pts.insert({x, -y});
        pts.insert({y, -x});
        pts.insert({-x, -y});
        pts.insert({-y, -x});
        ++y;
        if (d < 0) {
            d += 2 * y + 1;
        } else {
            --x;
            d += 2 * (y - x) + 1;
        }
    }
    return {pts.begin(), pts.end()};
}

namespace {

void validate_config(const HoughConfig& cfg, const Image& edges) {
    if (cfg.r_min < 1 || cfg.r_min > cfg.r_max) {
        throw std::invalid_argument("hough: need 1 <= r_min <= r_max");
    }
    if (cfg.accumulator_threshold <= 0.0 || cfg.accumulator_threshold > 1.0 ||
        cfg.edge_binarize_percentile <= 0.0 || cfg.edge_binarize_percentile > 1.0) {
        throw std::invalid_argument("hough: thresholds must lie in (0,1]");
    }
    if (2 * cfg.r_max > std::min(edges.width, edges.height)) {
        throw std::invalid_argument("hough: radius range exceeds image half-extent");
    }
}

} // namespace

HoughAccumulator hough_accumulate(const Image& edges, const HoughConfig& cfg) {
    validate_config(cfg, edges);

    HoughAccumulator acc;
    acc.width = edges.width;
    acc.height = edges.height;
    acc.r_min = cfg.r_min;
    acc.r_max = cfg.r_max;
    const int nr = acc.radius_count();
    acc.votes.assign(static_cast<size_t>(nr) * acc.width * acc.height, 0);

    std::vector<std::vector<std::pair<int, int>>> offsets(nr);
    acc.circumference.resize(nr);
    for (int ri = 0; ri < nr; ++ri) {
        offsets[ri] = circle_points(cfg.r_min + ri);
        acc.circumference[ri] = static_cast<int>(offsets[ri].size());
    }

    const double cutoff = percentile_value(edges, cfg.edge_binarize_percentile);
    std::vector<std::pair<int, int>> pixels;
    for (int y = 0; y < edges.height; ++y) {
        for (int x = 0; x < edges.width; ++x) {
            const double v = edges.at(x, y);
            if (v >= cutoff && v > 0.0) pixels.emplace_back(x, y);
        }
    }

    auto vote_range = [&](std::vector<int>& votes, size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            const auto [x, y] = pixels[i];
            for (int ri = 0; ri < nr; ++ri) {
                int* plane = &votes[static_cast<size_t>(ri) * acc.width * acc.height];
                for (const auto& [dx, dy] : offsets[ri]) {
                    const int cx = x + dx, cy = y + dy;
                    if (cx >= 0 && cx < acc.width && cy >= 0 && cy < acc.height) {
                        ++plane[static_cast<size_t>(cy) * acc.width + cx];
                    }
                }
            }
        }
    };

    const int workers = thread_count();
    if (workers > 1 && pixels.size() >= 4096) {
        // Private integer accumulators merged by addition; the merge is
        // exact, so the result equals the sequential vote order.
        std::vector<std::vector<int>> partial(
            static_cast<size_t>(workers), std::vector<int>(acc.votes.size(), 0));
        const size_t step = (pixels.size() + workers - 1) / workers;
        parallel_for(static_cast<size_t>(workers), [&](size_t wb, size_t we) {
            for (size_t wi = wb; wi < we; ++wi) {
                const size_t begin = wi * step;
                const size_t end = std::min(pixels.size(), begin + step);
                if (begin < end) vote_range(partial[wi], begin, end);
            }
        });
        for (const auto& part : partial) {
            for (size_t i = 0; i < acc.votes.size(); ++i) acc.votes[i] += part[i];
        }
    } else {
        vote_range(acc.votes, 0, pixels.size());
    }
    return acc;
}

namespace {

// Offset of a parabola fit through (-1,a) (0,b) (1,c), clamped to [-0.5,0.5].
double parabolic_offset(double a, double b, double c) {
    const double denom = a - 2.0 * b + c;
    if (denom == 0.0) return 0.0;
    return std::clamp((a - c) / (2.0 * denom), -0.5, 0.5);
}

struct Candidate {
    int cx = 0, cy = 0, ri = 0;
    double score = 0.0;
    double fx = 0.0, fy = 0.0;  // refined center
};

} // namespace

std::vector<Circle> find_circles(const HoughAccumulator& acc, const HoughConfig& cfg) {
    const int nr = acc.radius_count();
    const int w = acc.width, h = acc.height;

    auto score = [&](int cx, int cy, int ri) -> double {
        if (cx < 0 || cx >= w || cy < 0 || cy >= h || ri < 0 || ri >= nr) return -1.0;
        return acc.score_at(cx, cy, ri);
    };

    std::vector<Candidate> cands;
    for (int ri = 0; ri < nr; ++ri) {
        for (int cy = 0; cy < h; ++cy) {
            for (int cx = 0; cx < w; ++cx) {
                const double s = acc.score_at(cx, cy, ri);
                if (s < cfg.accumulator_threshold) continue;
                bool is_max = true;
                for (int dr = -1; dr <= 1 && is_max; ++dr) {
                    for (int dy = -1; dy <= 1 && is_max; ++dy) {
                        for (int dx = -1; dx <= 1; ++dx) {
                            if (!dr && !dy && !dx) continue;
                            if (score(cx + dx, cy + dy, ri + dr) > s) {
                                is_max = false;
                                break;
                            }
                        }
                    }
                }
                if (!is_max) continue;
                Candidate c{cx, cy, ri, s, static_cast<double>(cx), static_cast<double>(cy)};
                if (cx > 0 && cx + 1 < w) {
                    c.fx += parabolic_offset(score(cx - 1, cy, ri), s, score(cx + 1, cy, ri));
                }
                if (cy > 0 && cy + 1 < h) {
                    c.fy += parabolic_offset(score(cx, cy - 1, ri), s, score(cx, cy + 1, ri));
                }
                cands.push_back(c);
            }
        }
    }

    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.cx != b.cx) return a.cx < b.cx;
        if (a.cy != b.cy) return a.cy < b.cy;
        return a.ri < b.ri;
    });

    std::vector<Circle> out;
    const double min_dist2 = cfg.min_center_distance * cfg.min_center_distance;
    for (const Candidate& c : cands) {
        bool keep = true;
        for (const Circle& acc_c : out) {
            const double dx = acc_c.cx - c.fx, dy = acc_c.cy - c.fy;
            if (dx * dx + dy * dy < min_dist2) {
                keep = false;
                break;
            }
        }
        if (keep) {
            out.push_back({c.fx, c.fy, acc.r_min + c.ri, std::min(1.0, c.score)});
        }
    }
    return out;
}

CellCountReport count_cells(const Image& edges, const HoughConfig& cfg) {
    const HoughAccumulator acc = hough_accumulate(edges, cfg);
    const std::vector<Circle> all = find_circles(acc, cfg);

    CellCountReport rep;
    for (const Circle& c : all) {
        const double r = c.r;
        const bool inside = c.cx - r >= 0.0 && c.cy - r >= 0.0 &&
                            c.cx + r <= edges.width - 1.0 && c.cy + r <= edges.height - 1.0;
        if (inside) {
            rep.circles.push_back(c);
        } else {
            ++rep.border_excluded;
        }
    }
    rep.count = static_cast<int>(rep.circles.size());
    if (rep.count > 0) {
        double sum = 0.0;
        for (const Circle& c : rep.circles) sum += c.r;
        rep.mean_radius = sum / rep.count;
        double var = 0.0;
        for (const Circle& c : rep.circles) {
            const double d = c.r - rep.mean_radius;
            var += d * d;
        }
        rep.radius_stddev = std::sqrt(var / rep.count);
    }
    return rep;
}

std::string report_to_text(const CellCountReport& rep) {
    std::ostringstream out;
    char line[128];
    out << "count: " << rep.count << "\n";
    std::snprintf(line, sizeof line, "mean_radius: %.4f\n", rep.mean_radius);
    out << line;
    std::snprintf(line, sizeof line, "radius_stddev: %.4f\n", rep.radius_stddev);
    out << line;
    out << "border_excluded: " << rep.border_excluded << "\n\n";
    out << "      cx        cy   r   score\n";
    for (const Circle& c : rep.circles) {
        std::snprintf(line, sizeof line, "%8.2f  %8.2f  %2d  %6.4f\n", c.cx, c.cy, c.r, c.score);
        out << line;
    }
    return out.str();
}

std::string report_to_records(const CellCountReport& rep) {
    std::ostringstream out;
    char line[128];
    std::snprintf(line, sizeof line, "count=%d mean_r=%.6f std_r=%.6f border_excluded=%d\n",
                  rep.count, rep.mean_radius, rep.radius_stddev, rep.border_excluded);
    out << line;
    for (const Circle& c : rep.circles) {
        std::snprintf(line, sizeof line, "%.4f,%.4f,%d,%.6f\n", c.cx, c.cy, c.r, c.score);
        out << line;
    }
    return out.str();
}

void draw_circles(Image& img, const std::vector<Circle>& circles, double value) {
    for (const Circle& c : circles) {
        const int cx = static_cast<int>(std::lround(c.cx));
        const int cy = static_cast<int>(std::lround(c.cy));
        for (const auto& [dx, dy] : circle_points(c.r)) {
            const int x = cx + dx, y = cy + dy;
            if (x >= 0 && x < img.width && y >= 0 && y < img.height) {
                img.at(x, y) = value;
            }
        }
    }
}

} // namespace eigedge
