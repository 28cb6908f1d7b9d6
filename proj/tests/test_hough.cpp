#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "eigedge/hough.hpp"
#include "eigedge/image.hpp"
#include "test_support.hpp"

using namespace eigedge;
using testsupport::draw_circle_parametric;
using testsupport::place_circles;
using testsupport::PlacedCircle;

namespace {

void draw_midpoint(Image& img, int cx, int cy, int r) {
    for (const auto [dx, dy] : circle_points(r)) {
        const int x = cx + dx, y = cy + dy;
        if (x >= 0 && x < img.width && y >= 0 && y < img.height) img.at(x, y) = 1.0;
    }
}

} // namespace

TEST_CASE("circle_points: 8-way symmetric ring at roughly the right distance") {
    for (int r = 3; r <= 8; ++r) {
        const auto pts = circle_points(r);
        CHECK(pts.size() >= static_cast<size_t>(4 * r));
        for (const auto [dx, dy] : pts) {
            const double d = std::sqrt(static_cast<double>(dx * dx + dy * dy));
            CHECK(d >= r - 1.0);
            CHECK(d <= r + 1.0);
        }
        for (const auto [dx, dy] : pts) {
            CHECK(std::binary_search(pts.begin(), pts.end(), std::make_pair(-dx, -dy)));
            CHECK(std::binary_search(pts.begin(), pts.end(), std::make_pair(dy, dx)));
        }
    }
}

TEST_CASE("hough_accumulate: empty edge image gives an all-zero accumulator") {
    const HoughAccumulator acc = hough_accumulate(Image(48, 48), HoughConfig{});
    for (int v : acc.votes) CHECK(v == 0);
}

TEST_CASE("hough_accumulate: ideal circle peaks at its parameters with score near 1") {
    Image edges(48, 48);
    draw_circle_parametric(edges, 20, 20, 5);
    const HoughAccumulator acc = hough_accumulate(edges, HoughConfig{});

    double best = -1.0;
    int bx = -1, by = -1, br = -1;
    for (int ri = 0; ri < acc.radius_count(); ++ri) {
        for (int cy = 0; cy < acc.height; ++cy) {
            for (int cx = 0; cx < acc.width; ++cx) {
                const double s = acc.score_at(cx, cy, ri);
                if (s > best) {
                    best = s;
                    bx = cx;
                    by = cy;
                    br = acc.r_min + ri;
                }
            }
        }
    }
    CHECK(bx == 20);
    CHECK(by == 20);
    CHECK(br == 5);
    CHECK(best >= 0.9);
}

TEST_CASE("hough_accumulate: two disjoint circles produce two detections") {
    Image edges(64, 64);
    draw_circle_parametric(edges, 15, 15, 4);
    draw_circle_parametric(edges, 40, 38, 6);
    const auto circles = find_circles(hough_accumulate(edges, HoughConfig{}), HoughConfig{});
    REQUIRE(circles.size() == 2);
    bool saw4 = false, saw6 = false;
    for (const Circle& c : circles) {
        if (c.r == 4 && std::hypot(c.cx - 15, c.cy - 15) <= 1.0) saw4 = true;
        if (c.r == 6 && std::hypot(c.cx - 40, c.cy - 38) <= 1.0) saw6 = true;
    }
    CHECK(saw4);
    CHECK(saw6);
}

TEST_CASE("hough_accumulate rejects a radius range beyond the half extent") {
    HoughConfig cfg;
    cfg.r_max = 33;
    CHECK_THROWS_AS(hough_accumulate(Image(64, 64), cfg), std::invalid_argument);
    cfg.r_max = 8;
    cfg.r_min = 0;
    CHECK_THROWS_AS(hough_accumulate(Image(64, 64), cfg), std::invalid_argument);
}

TEST_CASE("find_circles: zero votes give an empty list") {
    HoughAccumulator acc;
    acc.width = 16;
    acc.height = 16;
    acc.r_min = 3;
    acc.r_max = 4;
    acc.votes.assign(16 * 16 * 2, 0);
    acc.circumference = {16, 24};
    CHECK(find_circles(acc, HoughConfig{}).empty());
}

TEST_CASE("find_circles: close peaks are suppressed, equal peaks sort lexicographically") {
    HoughAccumulator acc;
    acc.width = 24;
    acc.height = 24;
    acc.r_min = 3;
    acc.r_max = 3;
    acc.votes.assign(24 * 24, 0);
    acc.circumference = {16};
    auto vote = [&](int x, int y, int v) { acc.votes[static_cast<size_t>(y) * 24 + x] = v; };

    // Two peaks 2.83 px apart (below the default min distance 3): the
    // stronger one wins. A third equal-strength peak far away also stays.
    vote(5, 5, 16);
    vote(7, 7, 12);
    vote(15, 15, 16);
    const auto circles = find_circles(acc, HoughConfig{});
    REQUIRE(circles.size() == 2);
    CHECK(circles[0].cx == doctest::Approx(5.0).epsilon(0.1));
    CHECK(circles[0].cy == doctest::Approx(5.0).epsilon(0.1));
    CHECK(circles[1].cx == doctest::Approx(15.0).epsilon(0.1));
    CHECK(circles[0].score == doctest::Approx(1.0));
    CHECK(circles[0].r == 3);
}

TEST_CASE("count_cells: blank image counts zero") {
    const CellCountReport rep = count_cells(Image(64, 64), HoughConfig{});
    CHECK(rep.count == 0);
    CHECK(rep.circles.empty());
    CHECK(rep.mean_radius == 0.0);
}

TEST_CASE("count_cells: synthetic 30-circle field is counted exactly") {
    Image edges(256, 256);
    const auto placed = place_circles(256, 256, 30, 3, 8, /*seed=*/2024);
    REQUIRE(placed.size() == 30);
    for (const PlacedCircle& p : placed) draw_midpoint(edges, p.cx, p.cy, p.r);

    const CellCountReport rep = count_cells(edges, HoughConfig{});
    CHECK(rep.count == 30);
    CHECK(rep.border_excluded == 0);
    for (const PlacedCircle& p : placed) {
        bool found = false;
        for (const Circle& c : rep.circles) {
            if (c.r == p.r && std::hypot(c.cx - p.cx, c.cy - p.cy) <= 1.0) {
                found = true;
                break;
            }
        }
        CHECK(found);
    }

    double mean = 0.0;
    for (const PlacedCircle& p : placed) mean += p.r;
    mean /= placed.size();
    CHECK(rep.mean_radius == doctest::Approx(mean).epsilon(1e-12));
}

TEST_CASE("count_cells: circles crossing the border are excluded but reported") {
    Image edges(64, 64);
    draw_midpoint(edges, 4, 20, 5);    // disk crosses the left border
    draw_midpoint(edges, 40, 40, 5);   // fully inside
    HoughConfig cfg;
    cfg.accumulator_threshold = 0.35;  // the clipped circle loses some arc
    const CellCountReport rep = count_cells(edges, cfg);
    CHECK(rep.count == 1);
    CHECK(rep.border_excluded == 1);
    REQUIRE(rep.circles.size() == 1);
    CHECK(rep.circles[0].r == 5);
    CHECK(std::hypot(rep.circles[0].cx - 40.0, rep.circles[0].cy - 40.0) <= 1.0);
}

TEST_CASE("hough is translation-equivariant for interior circles") {
    const int dx = 3, dy = 2;
    Image a(96, 96), b(96, 96);
    const int centers[3][3] = {{25, 30, 4}, {60, 28, 6}, {40, 66, 8}};
    for (const auto& c : centers) {
        draw_circle_parametric(a, c[0], c[1], c[2]);
        draw_circle_parametric(b, c[0] + dx, c[1] + dy, c[2]);
    }
    const auto ca = find_circles(hough_accumulate(a, HoughConfig{}), HoughConfig{});
    const auto cb = find_circles(hough_accumulate(b, HoughConfig{}), HoughConfig{});
    REQUIRE(ca.size() >= 3);
    CHECK(ca.size() == cb.size());
    // Every detection moves by exactly the shift, within a pixel.
    for (const Circle& c1 : ca) {
        bool matched = false;
        for (const Circle& c2 : cb) {
            if (c1.r == c2.r && std::hypot(c2.cx - c1.cx - dx, c2.cy - c1.cy - dy) <= 1.0) {
                matched = true;
                break;
            }
        }
        CHECK(matched);
    }
    // The three drawn circles are among the detections of both images.
    for (const auto& c : centers) {
        bool found = false;
        for (const Circle& c1 : ca) {
            if (c1.r == c[2] && std::hypot(c1.cx - c[0], c1.cy - c[1]) <= 1.0) found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("deleting edge pixels never increases any accumulator cell") {
    std::mt19937 rng(99);
    Image edges(48, 48);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (double& v : edges.data) v = coin(rng) < 0.04 ? 1.0 : 0.0;

    Image fewer = edges;
    for (double& v : fewer.data) {
        if (v > 0.0 && coin(rng) < 0.4) v = 0.0;
    }
    const HoughAccumulator full = hough_accumulate(edges, HoughConfig{});
    const HoughAccumulator part = hough_accumulate(fewer, HoughConfig{});
    REQUIRE(full.votes.size() == part.votes.size());
    for (size_t i = 0; i < full.votes.size(); ++i) {
        CHECK(part.votes[i] <= full.votes[i]);
    }
}

TEST_CASE("reported circles respect the minimum center distance") {
    Image edges(96, 96);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (double& v : edges.data) v = coin(rng) < 0.08 ? 1.0 : 0.0;
    HoughConfig cfg;
    cfg.accumulator_threshold = 0.2;  // allow noisy detections
    const auto circles = find_circles(hough_accumulate(edges, cfg), cfg);
    for (size_t i = 0; i < circles.size(); ++i) {
        for (size_t j = i + 1; j < circles.size(); ++j) {
            const double d = std::hypot(circles[i].cx - circles[j].cx,
                                        circles[i].cy - circles[j].cy);
            CHECK(d >= cfg.min_center_distance);
        }
    }
}

TEST_CASE("parallel voting merges to the sequential accumulator exactly") {
    // A dense edge set (> 4096 voting pixels) switches the accumulator to
    // partitioned voting; the merged integer votes must match one worker.
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    Image edges(128, 128);
    for (double& v : edges.data) v = coin(rng) < 0.4 ? 1.0 : 0.0;

    setenv("EIGEDGE_THREADS", "1", 1);
    const HoughAccumulator seq = hough_accumulate(edges, HoughConfig{});
    setenv("EIGEDGE_THREADS", "4", 1);
    const HoughAccumulator par = hough_accumulate(edges, HoughConfig{});
    unsetenv("EIGEDGE_THREADS");
    CHECK(seq.votes == par.votes);
}

TEST_CASE("count_cells is deterministic") {
    Image edges(128, 128);
    const auto placed = place_circles(128, 128, 8, 3, 8, 77);
    for (const PlacedCircle& p : placed) draw_midpoint(edges, p.cx, p.cy, p.r);
    const CellCountReport r1 = count_cells(edges, HoughConfig{});
    const CellCountReport r2 = count_cells(edges, HoughConfig{});
    REQUIRE(r1.count == r2.count);
    CHECK(report_to_records(r1) == report_to_records(r2));
}

TEST_CASE("report formats carry the summary line and one record per circle") {
    Image edges(64, 64);
    draw_midpoint(edges, 20, 20, 5);
    draw_midpoint(edges, 45, 45, 7);
    const CellCountReport rep = count_cells(edges, HoughConfig{});
    REQUIRE(rep.count == 2);

    const std::string records = report_to_records(rep);
    CHECK(records.rfind("count=2 mean_r=6.000000 std_r=1.000000 border_excluded=0\n", 0) == 0);
    CHECK(std::count(records.begin(), records.end(), '\n') == 3);

    const std::string text = report_to_text(rep);
    CHECK(text.find("count: 2") != std::string::npos);
    CHECK(text.find("mean_radius: 6.0000") != std::string::npos);
}
