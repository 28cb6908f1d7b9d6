#include "eigedge/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "eigedge/classic.hpp"
#include "eigedge/dictedge.hpp"
#include "eigedge/errors.hpp"
#include "eigedge/hough.hpp"
#include "eigedge/image.hpp"
#include "eigedge/image_io.hpp"

namespace eigedge {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitFlags = 2;
constexpr int kExitAlgorithm = 3;

struct Flags {
    std::string input;
    std::string output;
    std::string out_dir = ".";
    std::string method = "dictionary";
    int patch_size = 4;
    std::optional<double> sigma;
    double low = 0.1;
    double high = 0.3;
    double log_floor = 0.01;
    std::optional<double> threshold_percentile;
    int r_min = 3;
    int r_max = 8;
    double acc_threshold = 0.4;
    std::optional<double> min_dist;
    std::string border = "replicate";
};

Border parse_border(const std::string& s) {
    return s == "zero" ? Border::zero : Border::replicate;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    const auto dt = std::chrono::steady_clock::now() - start;
    return std::chrono::duration<double, std::milli>(dt).count();
}

json method_params(const std::string& method, const Flags& f) {
    json p;
    if (method == "sobel" || method == "prewitt") {
        p["binarize_percentile"] = f.threshold_percentile.value_or(0.9);
    } else if (method == "log") {
        p["sigma"] = f.sigma.value_or(2.0);
        p["slope_floor"] = f.log_floor;
    } else if (method == "canny") {
        p["sigma"] = f.sigma.value_or(1.4);
        p["low"] = f.low;
        p["high"] = f.high;
    } else {
        p["patch_size"] = f.patch_size;
        p["threshold_percentile"] = f.threshold_percentile.value_or(0.0);
        p["border"] = f.border;
    }
    return p;
}

Image run_method(const std::string& method, const Image& gray, const Flags& f) {
    if (method == "sobel") {
        return binarize_magnitude(sobel(gray).magnitude, f.threshold_percentile.value_or(0.9));
    }
    if (method == "prewitt") {
        return binarize_magnitude(prewitt(gray).magnitude, f.threshold_percentile.value_or(0.9));
    }
    if (method == "log") {
        return log_detect(gray, f.sigma.value_or(2.0), f.log_floor);
    }
    if (method == "canny") {
        return canny(gray, CannyParams{f.sigma.value_or(1.4), f.low, f.high});
    }
    DictConfig cfg;
    cfg.patch_size = f.patch_size;
    cfg.threshold_percentile = f.threshold_percentile.value_or(0.0);
    cfg.border = parse_border(f.border);
    return detect_edges(gray, cfg);
}

int cmd_detect(const Flags& f) {
    const auto start = std::chrono::steady_clock::now();
    const Image gray = load_image(f.input);
    const Image edges = run_method(f.method, gray, f);
    save_image_auto(edges, f.output);
    std::printf("method=%s params=%s time_ms=%.1f\n", f.method.c_str(),
                method_params(f.method, f).dump().c_str(), elapsed_ms(start));
    return kExitOk;
}

int cmd_filters(const Flags& f) {
    const Image gray = load_image(f.input);
    DictConfig cfg;
    cfg.patch_size = f.patch_size;
    cfg.border = parse_border(f.border);

    const EigenfilterBank bank = build_filter_bank(gray, cfg);
    const EdgeStack centered = center_stack(apply_filter_bank(gray, bank, cfg.border));

    fs::create_directories(f.out_dir);
    const int count = static_cast<int>(bank.filters.size());
    for (int i = 0; i < count; ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "filter_%02d.pgm", i);
        Image fimg(bank.n, bank.n);
        fimg.data = bank.filters[static_cast<size_t>(i)].coeffs;
        save_image(normalize(fimg), (fs::path(f.out_dir) / name).string(),
                   ImageFileFormat::pgm_ascii);

        std::snprintf(name, sizeof name, "edge_%02d.pgm", i);
        save_image(normalize(centered.layers[static_cast<size_t>(i)]),
                   (fs::path(f.out_dir) / name).string(), ImageFileFormat::pgm_binary);
    }

    std::ofstream csv(fs::path(f.out_dir) / "filters.csv");
    if (!csv) throw IoError("cannot write filters.csv in " + f.out_dir);
    csv << "index";
    for (int c = 0; c < bank.n * bank.n; ++c) csv << ",c" << c;
    csv << ",eigenvalue\n";
    char num[40];
    for (int i = 0; i < count; ++i) {
        csv << i;
        for (double v : bank.filters[static_cast<size_t>(i)].coeffs) {
            std::snprintf(num, sizeof num, "%.17g", v);
            csv << ',' << num;
        }
        std::snprintf(num, sizeof num, "%.17g", bank.eigenvalues[static_cast<size_t>(i)]);
        csv << ',' << num << '\n';
    }
    std::printf("wrote %d filters, %d edge images, filters.csv to %s\n", count, count,
                f.out_dir.c_str());
    return kExitOk;
}

int cmd_count(const Flags& f) {
    const Image gray = load_image(f.input);

    DictConfig dcfg;
    dcfg.patch_size = f.patch_size;
    dcfg.threshold_percentile = f.threshold_percentile.value_or(0.5);
    dcfg.border = parse_border(f.border);
    const Image edges = detect_edges(gray, dcfg);

    HoughConfig hcfg;
    hcfg.r_min = f.r_min;
    hcfg.r_max = f.r_max;
    hcfg.accumulator_threshold = f.acc_threshold;
    hcfg.min_center_distance = f.min_dist.value_or(static_cast<double>(f.r_min));
    const CellCountReport report = count_cells(edges, hcfg);

    fs::create_directories(f.out_dir);
    {
        std::ofstream txt(fs::path(f.out_dir) / "report.txt");
        txt << report_to_text(report);
    }
    {
        std::ofstream rec(fs::path(f.out_dir) / "records.txt");
        rec << report_to_records(report);
    }
    Image overlay = normalize(gray);
    draw_circles(overlay, report.circles, 1.0);
    save_image(overlay, (fs::path(f.out_dir) / "overlay.pgm").string(),
               ImageFileFormat::pgm_binary);

    std::printf("count=%d mean_r=%.6f std_r=%.6f border_excluded=%d\n", report.count,
                report.mean_radius, report.radius_stddev, report.border_excluded);
    return kExitOk;
}

int cmd_compare(const Flags& f) {
    const Image gray = load_image(f.input);
    fs::create_directories(f.out_dir);

    json manifest;
    manifest["input"] = f.input;
    const std::vector<std::string> methods = {"sobel", "prewitt", "log", "canny", "dictionary"};
    for (const std::string& m : methods) {
        json entry;
        entry["params"] = method_params(m, f);
        const auto start = std::chrono::steady_clock::now();
        try {
            const Image edges = run_method(m, gray, f);
            const std::string name = m + ".pgm";
            save_image(edges, (fs::path(f.out_dir) / name).string(), ImageFileFormat::pgm_binary);
            entry["status"] = "ok";
            entry["output"] = name;
        } catch (const Error& e) {
            entry["status"] = "failed";
            entry["error"] = e.what();
        }
        entry["time_ms"] = elapsed_ms(start);
        manifest["methods"][m] = entry;
        std::printf("%-10s %s time_ms=%.1f\n", m.c_str(), entry["status"].get<std::string>().c_str(),
                    entry["time_ms"].get<double>());
    }
    std::ofstream out(fs::path(f.out_dir) / "manifest.json");
    if (!out) throw IoError("cannot write manifest.json in " + f.out_dir);
    out << manifest.dump(2) << '\n';
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Dictionary-based edge detection, classical baselines, and cell counting"};
    app.require_subcommand(1);
    Flags f;

    const auto add_border = [&](CLI::App* cmd) {
        cmd->add_option("--border", f.border, "Border handling")
            ->check(CLI::IsMember({"replicate", "zero"}))
            ->capture_default_str();
    };
    const auto add_patch = [&](CLI::App* cmd) {
        cmd->add_option("--patch-size", f.patch_size, "Dictionary patch side n")
            ->check(CLI::Range(2, 8))
            ->capture_default_str();
    };
    const auto add_threshold = [&](CLI::App* cmd) {
        cmd->add_option("--threshold-percentile", f.threshold_percentile,
                        "Percentile threshold (method-dependent default)")
            ->check(CLI::Range(0.0, 1.0));
    };

    CLI::App* detect = app.add_subcommand("detect", "Write the edge map of one method");
    detect->add_option("input", f.input, "Input image (PGM or PNG)")->required();
    detect->add_option("output", f.output, "Output image path")->required();
    detect->add_option("--method", f.method, "sobel|prewitt|log|canny|dictionary")
        ->check(CLI::IsMember({"sobel", "prewitt", "log", "canny", "dictionary"}))
        ->capture_default_str();
    detect->add_option("--sigma", f.sigma, "Gaussian sigma (canny default 1.4, log default 2.0)")
        ->check(CLI::PositiveNumber);
    detect->add_option("--low", f.low, "Canny low threshold fraction")->capture_default_str();
    detect->add_option("--log-floor", f.log_floor, "LoG zero-crossing slope floor fraction")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    detect->add_option("--high", f.high, "Canny high threshold fraction")->capture_default_str();
    add_patch(detect);
    add_threshold(detect);
    add_border(detect);

    CLI::App* filters = app.add_subcommand("filters", "Dump eigenfilters, edge layers, and CSV");
    filters->add_option("input", f.input, "Input image")->required();
    filters->add_option("--out-dir", f.out_dir, "Output directory")->capture_default_str();
    add_patch(filters);
    add_border(filters);

    CLI::App* count = app.add_subcommand("count", "Count circular cells on the dictionary edge map");
    count->add_option("input", f.input, "Input image")->required();
    count->add_option("--out-dir", f.out_dir, "Output directory")->capture_default_str();
    count->add_option("--rmin", f.r_min, "Minimum circle radius")->capture_default_str();
    count->add_option("--rmax", f.r_max, "Maximum circle radius")->capture_default_str();
    count->add_option("--acc-threshold", f.acc_threshold, "Accumulator score threshold")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    count->add_option("--min-dist", f.min_dist, "Minimum center distance (default rmin)");
    add_patch(count);
    add_threshold(count);
    add_border(count);

    CLI::App* compare = app.add_subcommand("compare", "Run all five methods with defaults");
    compare->add_option("input", f.input, "Input image")->required();
    compare->add_option("--out-dir", f.out_dir, "Output directory")->capture_default_str();
    add_patch(compare);
    add_border(compare);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitFlags;
    }

    // Flag cross-checks before any pixel work.
    if (count->parsed()) {
        if (f.r_min < 1 || f.r_min > f.r_max) {
            std::fprintf(stderr, "error: need 1 <= rmin <= rmax (got %d..%d)\n", f.r_min, f.r_max);
            return kExitFlags;
        }
        if (f.min_dist && *f.min_dist <= 0.0) {
            std::fprintf(stderr, "error: --min-dist must be positive\n");
            return kExitFlags;
        }
    }
    if (detect->parsed() && !(f.low < f.high)) {
        std::fprintf(stderr, "error: need --low < --high\n");
        return kExitFlags;
    }

    try {
        if (detect->parsed()) return cmd_detect(f);
        if (filters->parsed()) return cmd_filters(f);
        if (count->parsed()) return cmd_count(f);
        return cmd_compare(f);
    } catch (const FeaturelessImageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitAlgorithm;
    } catch (const ConvergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitAlgorithm;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const FormatError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const CorruptFileError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitAlgorithm;
    }
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

} // namespace eigedge
