#include "eigedge/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "eigedge/errors.hpp"

namespace eigedge {

namespace {

constexpr unsigned char kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

int quantize(double v) {
    v = std::clamp(v, 0.0, 1.0);
    return static_cast<int>(std::lround(v * 255.0));
}

// Reads the next unsigned integer from a PGM header, skipping whitespace
// and '#' comments.
bool next_header_int(std::istream& in, int& value) {
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
        } else if (!std::isspace(c)) {
            break;
        }
    }
    if (c == EOF || !std::isdigit(c)) return false;
    long v = 0;
    do {
        v = v * 10 + (c - '0');
        if (v > 1 << 20) return false;
        c = in.get();
    } while (c != EOF && std::isdigit(c));
    if (c != EOF) in.unget();
    value = static_cast<int>(v);
    return true;
}

Image load_pgm(std::istream& in, const std::string& path) {
    char magic[2];
    in.read(magic, 2);
    const bool binary = magic[1] == '5';

    int w = 0, h = 0, maxval = 0;
    if (!next_header_int(in, w) || !next_header_int(in, h) || !next_header_int(in, maxval) ||
        w <= 0 || h <= 0 || maxval <= 0) {
        throw CorruptFileError("corrupt PGM header: " + path);
    }
    if (maxval > 255) {
        throw FormatError("unsupported PGM maxval " + std::to_string(maxval) + " (16-bit): " + path);
    }

    Image img(w, h);
    const double scale = 1.0 / maxval;
    if (binary) {
        in.get();  // the single whitespace byte after maxval
        std::vector<unsigned char> raw(img.size());
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (static_cast<size_t>(in.gcount()) != raw.size()) {
            throw CorruptFileError("truncated PGM pixel data: " + path);
        }
        for (size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] > maxval) throw CorruptFileError("PGM sample exceeds maxval: " + path);
            img.data[i] = raw[i] * scale;
        }
    } else {
        for (size_t i = 0; i < img.size(); ++i) {
            int v;
            if (!next_header_int(in, v)) {
                throw CorruptFileError("truncated PGM pixel data: " + path);
            }
            if (v > maxval) throw CorruptFileError("PGM sample exceeds maxval: " + path);
            img.data[i] = v * scale;
        }
    }
    return img;
}

struct PngReadCtx {
    std::istream* in;
};

void png_stream_read(png_structp png, png_bytep out, png_size_t len) {
    auto* ctx = static_cast<PngReadCtx*>(png_get_io_ptr(png));
    ctx->in->read(reinterpret_cast<char*>(out), static_cast<std::streamsize>(len));
    if (static_cast<png_size_t>(ctx->in->gcount()) != len) {
        png_error(png, "truncated PNG stream");
    }
}

Image load_png(std::istream& in, const std::string& path) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw CorruptFileError("corrupt PNG data: " + path);
    }
    PngReadCtx ctx{&in};
    png_set_read_fn(png, &ctx, png_stream_read);
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int color = png_get_color_type(png, info);
    const int depth = png_get_bit_depth(png, info);

    if (depth == 16) png_set_strip_16(png);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    const int channels = png_get_channels(png, info);
    if (channels != 1 && channels != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("unsupported PNG channel layout: " + path);
    }

    std::vector<unsigned char> pixels(static_cast<size_t>(w) * h * channels);
    std::vector<png_bytep> rows(h);
    for (png_uint_32 y = 0; y < h; ++y) {
        rows[y] = pixels.data() + static_cast<size_t>(y) * w * channels;
    }
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    const int iw = static_cast<int>(w), ih = static_cast<int>(h);
    if (channels == 1) {
        Image img(iw, ih);
        for (size_t i = 0; i < img.size(); ++i) img.data[i] = pixels[i] / 255.0;
        return img;
    }
    Image r(iw, ih), g(iw, ih), b(iw, ih);
    for (size_t i = 0; i < r.size(); ++i) {
        r.data[i] = pixels[3 * i] / 255.0;
        g.data[i] = pixels[3 * i + 1] / 255.0;
        b.data[i] = pixels[3 * i + 2] / 255.0;
    }
    return to_grayscale(r, g, b);
}

void save_png(const Image& img, const std::string& path) {
    FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw IoError("cannot open for writing: " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        std::fclose(fp);
        throw IoError("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw IoError("PNG write failed: " + path);
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<unsigned char> row(static_cast<size_t>(img.width));
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            row[static_cast<size_t>(x)] = static_cast<unsigned char>(quantize(img.at(x, y)));
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}

} // namespace

Image load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);

    unsigned char head[8] = {0};
    in.read(reinterpret_cast<char*>(head), 8);
    const auto got = in.gcount();
    in.clear();
    in.seekg(0);

    if (got >= 2 && head[0] == 'P' && (head[1] == '2' || head[1] == '5')) {
        return load_pgm(in, path);
    }
    if (got >= 8 && std::memcmp(head, kPngSignature, 8) == 0) {
        return load_png(in, path);
    }
    if (got >= 2 && head[0] == 'P' && head[1] >= '1' && head[1] <= '7') {
        throw FormatError("unsupported Netpbm variant P" + std::string(1, static_cast<char>(head[1])) +
                          ": " + path);
    }
    throw FormatError("unsupported image format: " + path);
}

void save_image(const Image& img, const std::string& path, ImageFileFormat format) {
    if (format == ImageFileFormat::png) {
        save_png(img, path);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);

    if (format == ImageFileFormat::pgm_ascii) {
        out << "P2\n" << img.width << ' ' << img.height << "\n255\n";
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x) {
                if (x) out << ' ';
                out << quantize(img.at(x, y));
            }
            out << '\n';
        }
    } else {
        out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
        std::vector<unsigned char> raw(img.size());
        for (size_t i = 0; i < img.size(); ++i) {
            raw[i] = static_cast<unsigned char>(quantize(img.data[i]));
        }
        out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    }
    if (!out) throw IoError("write failed: " + path);
}

void save_image_auto(const Image& img, const std::string& path) {
    const auto dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    save_image(img, path, ext == "png" ? ImageFileFormat::png : ImageFileFormat::pgm_binary);
}

} // namespace eigedge
