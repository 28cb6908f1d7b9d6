#pragma once

#include <string>

#include "eigedge/image.hpp"

namespace eigedge {

enum class ImageFileFormat { pgm_ascii, pgm_binary, png };

/// Reads a PGM (P2/P5, maxval <= 255) or 8-bit PNG file. Pixels are scaled
/// to [0,1]; RGB PNG input goes through to_grayscale.
/// Throws IoError / FormatError / CorruptFileError.
Image load_image(const std::string& path);

/// Writes the image quantized to 8 bits (values clamped to [0,1]).
/// PGM-ascii output starts with exactly "P2\n<w> <h>\n255\n".
void save_image(const Image& img, const std::string& path, ImageFileFormat format);

/// Picks the format from the file extension (.png -> png, otherwise
/// binary PGM) and writes the image.
void save_image_auto(const Image& img, const std::string& path);

} // namespace eigedge
