#pragma once

// Binary grayscale PGM (P5), 8- or 16-bit. Samples map linearly to [0, 1]
// by dividing by maxval; writing rounds to the nearest level after clamping.

#include <filesystem>
#include <iosfwd>

#include "runsum/image.hpp"

namespace runsum {

struct PgmImage {
  Image image;
  int maxval = 255;
};

PgmImage read_pgm(std::istream& in);
PgmImage read_pgm(const std::filesystem::path& path);

void write_pgm(std::ostream& out, const Image& image, int maxval = 255);
void write_pgm(const std::filesystem::path& path, const Image& image, int maxval = 255);

}  // namespace runsum
