#include "runsum/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "runsum/error.hpp"

namespace runsum {

namespace {

void skip_space_and_comments(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      in.get();
    } else {
      return;
    }
  }
}

long read_header_number(std::istream& in, const char* what) {
  skip_space_and_comments(in);
  long v = -1;
  if (!(in >> v) || v <= 0) throw IoError(std::string("PGM: bad ") + what);
  return v;
}

}  // namespace

PgmImage read_pgm(std::istream& in) {
  char magic[2] = {};
  if (!in.read(magic, 2) || magic[0] != 'P' || magic[1] != '5') {
    throw IoError("PGM: not a binary (P5) PGM file");
  }
  const long width = read_header_number(in, "width");
  const long height = read_header_number(in, "height");
  const long maxval = read_header_number(in, "maxval");
  if (maxval > 65535) throw IoError("PGM: maxval above 65535");
  const int sep = in.get();
  if (sep != ' ' && sep != '\t' && sep != '\n' && sep != '\r') {
    throw IoError("PGM: missing whitespace after header");
  }

  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  const std::size_t bytes_per_sample = maxval < 256 ? 1 : 2;
  std::vector<unsigned char> raw(count * bytes_per_sample);
  if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
    throw IoError("PGM: truncated pixel data");
  }

  std::vector<double> pixels(count);
  const auto scale = static_cast<double>(maxval);
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned v = bytes_per_sample == 1 ? raw[i]
                                             : (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1];
    if (v > static_cast<unsigned>(maxval)) throw IoError("PGM: sample exceeds maxval");
    pixels[i] = v / scale;
  }
  return {Image(static_cast<std::size_t>(width), static_cast<std::size_t>(height), std::move(pixels)),
          static_cast<int>(maxval)};
}

PgmImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    return read_pgm(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_pgm(std::ostream& out, const Image& image, int maxval) {
  if (maxval < 1 || maxval > 65535) throw InvalidArgument("write_pgm: maxval must be in [1, 65535]");
  if (image.empty()) throw InvalidArgument("write_pgm: empty image");
  out << "P5\n" << image.width() << ' ' << image.height() << '\n' << maxval << '\n';
  const std::size_t bytes_per_sample = maxval < 256 ? 1 : 2;
  std::vector<unsigned char> raw(image.size() * bytes_per_sample);
  const auto pixels = image.pixels();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const double clamped = std::clamp(pixels[i], 0.0, 1.0);
    const auto v = static_cast<unsigned>(std::lround(clamped * maxval));
    if (bytes_per_sample == 1) {
      raw[i] = static_cast<unsigned char>(v);
    } else {
      raw[2 * i] = static_cast<unsigned char>(v >> 8);
      raw[2 * i + 1] = static_cast<unsigned char>(v & 0xff);
    }
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
}

void write_pgm(const std::filesystem::path& path, const Image& image, int maxval) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_pgm(out, image, maxval);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace runsum
