#include <zlib.h>

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "torusrot/errors.hpp"
#include "torusrot/regions.hpp"

namespace torusrot {

namespace {

constexpr std::size_t kHeaderSize = 64;

void put_u32(std::uint8_t* p, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) p[k] = static_cast<std::uint8_t>(v >> (8 * k));
}

void put_f64(std::uint8_t* p, double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  for (int k = 0; k < 8; ++k) p[k] = static_cast<std::uint8_t>(bits >> (8 * k));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(p[k]) << (8 * k);
  return v;
}

double get_f64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(p[k]) << (8 * k);
  return std::bit_cast<double>(v);
}

void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int k = 3; k >= 0; --k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

void png_chunk(std::vector<std::uint8_t>& out, const char* type, const std::vector<std::uint8_t>& data) {
  put_be32(out, static_cast<std::uint32_t>(data.size()));
  const std::size_t start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  const auto crc = crc32(0L, out.data() + start, static_cast<uInt>(out.size() - start));
  put_be32(out, static_cast<std::uint32_t>(crc));
}

}  // namespace

void write_raster(std::ostream& out, const GridRegion& region) {
  std::array<std::uint8_t, kHeaderSize> header{};
  std::memcpy(header.data(), "TRGR", 4);
  put_u32(header.data() + 4, kRasterVersion);
  const Box& w = region.window();
  put_f64(header.data() + 8, w.x0);
  put_f64(header.data() + 16, w.x1);
  put_f64(header.data() + 24, w.y0);
  put_f64(header.data() + 32, w.y1);
  put_u32(header.data() + 40, static_cast<std::uint32_t>(region.resolution()));
  put_u32(header.data() + 44, static_cast<std::uint32_t>(region.width()));
  put_u32(header.data() + 48, static_cast<std::uint32_t>(region.height()));
  out.write(reinterpret_cast<const char*>(header.data()), kHeaderSize);

  const auto& bits = region.bits();
  std::vector<std::uint8_t> body((bits.size() + 7) / 8, 0);
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k]) body[k / 8] |= static_cast<std::uint8_t>(0x80u >> (k % 8));
  }
  out.write(reinterpret_cast<const char*>(body.data()), static_cast<std::streamsize>(body.size()));
  if (!out) throw std::runtime_error("write_raster: write failed");
}

GridRegion read_raster(std::istream& in) {
  std::array<std::uint8_t, kHeaderSize> header{};
  if (!in.read(reinterpret_cast<char*>(header.data()), kHeaderSize)) {
    throw InvalidArgument("read_raster: truncated header");
  }
  if (std::memcmp(header.data(), "TRGR", 4) != 0) throw InvalidArgument("read_raster: bad magic");
  if (get_u32(header.data() + 4) != kRasterVersion) throw InvalidArgument("read_raster: unsupported version");
  const Box w{get_f64(header.data() + 8), get_f64(header.data() + 16), get_f64(header.data() + 24),
              get_f64(header.data() + 32)};
  GridRegion region(w, static_cast<int>(get_u32(header.data() + 40)));
  if (get_u32(header.data() + 44) != region.width() || get_u32(header.data() + 48) != region.height()) {
    throw InvalidArgument("read_raster: dimensions disagree with window");
  }
  const auto total = static_cast<std::size_t>(region.cell_total());
  std::vector<std::uint8_t> body((total + 7) / 8);
  if (!in.read(reinterpret_cast<char*>(body.data()), static_cast<std::streamsize>(body.size()))) {
    throw InvalidArgument("read_raster: truncated body");
  }
  for (std::size_t k = 0; k < total; ++k) {
    if (body[k / 8] & (0x80u >> (k % 8))) {
      const auto idx = static_cast<std::int64_t>(k);
      region.set(idx % region.width(), idx / region.width());
    }
  }
  return region;
}

void save_raster(const std::string& path, const GridRegion& region) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_raster: cannot open " + path);
  write_raster(out, region);
}

GridRegion load_raster(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("load_raster: cannot open " + path);
  return read_raster(in);
}

std::vector<std::uint8_t> encode_png(const GridRegion& region) {
  const auto w = static_cast<std::size_t>(region.width());
  const auto h = static_cast<std::size_t>(region.height());
  std::vector<std::uint8_t> raw;
  raw.reserve(h * (w + 1));
  for (std::size_t row = 0; row < h; ++row) {
    raw.push_back(0);  // filter: none
    const auto j = static_cast<std::int64_t>(h - 1 - row);
    for (std::size_t i = 0; i < w; ++i) raw.push_back(region.at(static_cast<std::int64_t>(i), j) ? 255 : 0);
  }
  uLongf packed_size = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> packed(packed_size);
  if (compress2(packed.data(), &packed_size, raw.data(), static_cast<uLong>(raw.size()), Z_BEST_COMPRESSION) != Z_OK) {
    throw std::runtime_error("encode_png: compression failed");
  }
  packed.resize(packed_size);

  std::vector<std::uint8_t> png{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  std::vector<std::uint8_t> ihdr;
  put_be32(ihdr, static_cast<std::uint32_t>(w));
  put_be32(ihdr, static_cast<std::uint32_t>(h));
  ihdr.insert(ihdr.end(), {8, 0, 0, 0, 0});  // 8-bit grayscale
  png_chunk(png, "IHDR", ihdr);
  png_chunk(png, "IDAT", packed);
  png_chunk(png, "IEND", {});
  return png;
}

void save_png(const std::string& path, const GridRegion& region) {
  const auto bytes = encode_png(region);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_png: cannot open " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace torusrot
