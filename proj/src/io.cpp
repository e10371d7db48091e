#include "paracalc/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace paracalc {
namespace {

constexpr char kMagic[8] = {'P', 'A', 'R', 'A', 'C', 'F', '0', '1'};

static_assert(std::endian::native == std::endian::little,
              "PCF1 writer assumes a little-endian host");

void write_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), 4);
}

std::uint32_t read_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  return v;
}

}  // namespace

void save_pcf1(const Field& f, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open for writing: " + path.string());
  os.write(kMagic, 8);
  write_u32(os, static_cast<std::uint32_t>(f.grid().dim));
  write_u32(os, static_cast<std::uint32_t>(f.grid().n));
  os.write(reinterpret_cast<const char*>(f.values().data()),
           static_cast<std::streamsize>(sizeof(double) * f.values().size()));
  if (!os) throw io_error("write failed: " + path.string());
}

Field load_pcf1(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open: " + path.string());
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kMagic, 8) != 0)
    throw io_error("bad PCF1 magic: " + path.string());
  const auto dim = read_u32(is);
  const auto n = read_u32(is);
  if (!is || (dim != 1 && dim != 2))
    throw io_error("bad PCF1 header: " + path.string());
  TorusGrid g(static_cast<int>(dim), static_cast<int>(n));
  Array vals(g.size());
  is.read(reinterpret_cast<char*>(vals.data()),
          static_cast<std::streamsize>(sizeof(double) * vals.size()));
  if (!is) throw io_error("truncated PCF1 payload: " + path.string());
  if (!vals.isFinite().all()) throw io_error("non-finite values in: " + path.string());
  return Field(g, std::move(vals));
}

}  // namespace paracalc
