#include "beam/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace beam {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const Field& f) {
  f.grid.validate();
  if (f.a.size() != f.grid.size()) throw ConfigError("write_snapshot: sample count mismatch");
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ConfigError("write_snapshot: cannot open " + path);
  os.write("BEAM", 4);
  put<std::uint32_t>(os, kSnapshotVersion);
  put<std::uint32_t>(os, std::uint32_t(f.grid.n));
  put<std::uint32_t>(os, std::uint32_t(f.grid.N));
  put<double>(os, f.grid.L);
  put<std::uint8_t>(os, f.real_tagged ? 0 : 1);
  for (const auto& a : f.a) {
    put<double>(os, a.real());
    if (!f.real_tagged) put<double>(os, a.imag());
  }
  if (!os) throw ConfigError("write_snapshot: write failed for " + path);
}

Field read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("read_snapshot: cannot open " + path);
  char magic[4] = {};
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "BEAM", 4) != 0)
    throw ConfigError("read_snapshot: bad magic in " + path);
  auto version = get<std::uint32_t>(is);
  if (version != kSnapshotVersion)
    throw ConfigError("read_snapshot: unsupported format version in " + path);
  GridSpec g;
  g.n = int(get<std::uint32_t>(is));
  g.N = int(get<std::uint32_t>(is));
  g.L = get<double>(is);
  auto flavor = get<std::uint8_t>(is);
  if (!is) throw ConfigError("read_snapshot: truncated header in " + path);
  g.validate();
  if (flavor > 1) throw ConfigError("read_snapshot: unknown flavor in " + path);
  Field f = make_zero_field(g, flavor == 0);
  for (auto& a : f.a) {
    double re = get<double>(is);
    double im = (flavor == 1) ? get<double>(is) : 0.0;
    a = cplx(re, im);
  }
  if (!is) throw ConfigError("read_snapshot: truncated payload in " + path);
  return f;
}

}  // namespace beam
