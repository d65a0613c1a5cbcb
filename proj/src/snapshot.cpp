#include "vlasov/snapshot.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "vlasov/errors.hpp"

namespace vlasov {

namespace {

constexpr std::array<char, 8> magic = {'V', 'L', 'S', 'V', 'S', 'N', 'A', 'P'};
constexpr std::size_t header_bytes = 8 + 4 + 2 * 8 + 3 * 8;

template <typename T>
void put_le(std::vector<unsigned char>& out, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  const U bits = std::bit_cast<U>(value);
  for (std::size_t b = 0; b < sizeof(U); ++b) {
    out.push_back(static_cast<unsigned char>((bits >> (8 * b)) & 0xffu));
  }
}

template <typename T>
T get_le(const unsigned char* in) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  U bits = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b) bits |= static_cast<U>(in[b]) << (8 * b);
  return std::bit_cast<T>(bits);
}

std::vector<unsigned char> read_bytes(const std::filesystem::path& path, std::size_t limit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("snapshot: cannot open " + path.string());
  std::vector<unsigned char> bytes;
  char buffer[1 << 16];
  while (bytes.size() < limit && in) {
    in.read(buffer, sizeof(buffer));
    bytes.insert(bytes.end(), buffer, buffer + in.gcount());
  }
  if (bytes.size() > limit) bytes.resize(limit);
  return bytes;
}

SnapshotHeader parse_header(const std::vector<unsigned char>& bytes, const std::string& name) {
  if (bytes.size() < header_bytes) throw FormatError("snapshot: truncated header in " + name);
  if (std::memcmp(bytes.data(), magic.data(), magic.size()) != 0) {
    throw FormatError("snapshot: bad magic in " + name);
  }
  const unsigned char* p = bytes.data() + 8;
  SnapshotHeader h{};
  h.version = get_le<std::uint32_t>(p);
  if (h.version != snapshot_version) {
    throw FormatError("snapshot: unsupported version " + std::to_string(h.version) + " in " +
                      name);
  }
  h.nx = get_le<std::uint64_t>(p + 4);
  h.nv = get_le<std::uint64_t>(p + 12);
  h.L = get_le<double>(p + 20);
  h.vmax = get_le<double>(p + 28);
  h.time = get_le<double>(p + 36);
  return h;
}

}  // namespace

void save_snapshot(const std::filesystem::path& path, const DistributionField& f, double time) {
  const GridSpec& spec = f.spec();
  std::vector<unsigned char> bytes(magic.begin(), magic.end());
  bytes.reserve(header_bytes + 8 * f.values().size());
  put_le(bytes, snapshot_version);
  put_le(bytes, static_cast<std::uint64_t>(spec.nx()));
  put_le(bytes, static_cast<std::uint64_t>(spec.nv()));
  put_le(bytes, spec.L());
  put_le(bytes, spec.vmax());
  put_le(bytes, time);
  for (double v : f.values()) put_le(bytes, v);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("snapshot: cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("snapshot: write failed for " + path.string());
}

SnapshotHeader read_snapshot_header(const std::filesystem::path& path) {
  return parse_header(read_bytes(path, header_bytes), path.string());
}

Snapshot load_snapshot(const std::filesystem::path& path) {
  std::vector<unsigned char> bytes = read_bytes(path, SIZE_MAX);
  const SnapshotHeader h = parse_header(bytes, path.string());
  const GridSpec spec = [&] {
    try {
      return GridSpec(h.L, h.vmax, static_cast<std::size_t>(h.nx), static_cast<std::size_t>(h.nv));
    } catch (const ConfigError& e) {
      throw FormatError("snapshot: invalid grid in " + path.string() + ": " + e.what());
    }
  }();
  const std::size_t count = spec.nx() * spec.nv();
  if (bytes.size() != header_bytes + 8 * count) {
    throw FormatError("snapshot: payload of " + path.string() + " has " +
                      std::to_string(bytes.size() - header_bytes) + " bytes, expected " +
                      std::to_string(8 * count));
  }
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) {
    values[k] = get_le<double>(bytes.data() + header_bytes + 8 * k);
  }
  try {
    return Snapshot{h, DistributionField(spec, std::move(values))};
  } catch (const ConfigError& e) {
    throw FormatError("snapshot: invalid payload in " + path.string() + ": " + e.what());
  }
}

Snapshot load_snapshot(const std::filesystem::path& path, const GridSpec& expected) {
  Snapshot snap = load_snapshot(path);
  if (!(snap.field.spec() == expected)) {
    throw DimensionError("snapshot " + path.string() + " was written on a different grid");
  }
  return snap;
}

}  // namespace vlasov
