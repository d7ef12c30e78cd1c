#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "evnav/mlp.hpp"

// Weight file layout (little-endian):
//   u32 magic 'EVNW', u32 version, u32 layer count,
//   per layer: u32 in, u32 out, u32 activation code,
//   u32 bound count, f64 bounds...,
//   per layer: f64 weights (row-major), f64 biases,
//   u32 CRC32 of everything before it.

namespace evnav {

namespace {

static_assert(std::endian::native == std::endian::little,
              "weight files are little-endian; byte swapping not implemented");

constexpr std::uint32_t kMagic = 0x574e5645;  // "EVNW"
constexpr std::uint32_t kVersion = 1;

void put_u32(std::vector<char>& buf, std::uint32_t v) {
  const std::size_t at = buf.size();
  buf.resize(at + 4);
  std::memcpy(buf.data() + at, &v, 4);
}

void put_f64(std::vector<char>& buf, double v) {
  const std::size_t at = buf.size();
  buf.resize(at + 8);
  std::memcpy(buf.data() + at, &v, 8);
}

class Reader {
 public:
  Reader(const char* data, std::size_t size) : data_(data), size_(size) {}

  std::uint32_t u32() {
    if (pos_ + 4 > size_) throw std::runtime_error("weight file truncated");
    std::uint32_t v;
    std::memcpy(&v, data_ + pos_, 4);
    pos_ += 4;
    return v;
  }
  double f64() {
    if (pos_ + 8 > size_) throw std::runtime_error("weight file truncated");
    double v;
    std::memcpy(&v, data_ + pos_, 8);
    pos_ += 8;
    return v;
  }
  std::size_t pos() const { return pos_; }

 private:
  const char* data_;
  std::size_t size_;
  std::size_t pos_{0};
};

}  // namespace

void save_weights(const Mlp& net, const std::string& path) {
  std::vector<char> buf;
  put_u32(buf, kMagic);
  put_u32(buf, kVersion);
  put_u32(buf, static_cast<std::uint32_t>(net.layer_count()));
  for (int l = 0; l < net.layer_count(); ++l) {
    put_u32(buf, static_cast<std::uint32_t>(net.sizes[l]));
    put_u32(buf, static_cast<std::uint32_t>(net.sizes[l + 1]));
    put_u32(buf, static_cast<std::uint32_t>(net.acts[l]));
  }
  put_u32(buf, static_cast<std::uint32_t>(net.out_bounds.size()));
  for (double bound : net.out_bounds) put_f64(buf, bound);
  for (int l = 0; l < net.layer_count(); ++l) {
    for (double v : net.w[l]) put_f64(buf, v);
    for (double v : net.b[l]) put_f64(buf, v);
  }
  const auto crc = static_cast<std::uint32_t>(
      crc32(0, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(buf.size())));
  put_u32(buf, crc);

  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("save_weights: cannot write " + path);
  f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!f) throw std::runtime_error("save_weights: write failed for " + path);
}

Mlp load_weights(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("load_weights: cannot open " + path);
  std::vector<char> buf((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (buf.size() < 16) throw std::runtime_error("load_weights: file truncated: " + path);

  const std::size_t payload = buf.size() - 4;
  std::uint32_t stored_crc;
  std::memcpy(&stored_crc, buf.data() + payload, 4);
  const auto crc = static_cast<std::uint32_t>(
      crc32(0, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(payload)));
  if (crc != stored_crc) throw std::runtime_error("load_weights: CRC mismatch in " + path);

  Reader r(buf.data(), payload);
  if (r.u32() != kMagic) throw std::runtime_error("load_weights: bad magic in " + path);
  const std::uint32_t version = r.u32();
  if (version != kVersion) {
    throw std::runtime_error("load_weights: unsupported version " + std::to_string(version));
  }
  const std::uint32_t layers = r.u32();
  if (layers == 0 || layers > 64) throw std::runtime_error("load_weights: bad layer count");

  std::vector<int> sizes;
  std::vector<Activation> acts;
  for (std::uint32_t l = 0; l < layers; ++l) {
    const std::uint32_t in = r.u32();
    const std::uint32_t out = r.u32();
    const std::uint32_t act = r.u32();
    if (l == 0) {
      sizes.push_back(static_cast<int>(in));
    } else if (sizes.back() != static_cast<int>(in)) {
      throw std::runtime_error("load_weights: inconsistent size at layer " + std::to_string(l));
    }
    sizes.push_back(static_cast<int>(out));
    if (act > 2) throw std::runtime_error("load_weights: bad activation code at layer " +
                                          std::to_string(l));
    acts.push_back(static_cast<Activation>(act));
  }
  const std::uint32_t bound_count = r.u32();
  std::vector<double> bounds(bound_count);
  for (auto& bound : bounds) bound = r.f64();

  Mlp net = Mlp::make(sizes, acts, bounds);
  for (std::uint32_t l = 0; l < layers; ++l) {
    for (auto& v : net.w[l]) v = r.f64();
    for (auto& v : net.b[l]) v = r.f64();
  }
  if (r.pos() != payload) throw std::runtime_error("load_weights: trailing bytes in " + path);
  return net;
}

}  // namespace evnav
