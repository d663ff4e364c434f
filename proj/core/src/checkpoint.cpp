#include "thermocrack/checkpoint.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "thermocrack/error.hpp"

namespace thermocrack {

namespace {

static_assert(std::numeric_limits<float>::is_iec559);

class Writer {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void raw(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    bytes_.insert(bytes_.end(), p, p + n);
  }
  void tensor(const Shape& shape, std::span<const float> values) {
    u32(static_cast<std::uint32_t>(shape.size()));
    for (std::size_t d : shape) u32(static_cast<std::uint32_t>(d));
    for (float v : values) f32(v);
  }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }

  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{bytes_[pos_ + i]} << (8 * i);
    pos_ += 4;
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  std::string str(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }

  // Returns (shape, values); a zero-length dimension yields an empty tensor.
  std::pair<Shape, std::vector<float>> tensor() {
    const std::uint32_t rank = u32();
    if (rank == 0 || rank > 8) throw FormatError("tensor rank " + std::to_string(rank) + " unsupported");
    Shape shape(rank);
    std::uint64_t count = 1;
    for (auto& d : shape) {
      d = u32();
      count *= d;
    }
    need(count * 4);
    std::vector<float> values(count);
    for (auto& v : values) v = f32();
    return {shape, values};
  }

 private:
  void need(std::uint64_t n) {
    if (pos_ + n > bytes_.size()) {
      throw CorruptionError(pos_, "checkpoint truncated: need " + std::to_string(n) +
                                      " more bytes, " + std::to_string(bytes_.size() - pos_) +
                                      " available");
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, bytes.data(), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

Tensor to_tensor(std::pair<Shape, std::vector<float>> t) {
  if (t.second.empty()) return Tensor();
  return Tensor(std::move(t.first), std::move(t.second));
}

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const Model& model) {
  model.spec.layer_shapes();
  if (model.params.layers.size() != model.spec.layers.size()) {
    throw ShapeError("checkpoint: parameter/architecture layer count mismatch");
  }
  Writer w;
  w.raw(kCheckpointMagic, 4);
  w.u32(static_cast<std::uint32_t>(model.spec.layers.size()));
  for (std::size_t i = 0; i < model.spec.layers.size(); ++i) {
    const LayerSpec& layer = model.spec.layers[i];
    const LayerParams& p = model.params.layers[i];
    if (layer.name.size() > 255) throw FormatError("layer name too long: " + layer.name);
    w.u8(static_cast<std::uint8_t>(layer.kind));
    w.u8(static_cast<std::uint8_t>(layer.name.size()));
    w.raw(layer.name.data(), layer.name.size());
    if (layer.kind == LayerKind::Input) {
      const float dims[3] = {static_cast<float>(model.spec.channels),
                             static_cast<float>(model.spec.height),
                             static_cast<float>(model.spec.width)};
      w.tensor({3}, dims);
      w.tensor({0}, {});
    } else if (p.weights.empty()) {
      w.tensor({0}, {});
      w.tensor({0}, {});
    } else {
      w.tensor(p.weights.shape(), p.weights.data());
      w.tensor(p.bias.shape(), p.bias.data());
    }
  }
  w.u32(crc32_of(w.bytes()));
  return w.take();
}

Model decode_checkpoint(std::span<const std::uint8_t> bytes) {
  const std::size_t head = std::min<std::size_t>(bytes.size(), 4);
  if (std::memcmp(bytes.data(), kCheckpointMagic, head) != 0) {
    throw FormatError("not a TCK1 checkpoint (bad magic)");
  }
  if (bytes.size() < 12) throw CorruptionError(bytes.size(), "checkpoint truncated");
  const auto body = bytes.first(bytes.size() - 4);
  Reader tail(bytes.subspan(bytes.size() - 4));
  const std::uint32_t stored_crc = tail.u32();

  Reader r(body);
  r.str(4);
  const std::uint32_t count = r.u32();
  if (count != kArchitectureDepth) {
    throw FormatError("checkpoint has " + std::to_string(count) + " layers, expected " +
                      std::to_string(kArchitectureDepth));
  }
  Model model;
  for (std::uint32_t i = 0; i < count; ++i) {
    LayerSpec layer;
    const std::uint8_t tag = r.u8();
    if (tag > static_cast<std::uint8_t>(LayerKind::Output)) {
      throw FormatError("unknown layer kind tag " + std::to_string(tag));
    }
    layer.kind = static_cast<LayerKind>(tag);
    layer.name = r.str(r.u8());
    auto weights = r.tensor();
    auto bias = r.tensor();
    LayerParams params;
    switch (layer.kind) {
      case LayerKind::Input:
        if (weights.second.size() != 3) throw FormatError("input layer must record 3 dimensions");
        model.spec.channels = static_cast<std::size_t>(weights.second[0]);
        model.spec.height = static_cast<std::size_t>(weights.second[1]);
        model.spec.width = static_cast<std::size_t>(weights.second[2]);
        break;
      case LayerKind::Conv:
      case LayerKind::Dense:
      case LayerKind::Output:
        if (weights.second.empty() || weights.first.empty()) {
          throw FormatError("layer '" + layer.name + "' has no weights");
        }
        layer.units = weights.first[0];
        layer.activation = layer.kind == LayerKind::Output ? Activation::Softmax : Activation::Relu;
        params.weights = to_tensor(std::move(weights));
        params.bias = to_tensor(std::move(bias));
        break;
      case LayerKind::MaxPool:
      case LayerKind::Flatten: break;
    }
    model.spec.layers.push_back(std::move(layer));
    model.params.layers.push_back(std::move(params));
  }
  if (r.offset() != body.size()) {
    throw CorruptionError(r.offset(), "unexpected trailing bytes before CRC");
  }
  if (crc32_of(body) != stored_crc) {
    throw CorruptionError(body.size(), "CRC-32 mismatch");
  }

  // Shapes must be exactly what the recorded architecture implies.
  try {
    const ModelParams expected = zero_params(model.spec);
    for (std::size_t i = 0; i < expected.layers.size(); ++i) {
      if (expected.layers[i].weights.shape() != model.params.layers[i].weights.shape() ||
          expected.layers[i].bias.shape() != model.params.layers[i].bias.shape()) {
        throw FormatError("layer '" + model.spec.layers[i].name +
                          "' parameter shapes do not match the architecture");
      }
    }
  } catch (const BuildError& e) {
    throw FormatError(std::string("checkpoint architecture is invalid: ") + e.what());
  }
  return model;
}

void save_checkpoint(const Model& model, const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = encode_checkpoint(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open checkpoint for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError(path, "failed writing checkpoint");
}

Model load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open checkpoint");
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

}  // namespace thermocrack
