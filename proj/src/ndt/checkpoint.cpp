#include "premsel/ndt/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>

#include "premsel/corpus/corpus.hpp"

namespace premsel::ndt {

namespace {

[[noreturn]] void corrupt(const std::string& why) { throw DataError("CheckpointError", why); }

template <typename U>
void append_le(std::string& out, U bits) {
  for (std::size_t b = 0; b < sizeof(U); ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xFF));
}

template <typename U>
U read_le(const unsigned char* p) {
  U v = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b) v |= static_cast<U>(p[b]) << (8 * b);
  return v;
}

template <typename T>
nlohmann::json describe(const std::string& name, const Tensor<T>& t, const char* dtype) {
  return {{"name", name}, {"shape", t.shape()}, {"dtype", dtype}};
}

}  // namespace

const Tensor<float>& Bundle::tensor(const std::string& name) const {
  for (const auto& [n, t] : f32) {
    if (n == name) return t;
  }
  corrupt("bundle has no tensor '" + name + "'");
}

bool Bundle::has(const std::string& name) const {
  for (const auto& [n, t] : f32) {
    if (n == name) return true;
  }
  return false;
}

std::string encode_bundle(const Bundle& bundle) {
  nlohmann::json header;
  header["meta"] = bundle.meta;
  header["tensors"] = nlohmann::json::array();
  for (const auto& [name, t] : bundle.f32) header["tensors"].push_back(describe(name, t, "f32"));
  for (const auto& [name, t] : bundle.f64) header["tensors"].push_back(describe(name, t, "f64"));
  const std::string text = header.dump();

  std::string out(kBundleMagic);
  out += '\n';
  out += std::to_string(text.size());
  out += '\n';
  out += text;
  out += '\n';
  for (const auto& [name, t] : bundle.f32) {
    for (const float v : t.data()) append_le(out, std::bit_cast<std::uint32_t>(v));
  }
  for (const auto& [name, t] : bundle.f64) {
    for (const double v : t.data()) append_le(out, std::bit_cast<std::uint64_t>(v));
  }
  return out;
}

Bundle decode_bundle(std::string_view bytes) {
  if (!bytes.starts_with(kBundleMagic) || bytes.size() < kBundleMagic.size() + 1 ||
      bytes[kBundleMagic.size()] != '\n') {
    corrupt("missing PSEL1 magic");
  }
  std::size_t pos = kBundleMagic.size() + 1;
  const std::size_t nl = bytes.find('\n', pos);
  if (nl == std::string_view::npos) corrupt("truncated header length");
  std::size_t header_len = 0;
  try {
    header_len = std::stoull(std::string(bytes.substr(pos, nl - pos)));
  } catch (const std::exception&) {
    corrupt("bad header length");
  }
  pos = nl + 1;
  if (pos + header_len + 1 > bytes.size()) corrupt("truncated header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(pos, header_len));
  } catch (const nlohmann::json::exception& e) {
    corrupt(std::string("header is not JSON: ") + e.what());
  }
  pos += header_len;
  if (bytes[pos] != '\n') corrupt("header not newline-terminated");
  ++pos;

  Bundle b;
  b.meta = header.value("meta", nlohmann::json::object());
  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
  for (const auto& entry : header.at("tensors")) {
    const std::string name = entry.at("name").get<std::string>();
    const Shape shape = entry.at("shape").get<Shape>();
    const std::string dtype = entry.at("dtype").get<std::string>();
    const std::size_t n = element_count(shape);
    if (dtype == "f32") {
      if (pos + 4 * n > bytes.size()) corrupt("truncated data for '" + name + "'");
      std::vector<float> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = std::bit_cast<float>(read_le<std::uint32_t>(data + pos + 4 * i));
      pos += 4 * n;
      b.f32.emplace_back(name, Tensor<float>(shape, std::move(v)));
    } else if (dtype == "f64") {
      if (pos + 8 * n > bytes.size()) corrupt("truncated data for '" + name + "'");
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = std::bit_cast<double>(read_le<std::uint64_t>(data + pos + 8 * i));
      pos += 8 * n;
      b.f64.emplace_back(name, Tensor<double>(shape, std::move(v)));
    } else {
      corrupt("unknown dtype '" + dtype + "'");
    }
  }
  if (pos != bytes.size()) corrupt("trailing bytes after tensor data");
  return b;
}

void save_bundle(const Bundle& bundle, const std::filesystem::path& path) {
  corpus::write_text_file(path, encode_bundle(bundle));
}

Bundle load_bundle(const std::filesystem::path& path) { return decode_bundle(corpus::read_text_file(path)); }

}  // namespace premsel::ndt
