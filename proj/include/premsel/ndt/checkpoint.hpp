#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "premsel/ndt/params.hpp"

namespace premsel::ndt {

/// On-disk layout:
///
///   PSEL1\n
///   <header byte count>\n
///   <header JSON>\n
///   <raw little-endian tensor data, in header order>
///
/// The header is {"meta": {...}, "tensors": [{"name", "shape", "dtype"}, ...]}
/// with dtype "f32" or "f64". Polyak shadows use the `<name>.avg` convention.
struct Bundle {
  nlohmann::json meta = nlohmann::json::object();
  std::vector<std::pair<std::string, Tensor<float>>> f32;
  std::vector<std::pair<std::string, Tensor<double>>> f64;

  const Tensor<float>& tensor(const std::string& name) const;
  bool has(const std::string& name) const;
};

inline constexpr std::string_view kBundleMagic = "PSEL1";

std::string encode_bundle(const Bundle& bundle);
/// Throws DataError("CheckpointError") on malformed input.
Bundle decode_bundle(std::string_view bytes);

void save_bundle(const Bundle& bundle, const std::filesystem::path& path);
Bundle load_bundle(const std::filesystem::path& path);

inline std::string shadow_name(const std::string& name) { return name + ".avg"; }

}  // namespace premsel::ndt
