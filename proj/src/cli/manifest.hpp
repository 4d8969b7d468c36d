#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace zipfkit::cli {

class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(std::string_view bytes);
  std::string hex_digest();  // finalises

 private:
  void* ctx_;  // EVP_MD_CTX
};

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

struct InputDigest {
  std::string path;
  std::string sha256;
};

// Sidecar written next to every file a command produces.
struct RunManifest {
  std::vector<std::string> command_line;
  std::vector<InputDigest> inputs;
  std::vector<std::string> outputs;
  std::optional<std::uint64_t> seed;
  nlohmann::json extra = nlohmann::json::object();
};

nlohmann::json manifest_json(const RunManifest& m);

// <output>.manifest.json
std::filesystem::path manifest_path_for(const std::filesystem::path& output);

void write_manifest(const std::filesystem::path& path, const RunManifest& m);

}  // namespace zipfkit::cli
