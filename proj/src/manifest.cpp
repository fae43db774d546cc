#include "loggas/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace loggas {

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot hash missing file: " + path);
  std::uint64_t h = 1469598103934665603ULL;
  char buffer[1 << 14];
  while (is) {
    is.read(buffer, sizeof(buffer));
    const auto got = is.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buffer[i]);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

std::string hash_string(std::uint64_t hash) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

Manifest::Manifest(const std::string& command, const std::string& config_text) {
  doc_["manifest_version"] = 1;
  doc_["tool"] = "loggas";
  doc_["command"] = command;
  doc_["config"] = config_text;
  doc_["results"] = nlohmann::json::object();
  doc_["outputs"] = nlohmann::json::array();
}

void Manifest::set_result(const std::string& key, double value) { doc_["results"][key] = value; }
void Manifest::set_result(const std::string& key, const std::string& value) { doc_["results"][key] = value; }
void Manifest::set_result(const std::string& key, std::int64_t value) { doc_["results"][key] = value; }

void Manifest::add_output(const std::string& path) {
  nlohmann::json entry;
  entry["file"] = std::filesystem::path(path).filename().string();
  entry["bytes"] = static_cast<std::int64_t>(std::filesystem::file_size(path));
  entry["fnv1a64"] = hash_string(fnv1a64_file(path));
  doc_["outputs"].push_back(entry);
}

void Manifest::write(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write manifest: " + path);
  os << doc_.dump(2) << "\n";
}

nlohmann::json Manifest::read(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read manifest: " + path);
  nlohmann::json doc;
  is >> doc;
  return doc;
}

}  // namespace loggas
