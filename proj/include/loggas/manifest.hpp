#ifndef LOGGAS_MANIFEST_HPP
#define LOGGAS_MANIFEST_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

namespace loggas {

// FNV-1a 64 of a file's bytes; used to pin run outputs in manifests.
std::uint64_t fnv1a64_file(const std::string& path);
std::string hash_string(std::uint64_t hash);

// Run manifest: JSON with the serialized config, the command, result numbers
// and one {file, bytes, fnv1a64} entry per output. Enough to re-run the step
// bit-identically.
class Manifest {
public:
  Manifest(const std::string& command, const std::string& config_text);

  void set_result(const std::string& key, double value);
  void set_result(const std::string& key, const std::string& value);
  void set_result(const std::string& key, std::int64_t value);
  void add_output(const std::string& path);

  void write(const std::string& path) const;
  static nlohmann::json read(const std::string& path);

  const nlohmann::json& json() const { return doc_; }

private:
  nlohmann::json doc_;
};

}  // namespace loggas

#endif
