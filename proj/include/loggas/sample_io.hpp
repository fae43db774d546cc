#ifndef LOGGAS_SAMPLE_IO_HPP
#define LOGGAS_SAMPLE_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "loggas/stats.hpp"

namespace loggas {

// Header of a sample file: one retained configuration per CSV row (positions
// sorted ascending), preceded by '# key = value' metadata lines.
struct SampleMeta {
  int n = 0;
  double beta = 0.0;
  std::string field;        // field descriptor string
  std::string interaction;  // interaction descriptor or "none"
  std::string sampler;      // metropolis | mala | tridiagonal
  std::string target;       // modified | comparison | gaussian
  std::uint64_t seed = 0;
  std::uint64_t n_steps = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t thin = 0;
  double step_size = 0.0;
  double acceptance_rate = 0.0;
};

void write_samples_csv(const std::string& path, const SampleMeta& meta, const SampleSet& samples);
void append_samples_csv(const std::string& path, const SampleSet& samples);
std::pair<SampleMeta, SampleSet> read_samples_csv(const std::string& path);

std::string format_double(double v);  // shortest round-trip decimal

}  // namespace loggas

#endif
