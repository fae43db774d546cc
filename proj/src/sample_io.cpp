#include "loggas/sample_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace loggas {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write_rows(std::ofstream& os, const SampleSet& samples) {
  for (const auto& row : samples) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      os << format_double(row[i]);
    }
    os << "\n";
  }
}

}  // namespace

void write_samples_csv(const std::string& path, const SampleMeta& meta, const SampleSet& samples) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << "# loggas-samples v1\n";
  os << "# n = " << meta.n << "\n";
  os << "# beta = " << format_double(meta.beta) << "\n";
  os << "# field = " << meta.field << "\n";
  os << "# interaction = " << meta.interaction << "\n";
  os << "# sampler = " << meta.sampler << "\n";
  os << "# target = " << meta.target << "\n";
  os << "# seed = " << meta.seed << "\n";
  os << "# steps = " << meta.n_steps << "\n";
  os << "# burn_in = " << meta.burn_in << "\n";
  os << "# thin = " << meta.thin << "\n";
  write_rows(os, samples);
}

void append_samples_csv(const std::string& path, const SampleSet& samples) {
  std::ofstream os(path, std::ios::app);
  if (!os) throw std::runtime_error("cannot open for appending: " + path);
  write_rows(os, samples);
}

std::pair<SampleMeta, SampleSet> read_samples_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  SampleMeta meta;
  SampleSet samples;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# loggas-samples", 0) == 0) {
        header_seen = true;
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(2, eq - 3);
      while (!key.empty() && key.back() == ' ') key.pop_back();
      std::string value = line.substr(eq + 1);
      if (!value.empty() && value.front() == ' ') value.erase(0, 1);
      if (key == "n") meta.n = std::stoi(value);
      else if (key == "beta") meta.beta = std::stod(value);
      else if (key == "field") meta.field = value;
      else if (key == "interaction") meta.interaction = value;
      else if (key == "sampler") meta.sampler = value;
      else if (key == "target") meta.target = value;
      else if (key == "seed") meta.seed = std::stoull(value);
      else if (key == "steps") meta.n_steps = std::stoull(value);
      else if (key == "burn_in") meta.burn_in = std::stoull(value);
      else if (key == "thin") meta.thin = std::stoull(value);
      else if (key == "step_size") meta.step_size = std::stod(value);
      else if (key == "acceptance_rate") meta.acceptance_rate = std::stod(value);
      continue;
    }
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    if (meta.n > 0 && static_cast<int>(row.size()) != meta.n)
      throw std::runtime_error("sample row width disagrees with header n in " + path);
    std::sort(row.begin(), row.end());  // statistics assume sorted ingestion
    samples.push_back(std::move(row));
  }
  if (!header_seen) throw std::runtime_error("not a loggas sample file: " + path);
  return {meta, samples};
}

}  // namespace loggas
