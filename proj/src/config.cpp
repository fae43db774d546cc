#include "loggas/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "loggas/sample_io.hpp"

namespace loggas {

ExternalField ExperimentConfig::make_field() const {
  return ExternalField(field_kind, field_coeffs, field_bound);
}

InteractionPotential ExperimentConfig::make_interaction() const {
  if (interaction_amplitudes.empty()) return InteractionPotential();
  if (interaction_amplitudes.size() != interaction_widths.size())
    throw ConfigError(0, "interaction.widths", "amplitude and width lists differ in length");
  std::vector<GaussianTerm> terms;
  for (std::size_t i = 0; i < interaction_amplitudes.size(); ++i)
    terms.push_back({interaction_amplitudes[i], interaction_widths[i]});
  return InteractionPotential(std::move(terms));
}

EnsembleSpec ExperimentConfig::make_spec() const {
  return EnsembleSpec::make(n, beta, make_field(), make_interaction());
}

GridSpec ExperimentConfig::make_grid() const {
  if (!grid_left || !grid_right) {
    GridSpec g = GridSpec::default_for(beta, grid_cells);
    // widen for fields flatter than t^2
    const double alpha = make_field().alpha_q();
    if (alpha < 2.0) {
      const double stretch = std::sqrt(2.0 / alpha);
      g.left *= stretch;
      g.right *= stretch;
    }
    return g;
  }
  return GridSpec{*grid_left, *grid_right, grid_cells};
}

namespace {

std::vector<double> parse_list(const std::string& value, int line, const std::string& key) {
  std::vector<double> out;
  if (value.empty()) return out;
  std::istringstream is(value);
  std::string cell;
  while (std::getline(is, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
      if (used != cell.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConfigError(line, key, "expected a comma-separated list of numbers, got '" + value + "'");
    }
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& value, int line, const std::string& key) {
  std::vector<int> out;
  for (double v : parse_list(value, line, key)) {
    if (v != std::floor(v)) throw ConfigError(line, key, "expected integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

double parse_number(const std::string& value, int line, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    while (used < value.size() && std::isspace(static_cast<unsigned char>(value[used]))) ++used;
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(line, key, "expected a number, got '" + value + "'");
  }
}

std::uint64_t parse_unsigned(const std::string& value, int line, const std::string& key) {
  try {
    return std::stoull(value);
  } catch (const std::exception&) {
    throw ConfigError(line, key, "expected a nonnegative integer, got '" + value + "'");
  }
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_double(values[i]);
  }
  return out;
}

std::string join_int(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    auto end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(lineno, line, "expected 'key = value'");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    while (!value.empty() && std::isspace(static_cast<unsigned char>(value.front()))) value.erase(0, 1);

    if (key == "version") cfg.version = static_cast<int>(parse_number(value, lineno, key));
    else if (key == "ensemble.n") cfg.n = static_cast<int>(parse_number(value, lineno, key));
    else if (key == "ensemble.beta") cfg.beta = parse_number(value, lineno, key);
    else if (key == "field.kind") {
      try {
        cfg.field_kind = field_kind_from_string(value);
      } catch (const std::exception& e) {
        throw ConfigError(lineno, key, e.what());
      }
    }
    else if (key == "field.coeffs") cfg.field_coeffs = parse_list(value, lineno, key);
    else if (key == "field.bound") cfg.field_bound = parse_number(value, lineno, key);
    else if (key == "interaction.amplitudes") cfg.interaction_amplitudes = parse_list(value, lineno, key);
    else if (key == "interaction.widths") cfg.interaction_widths = parse_list(value, lineno, key);
    else if (key == "grid.left") { if (value == "auto") cfg.grid_left.reset(); else cfg.grid_left = parse_number(value, lineno, key); }
    else if (key == "grid.right") { if (value == "auto") cfg.grid_right.reset(); else cfg.grid_right = parse_number(value, lineno, key); }
    else if (key == "grid.cells") cfg.grid_cells = parse_unsigned(value, lineno, key);
    else if (key == "solver.tol") cfg.solver_tol = parse_number(value, lineno, key);
    else if (key == "selfconsistent.tol") cfg.sc_tol = parse_number(value, lineno, key);
    else if (key == "selfconsistent.damping") cfg.damping = parse_number(value, lineno, key);
    else if (key == "sampler.target") cfg.target = value;
    else if (key == "sampler.algorithm") cfg.algorithm = value;
    else if (key == "sampler.seed") cfg.seed = parse_unsigned(value, lineno, key);
    else if (key == "sampler.chains") cfg.chains = static_cast<int>(parse_number(value, lineno, key));
    else if (key == "sampler.samples") cfg.n_samples = parse_unsigned(value, lineno, key);
    else if (key == "sampler.burnin") cfg.burn_in = value == "auto" ? 0 : parse_unsigned(value, lineno, key);
    else if (key == "sampler.thin") cfg.thin = value == "auto" ? 0 : parse_unsigned(value, lineno, key);
    else if (key == "sampler.step") cfg.initial_step = parse_number(value, lineno, key);
    else if (key == "sampler.checkpoint_every") cfg.checkpoint_every = parse_unsigned(value, lineno, key);
    else if (key == "stats.k") cfg.corr_k = parse_int_list(value, lineno, key);
    else if (key == "stats.xi") cfg.xi = parse_number(value, lineno, key);
    else if (key == "stats.a") cfg.bulk_point = parse_number(value, lineno, key);
    else if (key == "stats.nu") cfg.n_u = static_cast<int>(parse_number(value, lineno, key));
    else if (key == "stats.bandwidth") cfg.kde_bandwidth = value == "auto" ? 0.0 : parse_number(value, lineno, key);
    else if (key == "stats.spacing_bins") cfg.spacing_bins = static_cast<int>(parse_number(value, lineno, key));
    else if (key == "stats.f1_radius") cfg.f1_radius = parse_number(value, lineno, key);
    else if (key == "stats.f2_radius") cfg.f2_radius = parse_number(value, lineno, key);
    else if (key == "stats.lambda") cfg.exp_lambda = parse_number(value, lineno, key);
    else if (key == "output.dir") cfg.out_dir = value;
    else throw ConfigError(lineno, key, "unknown key");
  }

  // cross-field validation
  if (cfg.n < 1) throw ConfigError(0, "ensemble.n", "must be at least 1");
  if (!(cfg.beta > 0.0)) throw ConfigError(0, "ensemble.beta", "must be positive");
  if (cfg.interaction_amplitudes.size() != cfg.interaction_widths.size())
    throw ConfigError(0, "interaction.widths", "amplitude and width lists differ in length");
  if (cfg.target != "modified" && cfg.target != "comparison" && cfg.target != "gaussian")
    throw ConfigError(0, "sampler.target", "must be modified, comparison or gaussian");
  if (cfg.algorithm != "metropolis" && cfg.algorithm != "mala" && cfg.algorithm != "tridiagonal")
    throw ConfigError(0, "sampler.algorithm", "must be metropolis, mala or tridiagonal");
  if (cfg.algorithm == "tridiagonal" && cfg.target != "gaussian")
    throw ConfigError(0, "sampler.algorithm", "tridiagonal draws only the gaussian target");
  if (!(cfg.xi > 0.0 && cfg.xi <= 0.5)) throw ConfigError(0, "stats.xi", "must lie in (0, 1/2]");
  if (!(cfg.damping > 0.0 && cfg.damping <= 1.0))
    throw ConfigError(0, "selfconsistent.damping", "must lie in (0, 1]");
  for (int k : cfg.corr_k)
    if (k < 1 || k > 3) throw ConfigError(0, "stats.k", "k must be 1, 2 or 3");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError(0, "config", "cannot open " + path);
  std::ostringstream buffer;
  buffer << is.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "version = " << c.version << "\n";
  os << "ensemble.n = " << c.n << "\n";
  os << "ensemble.beta = " << format_double(c.beta) << "\n";
  os << "field.kind = " << to_string(c.field_kind) << "\n";
  os << "field.coeffs = " << join(c.field_coeffs) << "\n";
  os << "field.bound = " << format_double(c.field_bound) << "\n";
  os << "interaction.amplitudes = " << join(c.interaction_amplitudes) << "\n";
  os << "interaction.widths = " << join(c.interaction_widths) << "\n";
  os << "grid.left = " << (c.grid_left ? format_double(*c.grid_left) : "auto") << "\n";
  os << "grid.right = " << (c.grid_right ? format_double(*c.grid_right) : "auto") << "\n";
  os << "grid.cells = " << c.grid_cells << "\n";
  os << "solver.tol = " << format_double(c.solver_tol) << "\n";
  os << "selfconsistent.tol = " << format_double(c.sc_tol) << "\n";
  os << "selfconsistent.damping = " << format_double(c.damping) << "\n";
  os << "sampler.target = " << c.target << "\n";
  os << "sampler.algorithm = " << c.algorithm << "\n";
  os << "sampler.seed = " << c.seed << "\n";
  os << "sampler.chains = " << c.chains << "\n";
  os << "sampler.samples = " << c.n_samples << "\n";
  os << "sampler.burnin = " << c.burn_in << "\n";
  os << "sampler.thin = " << c.thin << "\n";
  os << "sampler.step = " << format_double(c.initial_step) << "\n";
  os << "sampler.checkpoint_every = " << c.checkpoint_every << "\n";
  os << "stats.k = " << join_int(c.corr_k) << "\n";
  os << "stats.xi = " << format_double(c.xi) << "\n";
  os << "stats.a = " << format_double(c.bulk_point) << "\n";
  os << "stats.nu = " << c.n_u << "\n";
  os << "stats.bandwidth = " << (c.kde_bandwidth == 0.0 ? "auto" : format_double(c.kde_bandwidth)) << "\n";
  os << "stats.spacing_bins = " << c.spacing_bins << "\n";
  os << "stats.f1_radius = " << format_double(c.f1_radius) << "\n";
  os << "stats.f2_radius = " << format_double(c.f2_radius) << "\n";
  os << "stats.lambda = " << format_double(c.exp_lambda) << "\n";
  os << "output.dir = " << c.out_dir << "\n";
  return os.str();
}

}  // namespace loggas
