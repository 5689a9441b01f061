#include "runsum/params.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "runsum/error.hpp"

namespace runsum {

namespace {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& token, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw IoError("params: bad number '" + token + "' for key '" + key + "'");
  }
}

int parse_int(const std::string& token, const std::string& key) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw IoError("params: bad integer '" + token + "' for key '" + key + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& value) {
  std::istringstream in(value);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

void write_params(std::ostream& out, const KernelParams& params) {
  const Partition& p = params.partition;
  std::vector<double> weights = params.weights;
  if (weights.empty()) {
    for (const Slice& s : to_slices(p, params.sigma0).slices) weights.push_back(s.weight);
  }
  out << "# piecewise-constant Gaussian approximation\n";
  out << "format = " << kParamsFormat << "\n";
  out << "k = " << p.k() << "\n";
  out << "sigma0 = " << format_real(params.sigma0) << "\n";
  out << "model = " << to_string(params.model) << "\n";
  out << "breakpoints =";
  for (int b : p.breakpoints) out << ' ' << b;
  out << "\nconstants =";
  for (double c : p.constants) out << ' ' << format_real(c);
  out << "\nweights =";
  for (double w : weights) out << ' ' << format_real(w);
  out << "\ne2 = " << format_real(params.e2) << "\n";
}

KernelParams read_params(std::istream& in) {
  std::map<std::string, std::string> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw IoError("params: line " + std::to_string(lineno) + " is not 'key = value'");
    }
    const std::string key = trim(t.substr(0, eq));
    static const char* const known[] = {"format", "k", "sigma0", "model",
                                        "breakpoints", "constants", "weights", "e2"};
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw IoError("params: unknown key '" + key + "'");
    }
    if (!entries.emplace(key, trim(t.substr(eq + 1))).second) {
      throw IoError("params: duplicate key '" + key + "'");
    }
  }

  auto require = [&](const std::string& key) -> const std::string& {
    auto it = entries.find(key);
    if (it == entries.end()) throw IoError("params: missing key '" + key + "'");
    return it->second;
  };

  if (require("format") != kParamsFormat) {
    throw IoError("params: unsupported format '" + require("format") + "'");
  }
  KernelParams params;
  const int k = parse_int(require("k"), "k");
  params.sigma0 = parse_real(require("sigma0"), "sigma0");
  try {
    params.model = parse_error_model(require("model"));
  } catch (const InvalidArgument& e) {
    throw IoError(std::string("params: ") + e.what());
  }
  for (const auto& tok : split(require("breakpoints"))) {
    params.partition.breakpoints.push_back(parse_int(tok, "breakpoints"));
  }
  for (const auto& tok : split(require("constants"))) {
    params.partition.constants.push_back(parse_real(tok, "constants"));
  }
  if (auto it = entries.find("weights"); it != entries.end()) {
    for (const auto& tok : split(it->second)) params.weights.push_back(parse_real(tok, "weights"));
  }
  if (auto it = entries.find("e2"); it != entries.end()) params.e2 = parse_real(it->second, "e2");

  if (k < 1 || static_cast<std::size_t>(k) != params.partition.k()) {
    throw IoError("params: k does not match the number of breakpoints");
  }
  if (!params.weights.empty() && params.weights.size() != params.partition.k()) {
    throw IoError("params: weights length does not match k");
  }
  if (!(params.sigma0 > 0.0)) throw IoError("params: sigma0 must be positive");
  try {
    params.partition.validate(std::numeric_limits<int>::max());
  } catch (const InvalidArgument& e) {
    throw IoError(std::string("params: ") + e.what());
  }
  return params;
}

void save_params(const std::filesystem::path& path, const KernelParams& params) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_params(out, params);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

KernelParams load_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_params(in);
}

}  // namespace runsum
