#include "cvlab/sim_config.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include "cvlab/analysis.hpp"
#include "cvlab/error.hpp"

namespace cvlab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& text) {
  Int value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc{} && ptr == text.data() + text.size(), key + " must be an integer, got '" + text + "'");
  return value;
}

double parse_real(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == text.size() && !text.empty(), key + " must be a number, got '" + text + "'");
  return value;
}

}  // namespace

SimConfig SimConfig::parse(std::istream& in) {
  std::map<std::string, std::string> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, "config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    require(!values.contains(key), "config key '" + key + "' repeated");
    values[key] = trim(line.substr(eq + 1));
  }
  return from_map(values);
}

SimConfig SimConfig::from_map(const std::map<std::string, std::string>& values) {
  static const std::set<std::string> known{"n", "k", "algo", "tie", "bit", "q", "data", "trials", "seed"};
  for (const auto& [key, value] : values) require(known.contains(key), "unknown config key '" + key + "'");
  require(values.contains("n"), "config needs n");
  require(values.contains("k"), "config needs k");

  SimConfig c;
  c.n = parse_int<std::int64_t>("n", values.at("n"));
  c.k = parse_int<std::int64_t>("k", values.at("k"));
  if (values.contains("trials")) c.trials = parse_int<std::int64_t>("trials", values.at("trials"));
  if (values.contains("seed")) c.seed = parse_int<std::uint64_t>("seed", values.at("seed"));

  const std::string algo = values.contains("algo") ? values.at("algo") : "majority";
  const std::string tie = values.contains("tie") ? values.at("tie") : "zero";
  require(tie == "zero" || tie == "one", "tie must be zero or one");
  if (algo == "majority") {
    c.algo = AlgorithmSpec::majority(tie == "zero" ? TiePolicy::ToZero : TiePolicy::ToOne);
  } else if (algo == "constant") {
    c.algo = AlgorithmSpec::constant(values.contains("bit") ? parse_int<int>("bit", values.at("bit")) : 0);
  } else if (algo == "anticorr") {
    c.algo = AlgorithmSpec::anticorr_interval();
  } else {
    throw InvalidArgument("algo must be majority, constant or anticorr");
  }

  const std::string default_data = algo == "anticorr" ? "uniform_threshold" : "point_mass";
  const std::string data = values.contains("data") ? values.at("data") : default_data;
  if (data == "point_mass") {
    const double q = values.contains("q") ? parse_real("q", values.at("q")) : 0.5;
    require(q >= 0 && q <= 1, "q must lie in [0, 1]");
    c.data = DataSpec::point_mass(c.n, q);
  } else if (data == "uniform_threshold") {
    require(!values.contains("q"), "q only applies to point_mass data");
    c.data = DataSpec::uniform_threshold(c.n);
  } else {
    throw InvalidArgument("data must be point_mass or uniform_threshold");
  }
  return c;
}

std::map<std::string, std::string> SimConfig::canonical() const {
  std::map<std::string, std::string> out;
  out["n"] = std::to_string(n);
  out["k"] = std::to_string(k);
  out["algo"] = to_string(algo.kind);
  if (algo.kind == AlgorithmKind::Majority) out["tie"] = to_string(algo.tie_policy);
  if (algo.kind == AlgorithmKind::Constant) out["bit"] = std::to_string(algo.constant_bit);
  out["data"] = to_string(data.kind);
  if (data.kind == DataKind::PointMassRandomLabel) out["q"] = format_real(data.q);
  out["trials"] = std::to_string(trials);
  return out;
}

}  // namespace cvlab::cli
