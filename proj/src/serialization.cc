#include "irl1/serialization.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace irl1 {
namespace {

using nlohmann::json;

void append_array(std::string& out, const double* data, Index size) {
  out += '[';
  for (Index i = 0; i < size; ++i) {
    if (i > 0) out += ',';
    out += format_double(data[i]);
  }
  out += ']';
}

void append_vector(std::string& out, const Vector& v) { append_array(out, v.data(), v.size()); }

Vector read_vector(const json& node, Index expected, const char* name) {
  if (!node.is_array()) throw FormatError(fmt::format("\"{}\" must be an array", name));
  if (static_cast<Index>(node.size()) != expected) {
    throw FormatError(fmt::format("\"{}\" has {} entries, expected {}", name, node.size(), expected));
  }
  Vector v(expected);
  for (Index i = 0; i < expected; ++i) {
    const json& item = node[static_cast<std::size_t>(i)];
    if (!item.is_number()) throw FormatError(fmt::format("\"{}\" contains a non-number", name));
    v[i] = item.get<double>();
    if (!std::isfinite(v[i])) throw FormatError(fmt::format("\"{}\" contains a non-finite value", name));
  }
  return v;
}

Index read_dimension(const json& doc, const char* name) {
  if (!doc.contains(name) || !doc[name].is_number_integer()) {
    throw FormatError(fmt::format("missing integer field \"{}\"", name));
  }
  const auto v = doc[name].get<std::int64_t>();
  if (v < 1) throw FormatError(fmt::format("\"{}\" must be positive", name));
  return static_cast<Index>(v);
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  return fmt::format("{:.17g}", v);
}

std::string problem_to_json(const Matrix& A, const Vector& y) {
  // Row-major copy of the column-major Eigen storage.
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = A;
  std::string out = fmt::format("{{\"m\":{},\"n\":{},\"A\":", A.rows(), A.cols());
  append_array(out, rows.data(), rows.size());
  out += ",\"y\":";
  append_vector(out, y);
  out += '}';
  return out;
}

std::string instance_to_json(const RecoveryInstance& instance) {
  std::string out = problem_to_json(instance.A, instance.y);
  out.pop_back();
  out += ",\"x_true\":";
  append_vector(out, instance.x_true);
  out += fmt::format(",\"seed\":{},\"K\":{},\"noise_std\":{}}}", instance.seed, instance.K,
                     format_double(instance.noise_std));
  return out;
}

ProblemData problem_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("top-level value must be an object");
  const Index m = read_dimension(doc, "m");
  const Index n = read_dimension(doc, "n");
  if (!doc.contains("A") || !doc.contains("y")) throw FormatError("missing \"A\" or \"y\"");

  ProblemData data;
  const Vector flat = read_vector(doc["A"], m * n, "A");
  data.A = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      flat.data(), m, n);
  data.y = read_vector(doc["y"], m, "y");
  if (doc.contains("x_true")) data.x_true = read_vector(doc["x_true"], n, "x_true");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
      throw FormatError("\"seed\" must be an integer");
    }
    data.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("K")) data.K = read_dimension(doc, "K");
  if (doc.contains("noise_std") && doc["noise_std"].is_number()) {
    data.noise_std = doc["noise_std"].get<double>();
  }
  return data;
}

ProblemData read_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return problem_from_json(buffer.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::string certificate_to_json(const EquivalenceCertificate& certificate,
                                const MapScales& scales) {
  std::string out = "{\"support\":[";
  for (std::size_t i = 0; i < certificate.support.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(certificate.support[i]);
  }
  out += "],\"w\":{";
  for (Index i = 0; i < certificate.weights.size(); ++i) {
    if (i > 0) out += ',';
    out += fmt::format("\"{}\":{}", i, format_double(certificate.weights[i]));
  }
  out += "},\"b\":{";
  bool first = true;
  for (const auto& [i, b] : scales.b) {
    if (!first) out += ',';
    first = false;
    out += fmt::format("\"{}\":{}", i, format_double(b));
  }
  out += fmt::format("}},\"sigma_sq\":{},\"kkt_violation\":{}}}", format_double(scales.sigma_sq),
                     format_double(certificate.max_kkt_violation));
  return out;
}

std::string result_to_json(const SolveResult& result, const LpProblem& problem,
                           const SolverOptions& options) {
  const IterateRecord& last = result.trace.back();
  std::string out = fmt::format(
      "{{\"status\":\"{}\",\"iterations\":{},\"support_stable_at\":{},\"final_residual\":{},"
      "\"F\":{},\"F_eps\":{},\"nnz\":{},\"lambda\":{},\"p\":{},\"line_search\":{},"
      "\"eps_strategy\":\"{}\",\"model\":\"{}\",\"support\":[",
      to_string(result.status), result.iterations, result.support_stable_at,
      format_double(result.final_residual), format_double(last.F), format_double(last.F_smoothed),
      last.support.size(), format_double(problem.lambda()), format_double(problem.p()),
      options.use_line_search ? "true" : "false", to_string(options.eps_strategy),
      to_string(options.model));
  for (std::size_t i = 0; i < last.support.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(last.support[i]);
  }
  out += "],\"x\":";
  append_vector(out, result.final_x);
  out += ",\"warnings\":";
  out += json(result.warnings).dump();
  out += '}';
  return out;
}

}  // namespace irl1
