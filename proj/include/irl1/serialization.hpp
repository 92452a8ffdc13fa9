#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "irl1/diagnostics.hpp"
#include "irl1/instance_gen.hpp"
#include "irl1/problem_model.hpp"
#include "irl1/solver.hpp"

namespace irl1 {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least-squares data as read from disk. The recovery fields are present
/// only for generated instances.
struct ProblemData {
  Matrix A;
  Vector y;
  std::optional<Vector> x_true;
  std::optional<std::uint64_t> seed;
  std::optional<Index> K;
  std::optional<double> noise_std;
};

/// Shortest form that still carries 17 significant digits.
std::string format_double(double v);

/// {"m":..,"n":..,"A":[row-major],"y":[..]}
std::string problem_to_json(const Matrix& A, const Vector& y);
/// The problem container plus "x_true", "seed", "K" and "noise_std".
std::string instance_to_json(const RecoveryInstance& instance);

/// Throws FormatError on malformed input.
ProblemData problem_from_json(const std::string& text);
ProblemData read_problem_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// {"support":[..],"w":{..},"b":{..},"kkt_violation":..}
std::string certificate_to_json(const EquivalenceCertificate& certificate,
                                const MapScales& scales);

/// Status, counts, residual, objective values, and the final point.
std::string result_to_json(const SolveResult& result, const LpProblem& problem,
                           const SolverOptions& options);

}  // namespace irl1
