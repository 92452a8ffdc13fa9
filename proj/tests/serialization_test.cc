#include "irl1/serialization.hpp"

#include <cmath>
#include <filesystem>
#include <limits>

#include <gtest/gtest.h>
#include <json.hpp>

namespace irl1 {
namespace {

TEST(FormatDouble, RoundTripsAndHandlesNonFinite) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "null");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "null");
}

TEST(ProblemJson, RoundTripIsBitExact) {
  const RecoveryInstance inst = generate_instance(7, 11, 3, 21);
  const ProblemData back = problem_from_json(instance_to_json(inst));
  EXPECT_EQ(back.A, inst.A);
  EXPECT_EQ(back.y, inst.y);
  ASSERT_TRUE(back.x_true.has_value());
  EXPECT_EQ(*back.x_true, inst.x_true);
  EXPECT_EQ(back.seed, inst.seed);
  EXPECT_EQ(back.K, inst.K);
  EXPECT_EQ(back.noise_std, inst.noise_std);
}

TEST(ProblemJson, PlainProblemHasNoRecoveryFields) {
  Matrix A(2, 3);
  A << 1, 2, 3, 4, 5, 6;
  const Vector y = (Vector(2) << 0.5, -0.25).finished();
  const std::string text = problem_to_json(A, y);
  const auto doc = nlohmann::json::parse(text);
  EXPECT_EQ(doc.at("m"), 2);
  EXPECT_EQ(doc.at("n"), 3);
  EXPECT_EQ(doc.at("A").size(), 6u);
  EXPECT_EQ(doc.at("A")[3].get<double>(), 4.0);
  const ProblemData back = problem_from_json(text);
  EXPECT_EQ(back.A, A);
  EXPECT_FALSE(back.x_true.has_value());
}

TEST(ProblemJson, RejectsMalformedInput) {
  EXPECT_THROW(problem_from_json("{not json"), FormatError);
  EXPECT_THROW(problem_from_json(R"({"m":2,"n":2,"A":[1,2,3],"y":[1,2]})"), FormatError);
  EXPECT_THROW(problem_from_json(R"({"m":1,"n":1,"A":[1],"y":[1,2]})"), FormatError);
  EXPECT_THROW(problem_from_json(R"({"m":1,"n":1,"A":["a"],"y":[1]})"), FormatError);
  EXPECT_THROW(problem_from_json(R"({"n":1,"A":[1],"y":[1]})"), FormatError);
  EXPECT_THROW(problem_from_json(R"([1,2])"), FormatError);
}

TEST(ProblemFile, WriteAndRead) {
  const RecoveryInstance inst = generate_instance(3, 4, 2, 5);
  const auto path = std::filesystem::temp_directory_path() / "irl1_serialization_test.json";
  write_text_file(path.string(), instance_to_json(inst));
  EXPECT_EQ(read_problem_file(path.string()).A, inst.A);
  std::filesystem::remove(path);
  EXPECT_THROW(read_problem_file(path.string()), std::runtime_error);
}

TEST(CertificateJson, ParsesWithExpectedFields) {
  EquivalenceCertificate cert;
  cert.support = {1};
  cert.weights = (Vector(2) << 0.4, 0.5).finished();
  cert.support_weights[1] = 0.5;
  cert.inactive_lower_bounds[0] = 0.2;
  cert.max_kkt_violation = 1e-12;
  MapScales scales;
  scales.b[1] = 2.0;
  scales.sigma_sq = 0.05;
  const auto doc = nlohmann::json::parse(certificate_to_json(cert, scales));
  EXPECT_EQ(doc.at("support"), nlohmann::json::array({1}));
  EXPECT_EQ(doc.at("w").at("0").get<double>(), 0.4);
  EXPECT_EQ(doc.at("b").at("1").get<double>(), 2.0);
  EXPECT_EQ(doc.at("sigma_sq").get<double>(), 0.05);
  EXPECT_EQ(doc.at("kkt_violation").get<double>(), 1e-12);
}

TEST(ResultJson, ReportsStatusAndPoint) {
  const RecoveryInstance inst = generate_instance(10, 20, 2, 8);
  const LpProblem problem(make_objective(inst), 0.05, 0.5);
  SolverOptions o;
  o.max_iter = 3;
  const SolveResult r = solve(problem, o);
  const auto doc = nlohmann::json::parse(result_to_json(r, problem, o));
  EXPECT_EQ(doc.at("status"), std::string(to_string(r.status)));
  EXPECT_EQ(doc.at("iterations"), r.iterations);
  ASSERT_EQ(doc.at("x").size(), 20u);
  for (Index i = 0; i < 20; ++i) EXPECT_EQ(doc.at("x")[i].get<double>(), r.final_x[i]);
}

}  // namespace
}  // namespace irl1
