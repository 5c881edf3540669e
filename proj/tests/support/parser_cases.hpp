#pragma once

// Golden expressions paired with hand-written C++ equivalents. Variables are
// x1, x2, x3 (bindings in that order); the constant c is bound to 1.5.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace parser_cases {

struct Golden {
  std::string src;
  std::vector<double> at;
  double (*f)(const double* x);
};

constexpr double kC = 1.5;

inline const std::vector<Golden>& golden() {
  using std::abs, std::cos, std::exp, std::log, std::pow, std::sin, std::sqrt, std::tan;
  static const std::vector<Golden> cases{
      {"1/(1+(c/4)*(x1^2+x2^2))^2", {0.3, -0.7, 0}, [](const double* x) { return 1 / pow(1 + kC / 4 * (x[0] * x[0] + x[1] * x[1]), 2); }},
      {"cos(x1)^2", {0.4, 0, 0}, [](const double* x) { return pow(cos(x[0]), 2); }},
      {"x1 + x2 * x3", {1.2, -0.5, 2.0}, [](const double* x) { return x[0] + x[1] * x[2]; }},
      {"(x1 + x2) * x3", {1.2, -0.5, 2.0}, [](const double* x) { return (x[0] + x[1]) * x[2]; }},
      {"x1 - x2 - x3", {0.7, 0.2, 0.1}, [](const double* x) { return x[0] - x[1] - x[2]; }},
      {"x1 / x2 / x3", {3.0, 1.5, 0.8}, [](const double* x) { return x[0] / x[1] / x[2]; }},
      {"x1 ^ 2 ^ 0.5", {1.7, 0, 0}, [](const double* x) { return pow(x[0], pow(2.0, 0.5)); }},
      {"-x1^2", {0.9, 0, 0}, [](const double* x) { return -(x[0] * x[0]); }},
      {"(-x1)^2", {0.9, 0, 0}, [](const double* x) { return x[0] * x[0]; }},
      {"--x1", {0.3, 0, 0}, [](const double* x) { return x[0]; }},
      {"2*-x1", {0.3, 0, 0}, [](const double* x) { return -2 * x[0]; }},
      {"x1^-2", {1.3, 0, 0}, [](const double* x) { return pow(x[0], -2.0); }},
      {"sin(x1) * cos(x2)", {0.5, 1.1, 0}, [](const double* x) { return sin(x[0]) * cos(x[1]); }},
      {"tan(x1 / 2)", {0.8, 0, 0}, [](const double* x) { return tan(x[0] / 2); }},
      {"exp(-x1^2 - x2^2)", {0.3, 0.4, 0}, [](const double* x) { return exp(-x[0] * x[0] - x[1] * x[1]); }},
      {"log(1 + x1^2)", {0.6, 0, 0}, [](const double* x) { return log(1 + x[0] * x[0]); }},
      {"sqrt(x1^2 + x2^2 + x3^2)", {0.2, 0.3, 0.6}, [](const double* x) { return sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }},
      {"abs(x1 - x2)", {0.2, 0.9, 0}, [](const double* x) { return abs(x[0] - x[1]); }},
      {"pi * x1", {0.25, 0, 0}, [](const double* x) { return std::numbers::pi * x[0]; }},
      {"sin(pi * x1)", {0.3, 0, 0}, [](const double* x) { return sin(std::numbers::pi * x[0]); }},
      {"c * x1 * x2", {0.5, -2.0, 0}, [](const double* x) { return kC * x[0] * x[1]; }},
      {"1 + c * (x1^2 + x2^2) / 4", {0.5, 0.5, 0}, [](const double* x) { return 1 + kC * (x[0] * x[0] + x[1] * x[1]) / 4; }},
      {"4 / (1 + c * (x1^2 + x2^2) / 4)^2", {0.5, 0.5, 0}, [](const double* x) { return 4 / pow(1 + kC * (x[0] * x[0] + x[1] * x[1]) / 4, 2); }},
      {"cos(x1)^2 + sin(x1)^2", {1.234, 0, 0}, [](const double* x) { return pow(cos(x[0]), 2) + pow(sin(x[0]), 2); }},
      {"x1^3 - 3*x1*x2^2", {0.7, 0.4, 0}, [](const double* x) { return pow(x[0], 3) - 3 * x[0] * x[1] * x[1]; }},
      {"x1^x2", {1.8, 0.6, 0}, [](const double* x) { return pow(x[0], x[1]); }},
      {"exp(x2 * log(x1))", {1.8, 0.6, 0}, [](const double* x) { return exp(x[1] * log(x[0])); }},
      {"sqrt(1 - x1^2)", {0.6, 0, 0}, [](const double* x) { return sqrt(1 - x[0] * x[0]); }},
      {"1 / sqrt(x1)", {2.5, 0, 0}, [](const double* x) { return 1 / sqrt(x[0]); }},
      {"x1 * exp(x2) - x3", {0.5, 0.3, 1.0}, [](const double* x) { return x[0] * exp(x[1]) - x[2]; }},
      {"sin(cos(x1))", {0.9, 0, 0}, [](const double* x) { return sin(cos(x[0])); }},
      {"log(exp(x1) + exp(x2))", {0.1, -0.4, 0}, [](const double* x) { return log(exp(x[0]) + exp(x[1])); }},
      {"(x1 + 1) * (x1 - 1) * (x2 + 2)", {0.3, 0.7, 0}, [](const double* x) { return (x[0] + 1) * (x[0] - 1) * (x[1] + 2); }},
      {"x1 / (x2 * x3)", {1.0, 2.0, 4.0}, [](const double* x) { return x[0] / (x[1] * x[2]); }},
      {"x1 / x2 * x3", {1.0, 2.0, 4.0}, [](const double* x) { return x[0] / x[1] * x[2]; }},
      {"2^x1", {1.3, 0, 0}, [](const double* x) { return pow(2.0, x[0]); }},
      {"(x1^2)^1.5", {0.8, 0, 0}, [](const double* x) { return pow(x[0] * x[0], 1.5); }},
      {"1.5e-1 * x1 + 2.5E+0", {0.4, 0, 0}, [](const double* x) { return 0.15 * x[0] + 2.5; }},
      {".5 * x1", {0.4, 0, 0}, [](const double* x) { return 0.5 * x[0]; }},
      {"  x1\t*\n x2  ", {0.4, 0.9, 0}, [](const double* x) { return x[0] * x[1]; }},
      {"cos(x1) * cos(x2) - sin(x1) * sin(x2)", {0.2, 0.5, 0}, [](const double* x) { return cos(x[0] + x[1]); }},
      {"tan(x1)^2 + 1", {0.3, 0, 0}, [](const double* x) { return 1 / pow(cos(x[0]), 2); }},
      {"abs(sin(x1)) * x2", {-0.7, 1.4, 0}, [](const double* x) { return abs(sin(x[0])) * x[1]; }},
      {"x3 * (x1 - x2)^3", {0.4, 0.1, -1.2}, [](const double* x) { return x[2] * pow(x[0] - x[1], 3); }},
      {"1 - 2 * x1 + 3 * x1^2 - 4 * x1^3", {0.35, 0, 0}, [](const double* x) { return 1 - 2 * x[0] + 3 * x[0] * x[0] - 4 * pow(x[0], 3); }},
      {"exp(sin(x1) * x2) / (1 + x3^2)", {0.6, -0.8, 0.5}, [](const double* x) { return exp(sin(x[0]) * x[1]) / (1 + x[2] * x[2]); }},
      {"sqrt(exp(x1))", {0.9, 0, 0}, [](const double* x) { return sqrt(exp(x[0])); }},
      {"log(x1) / log(2)", {5.0, 0, 0}, [](const double* x) { return std::log2(x[0]); }},
      {"-(x1 + x2) ^ 2", {0.3, 0.2, 0}, [](const double* x) { return -pow(x[0] + x[1], 2); }},
      {"7", {0.1, 0.2, 0.3}, [](const double*) { return 7.0; }},
  };
  return cases;
}

struct Malformed {
  std::string src;
  int line;
  int column;
};

/// Each input fails to parse at the given 1-based position.
inline const std::vector<Malformed>& malformed() {
  static const std::vector<Malformed> cases{
      {"x1 + * 2", 1, 6},
      {"", 1, 1},
      {"(x1 + 2", 1, 8},
      {"x1 + 2)", 1, 7},
      {"sin x1", 1, 5},
      {"foo(x1)", 1, 1},
      {"x1 $ 2", 1, 4},
      {"y7 + 1", 1, 1},
      {"sin(x1, x2)", 1, 1},
      {"x1 +\n  2 ^", 2, 6},
  };
  return cases;
}

}  // namespace parser_cases
