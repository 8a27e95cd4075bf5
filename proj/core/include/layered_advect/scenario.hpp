#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lad {

/// Scalar function of one variable with exact derivatives up to order 4.
///
/// The representable family is closed under differentiation: polynomials,
/// constants, scaled sines a·sin(ω s) and finite sums of those. Evaluation goes
/// through a flattened canonical form (one merged polynomial plus a list of
/// sines), so a deeply nested sum costs no more than a flat one.
class SmoothFunction {
 public:
  enum class Kind { polynomial, constant, scaled_sine, sum };

  static constexpr int max_derivative = 4;

  /// Zero function.
  SmoothFunction();

  static SmoothFunction polynomial(std::vector<double> coefficients);
  static SmoothFunction constant(double value);
  static SmoothFunction scaled_sine(double amplitude, double frequency);
  static SmoothFunction sum(std::vector<SmoothFunction> terms);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::vector<double>& parameters() const noexcept { return params_; }
  [[nodiscard]] const std::vector<SmoothFunction>& terms() const noexcept { return terms_; }

  [[nodiscard]] double operator()(double s) const noexcept { return eval(s, 0); }

  /// i-th derivative at s. Throws std::domain_error for i outside [0, 4].
  [[nodiscard]] double derivative(int i, double s) const;

  /// All derivatives 0..4 at s in one pass.
  [[nodiscard]] std::array<double, 5> jet(double s) const noexcept;

  /// True when the function is identically zero.
  [[nodiscard]] bool is_zero() const noexcept;

  /// Round-trippable textual form, e.g. `sum:[const:1,sine:[0.5,3]]`.
  [[nodiscard]] std::string to_string() const;

 private:
  struct Sine {
    double amplitude;
    double frequency;
  };

  [[nodiscard]] double eval(double s, int i) const noexcept;
  void flatten_into(std::vector<double>& poly, std::vector<Sine>& sines) const;
  void compile();

  Kind kind_ = Kind::constant;
  std::vector<double> params_;
  std::vector<SmoothFunction> terms_;

  // Canonical evaluation form.
  std::vector<double> poly_;
  std::vector<Sine> sines_;
};

/// One initial-boundary-value problem instance:
///   y_t − ε y_xx + M y_x = 0 on (0,1)×(0,T), y(0,t)=v(t), y(1,t)=0, y(x,0)=y0(x).
struct ProblemData {
  double M = 1.0;
  double T = 1.2;
  SmoothFunction y0;
  SmoothFunction v;

  /// Throws std::invalid_argument unless M > 0 and T ≥ 1/M.
  void validate() const;
};

/// One-sided data of y0 and v at the origin that set the strength of every
/// layer order.
struct JumpConstants {
  double c_plus = 0.0;   ///< y0(0)
  double c_minus = 0.0;  ///< v(0)
  double d_plus = 0.0;   ///< y0'(0)
  double d_minus = 0.0;  ///< −v'(0)/M
  double e_plus = 0.0;   ///< y0''(0)
  double e_minus = 0.0;  ///< v''(0)/M²
  double f_minus = 0.0;  ///< v''(0)/M³
  double h_plus = 0.0;   ///< y0'''(0)/6
  double h_minus = 0.0;  ///< −v'''(0)/(6M³)
};

[[nodiscard]] JumpConstants jump_constants(const ProblemData& p);

/// Entries M^k y0^{(k)}(0) + (−1)^{k+1} v^{(k)}(0) for k = 0..order_max.
/// A zero entry means the corresponding layer order is absent.
/// Throws std::domain_error when order_max is outside [0, 4].
[[nodiscard]] std::vector<double> compatibility_defect(const ProblemData& p, int order_max);

enum class Region { above_characteristic, below_characteristic, on_characteristic };

/// Position relative to the characteristic x = Mt (exact comparison of x − Mt with 0).
[[nodiscard]] Region classify_region(double x, double t, double M) noexcept;

/// Stretched coordinates of the three layers.
struct ScaledCoords {
  double w = 0.0;    ///< (x − Mt)/√ε, internal layer
  double z = 0.0;    ///< (1 − x)/ε, boundary layer at x = 1
  double tau = 0.0;  ///< (1/M − t)/√ε, time to the layer collision
  Region region = Region::on_characteristic;

  [[nodiscard]] static ScaledCoords from(double x, double t, double M, double eps) noexcept;
  /// Inverts z: x = 1 − ε z.
  [[nodiscard]] double x_from_z(double eps) const noexcept { return 1.0 - eps * z; }
};

/// Parse failure with the offending line (1-based; 0 when not line-specific).
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::size_t line, const std::string& message);
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Parses the textual function grammar:
///   `poly:[a0,a1,...]` | `const:a` | `sine:[amp,freq]` | `sum:[f, f, ...]`.
/// Throws ScenarioError (line 0) on any malformed input.
[[nodiscard]] SmoothFunction parse_function(std::string_view text);

/// Parses a scenario file body: one `key = value` per line, `#` starts a
/// comment, keys M, T, y0, v are all required, unknown or repeated keys are
/// errors. The result is validated.
[[nodiscard]] ProblemData parse_scenario(std::string_view text);

/// Reads and parses a scenario file.
[[nodiscard]] ProblemData load_scenario(const std::string& path);

/// Serialises a scenario in the same format parse_scenario accepts.
[[nodiscard]] std::string format_scenario(const ProblemData& p);

}  // namespace lad
