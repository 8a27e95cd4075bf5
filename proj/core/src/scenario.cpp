#include "layered_advect/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lad {

namespace {

constexpr double falling_factorial(int n, int k) noexcept {
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= static_cast<double>(n - j);
  return r;
}

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// SmoothFunction

SmoothFunction::SmoothFunction() : kind_(Kind::constant), params_{0.0} { compile(); }

SmoothFunction SmoothFunction::polynomial(std::vector<double> coefficients) {
  SmoothFunction f;
  f.kind_ = Kind::polynomial;
  f.params_ = std::move(coefficients);
  f.compile();
  return f;
}

SmoothFunction SmoothFunction::constant(double value) {
  SmoothFunction f;
  f.kind_ = Kind::constant;
  f.params_ = {value};
  f.compile();
  return f;
}

SmoothFunction SmoothFunction::scaled_sine(double amplitude, double frequency) {
  SmoothFunction f;
  f.kind_ = Kind::scaled_sine;
  f.params_ = {amplitude, frequency};
  f.compile();
  return f;
}

SmoothFunction SmoothFunction::sum(std::vector<SmoothFunction> terms) {
  SmoothFunction f;
  f.kind_ = Kind::sum;
  f.params_.clear();
  f.terms_ = std::move(terms);
  f.compile();
  return f;
}

void SmoothFunction::flatten_into(std::vector<double>& poly, std::vector<Sine>& sines) const {
  switch (kind_) {
    case Kind::constant:
      if (poly.empty()) poly.resize(1, 0.0);
      poly[0] += params_[0];
      break;
    case Kind::polynomial:
      if (poly.size() < params_.size()) poly.resize(params_.size(), 0.0);
      for (std::size_t k = 0; k < params_.size(); ++k) poly[k] += params_[k];
      break;
    case Kind::scaled_sine:
      if (params_[0] != 0.0) sines.push_back({params_[0], params_[1]});
      break;
    case Kind::sum:
      for (const auto& t : terms_) t.flatten_into(poly, sines);
      break;
  }
}

void SmoothFunction::compile() {
  poly_.clear();
  sines_.clear();
  flatten_into(poly_, sines_);
  while (!poly_.empty() && poly_.back() == 0.0) poly_.pop_back();
}

double SmoothFunction::eval(double s, int i) const noexcept {
  double acc = 0.0;
  const int n = static_cast<int>(poly_.size());
  for (int k = n - 1; k >= i; --k) acc = acc * s + poly_[k] * falling_factorial(k, i);
  for (const auto& sn : sines_) {
    // d^i/ds^i sin(ωs) = ω^i sin(ωs + iπ/2)
    const double wi = std::pow(sn.frequency, i);
    const double arg = sn.frequency * s;
    double trig = 0.0;
    switch (i & 3) {
      case 0: trig = std::sin(arg); break;
      case 1: trig = std::cos(arg); break;
      case 2: trig = -std::sin(arg); break;
      default: trig = -std::cos(arg); break;
    }
    acc += sn.amplitude * wi * trig;
  }
  return acc;
}

double SmoothFunction::derivative(int i, double s) const {
  if (i < 0 || i > max_derivative) {
    throw std::domain_error("SmoothFunction::derivative: order must be in [0, 4]");
  }
  return eval(s, i);
}

std::array<double, 5> SmoothFunction::jet(double s) const noexcept {
  std::array<double, 5> out{};
  for (int i = 0; i <= max_derivative; ++i) out[static_cast<std::size_t>(i)] = eval(s, i);
  return out;
}

bool SmoothFunction::is_zero() const noexcept { return poly_.empty() && sines_.empty(); }

std::string SmoothFunction::to_string() const {
  std::string out;
  switch (kind_) {
    case Kind::constant:
      return "const:" + format_number(params_[0]);
    case Kind::polynomial:
    case Kind::scaled_sine: {
      out = kind_ == Kind::polynomial ? "poly:[" : "sine:[";
      for (std::size_t k = 0; k < params_.size(); ++k) {
        if (k) out += ',';
        out += format_number(params_[k]);
      }
      return out + "]";
    }
    case Kind::sum:
      out = "sum:[";
      for (std::size_t k = 0; k < terms_.size(); ++k) {
        if (k) out += ',';
        out += terms_[k].to_string();
      }
      return out + "]";
  }
  return out;
}

// ---------------------------------------------------------------------------
// ProblemData and derived quantities

void ProblemData::validate() const {
  if (!(M > 0.0) || !std::isfinite(M)) throw std::invalid_argument("M must be positive and finite");
  if (!std::isfinite(T) || T < 1.0 / M) throw std::invalid_argument("T must satisfy T >= 1/M");
}

JumpConstants jump_constants(const ProblemData& p) {
  const auto y = p.y0.jet(0.0);
  const auto v = p.v.jet(0.0);
  const double M = p.M;
  JumpConstants jc;
  jc.c_plus = y[0];
  jc.c_minus = v[0];
  jc.d_plus = y[1];
  jc.d_minus = -v[1] / M;
  jc.e_plus = y[2];
  jc.e_minus = v[2] / (M * M);
  jc.f_minus = v[2] / (M * M * M);
  jc.h_plus = y[3] / 6.0;
  jc.h_minus = -v[3] / (6.0 * M * M * M);
  return jc;
}

std::vector<double> compatibility_defect(const ProblemData& p, int order_max) {
  if (order_max < 0 || order_max > SmoothFunction::max_derivative) {
    throw std::domain_error("compatibility_defect: order_max must be in [0, 4]");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(order_max) + 1);
  double Mp = 1.0;
  for (int k = 0; k <= order_max; ++k) {
    const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (−1)^{k+1}
    out.push_back(Mp * p.y0.derivative(k, 0.0) + sign * p.v.derivative(k, 0.0));
    Mp *= p.M;
  }
  return out;
}

Region classify_region(double x, double t, double M) noexcept {
  const double d = x - M * t;
  if (d > 0.0) return Region::above_characteristic;
  if (d < 0.0) return Region::below_characteristic;
  return Region::on_characteristic;
}

ScaledCoords ScaledCoords::from(double x, double t, double M, double eps) noexcept {
  const double se = std::sqrt(eps);
  ScaledCoords c;
  c.w = (x - M * t) / se;
  c.z = (1.0 - x) / eps;
  c.tau = (1.0 / M - t) / se;
  c.region = classify_region(x, t, M);
  return c;
}

// ---------------------------------------------------------------------------
// Parsing

ScenarioError::ScenarioError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

namespace {

class FunctionParser {
 public:
  explicit FunctionParser(std::string_view s) : s_(s) {}

  SmoothFunction parse_all() {
    SmoothFunction f = parse_function();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ScenarioError(0, "function '" + std::string(s_) + "': " + what + " at offset " +
                               std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  std::string_view identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] >= 'a' && s_[pos_] <= 'z') ++pos_;
    return s_.substr(start, pos_ - start);
  }

  double number() {
    skip_ws();
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) fail("expected a number");
    if (!std::isfinite(value)) fail("number is not finite");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  std::vector<double> number_list() {
    expect('[');
    std::vector<double> out;
    if (peek(']')) fail("empty list");
    out.push_back(number());
    while (peek(',')) {
      ++pos_;
      out.push_back(number());
    }
    expect(']');
    return out;
  }

  SmoothFunction parse_function() {
    const std::string_view id = identifier();
    expect(':');
    if (id == "const") return SmoothFunction::constant(number());
    if (id == "poly") {
      auto c = number_list();
      if (c.size() > 16) fail("polynomial degree above 15");
      return SmoothFunction::polynomial(std::move(c));
    }
    if (id == "sine") {
      auto c = number_list();
      if (c.size() != 2) fail("sine takes exactly [amplitude, frequency]");
      return SmoothFunction::scaled_sine(c[0], c[1]);
    }
    if (id == "sum") {
      expect('[');
      std::vector<SmoothFunction> terms;
      if (peek(']')) fail("empty sum");
      terms.push_back(parse_function());
      while (peek(',')) {
        ++pos_;
        terms.push_back(parse_function());
      }
      expect(']');
      return SmoothFunction::sum(std::move(terms));
    }
    fail("unknown function kind '" + std::string(id) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_scalar(std::string_view text, std::size_t line, const std::string& key) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ScenarioError(line, "field '" + key + "': expected a finite number, got '" +
                                  std::string(text) + "'");
  }
  return value;
}

}  // namespace

SmoothFunction parse_function(std::string_view text) { return FunctionParser(text).parse_all(); }

ProblemData parse_scenario(std::string_view text) {
  ProblemData p;
  bool seen_M = false, seen_T = false, seen_y0 = false, seen_v = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    std::string_view line =
        text.substr(start, end == std::string_view::npos ? text.size() - start : end - start);
    ++line_no;
    start = (end == std::string_view::npos) ? text.size() + 1 : end + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ScenarioError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) throw ScenarioError(line_no, "field '" + key + "': missing value");

    auto once = [&](bool& seen) {
      if (seen) throw ScenarioError(line_no, "field '" + key + "' given twice");
      seen = true;
    };
    auto function = [&](SmoothFunction& target) {
      try {
        target = parse_function(value);
      } catch (const ScenarioError& e) {
        throw ScenarioError(line_no, "field '" + key + "': " + e.what());
      }
    };

    if (key == "M") {
      once(seen_M);
      p.M = parse_scalar(value, line_no, key);
    } else if (key == "T") {
      once(seen_T);
      p.T = parse_scalar(value, line_no, key);
    } else if (key == "y0") {
      once(seen_y0);
      function(p.y0);
    } else if (key == "v") {
      once(seen_v);
      function(p.v);
    } else {
      throw ScenarioError(line_no, "unknown field '" + key + "'");
    }
  }
  if (!seen_M) throw ScenarioError(0, "missing field 'M'");
  if (!seen_T) throw ScenarioError(0, "missing field 'T'");
  if (!seen_y0) throw ScenarioError(0, "missing field 'y0'");
  if (!seen_v) throw ScenarioError(0, "missing field 'v'");
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(0, e.what());
  }
  return p;
}

ProblemData load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(0, "cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string format_scenario(const ProblemData& p) {
  return "M = " + format_number(p.M) + "\nT = " + format_number(p.T) + "\ny0 = " +
         p.y0.to_string() + "\nv = " + p.v.to_string() + "\n";
}

}  // namespace lad
