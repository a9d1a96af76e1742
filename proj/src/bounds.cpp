#include "extremal/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "extremal/errors.hpp"

namespace extremal {

namespace {

using Rational = FactorialPowerProduct::Rational;

constexpr int kLogFactorialTable = 1 << 15;

const std::vector<double>& log_factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kLogFactorialTable + 1, 0.0);
    double sum = 0.0;
    double carry = 0.0;  // Kahan compensation
    for (int i = 2; i <= kLogFactorialTable; ++i) {
      const double y = std::log(static_cast<double>(i)) - carry;
      const double s = sum + y;
      carry = (s - sum) - y;
      sum = s;
      t[i] = sum;
    }
    return t;
  }();
  return table;
}

/// Exponent of prime q in p! (Legendre).
long long legendre(int p, int q) {
  long long e = 0;
  for (long long power = q; power <= p; power *= q) e += p / power;
  return e;
}

std::vector<int> primes_up_to(int p) {
  std::vector<bool> composite(static_cast<std::size_t>(std::max(p, 1)) + 1, false);
  std::vector<int> primes;
  for (int i = 2; i <= p; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (long long k = static_cast<long long>(i) * i; k <= p; k += i) composite[k] = true;
  }
  return primes;
}

/// (p!)^{num/den} in log domain; p = 0 follows the 0! = 0 convention.
LogValue factorial_power(int p, double exponent) {
  if (p == 0) return LogValue::zero();
  return LogValue::from_log(log_factorial(p) * exponent);
}

void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace

// ---------------------------------------------------------------------------
// LogValue

LogValue LogValue::from_double(double x) {
  if (!(x >= 0.0)) throw PreconditionError("LogValue represents nonnegative reals only");
  return x == 0.0 ? zero() : from_log(std::log(x));
}

LogValue LogValue::from_count(const Count& c) {
  if (c < 0) throw PreconditionError("LogValue represents nonnegative reals only");
  return c == 0 ? zero() : from_log(log_count(c));
}

double LogValue::log() const { return zero_ ? -std::numeric_limits<double>::infinity() : log_; }

double LogValue::value() const { return zero_ ? 0.0 : std::exp(log_); }

LogValue LogValue::operator*(const LogValue& o) const {
  if (zero_ || o.zero_) return zero();
  return from_log(log_ + o.log_);
}

LogValue LogValue::operator/(const LogValue& o) const {
  if (o.zero_) throw PreconditionError("division by a zero LogValue");
  if (zero_) return zero();
  return from_log(log_ - o.log_);
}

LogValue LogValue::pow(double exponent) const {
  if (zero_) {
    if (exponent == 0.0) return one();
    if (exponent < 0.0) throw PreconditionError("negative power of zero");
    return zero();
  }
  return from_log(log_ * exponent);
}

std::partial_ordering operator<=>(const LogValue& a, const LogValue& b) {
  if (a.zero_ || b.zero_) return (b.zero_ ? 1 : 0) <=> (a.zero_ ? 1 : 0);
  return a.log_ <=> b.log_;
}

double log_factorial(int p) {
  if (p < 0) throw PreconditionError("log_factorial of a negative number");
  const auto& table = log_factorial_table();
  if (p <= kLogFactorialTable) return table[p];
  double sum = table.back();
  for (int i = kLogFactorialTable + 1; i <= p; ++i) sum += std::log(static_cast<double>(i));
  return sum;
}

double log_count(const Count& c) {
  if (c <= 0) throw PreconditionError("log of a non-positive count");
  const auto bits = boost::multiprecision::msb(c);
  if (bits < 1000) return std::log(c.convert_to<double>());
  const unsigned shift = static_cast<unsigned>(bits) - 64;
  const Count top = c >> shift;
  return std::log(top.convert_to<double>()) + shift * std::numbers::ln2;
}

// ---------------------------------------------------------------------------
// FactorialPowerProduct

FactorialPowerProduct& FactorialPowerProduct::multiply_factorial(int p, Rational exponent) {
  if (p < 0) throw PreconditionError("factorial of a negative number");
  if (exponent.numerator() == 0) return *this;
  if (p == 0) {
    if (exponent.numerator() < 0) throw PreconditionError("negative power of 0! under the 0! = 0 convention");
    zero_ = true;
    exponents_.clear();
    return *this;
  }
  if (zero_) return *this;
  for (int q : primes_up_to(p)) {
    Rational& e = exponents_[q];
    e += exponent * Rational(legendre(p, q));
    if (e.numerator() == 0) exponents_.erase(q);
  }
  return *this;
}

bool FactorialPowerProduct::is_integer() const {
  if (zero_) return true;
  for (const auto& [q, e] : exponents_) {
    if (e.denominator() != 1 || e.numerator() < 0) return false;
  }
  return true;
}

std::optional<Count> FactorialPowerProduct::to_count() const {
  if (!is_integer()) return std::nullopt;
  if (zero_) return Count(0);
  Count value = 1;
  for (const auto& [q, e] : exponents_) value *= boost::multiprecision::pow(Count(q), static_cast<unsigned>(e.numerator()));
  return value;
}

LogValue FactorialPowerProduct::to_log_value() const {
  if (zero_) return LogValue::zero();
  double log_value = 0.0;
  for (const auto& [q, e] : exponents_) {
    log_value += std::log(static_cast<double>(q)) * static_cast<double>(e.numerator()) /
                 static_cast<double>(e.denominator());
  }
  return LogValue::from_log(log_value);
}

DegreePartition DegreePartition::of(long long total, int parts) {
  require(parts >= 1, "degree partition needs at least one part");
  require(total >= 0, "degree partition of a negative total");
  const long long fl = total / parts;
  const long long alpha = total - fl * parts;
  return {static_cast<int>(fl), static_cast<int>(fl + (alpha > 0 ? 1 : 0)), static_cast<int>(alpha)};
}

// ---------------------------------------------------------------------------
// Bounds

LogValue alon_friedland_bound(const Graph& g) {
  LogValue result = LogValue::one();
  for (int d : g.degrees()) result = result * factorial_power(d, d == 0 ? 1.0 : 1.0 / (2.0 * d));
  return result;
}

FactorialPowerProduct alon_friedland_exact(const Graph& g) {
  FactorialPowerProduct result;
  for (int d : g.degrees()) result.multiply_factorial(d, d == 0 ? Rational(1) : Rational(1, 2 * d));
  return result;
}

namespace {

void check_omega_args(int vertices, long long m) {
  require(vertices >= 2, "omega needs at least 2 vertices");
  require(vertices % 2 == 0, "omega needs an even vertex count, got " + std::to_string(vertices));
  require(m >= vertices / 2, "omega needs m >= vertices/2 (m = " + std::to_string(m) + ", vertices = " +
                                 std::to_string(vertices) + ")");
}

void check_theta_args(int k, long long big_m) {
  require(k >= 2, "theta needs k >= 2");
  require(big_m >= k, "theta needs M >= k");
}

/// (fl!)^{(parts-alpha)/fl} (ceil!)^{alpha/ceil}
LogValue balanced_product(long long total, int parts) {
  const auto dp = DegreePartition::of(total, parts);
  LogValue v = factorial_power(dp.floor_deg, static_cast<double>(parts - dp.alpha) / dp.floor_deg);
  if (dp.alpha > 0) v = v * factorial_power(dp.ceil_deg, static_cast<double>(dp.alpha) / dp.ceil_deg);
  return v;
}

FactorialPowerProduct balanced_product_exact(long long total, int parts) {
  const auto dp = DegreePartition::of(total, parts);
  FactorialPowerProduct v;
  v.multiply_factorial(dp.floor_deg, Rational(parts - dp.alpha, dp.floor_deg));
  if (dp.alpha > 0) v.multiply_factorial(dp.ceil_deg, Rational(dp.alpha, dp.ceil_deg));
  return v;
}

}  // namespace

LogValue omega(int vertices, long long m) {
  check_omega_args(vertices, m);
  return balanced_product(m, vertices / 2);
}

FactorialPowerProduct omega_exact(int vertices, long long m) {
  check_omega_args(vertices, m);
  return balanced_product_exact(m, vertices / 2);
}

LogValue theta(int k, long long big_m) {
  check_theta_args(k, big_m);
  return balanced_product(big_m, k);
}

FactorialPowerProduct theta_exact(int k, long long big_m) {
  check_theta_args(k, big_m);
  return balanced_product_exact(big_m, k);
}

FactorialPowerProduct factorial_root_product(std::span<const int> parts) {
  FactorialPowerProduct v;
  for (int p : parts) {
    require(p >= 1, "composition parts must be positive");
    v.multiply_factorial(p, Rational(1, p));
  }
  return v;
}

LogValue fundamental_ratio(int p) {
  require(p >= 1, "fundamental ratio needs p >= 1");
  // log(p!)/p - log((p+1)!)/(p+1) = log(p!)/(p(p+1)) - log(p+1)/(p+1)
  const double q = p + 1.0;
  return LogValue::from_log(log_factorial(p) / (p * q) - std::log(q) / q);
}

LogValue minc_bregman_bound(const ZeroOneMatrix& a) {
  require(a.is_square(), "Minc-Bregman bound needs a square matrix");
  LogValue result = LogValue::one();
  for (int r : a.row_sums()) result = result * factorial_power(r, r == 0 ? 1.0 : 1.0 / r);
  return result;
}

FactorialPowerProduct minc_bregman_exact(const ZeroOneMatrix& a) {
  require(a.is_square(), "Minc-Bregman bound needs a square matrix");
  FactorialPowerProduct result;
  for (int r : a.row_sums()) result.multiply_factorial(r, r == 0 ? Rational(1) : Rational(1, r));
  return result;
}

LogValue vdw_lower_bounds(int n, int k) {
  require(k >= 1 && k <= n, "van der Waerden bound needs 1 <= k <= n");
  return LogValue::from_log(n * (std::log(static_cast<double>(k)) - 1.0));
}

std::pair<LogValue, LogValue> tau_bounds(int n) {
  require(n >= 3, "tau bounds need n >= 3");
  const double nd = n;
  if (n % 2) {
    const int half = (n - 1) / 2;
    const auto lower = LogValue::from_log(0.5 + nd * (std::log((nd - 1) / 2.0) - 1.0));
    const auto upper = factorial_power(half, 2.0 * nd / (nd - 1));
    return {lower, upper};
  }
  const int half = (n - 2) / 2;
  const auto lower = LogValue::from_log(0.5 + nd * (std::log((nd - 2) / 2.0) - 1.0));
  const auto upper = factorial_power(half, (2.0 * nd - 2) / (nd - 2)) * LogValue::from_double(nd / 2);
  return {lower, upper};
}

Count rho_lower_exact(int n) {
  require(n >= 3 && n % 2 == 1, "rho bounds need odd n >= 3 (even n: rho = (n/2)!^4 exactly)");
  const int p = (n - 1) / 2;
  const Count fp = factorial(p);
  const Count bt1 = Count(n - 1) * fp * fp * fp * fp;
  const Count bt2 = Count(p + 1) * derangements(p + 1) * fp * fp * fp;
  return bt1 > bt2 ? bt1 : bt2;
}

std::pair<LogValue, LogValue> rho_bounds(int n) {
  const Count lower = rho_lower_exact(n);
  const int p = (n - 1) / 2;
  const double nd = n;
  const auto upper = factorial_power(p, 2.0 * nd / (nd - 1)) * factorial_power(p + 1, 2.0 * nd / (nd + 1));
  return {LogValue::from_count(lower), upper};
}

std::pair<LogValue, LogValue> stirling_interval(int p) {
  require(p >= 1, "Stirling interval needs p >= 1");
  const double pd = p;
  const double base = 0.5 * std::log(2.0 * std::numbers::pi * pd) + pd * (std::log(pd) - 1.0);
  return {LogValue::from_log(base + 1.0 / (12.0 * pd + 1.0)), LogValue::from_log(base + 1.0 / (12.0 * pd))};
}

int compare_with_tolerance(const Count& c, const LogValue& v, double rel_tol) {
  if (c < 0) throw PreconditionError("counts are nonnegative");
  if (c == 0 || v.is_zero()) {
    if (c == 0 && v.is_zero()) return 0;
    return c == 0 ? -1 : 1;
  }
  const double diff = log_count(c) - v.log();
  if (-std::expm1(-std::abs(diff)) <= rel_tol) return 0;
  return diff < 0 ? -1 : 1;
}

}  // namespace extremal
