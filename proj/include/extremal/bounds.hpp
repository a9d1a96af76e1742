#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <utility>

#include <boost/rational.hpp>

#include "extremal/graph.hpp"
#include "extremal/permanent.hpp"

namespace extremal {

/// Nonnegative real carried as its natural logarithm; zero is a flag.
class LogValue {
 public:
  static LogValue zero() { return LogValue(true, 0.0); }
  static LogValue one() { return LogValue(false, 0.0); }
  static LogValue from_log(double log_value) { return LogValue(false, log_value); }
  static LogValue from_double(double x);
  static LogValue from_count(const Count& c);

  bool is_zero() const { return zero_; }
  /// Natural log; -infinity for zero.
  double log() const;
  double value() const;

  LogValue operator*(const LogValue& o) const;
  LogValue operator/(const LogValue& o) const;
  LogValue pow(double exponent) const;

  friend bool operator==(const LogValue& a, const LogValue& b) {
    return a.zero_ == b.zero_ && (a.zero_ || a.log_ == b.log_);
  }
  friend std::partial_ordering operator<=>(const LogValue& a, const LogValue& b);

 private:
  LogValue(bool zero, double log_value) : zero_(zero), log_(log_value) {}
  bool zero_;
  double log_;
};

/// log(p!) from a table of exactly summed log(i).
double log_factorial(int p);

/// Natural log of a positive integer of any size.
double log_count(const Count& c);

/// Exact product of rational powers of factorials, stored as prime
/// exponents: prod_q q^{e_q} with rational e_q. Equality is exact and
/// integrality (all e_q nonnegative integers) is decidable. A factor 0! is
/// treated as 0, so the product becomes zero.
class FactorialPowerProduct {
 public:
  using Rational = boost::rational<long long>;

  FactorialPowerProduct() = default;

  /// Multiplies by (p!)^exponent.
  FactorialPowerProduct& multiply_factorial(int p, Rational exponent);

  bool is_zero() const { return zero_; }
  bool is_integer() const;
  /// The exact value when it is an integer.
  std::optional<Count> to_count() const;
  LogValue to_log_value() const;

  friend bool operator==(const FactorialPowerProduct&, const FactorialPowerProduct&) = default;

 private:
  bool zero_ = false;
  std::map<int, Rational> exponents_;  // prime -> exponent, zero exponents dropped
};

/// floor/ceil split of `total` over `parts`: alpha parts get ceil, the rest floor.
struct DegreePartition {
  int floor_deg;
  int ceil_deg;
  int alpha;

  static DegreePartition of(long long total, int parts);
};

/// prod_v (deg(v)!)^{1/(2 deg(v))}; an isolated vertex makes it 0.
LogValue alon_friedland_bound(const Graph& g);
FactorialPowerProduct alon_friedland_exact(const Graph& g);

/// omega for a graph with `vertices` = 2n vertices and m edges. Requires an
/// even vertex count >= 2 and m >= vertices / 2.
LogValue omega(int vertices, long long m);
FactorialPowerProduct omega_exact(int vertices, long long m);

/// theta(k, M) = (floor(M/k)!)^{(k-beta)/floor} (ceil(M/k)!)^{beta/ceil}; k >= 2, M >= k.
LogValue theta(int k, long long big_m);
FactorialPowerProduct theta_exact(int k, long long big_m);

/// prod_i (p_i!)^{1/p_i} for a composition with positive parts.
FactorialPowerProduct factorial_root_product(std::span<const int> parts);

/// a_p = (p!)^{1/p} / ((p+1)!)^{1/(p+1)}, p >= 1.
LogValue fundamental_ratio(int p);

/// Bregman: per(A) <= prod_i (r_i!)^{1/r_i}; a zero row gives 0.
LogValue minc_bregman_bound(const ZeroOneMatrix& a);
FactorialPowerProduct minc_bregman_exact(const ZeroOneMatrix& a);

/// (k/e)^n, the van der Waerden-type lower bound for a k-regular bipartite
/// graph on 2n vertices; 1 <= k <= n.
LogValue vdw_lower_bounds(int n, int k);

/// (lower, upper) bounds on tau(n), n >= 3.
std::pair<LogValue, LogValue> tau_bounds(int n);

/// (lower, upper) bounds on rho(n, n) for odd n >= 3.
std::pair<LogValue, LogValue> rho_bounds(int n);
/// The lower bound max((n-1) p!^4, (p+1) D_{p+1} p!^3), p = (n-1)/2, exactly.
Count rho_lower_exact(int n);

/// Stirling bracket sqrt(2 pi p)(p/e)^p e^{1/(12p+1)} < p! < ... e^{1/(12p)}; p >= 1.
std::pair<LogValue, LogValue> stirling_interval(int p);

/// Three-way comparison of an exact count against a log-domain value with a
/// relative tolerance: 0 when |c - v| <= rel_tol * max(c, v).
int compare_with_tolerance(const Count& c, const LogValue& v, double rel_tol = 1e-9);

}  // namespace extremal
