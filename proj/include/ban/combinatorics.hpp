#pragma once

// Number-theoretic toolkit and the closed-form attractor counts of parallel
// cycles and double-cycles.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ban/core.hpp"
#include "ban/topologies.hpp"

namespace ban {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Positive divisors of n in ascending order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

int mobius(std::uint64_t n);
std::uint64_t totient(std::uint64_t n);

using ArithmeticFn = std::function<Rational(std::uint64_t)>;

/// (f * g)(n) = sum over d | n of f(d) g(n/d).
Rational dirichlet(const ArithmeticFn& f, const ArithmeticFn& g,
                   std::uint64_t n);

namespace fn {
ArithmeticFn one();
ArithmeticFn delta();
ArithmeticFn mu();
ArithmeticFn phi();
ArithmeticFn id();
}  // namespace fn

/// L(1) = 1, L(2) = 3, L(n) = L(n-1) + L(n-2).
BigInt lucas(std::uint64_t n);
/// P(0) = 3, P(1) = 0, P(2) = 2, P(n) = P(n-2) + P(n-3).
BigInt perrin(std::uint64_t n);

/// Least common period of the recurring configurations, per the tables.
std::uint64_t order_of(const Descriptor& d);

/// Number of configurations of period p (F^p(x) = x). p must divide the
/// order.
BigInt count_X(const Descriptor& d, std::uint64_t p);

class IntegralityViolation : public Error {
 public:
  IntegralityViolation(const std::string& descriptor, std::uint64_t p,
                       const Rational& value);
  std::uint64_t p() const { return p_; }
  const Rational& value() const { return value_; }

 private:
  std::uint64_t p_;
  Rational value_;
};

class ExcludedDescriptor : public Error {
 public:
  using Error::Error;
};

struct QuantityRow {
  std::uint64_t p = 0;
  BigInt X;
  BigInt X_min;  // minimal period p
  BigInt A;
};

struct QuantityTable {
  std::string descriptor;
  std::uint64_t omega = 0;
  std::vector<QuantityRow> rows;  // divisors of omega, ascending
  BigInt T;
  Rational mean_period;

  const QuantityRow& row(std::uint64_t p) const;
  const BigInt& recurring() const { return rows.back().X; }
};

/// Builds a table from X alone: X_min = X * mu, A = X_min / p, T = sum A.
/// Throws IntegralityViolation when some X_min(p) is not a multiple of p.
QuantityTable derive_table(const std::string& descriptor, std::uint64_t omega,
                           const std::map<std::uint64_t, BigInt>& X);

/// The closed-form table of a descriptor.
QuantityTable quantity_table(const Descriptor& d);

/// One value printed in the theorem tables as an explicit sum, compared
/// with the convolution-derived value.
struct PrintedCheck {
  std::string quantity;  // "X_min" or "T"
  std::uint64_t p = 0;
  std::optional<Rational> printed;  // empty when the sum is ill-formed
  Rational derived;
  std::string note;

  bool matches() const { return printed && *printed == derived; }
};

/// Evaluates the expanded sums of the tables for X_min(p) and T(omega).
/// The derived side is computed from count_X through the identities, with
/// A kept rational so that the comparison survives non-integral cases.
std::vector<PrintedCheck> printed_sum_checks(const Descriptor& d);

struct BoundsVerdict {
  bool lower = false;   // X(w)/w <= T(w)
  bool upper = false;   // T(w) <= 2 X(w)/w
  bool mean = false;    // mean period >= w/2
  std::string detail;

  bool passed() const { return lower && upper && mean; }
};

/// Checks the attractor-count and mean-period bounds on a table.
/// Throws ExcludedDescriptor for D--:5,1 and D--:1,5.
BoundsVerdict check_bounds(const Descriptor& d, const QuantityTable& table);

/// rho(k) = 0 if k = 0 or k odd, 1 otherwise.
int rho(std::uint64_t k);

/// Number of non-recurring configurations of the asynchronous negative
/// double-cycle D_{l,r}: rho(l-1) 2^{r-1} + rho(r-1) 2^{l-1}.
BigInt unreachable_count(int l, int r);

/// Exact fraction "a/b" in lowest terms, b >= 1.
std::string to_string(const Rational& q);

/// CSV with header p,X,X_min,A and a footer of omega, T, mean period.
std::string table_csv(const QuantityTable& t);

}  // namespace ban
