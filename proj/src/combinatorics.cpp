#include "ban/combinatorics.hpp"

#include <numeric>
#include <sstream>

namespace ban {

namespace {

void require_positive(std::uint64_t n, const char* what) {
  if (n < 1) throw Error(std::string(what) + ": argument must be >= 1");
}

BigInt pow2(std::uint64_t e) {
  BigInt v = 1;
  v <<= static_cast<unsigned>(e);
  return v;
}

BigInt power(const BigInt& base, std::uint64_t e) {
  BigInt v = 1;
  for (std::uint64_t k = 0; k < e; ++k) v *= base;
  return v;
}

}  // namespace

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  require_positive(n, "divisors");
  std::vector<std::uint64_t> small;
  std::vector<std::uint64_t> large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

int mobius(std::uint64_t n) {
  require_positive(n, "mobius");
  int sign = 1;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    n /= q;
    if (n % q == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

std::uint64_t totient(std::uint64_t n) {
  require_positive(n, "totient");
  std::uint64_t result = n;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    while (n % q == 0) n /= q;
    result -= result / q;
  }
  if (n > 1) result -= result / n;
  return result;
}

Rational dirichlet(const ArithmeticFn& f, const ArithmeticFn& g,
                   std::uint64_t n) {
  Rational sum = 0;
  for (std::uint64_t d : divisors(n)) sum += f(d) * g(n / d);
  return sum;
}

namespace fn {
ArithmeticFn one() {
  return [](std::uint64_t) { return Rational(1); };
}
ArithmeticFn delta() {
  return [](std::uint64_t n) { return Rational(n == 1 ? 1 : 0); };
}
ArithmeticFn mu() {
  return [](std::uint64_t n) { return Rational(mobius(n)); };
}
ArithmeticFn phi() {
  return [](std::uint64_t n) { return Rational(totient(n)); };
}
ArithmeticFn id() {
  return [](std::uint64_t n) { return Rational(n); };
}
}  // namespace fn

BigInt lucas(std::uint64_t n) {
  if (n < 1) throw Error("lucas: argument must be >= 1");
  BigInt a = 1;  // L(1)
  BigInt b = 3;  // L(2)
  if (n == 1) return a;
  for (std::uint64_t k = 2; k < n; ++k) {
    BigInt c = a + b;
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

BigInt perrin(std::uint64_t n) {
  BigInt p[3] = {3, 0, 2};
  if (n < 3) return p[n];
  for (std::uint64_t k = 3; k <= n; ++k) {
    BigInt next = p[1] + p[0];  // P(k-2) + P(k-3)
    p[0] = std::move(p[1]);
    p[1] = std::move(p[2]);
    p[2] = std::move(next);
  }
  return p[2];
}

std::uint64_t order_of(const Descriptor& d) {
  if (const auto* c = std::get_if<CycleDescriptor>(&d)) {
    validate(*c);
    const auto n = static_cast<std::uint64_t>(c->n);
    return c->sign == Sign::Positive ? n : 2 * n;
  }
  const auto& dc = std::get<DoubleCycleDescriptor>(d);
  validate(dc);
  if (dc.positive()) return dc.delta();
  if (dc.mixed()) return static_cast<std::uint64_t>(dc.r);
  const auto sum = static_cast<std::uint64_t>(dc.l + dc.r);
  return sum / dc.delta() == 4 ? sum / 2 : sum;
}

BigInt count_X(const Descriptor& d, std::uint64_t p) {
  const std::uint64_t omega = order_of(d);
  if (p < 1 || omega % p != 0) {
    throw Error("period " + std::to_string(p) + " does not divide the order " +
                std::to_string(omega) + " of " + to_string(d));
  }
  if (const auto* c = std::get_if<CycleDescriptor>(&d)) {
    if (c->sign == Sign::Positive) return pow2(p);
    if (static_cast<std::uint64_t>(c->n) % p == 0) return 0;
    return pow2(p / 2);
  }
  const auto& dc = std::get<DoubleCycleDescriptor>(d);
  if (dc.positive()) return pow2(p);
  const std::uint64_t dp = dc.delta(p);
  if (dc.mixed()) {
    if (static_cast<std::uint64_t>(dc.l) % p == 0) return 0;
    return power(lucas(p / dp), dp);
  }
  if (dc.delta() % p == 0) return 0;
  return power(perrin(p / dp), dp);
}

IntegralityViolation::IntegralityViolation(const std::string& descriptor,
                                           std::uint64_t p,
                                           const Rational& value)
    : Error(descriptor + ": attractor count A(" + std::to_string(p) +
            ") = " + ban::to_string(value) + " is not a nonnegative integer"),
      p_(p),
      value_(value) {}

const QuantityRow& QuantityTable::row(std::uint64_t p) const {
  for (const auto& r : rows) {
    if (r.p == p) return r;
  }
  throw Error(std::to_string(p) + " is not a divisor of the order");
}

QuantityTable derive_table(const std::string& descriptor, std::uint64_t omega,
                           const std::map<std::uint64_t, BigInt>& X) {
  QuantityTable t;
  t.descriptor = descriptor;
  t.omega = omega;
  const ArithmeticFn x = [&](std::uint64_t p) { return Rational(X.at(p)); };
  Rational weighted = 0;
  for (std::uint64_t p : divisors(omega)) {
    QuantityRow row;
    row.p = p;
    row.X = X.at(p);
    const Rational x_min = dirichlet(x, fn::mu(), p);
    const Rational a = x_min / p;
    if (a < 0 || denominator(a) != 1) {
      throw IntegralityViolation(descriptor, p, a);
    }
    row.X_min = numerator(x_min);
    row.A = numerator(a);
    t.T += row.A;
    weighted += Rational(row.A * p);
    t.rows.push_back(std::move(row));
  }
  t.mean_period = t.T == 0 ? Rational(0) : weighted / Rational(t.T);
  return t;
}

QuantityTable quantity_table(const Descriptor& d) {
  const std::uint64_t omega = order_of(d);
  std::map<std::uint64_t, BigInt> X;
  for (std::uint64_t p : divisors(omega)) X[p] = count_X(d, p);
  return derive_table(to_string(d), omega, X);
}

// -------------------------------------------------------- printed sums

namespace {

bool divides(std::uint64_t a, std::uint64_t b) { return b % a == 0; }

}  // namespace

std::vector<PrintedCheck> printed_sum_checks(const Descriptor& d) {
  const std::uint64_t omega = order_of(d);
  std::vector<PrintedCheck> out;
  std::map<std::uint64_t, Rational> x_min;
  const ArithmeticFn x = [&](std::uint64_t p) { return Rational(count_X(d, p)); };
  for (std::uint64_t p : divisors(omega)) x_min[p] = dirichlet(x, fn::mu(), p);
  Rational total = 0;
  for (const auto& [p, v] : x_min) total += v / p;

  if (const auto* c = std::get_if<CycleDescriptor>(&d)) {
    if (c->sign == Sign::Positive) {
      for (std::uint64_t p : divisors(omega)) {
        Rational s = 0;
        for (std::uint64_t e : divisors(p)) s += Rational(mobius(p / e)) * Rational(pow2(e));
        out.push_back({"X_min", p, s, x_min[p], "sum_{d|p} mu(p/d) 2^d"});
      }
      Rational s = 0;
      for (std::uint64_t e : divisors(omega)) {
        s += Rational(totient(omega / e)) * Rational(pow2(e));
      }
      out.push_back({"T", omega, s / omega, total,
                     "(1/n) sum_{d|n} phi(n/d) 2^d"});
      return out;
    }
    const auto n = static_cast<std::uint64_t>(c->n);
    for (std::uint64_t p : divisors(omega)) {
      if (p % 2 != 0) continue;
      Rational s = 0;
      for (std::uint64_t k : divisors(p)) {
        if (k % 2 == 0) continue;
        s += Rational(mobius(k)) * Rational(pow2(p / (2 * k)));
      }
      out.push_back({"X_min", p, s, x_min[p], "sum_{k|p odd} mu(k) 2^{p/2k}"});
    }
    PrintedCheck tc{"T", omega, std::nullopt, total,
                    "(1/2n) sum_{k|2n odd} phi(k) 2^{n/2k}"};
    Rational s = 0;
    bool integral_exponents = true;
    for (std::uint64_t k : divisors(2 * n)) {
      if (k % 2 == 0) continue;
      if (n % (2 * k) != 0) {
        integral_exponents = false;
        break;
      }
      s += Rational(totient(k)) * Rational(pow2(n / (2 * k)));
    }
    if (integral_exponents) {
      tc.printed = s / (2 * n);
    } else {
      tc.note += "; exponent n/2k is not an integer";
    }
    out.push_back(tc);
    return out;
  }

  const auto& dc = std::get<DoubleCycleDescriptor>(d);
  if (dc.positive()) {
    return printed_sum_checks(
        Descriptor{CycleDescriptor{static_cast<int>(dc.delta()), Sign::Positive}});
  }
  const auto l = static_cast<std::uint64_t>(dc.l);
  const std::uint64_t restrict_by = dc.mixed() ? l : dc.delta();
  const auto seq = [&](std::uint64_t e) {
    const std::uint64_t de = dc.delta(e);
    return power(dc.mixed() ? lucas(e / de) : perrin(e / de), de);
  };
  const std::string restriction = dc.mixed() ? "not(d|l)" : "not(d|Delta)";
  for (std::uint64_t p : divisors(omega)) {
    Rational s = 0;
    for (std::uint64_t e : divisors(p)) {
      if (divides(e, restrict_by)) continue;
      s += Rational(mobius(p / e)) * Rational(seq(e));
    }
    out.push_back({"X_min", p, s, x_min[p],
                   "sum_{d|p, " + restriction + "} mu(p/d) seq(d/Delta_d)^Delta_d"});
  }
  Rational s = 0;
  for (std::uint64_t e : divisors(omega)) {
    if (divides(e, restrict_by)) continue;
    s += Rational(totient(omega / e)) * Rational(seq(e));
  }
  out.push_back({"T", omega, s / omega, total,
                 "(1/w) sum_{d|w, " + restriction + "} phi(w/d) seq(d/Delta_d)^Delta_d"});
  return out;
}

// -------------------------------------------------------------- bounds

BoundsVerdict check_bounds(const Descriptor& d, const QuantityTable& table) {
  if (const auto* dc = std::get_if<DoubleCycleDescriptor>(&d)) {
    if (dc->negative() &&
        ((dc->l == 5 && dc->r == 1) || (dc->l == 1 && dc->r == 5))) {
      throw ExcludedDescriptor(to_string(d) +
                               " is excluded from the attractor-count bounds");
    }
  }
  BoundsVerdict v;
  const Rational w(table.omega);
  const Rational x_over_w = Rational(table.recurring()) / w;
  const Rational t(table.T);
  v.lower = x_over_w <= t;
  v.upper = t <= 2 * x_over_w;
  v.mean = table.mean_period >= w / 2;
  std::ostringstream out;
  out << "X(w)/w=" << to_string(x_over_w) << " T=" << to_string(t)
      << " 2X(w)/w=" << to_string(2 * x_over_w)
      << " mean=" << to_string(table.mean_period)
      << " w/2=" << to_string(w / 2);
  v.detail = out.str();
  return v;
}

int rho(std::uint64_t k) { return (k == 0 || k % 2 == 1) ? 0 : 1; }

BigInt unreachable_count(int l, int r) {
  if (l < 1 || r < 1) throw Error("unreachable_count: sizes must be >= 1");
  const auto ul = static_cast<std::uint64_t>(l);
  const auto ur = static_cast<std::uint64_t>(r);
  return rho(ul - 1) * pow2(ur - 1) + rho(ur - 1) * pow2(ul - 1);
}

std::string to_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

std::string table_csv(const QuantityTable& t) {
  std::ostringstream out;
  out << "p,X,X_min,A\n";
  for (const auto& row : t.rows) {
    out << row.p << ',' << row.X << ',' << row.X_min << ',' << row.A << '\n';
  }
  out << "# omega," << t.omega << '\n';
  out << "# T," << t.T << '\n';
  out << "# mean_period," << to_string(t.mean_period) << '\n';
  return out.str();
}

}  // namespace ban
