#include "qmod/eta.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "qmod/errors.hpp"

namespace qmod {

namespace {

mpq_class rational(std::int64_t num, std::int64_t den) {
  mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

}  // namespace

EtaQuotient::EtaQuotient(std::vector<EtaFactor> factors, std::int64_t level) : level_(level) {
  if (level <= 0) throw PreconditionError("eta quotient level must be positive");
  std::map<std::int64_t, std::int64_t> merged;
  for (const auto& f : factors) {
    if (f.delta <= 0) throw PreconditionError("eta quotient delta must be positive");
    if (merged.contains(f.delta)) {
      throw PreconditionError("eta quotient has repeated delta " + std::to_string(f.delta));
    }
    merged[f.delta] = f.power;
  }
  for (auto [d, r] : merged) {
    if (r != 0) factors_.push_back({d, r});
  }
}

bool EtaQuotient::has_integral_shift() const {
  Exponent s = 0;
  for (const auto& f : factors_) s = checked_add(s, checked_mul(f.delta, f.power));
  return s % 24 == 0;
}

Exponent EtaQuotient::shift() const {
  Exponent s = 0;
  for (const auto& f : factors_) s = checked_add(s, checked_mul(f.delta, f.power));
  if (s % 24 != 0) {
    throw ShiftError("eta quotient " + to_string() + " has non-integral q-shift " +
                     std::to_string(s) + "/24");
  }
  return s / 24;
}

mpq_class EtaQuotient::weight() const {
  std::int64_t total = 0;
  for (const auto& f : factors_) total += f.power;
  return rational(total, 2);
}

std::int64_t EtaQuotient::lattice() const {
  std::int64_t g = 0;
  for (const auto& f : factors_) g = std::gcd(g, f.delta);
  return g == 0 ? 1 : g;
}

EtaQuotient EtaQuotient::rescaled(std::int64_t t) const {
  if (t <= 0) throw PreconditionError("rescaling factor must be positive");
  std::vector<EtaFactor> out;
  for (const auto& f : factors_) out.push_back({checked_mul(f.delta, t), f.power});
  return EtaQuotient(std::move(out), level_);
}

EtaQuotient EtaQuotient::pow(std::int64_t k) const {
  std::vector<EtaFactor> out;
  for (const auto& f : factors_) out.push_back({f.delta, checked_mul(f.power, k)});
  return EtaQuotient(std::move(out), level_);
}

EtaQuotient operator*(const EtaQuotient& a, const EtaQuotient& b) {
  std::map<std::int64_t, std::int64_t> merged;
  for (const auto& f : a.factors_) merged[f.delta] += f.power;
  for (const auto& f : b.factors_) merged[f.delta] += f.power;
  std::vector<EtaFactor> out;
  for (auto [d, r] : merged) out.push_back({d, r});
  return EtaQuotient(std::move(out), std::lcm(a.level_, b.level_));
}

std::string EtaQuotient::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << ",";
    os << "(" << factors_[i].delta << "," << factors_[i].power << ")";
  }
  os << "]";
  return os.str();
}

QSeries euler_product(std::int64_t delta, Exponent prec) {
  if (delta <= 0) throw PreconditionError("euler_product: delta must be positive");
  if (prec <= 0) return QSeries::zero(prec);
  // prod (1 - x^n) = sum_k (-1)^k x^(k(3k-1)/2), k over all integers.
  std::vector<Integer> c(static_cast<std::size_t>(prec));
  c[0] = 1;
  for (Exponent k = 1;; ++k) {
    Exponent lo = checked_mul(delta, k * (3 * k - 1) / 2);
    if (lo >= prec) break;
    int sign = (k % 2 == 0) ? 1 : -1;
    c[static_cast<std::size_t>(lo)] = sign;
    Exponent hi = checked_mul(delta, k * (3 * k + 1) / 2);
    if (hi < prec) c[static_cast<std::size_t>(hi)] = sign;
  }
  return QSeries::from_dense(0, std::move(c), prec);
}

QSeries eta_quotient_expand(const EtaQuotient& eq, Exponent prec) {
  Exponent s = eq.shift();
  if (prec <= s) {
    throw PrecisionError("eta_quotient_expand: precision " + std::to_string(prec) +
                         " must exceed the q-shift " + std::to_string(s));
  }
  Exponent rel = prec - s;
  QSeries acc = QSeries::one(rel);
  // Multiply before dividing so the dense accumulator starts sparse.
  for (const auto& f : eq.factors()) {
    if (f.power <= 0) continue;
    QSeries e = euler_product(f.delta, rel);
    for (std::int64_t i = 0; i < f.power; ++i) acc = mul(acc, e);
  }
  for (const auto& f : eq.factors()) {
    if (f.power >= 0) continue;
    QSeries e = euler_product(f.delta, rel);
    for (std::int64_t i = 0; i < -f.power; ++i) acc = divide(acc, e);
  }
  return acc.shifted(s);
}

QSeries substitute_qpower(const QSeries& f, std::int64_t t) {
  if (t <= 0) throw PreconditionError("substitute_qpower: t must be positive");
  Exponent prec = checked_add(checked_mul(t, checked_sub(f.prec(), 1)), 1);
  if (f.is_zero()) return QSeries::zero(prec);
  auto d = f.dense();
  std::vector<Integer> out(checked_mul(static_cast<Exponent>(d.size() - 1), t) + 1);
  for (std::size_t i = 0; i < d.size(); ++i) out[i * static_cast<std::size_t>(t)] = d[i];
  return QSeries::from_dense(checked_mul(f.order(), t), std::move(out), prec);
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

std::vector<CuspOrder> cusp_orders(const EtaQuotient& eq, std::int64_t level) {
  if (level <= 0) throw PreconditionError("cusp_orders: level must be positive");
  for (const auto& f : eq.factors()) {
    if (level % f.delta != 0) {
      throw LevelMismatchError("delta " + std::to_string(f.delta) + " does not divide level " +
                               std::to_string(level));
    }
  }
  std::vector<CuspOrder> out;
  for (std::int64_t d : divisors(level)) {
    mpq_class sum = 0;
    for (const auto& f : eq.factors()) {
      std::int64_t g = std::gcd(d, f.delta);
      sum += rational(g * g * f.power, f.delta);
    }
    std::int64_t denom = std::gcd(d, level / d) * d * 24;
    mpq_class ord = sum * rational(level, denom);
    out.push_back({d, ord});
  }
  return out;
}

std::vector<CuspOrder> cusp_orders(const EtaQuotient& eq) { return cusp_orders(eq, eq.level()); }

}  // namespace qmod
