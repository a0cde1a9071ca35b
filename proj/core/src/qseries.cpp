#include "qmod/qseries.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <ostream>
#include <sstream>

#include "qmod/errors.hpp"

namespace qmod {

namespace {

// out += a * b, using the word-sized entry point when a fits in a long.
inline void addmul(Integer& out, const Integer& a, const Integer& b) {
  if (a.fits_slong_p()) {
    long s = a.get_si();
    if (s >= 0) {
      mpz_addmul_ui(out.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(s));
    } else {
      mpz_submul_ui(out.get_mpz_t(), b.get_mpz_t(), 0UL - static_cast<unsigned long>(s));
    }
  } else {
    mpz_addmul(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
}

inline void submul(Integer& out, const Integer& a, const Integer& b) {
  if (a.fits_slong_p()) {
    long s = a.get_si();
    if (s >= 0) {
      mpz_submul_ui(out.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(s));
    } else {
      mpz_addmul_ui(out.get_mpz_t(), b.get_mpz_t(), 0UL - static_cast<unsigned long>(s));
    }
  } else {
    mpz_submul(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
}

std::vector<std::size_t> nonzero_indices(std::span<const Integer> c, std::size_t limit) {
  std::vector<std::size_t> idx;
  limit = std::min(limit, c.size());
  for (std::size_t i = 0; i < limit; ++i) {
    if (sgn(c[i]) != 0) idx.push_back(i);
  }
  return idx;
}

bool is_unit(const Integer& c) { return c == 1 || c == -1; }

}  // namespace

QSeries::QSeries() = default;

QSeries::QSeries(Exponent start, std::vector<Integer> coeffs, Exponent prec)
    : start_(start), coeffs_(std::move(coeffs)), prec_(prec) {
  normalize();
}

void QSeries::normalize() {
  // Drop anything at or above the precision, then trim zeros at both ends.
  if (!coeffs_.empty()) {
    Exponent room = prec_ - start_;
    if (room <= 0) {
      coeffs_.clear();
    } else if (static_cast<std::uint64_t>(room) < coeffs_.size()) {
      coeffs_.resize(static_cast<std::size_t>(room));
    }
  }
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
  std::size_t lead = 0;
  while (lead < coeffs_.size() && sgn(coeffs_[lead]) == 0) ++lead;
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    start_ += static_cast<Exponent>(lead);
  }
  if (coeffs_.empty()) start_ = prec_;
}

QSeries QSeries::make(std::span<const Term> entries, Exponent prec) {
  std::map<Exponent, Integer> acc;
  for (const auto& [e, c] : entries) {
    if (e >= prec) {
      throw PreconditionError("make_series: exponent " + std::to_string(e) +
                              " is not below precision " + std::to_string(prec));
    }
    acc[e] += c;
  }
  std::erase_if(acc, [](const auto& kv) { return sgn(kv.second) == 0; });
  if (acc.empty()) return zero(prec);
  Exponent lo = acc.begin()->first;
  Exponent hi = acc.rbegin()->first;
  std::vector<Integer> dense(static_cast<std::size_t>(checked_sub(hi, lo) + 1));
  for (auto& [e, c] : acc) dense[static_cast<std::size_t>(e - lo)] = std::move(c);
  return QSeries(lo, std::move(dense), prec);
}

QSeries QSeries::make(std::initializer_list<Term> entries, Exponent prec) {
  return make(std::span<const Term>(entries.begin(), entries.size()), prec);
}

QSeries QSeries::from_dense(Exponent start, std::vector<Integer> coeffs, Exponent prec) {
  return QSeries(start, std::move(coeffs), prec);
}

QSeries QSeries::zero(Exponent prec) { return QSeries(prec, {}, prec); }

QSeries QSeries::one(Exponent prec) { return monomial(Integer(1), 0, prec); }

QSeries QSeries::monomial(Integer c, Exponent e, Exponent prec) {
  if (e >= prec) return zero(prec);
  std::vector<Integer> v;
  v.push_back(std::move(c));
  return QSeries(e, std::move(v), prec);
}

Exponent QSeries::order() const noexcept { return coeffs_.empty() ? prec_ : start_; }

Integer QSeries::coefficient(Exponent e) const {
  if (e >= prec_) {
    throw PrecisionError("coefficient of q^" + std::to_string(e) +
                         " requested but precision is O(q^" + std::to_string(prec_) + ")");
  }
  if (coeffs_.empty() || e < start_) return 0;
  auto i = static_cast<std::uint64_t>(e - start_);
  return i < coeffs_.size() ? coeffs_[i] : Integer(0);
}

std::size_t QSeries::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return sgn(c) != 0; }));
}

std::vector<Term> QSeries::terms() const {
  std::vector<Term> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) out.emplace_back(start_ + static_cast<Exponent>(i), coeffs_[i]);
  }
  return out;
}

QSeries QSeries::truncated(Exponent p) const {
  if (p >= prec_) return *this;
  return QSeries(start_, coeffs_, p);
}

QSeries QSeries::shifted(Exponent s) const {
  return QSeries(checked_add(start_, s), coeffs_, checked_add(prec_, s));
}

std::ostream& operator<<(std::ostream& os, const QSeries& f) { return os << f.to_string(); }

std::string QSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms()) {
    Integer mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "q";
    if (e != 1) os << "^" << e;
  }
  if (!first) os << " + ";
  os << "O(q^" << prec_ << ")";
  return os.str();
}

QSeries add(const QSeries& f, const QSeries& g) {
  Exponent prec = std::min(f.prec(), g.prec());
  if (f.is_zero()) return g.truncated(prec);
  if (g.is_zero()) return f.truncated(prec);
  Exponent lo = std::min(f.order(), g.order());
  if (lo >= prec) return QSeries::zero(prec);
  auto fd = f.dense();
  auto gd = g.dense();
  Exponent hi = std::min(prec, std::max(f.order() + static_cast<Exponent>(fd.size()),
                                        g.order() + static_cast<Exponent>(gd.size())));
  std::vector<Integer> out(static_cast<std::size_t>(hi - lo));
  for (std::size_t i = 0; i < fd.size(); ++i) {
    Exponent e = f.order() + static_cast<Exponent>(i);
    if (e >= hi) break;
    out[static_cast<std::size_t>(e - lo)] += fd[i];
  }
  for (std::size_t i = 0; i < gd.size(); ++i) {
    Exponent e = g.order() + static_cast<Exponent>(i);
    if (e >= hi) break;
    out[static_cast<std::size_t>(e - lo)] += gd[i];
  }
  return QSeries::from_dense(lo, std::move(out), prec);
}

QSeries negate(const QSeries& f) {
  return f.map_coefficients([](Exponent, const Integer& c) { return Integer(-c); });
}

QSeries sub(const QSeries& f, const QSeries& g) { return add(f, negate(g)); }

QSeries scale(const QSeries& f, const Integer& c) {
  return f.map_coefficients([&c](Exponent, const Integer& a) { return Integer(a * c); });
}

QSeries mul(const QSeries& f, const QSeries& g) {
  Exponent prec = std::min(checked_add(f.prec(), g.order()), checked_add(g.prec(), f.order()));
  if (f.is_zero() || g.is_zero()) return QSeries::zero(prec);
  Exponent lo = checked_add(f.order(), g.order());
  if (lo >= prec) return QSeries::zero(prec);
  auto n = static_cast<std::size_t>(prec - lo);

  // Outer loop over the nonzero entries of the sparser factor, inner loop
  // over the contiguous entries of the other.
  const QSeries* a = &f;
  const QSeries* b = &g;
  if (f.nonzero_count() > g.nonzero_count()) std::swap(a, b);
  auto ad = a->dense();
  auto bd = b->dense();
  std::vector<Integer> out(n);
  for (std::size_t i : nonzero_indices(ad, n)) {
    const Integer& ai = ad[i];
    std::size_t limit = std::min(bd.size(), n - i);
    Integer* dst = out.data() + i;
    for (std::size_t j = 0; j < limit; ++j) {
      if (sgn(bd[j]) != 0) addmul(dst[j], ai, bd[j]);
    }
  }
  return QSeries::from_dense(lo, std::move(out), prec);
}

QSeries divide(const QSeries& f, const QSeries& g) {
  if (g.is_zero()) throw NotInvertibleError("division by the zero series");
  const Integer& unit = g.dense().front();
  if (!is_unit(unit)) {
    throw NotInvertibleError("leading coefficient " + unit.get_str() + " of divisor is not +-1");
  }
  Exponent b = g.order();
  Exponent prec = std::min(checked_sub(f.prec(), b),
                           checked_sub(checked_add(g.prec(), f.order()), checked_mul(2, b)));
  if (f.is_zero()) return QSeries::zero(prec);
  Exponent lo = checked_sub(f.order(), b);
  if (lo >= prec) return QSeries::zero(prec);
  auto n = static_cast<std::size_t>(prec - lo);

  auto fd = f.dense();
  auto gd = g.dense();
  std::vector<std::size_t> tail = nonzero_indices(gd, n);
  if (!tail.empty() && tail.front() == 0) tail.erase(tail.begin());
  bool negative = sgn(unit) < 0;

  // h_k = unit * (F_k - sum_{j >= 1} G_j h_{k-j})
  std::vector<Integer> h(n);
  for (std::size_t k = 0; k < n; ++k) {
    Integer acc = k < fd.size() ? fd[k] : Integer(0);
    for (std::size_t j : tail) {
      if (j > k) break;
      if (sgn(h[k - j]) != 0) submul(acc, gd[j], h[k - j]);
    }
    if (negative) acc = -acc;
    h[k] = std::move(acc);
  }
  return QSeries::from_dense(lo, std::move(h), prec);
}

QSeries invert(const QSeries& f) {
  if (f.is_zero()) throw NotInvertibleError("the zero series is not invertible");
  return divide(QSeries::one(checked_sub(f.prec(), f.order())), f);
}

QSeries pow(const QSeries& f, std::int64_t k) {
  if (k == 0) {
    return QSeries::one(checked_sub(f.prec(), checked_mul(2, f.order())));
  }
  if (k < 0) return pow(invert(f), -k);
  QSeries base = f;
  std::optional<QSeries> result;
  while (true) {
    if (k & 1) result = result ? mul(*result, base) : base;
    k >>= 1;
    if (k == 0) break;
    base = mul(base, base);
  }
  return *result;
}

Valuation padic_valuation_range(const QSeries& f, std::int64_t p, Exponent lo, Exponent hi) {
  if (lo > hi) throw PreconditionError("valuation range has lo > hi");
  if (hi > f.prec()) {
    throw PrecisionError("valuation range up to " + std::to_string(hi) +
                         " exceeds precision " + std::to_string(f.prec()));
  }
  Valuation best = Valuation::infinity();
  auto d = f.dense();
  for (std::size_t i = 0; i < d.size(); ++i) {
    Exponent e = f.order() + static_cast<Exponent>(i);
    if (e < lo) continue;
    if (e >= hi) break;
    if (sgn(d[i]) == 0) continue;
    Valuation v = padic_valuation(d[i], p);
    if (v < best) best = v;
  }
  return best;
}

std::optional<Exponent> first_difference(const QSeries& f, const QSeries& g) {
  QSeries diff = sub(f, g);
  if (diff.is_zero()) return std::nullopt;
  return diff.order();
}

}  // namespace qmod
