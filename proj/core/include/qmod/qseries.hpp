#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmod/integer.hpp"

namespace qmod {

using Term = std::pair<Exponent, Integer>;

/// A truncated Laurent series sum_{e < prec} a(e) q^e + O(q^prec) with exact
/// integer coefficients.
///
/// Every coefficient below prec() is certified; nothing at or above it is
/// known. The zero series has order() == prec(). Storage is a dense array
/// starting at the order with leading and trailing zeros trimmed; the
/// arithmetic kernels skip zero entries, so lacunary series such as the
/// pentagonal expansion cost only their number of nonzero terms.
///
/// Values are immutable once built and safe to share across threads.
class QSeries {
 public:
  /// Zero series with precision 0.
  QSeries();

  /// Sums entries sharing an exponent and drops zeros.
  /// Throws PreconditionError if some exponent is >= prec.
  static QSeries make(std::span<const Term> entries, Exponent prec);
  static QSeries make(std::initializer_list<Term> entries, Exponent prec);

  /// Dense constructor: coeffs[i] is the coefficient of q^(start + i).
  static QSeries from_dense(Exponent start, std::vector<Integer> coeffs,
                            Exponent prec);

  static QSeries zero(Exponent prec);
  static QSeries one(Exponent prec);
  static QSeries monomial(Integer c, Exponent e, Exponent prec);

  Exponent prec() const noexcept { return prec_; }
  /// Least exponent with a nonzero coefficient; prec() for the zero series.
  Exponent order() const noexcept;
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Exact coefficient of q^e. Throws PrecisionError when e >= prec().
  Integer coefficient(Exponent e) const;

  /// Coefficients from order() through the last nonzero term.
  std::span<const Integer> dense() const noexcept { return coeffs_; }
  std::size_t nonzero_count() const;
  std::vector<Term> terms() const;

  /// Same series with precision min(prec(), p).
  QSeries truncated(Exponent p) const;
  /// Multiplication by q^s.
  QSeries shifted(Exponent s) const;
  /// Coefficientwise map a(e) -> c(e) * a(e).
  template <typename F>
  QSeries map_coefficients(F&& fn) const;

  std::string to_string() const;

  friend bool operator==(const QSeries&, const QSeries&) = default;
  friend std::ostream& operator<<(std::ostream& os, const QSeries& f);

 private:
  QSeries(Exponent start, std::vector<Integer> coeffs, Exponent prec);
  void normalize();

  Exponent start_ = 0;
  std::vector<Integer> coeffs_;
  Exponent prec_ = 0;
};

QSeries add(const QSeries& f, const QSeries& g);
QSeries sub(const QSeries& f, const QSeries& g);
QSeries negate(const QSeries& f);
QSeries scale(const QSeries& f, const Integer& c);

/// Cauchy product with prec = min(f.prec + ord g, g.prec + ord f).
QSeries mul(const QSeries& f, const QSeries& g);

/// f / g for g with leading coefficient +-1. The precision is that of
/// mul(f, invert(g)).
QSeries divide(const QSeries& f, const QSeries& g);

/// Multiplicative inverse with prec f.prec - 2 ord f.
/// Throws NotInvertibleError for zero or a non-unit leading coefficient.
QSeries invert(const QSeries& f);

/// Repeated squaring. pow(f, 0) is 1 + O(q^(f.prec - 2 ord f)), which is the
/// precision f * f^-1 would certify; negative k inverts first.
QSeries pow(const QSeries& f, std::int64_t k);

inline QSeries operator+(const QSeries& f, const QSeries& g) { return add(f, g); }
inline QSeries operator-(const QSeries& f, const QSeries& g) { return sub(f, g); }
inline QSeries operator-(const QSeries& f) { return negate(f); }
inline QSeries operator*(const QSeries& f, const QSeries& g) { return mul(f, g); }
inline QSeries operator*(const Integer& c, const QSeries& f) { return scale(f, c); }

/// min over e in [lo, hi) of v_p(a(e)); infinity if the range is all zero.
/// Throws PrecisionError if hi > f.prec().
Valuation padic_valuation_range(const QSeries& f, std::int64_t p, Exponent lo,
                                Exponent hi);

/// First exponent below min(f.prec, g.prec) where the coefficients differ.
std::optional<Exponent> first_difference(const QSeries& f, const QSeries& g);

template <typename F>
QSeries QSeries::map_coefficients(F&& fn) const {
  std::vector<Integer> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) {
      out[i] = fn(start_ + static_cast<Exponent>(i), coeffs_[i]);
    }
  }
  return QSeries(start_, std::move(out), prec_);
}

}  // namespace qmod
