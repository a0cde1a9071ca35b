#pragma once

#include <cstdint>

#include "qmod/qseries.hpp"

namespace qmod {

/// (sum a(n) q^n) | U_m = sum a(mn) q^n, prec ceil(prec / m).
QSeries apply_U(const QSeries& f, std::int64_t m);

/// (sum a(n) q^n) | V_m = sum a(n) q^(mn), prec m (prec - 1) + 1.
QSeries apply_V(const QSeries& f, std::int64_t m);

/// q d/dq: a(e) -> e a(e).
QSeries theta(const QSeries& f);

/// Weight-k Hecke operator at a prime power,
///   f | T_k(p^n) = sum_{j=0}^{n} p^((k-1) j) f | U(p^(n-j)) | V(p^j),
/// valid for p not dividing the level. Requires k >= 1, n >= 1, p prime.
QSeries hecke(const QSeries& f, int k, std::int64_t p, int n);

/// Kronecker symbol (d | n) for arbitrary integers.
int kronecker(std::int64_t d, std::int64_t n);

/// Quadratic character n -> (D | n) attached to a discriminant.
class KroneckerCharacter {
 public:
  explicit KroneckerCharacter(std::int64_t disc);
  std::int64_t discriminant() const noexcept { return disc_; }
  int operator()(std::int64_t n) const { return kronecker(disc_, n); }

 private:
  std::int64_t disc_;
};

/// a(e) -> (D | e) a(e) at every exponent, negative ones included.
QSeries twist(const QSeries& f, std::int64_t disc);

/// Whether p stays prime in Q(sqrt(cm_disc)) for cm_disc in {-3, -4}.
/// Ramified primes give false. Throws PreconditionError for other discs.
bool is_inert(std::int64_t p, std::int64_t cm_disc);

}  // namespace qmod
