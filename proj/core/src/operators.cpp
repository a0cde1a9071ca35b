#include "qmod/operators.hpp"

#include <cstdlib>

#include "qmod/errors.hpp"
#include "qmod/eta.hpp"

namespace qmod {

QSeries apply_U(const QSeries& f, std::int64_t m) {
  if (m <= 0) throw PreconditionError("U_m needs m >= 1");
  Exponent prec = ceil_div(f.prec(), m);
  if (m == 1) return f;
  if (f.is_zero()) return QSeries::zero(prec);
  auto d = f.dense();
  Exponent first = ceil_div(f.order(), m);
  Exponent last = floor_div(f.order() + static_cast<Exponent>(d.size()) - 1, m);
  if (last < first) return QSeries::zero(prec);
  std::vector<Integer> out(static_cast<std::size_t>(last - first + 1));
  for (Exponent n = first; n <= last; ++n) {
    out[static_cast<std::size_t>(n - first)] = d[static_cast<std::size_t>(n * m - f.order())];
  }
  return QSeries::from_dense(first, std::move(out), prec);
}

QSeries apply_V(const QSeries& f, std::int64_t m) {
  if (m <= 0) throw PreconditionError("V_m needs m >= 1");
  return substitute_qpower(f, m);
}

QSeries theta(const QSeries& f) {
  return f.map_coefficients([](Exponent e, const Integer& c) { return Integer(c * e); });
}

QSeries hecke(const QSeries& f, int k, std::int64_t p, int n) {
  if (k < 1) throw PreconditionError("hecke: weight must be >= 1 for integral scalars");
  if (n < 1) throw PreconditionError("hecke: index exponent n must be >= 1");
  if (!is_prime(p)) throw PreconditionError("hecke: " + std::to_string(p) + " is not prime");
  std::optional<QSeries> total;
  Integer pk1;
  mpz_ui_pow_ui(pk1.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k - 1));
  Integer scalar = 1;
  for (int j = 0; j <= n; ++j) {
    QSeries term = apply_V(apply_U(f, checked_pow(p, n - j)), checked_pow(p, j));
    if (scalar != 1) term = scale(term, scalar);
    total = total ? add(*total, term) : term;
    scalar *= pk1;
  }
  return *total;
}

int kronecker(std::int64_t d, std::int64_t n) {
  if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (d < 0) result = -result;
  }
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (d % 2 == 0) return 0;
    if (twos % 2 == 1) {
      std::int64_t r = mod_floor(d, 8);
      if (r == 3 || r == 5) result = -result;
    }
  }
  // Jacobi symbol (d | n) for odd n > 0.
  std::int64_t a = mod_floor(d, n);
  std::int64_t m = n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      std::int64_t r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, m);
    if (a % 4 == 3 && m % 4 == 3) result = -result;
    a %= m;
  }
  return m == 1 ? result : 0;
}

KroneckerCharacter::KroneckerCharacter(std::int64_t disc) : disc_(disc) {
  std::int64_t r = mod_floor(disc, 4);
  if (disc == 0 || (r != 0 && r != 1)) {
    throw PreconditionError("not a discriminant: " + std::to_string(disc));
  }
}

QSeries twist(const QSeries& f, std::int64_t disc) {
  KroneckerCharacter chi(disc);
  return f.map_coefficients([&chi](Exponent e, const Integer& c) {
    int s = chi(e);
    return s == 0 ? Integer(0) : (s > 0 ? c : Integer(-c));
  });
}

bool is_inert(std::int64_t p, std::int64_t cm_disc) {
  if (!is_prime(p)) throw PreconditionError("is_inert: " + std::to_string(p) + " is not prime");
  switch (cm_disc) {
    case -4:
      return p % 4 == 3;
    case -3:
      return p % 3 == 2;
    default:
      throw PreconditionError("is_inert: unsupported CM discriminant " + std::to_string(cm_disc));
  }
}

}  // namespace qmod
