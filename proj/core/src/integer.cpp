#include "qmod/integer.hpp"

#include <limits>

#include "qmod/errors.hpp"

namespace qmod {

Exponent checked_add(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("exponent overflow in addition");
  return r;
}

Exponent checked_sub(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("exponent overflow in subtraction");
  return r;
}

Exponent checked_mul(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("exponent overflow in multiplication");
  return r;
}

Exponent floor_div(Exponent a, Exponent b) {
  Exponent q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Exponent ceil_div(Exponent a, Exponent b) { return -floor_div(-a, b); }

Exponent mod_floor(Exponent a, Exponent b) { return a - b * floor_div(a, b); }

Exponent checked_pow(Exponent p, int k) {
  if (k < 0) throw PreconditionError("negative exponent in checked_pow");
  Exponent r = 1;
  for (int i = 0; i < k; ++i) r = checked_mul(r, p);
  return r;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::string Valuation::to_string() const {
  return is_infinite() ? std::string("inf") : std::to_string(*value_);
}

Valuation padic_valuation(const Integer& x, std::int64_t p) {
  if (p < 2) throw PreconditionError("valuation base must be >= 2");
  if (sgn(x) == 0) return Valuation::infinity();
  mpz_class base(static_cast<unsigned long>(p));
  mpz_class rest;
  auto v = static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), base.get_mpz_t()));
  return Valuation(v);
}

}  // namespace qmod
