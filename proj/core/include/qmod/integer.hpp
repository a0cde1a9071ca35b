#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace qmod {

using Integer = mpz_class;
using Exponent = std::int64_t;

// Overflow-checked exponent arithmetic; throws OverflowError.
Exponent checked_add(Exponent a, Exponent b);
Exponent checked_sub(Exponent a, Exponent b);
Exponent checked_mul(Exponent a, Exponent b);

// Floor and ceiling division for a positive divisor.
Exponent floor_div(Exponent a, Exponent b);
Exponent ceil_div(Exponent a, Exponent b);
Exponent mod_floor(Exponent a, Exponent b);

// p^k as a checked 64-bit value.
Exponent checked_pow(Exponent p, int k);

bool is_prime(std::int64_t n);

// p-adic valuation of an integer or a power series; the empty state is
// +infinity (valuation of zero).
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr explicit Valuation(std::int64_t v) : value_(v) {}
  static constexpr Valuation infinity() { return Valuation(); }

  constexpr bool is_infinite() const { return !value_.has_value(); }
  constexpr std::int64_t value() const { return *value_; }

  // k + infinity = infinity
  constexpr Valuation operator+(std::int64_t k) const {
    return is_infinite() ? Valuation() : Valuation(*value_ + k);
  }
  constexpr bool at_least(std::int64_t k) const {
    return is_infinite() || *value_ >= k;
  }
  friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
  friend constexpr bool operator<(const Valuation& a, const Valuation& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return *a.value_ < *b.value_;
  }

  std::string to_string() const;

 private:
  std::optional<std::int64_t> value_;
};

Valuation padic_valuation(const Integer& x, std::int64_t p);

}  // namespace qmod
