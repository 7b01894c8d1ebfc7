#pragma once

#include <gmpxx.h>

#include "padic_sl2/errors.hpp"

namespace padic_sl2 {

// The residue characteristic.  Primality is checked once at construction;
// p = 2 is a first-class citizen and selects the mod-8 branches downstream.
class Prime {
 public:
  explicit Prime(unsigned long p) : p_(p) {
    if (p < 2 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 40) == 0) {
      throw InvalidParams("Prime: " + std::to_string(p) + " is not prime");
    }
  }

  unsigned long value() const { return p_; }
  bool is_two() const { return p_ == 2; }

  // p^k for k >= 0.
  mpz_class pow(long k) const {
    if (k < 0) throw InvalidParams("Prime::pow: negative exponent");
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p_, static_cast<unsigned long>(k));
    return r;
  }

  friend bool operator==(const Prime&, const Prime&) = default;

 private:
  unsigned long p_;
};

}  // namespace padic_sl2
