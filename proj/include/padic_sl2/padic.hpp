#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "padic_sl2/errors.hpp"
#include "padic_sl2/prime.hpp"

namespace padic_sl2 {

inline constexpr long kDefaultRelPrecision = 32;

/**
 * An element of Q_p at tracked finite precision.
 *
 * Three states:
 *   Exact     -- the element is a known rational (valuation computed exactly;
 *                digits materialized on demand).  Exact zero lives here.
 *   Interval  -- p^v * u where u is a unit known modulo p^N; the element is
 *                known modulo p^(v+N).
 *   NearZero  -- all that is known is x == 0 (mod p^A).  Produced by
 *                cancellation between Interval operands; its valuation is
 *                undecidable, and asking for it throws PrecisionExhausted.
 *
 * Exact values never silently degrade: arithmetic between Exact operands is
 * exact, so rational-origin cancellation yields exact zero, and an Exact
 * operand combines with an Interval at the interval's full precision.
 */
class PadicScalar {
 public:
  enum class Kind { Exact, Interval, NearZero };
  enum class ZeroState { Zero, NonZero, Unknown };

  static PadicScalar from_rational(const mpq_class& q, Prime p,
                                   long rel_precision = kDefaultRelPrecision);
  static PadicScalar from_fraction(const mpz_class& num, const mpz_class& den,
                                   Prime p,
                                   long rel_precision = kDefaultRelPrecision);
  static PadicScalar from_integer(long n, Prime p,
                                  long rel_precision = kDefaultRelPrecision);
  // p^v * unit known modulo p^rel_precision; unit must be invertible mod p.
  static PadicScalar from_unit(Prime p, long valuation, mpz_class unit,
                               long rel_precision);
  static PadicScalar exact_zero(Prime p);
  // The "congruent to 0 mod p^abs_precision, valuation unknown" state.
  static PadicScalar zero_mod(Prime p, long abs_precision);
  // p^e as an exact scalar, e of either sign.
  static PadicScalar prime_power(Prime p, long e,
                                 long rel_precision = kDefaultRelPrecision);

  Kind kind() const { return kind_; }
  Prime prime() const { return prime_; }
  bool is_exact() const { return kind_ == Kind::Exact; }
  bool is_exact_zero() const;

  ZeroState zero_state() const;

  // nullopt encodes +infinity (exact zero); NearZero throws PrecisionExhausted.
  std::optional<long> valuation() const;
  // Decidable three-way predicates; throw PrecisionExhausted only when the
  // tracked interval genuinely straddles the bound.
  bool valuation_at_least(long bound) const;
  bool valuation_less_than(long bound) const { return !valuation_at_least(bound); }

  // Interval/NearZero: the element is known mod p^abs_precision.
  // Exact nonzero: valuation + rel_precision (the rendering window).
  long abs_precision() const;
  long rel_precision() const;

  const mpq_class& rational() const;  // Exact only

  // First ndigits unit digits, i.e. p^{-v} x mod p^ndigits.
  mpz_class unit_digits(long ndigits) const;
  // x mod p^k as an integer in [0, p^k); requires valuation >= 0.
  mpz_class residue_mod(long k) const;

  PadicScalar operator-() const;
  PadicScalar inverse() const;
  friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b);

  // Indistinguishable at the shared precision; exact equality when both
  // operands are Exact.
  bool congruent(const PadicScalar& other) const;
  friend bool operator==(const PadicScalar& a, const PadicScalar& b) {
    return a.congruent(b);
  }

  // "num/den" for Exact, "p^v * u (mod p^k)" for Interval, "0 (mod p^k)"
  // for NearZero.
  std::string to_string() const;

 private:
  explicit PadicScalar(Prime p) : prime_(p) {}

  void check_same_prime(const PadicScalar& other) const;
  // Integer congruent to p^{-base} x modulo p^k (caller guarantees the
  // element is known that far).
  mpz_class scaled_residue(long base, long k) const;
  // Valuation floor: exact valuation for Exact/Interval, abs_ for NearZero.
  long valuation_floor() const;

  Prime prime_;
  Kind kind_ = Kind::Exact;
  mpq_class rat_ = 0;  // Exact
  long rel_ = kDefaultRelPrecision;
  long val_ = 0;    // Interval
  mpz_class unit_;  // Interval: in [1, p^N), p does not divide unit_
  long abs_ = 0;    // Interval: val_ + rel_; NearZero: known-zero window
};

// Spec-facing free functions.

inline std::optional<long> valuation(const PadicScalar& x) { return x.valuation(); }

// ac(x) = res(p^{-v(x)} x); multiplicative on units of the residue field.
unsigned long angular_component(const PadicScalar& x);

/**
 * A coset of (K^x)^2 in K^x.  Four classes for p != 2 (Klein group),
 * eight for p = 2.  Stored as (valuation parity, unit key); the unit key is
 * the quadratic-residue bit for p != 2 and the unit mod 8 for p = 2.
 */
class SquareClass {
 public:
  SquareClass(Prime p, int parity, unsigned long unit_key);

  Prime prime() const { return prime_; }
  int parity() const { return parity_; }
  unsigned long unit_key() const { return key_; }

  bool is_trivial() const;
  mpq_class representative() const;
  std::string label() const;  // representative rendered as a decimal string

  friend SquareClass operator*(const SquareClass& a, const SquareClass& b);
  friend bool operator==(const SquareClass& a, const SquareClass& b) {
    return a.prime_ == b.prime_ && a.parity_ == b.parity_ && a.key_ == b.key_;
  }

 private:
  Prime prime_;
  int parity_;
  unsigned long key_;
};

// Least positive quadratic nonresidue mod p (p odd).
unsigned long least_nonresidue(Prime p);

// {1, alpha, p, alpha p} for p != 2; {1, -1, 2, -2, 5, -5, 10, -10} for p = 2.
std::vector<mpq_class> square_class_representatives(Prime p);

SquareClass square_class(const PadicScalar& x);

// Square root by Newton lifting; picks the representative with
// ac in {1..(p-1)/2} (p != 2) resp. r == 1 (mod 4) (p = 2).
PadicScalar hensel_sqrt(const PadicScalar& x);

// The torsion unit with t^(p-1) = 1 and t == residue (mod p).
PadicScalar teichmueller(Prime p, unsigned long residue,
                         long rel_precision = kDefaultRelPrecision);

// Square root mod an odd prime (input must be a residue); Tonelli-Shanks.
unsigned long sqrt_mod_p(unsigned long a, Prime p);

}  // namespace padic_sl2
