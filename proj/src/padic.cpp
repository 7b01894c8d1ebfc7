#include "padic_sl2/padic.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace padic_sl2 {

namespace {

constexpr long kInfinitePrecision = std::numeric_limits<long>::max() / 4;

// v_p(n) for n != 0.
long mpz_valuation(const mpz_class& n, const Prime& p) {
  mpz_class reduced;
  mpz_class pz(p.value());
  return static_cast<long>(
      mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

mpz_class mod_pow_k(const mpz_class& x, const mpz_class& modulus) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

mpz_class mod_inverse(const mpz_class& x, const mpz_class& modulus) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t()) == 0) {
    throw InternalInconsistency("mod_inverse: not invertible");
  }
  return r;
}

}  // namespace

PadicScalar PadicScalar::from_rational(const mpq_class& q, Prime p,
                                       long rel_precision) {
  if (rel_precision < 1) throw InvalidParams("from_rational: precision < 1");
  PadicScalar x(p);
  x.kind_ = Kind::Exact;
  x.rat_ = q;
  x.rat_.canonicalize();
  x.rel_ = rel_precision;
  return x;
}

PadicScalar PadicScalar::from_fraction(const mpz_class& num,
                                       const mpz_class& den, Prime p,
                                       long rel_precision) {
  if (den == 0) throw InvalidRational("from_fraction: zero denominator");
  return from_rational(mpq_class(num, den), p, rel_precision);
}

PadicScalar PadicScalar::from_integer(long n, Prime p, long rel_precision) {
  return from_rational(mpq_class(n), p, rel_precision);
}

PadicScalar PadicScalar::from_unit(Prime p, long valuation, mpz_class unit,
                                   long rel_precision) {
  if (rel_precision < 1) throw InvalidParams("from_unit: precision < 1");
  PadicScalar x(p);
  x.kind_ = Kind::Interval;
  x.val_ = valuation;
  mpz_class pk = p.pow(rel_precision);
  x.unit_ = mod_pow_k(unit, pk);
  if (mpz_divisible_ui_p(x.unit_.get_mpz_t(), p.value())) {
    throw InvalidParams("from_unit: unit divisible by p");
  }
  x.abs_ = valuation + rel_precision;
  return x;
}

PadicScalar PadicScalar::exact_zero(Prime p) {
  PadicScalar x(p);
  x.kind_ = Kind::Exact;
  x.rat_ = 0;
  return x;
}

PadicScalar PadicScalar::zero_mod(Prime p, long abs_precision) {
  PadicScalar x(p);
  x.kind_ = Kind::NearZero;
  x.abs_ = abs_precision;
  return x;
}

PadicScalar PadicScalar::prime_power(Prime p, long e, long rel_precision) {
  if (e >= 0) return from_rational(mpq_class(p.pow(e)), p, rel_precision);
  return from_rational(mpq_class(1, p.pow(-e)), p, rel_precision);
}

bool PadicScalar::is_exact_zero() const {
  return kind_ == Kind::Exact && rat_ == 0;
}

PadicScalar::ZeroState PadicScalar::zero_state() const {
  switch (kind_) {
    case Kind::Exact:
      return rat_ == 0 ? ZeroState::Zero : ZeroState::NonZero;
    case Kind::Interval:
      return ZeroState::NonZero;
    case Kind::NearZero:
      return ZeroState::Unknown;
  }
  throw InternalInconsistency("zero_state: bad kind");
}

std::optional<long> PadicScalar::valuation() const {
  switch (kind_) {
    case Kind::Exact: {
      if (rat_ == 0) return std::nullopt;
      long vn = mpz_valuation(rat_.get_num(), prime_);
      long vd = mpz_valuation(rat_.get_den(), prime_);
      return vn - vd;
    }
    case Kind::Interval:
      return val_;
    case Kind::NearZero:
      throw PrecisionExhausted(
          "valuation: element congruent to 0 at full tracked precision (mod p^" +
          std::to_string(abs_) + ")");
  }
  throw InternalInconsistency("valuation: bad kind");
}

bool PadicScalar::valuation_at_least(long bound) const {
  switch (kind_) {
    case Kind::Exact:
      if (rat_ == 0) return true;
      return *valuation() >= bound;
    case Kind::Interval:
      return val_ >= bound;
    case Kind::NearZero:
      if (abs_ >= bound) return true;
      throw PrecisionExhausted(
          "valuation_at_least: undecidable at tracked precision");
  }
  throw InternalInconsistency("valuation_at_least: bad kind");
}

long PadicScalar::abs_precision() const {
  switch (kind_) {
    case Kind::Exact:
      if (rat_ == 0) throw DomainError("abs_precision: exact zero");
      return *valuation() + rel_;
    case Kind::Interval:
    case Kind::NearZero:
      return abs_;
  }
  throw InternalInconsistency("abs_precision: bad kind");
}

long PadicScalar::rel_precision() const {
  switch (kind_) {
    case Kind::Exact:
      return rel_;
    case Kind::Interval:
      return abs_ - val_;
    case Kind::NearZero:
      return 0;
  }
  throw InternalInconsistency("rel_precision: bad kind");
}

const mpq_class& PadicScalar::rational() const {
  if (kind_ != Kind::Exact) throw DomainError("rational: not a rational-origin value");
  return rat_;
}

mpz_class PadicScalar::unit_digits(long ndigits) const {
  if (ndigits < 1) throw InvalidParams("unit_digits: need at least one digit");
  switch (kind_) {
    case Kind::Exact: {
      if (rat_ == 0) throw DomainError("unit_digits: exact zero");
      long vn = mpz_valuation(rat_.get_num(), prime_);
      long vd = mpz_valuation(rat_.get_den(), prime_);
      mpz_class n, d;
      mpz_divexact(n.get_mpz_t(), rat_.get_num().get_mpz_t(),
                   prime_.pow(vn).get_mpz_t());
      mpz_divexact(d.get_mpz_t(), rat_.get_den().get_mpz_t(),
                   prime_.pow(vd).get_mpz_t());
      mpz_class pk = prime_.pow(ndigits);
      return mod_pow_k(n * mod_inverse(d, pk), pk);
    }
    case Kind::Interval:
      if (ndigits > rel_precision()) {
        throw PrecisionExhausted("unit_digits: only " +
                                 std::to_string(rel_precision()) +
                                 " digits tracked");
      }
      return mod_pow_k(unit_, prime_.pow(ndigits));
    case Kind::NearZero:
      throw PrecisionExhausted("unit_digits: valuation unknown");
  }
  throw InternalInconsistency("unit_digits: bad kind");
}

mpz_class PadicScalar::residue_mod(long k) const {
  if (k < 0) throw InvalidParams("residue_mod: negative modulus exponent");
  if (k == 0) return 0;
  if (!valuation_at_least(0)) throw DomainError("residue_mod: negative valuation");
  if (is_exact_zero()) return 0;
  if (kind_ == Kind::NearZero) {
    if (abs_ >= k) return 0;
    throw PrecisionExhausted("residue_mod: tracked only mod p^" +
                             std::to_string(abs_));
  }
  long v = *valuation();
  if (v >= k) return 0;
  if (kind_ == Kind::Interval && abs_ < k) {
    throw PrecisionExhausted("residue_mod: tracked only mod p^" +
                             std::to_string(abs_));
  }
  mpz_class pk = prime_.pow(k);
  return mod_pow_k(prime_.pow(v) * unit_digits(k - v), pk);
}

void PadicScalar::check_same_prime(const PadicScalar& other) const {
  if (!(prime_ == other.prime_)) {
    throw InvalidParams("operands live over different primes");
  }
}

long PadicScalar::valuation_floor() const {
  if (kind_ == Kind::NearZero) return abs_;
  return *valuation();  // caller excludes exact zero
}

mpz_class PadicScalar::scaled_residue(long base, long k) const {
  if (k <= 0) return 0;
  mpz_class pk = prime_.pow(k);
  switch (kind_) {
    case Kind::NearZero:
      return 0;  // known 0 mod p^abs_, and base + k <= abs_
    case Kind::Interval: {
      long shift = val_ - base;
      if (shift >= k) return 0;
      return mod_pow_k(prime_.pow(shift) * unit_, pk);
    }
    case Kind::Exact: {
      long v = *valuation();
      long shift = v - base;
      if (shift >= k) return 0;
      return mod_pow_k(prime_.pow(shift) * unit_digits(k - shift), pk);
    }
  }
  throw InternalInconsistency("scaled_residue: bad kind");
}

PadicScalar PadicScalar::operator-() const {
  PadicScalar r(*this);
  switch (kind_) {
    case Kind::Exact:
      r.rat_ = -rat_;
      return r;
    case Kind::Interval: {
      mpz_class pk = prime_.pow(rel_precision());
      r.unit_ = pk - unit_;
      return r;
    }
    case Kind::NearZero:
      return r;
  }
  throw InternalInconsistency("negate: bad kind");
}

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
  a.check_same_prime(b);
  Prime p = a.prime_;
  if (a.is_exact() && b.is_exact()) {
    return PadicScalar::from_rational(a.rat_ + b.rat_, p,
                                      std::min(a.rel_, b.rel_));
  }
  if (a.is_exact_zero()) return b;
  if (b.is_exact_zero()) return a;

  long Aa = a.is_exact() ? kInfinitePrecision : a.abs_;
  long Ab = b.is_exact() ? kInfinitePrecision : b.abs_;
  long A = std::min(Aa, Ab);
  long m = std::min(a.valuation_floor(), b.valuation_floor());
  long k = A - m;
  if (k <= 0) return PadicScalar::zero_mod(p, A);

  mpz_class pk = p.pow(k);
  mpz_class s = a.scaled_residue(m, k) + b.scaled_residue(m, k);
  mpz_mod(s.get_mpz_t(), s.get_mpz_t(), pk.get_mpz_t());
  if (s == 0) return PadicScalar::zero_mod(p, A);

  mpz_class u;
  long w = static_cast<long>(
      mpz_remove(u.get_mpz_t(), s.get_mpz_t(), mpz_class(p.value()).get_mpz_t()));
  return PadicScalar::from_unit(p, m + w, u, k - w);
}

PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) {
  return a + (-b);
}

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
  a.check_same_prime(b);
  Prime p = a.prime_;
  if (a.is_exact() && b.is_exact()) {
    return PadicScalar::from_rational(a.rat_ * b.rat_, p,
                                      std::min(a.rel_, b.rel_));
  }
  if (a.is_exact_zero() || b.is_exact_zero()) return PadicScalar::exact_zero(p);

  if (a.kind() == PadicScalar::Kind::NearZero ||
      b.kind() == PadicScalar::Kind::NearZero) {
    long fa = a.valuation_floor();
    long fb = b.valuation_floor();
    return PadicScalar::zero_mod(p, fa + fb);
  }

  long va = *a.valuation();
  long vb = *b.valuation();
  long N;
  if (a.is_exact()) {
    N = b.rel_precision();
  } else if (b.is_exact()) {
    N = a.rel_precision();
  } else {
    N = std::min(a.rel_precision(), b.rel_precision());
  }
  mpz_class u = a.unit_digits(N) * b.unit_digits(N);
  return PadicScalar::from_unit(p, va + vb, u, N);
}

PadicScalar PadicScalar::inverse() const {
  switch (kind_) {
    case Kind::Exact:
      if (rat_ == 0) throw DomainError("inverse: exact zero");
      return from_rational(1 / rat_, prime_, rel_);
    case Kind::NearZero:
      throw PrecisionExhausted(
          "inverse: operand indistinguishable from zero at tracked precision");
    case Kind::Interval: {
      long N = rel_precision();
      mpz_class pk = prime_.pow(N);
      return from_unit(prime_, -val_, mod_inverse(unit_, pk), N);
    }
  }
  throw InternalInconsistency("inverse: bad kind");
}

PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) {
  return a * b.inverse();
}

bool PadicScalar::congruent(const PadicScalar& other) const {
  return (*this - other).zero_state() != ZeroState::NonZero;
}

std::string PadicScalar::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Exact:
      os << rat_;
      return os.str();
    case Kind::Interval:
      os << prime_.value() << "^" << val_ << " * " << unit_ << " (mod "
         << prime_.value() << "^" << abs_ << ")";
      return os.str();
    case Kind::NearZero:
      os << "0 (mod " << prime_.value() << "^" << abs_ << ")";
      return os.str();
  }
  throw InternalInconsistency("to_string: bad kind");
}

unsigned long angular_component(const PadicScalar& x) {
  if (x.zero_state() == PadicScalar::ZeroState::Zero) {
    throw DomainError("angular_component: zero has no angular component");
  }
  return static_cast<unsigned long>(x.unit_digits(1).get_ui());
}

SquareClass::SquareClass(Prime p, int parity, unsigned long unit_key)
    : prime_(p), parity_(parity & 1), key_(unit_key) {
  if (p.is_two()) {
    if (key_ % 2 == 0 || key_ > 7) {
      throw InvalidParams("SquareClass: unit key mod 8 must be odd and < 8");
    }
  } else if (key_ > 1) {
    throw InvalidParams("SquareClass: residue key must be 0 or 1");
  }
}

bool SquareClass::is_trivial() const {
  return parity_ == 0 && key_ == (prime_.is_two() ? 1ul : 0ul);
}

mpq_class SquareClass::representative() const {
  if (!prime_.is_two()) {
    mpz_class u = key_ == 0 ? mpz_class(1) : mpz_class(least_nonresidue(prime_));
    return parity_ == 0 ? mpq_class(u) : mpq_class(u * prime_.value());
  }
  // The odd part, keyed by the unit mod 8.
  long u;
  switch (key_) {
    case 1: u = 1; break;
    case 5: u = 5; break;
    case 3: u = -5; break;  // -5 == 3 (mod 8)
    case 7: u = -1; break;  // -1 == 7 (mod 8)
    default:
      throw InternalInconsistency("SquareClass: bad key");
  }
  return parity_ == 0 ? mpq_class(u) : mpq_class(2 * u);
}

std::string SquareClass::label() const {
  std::ostringstream os;
  os << representative();
  return os.str();
}

SquareClass operator*(const SquareClass& a, const SquareClass& b) {
  if (!(a.prime_ == b.prime_)) throw InvalidParams("SquareClass: prime mismatch");
  if (a.prime_.is_two()) {
    return SquareClass(a.prime_, a.parity_ ^ b.parity_, (a.key_ * b.key_) % 8);
  }
  return SquareClass(a.prime_, a.parity_ ^ b.parity_, a.key_ ^ b.key_);
}

unsigned long least_nonresidue(Prime p) {
  if (p.is_two()) throw DomainError("least_nonresidue: p = 2 has no residue split");
  mpz_class pz(p.value());
  for (unsigned long a = 2; a < p.value(); ++a) {
    if (mpz_legendre(mpz_class(a).get_mpz_t(), pz.get_mpz_t()) == -1) return a;
  }
  throw InternalInconsistency("least_nonresidue: none found");
}

std::vector<mpq_class> square_class_representatives(Prime p) {
  if (p.is_two()) {
    return {mpq_class(1),  mpq_class(-1), mpq_class(2),  mpq_class(-2),
            mpq_class(5),  mpq_class(-5), mpq_class(10), mpq_class(-10)};
  }
  mpq_class alpha(least_nonresidue(p));
  mpq_class pr(p.value());
  return {mpq_class(1), alpha, pr, alpha * pr};
}

SquareClass square_class(const PadicScalar& x) {
  switch (x.zero_state()) {
    case PadicScalar::ZeroState::Zero:
      throw DomainError("square_class: zero has no square class");
    case PadicScalar::ZeroState::Unknown:
      throw PrecisionExhausted("square_class: operand indistinguishable from zero");
    case PadicScalar::ZeroState::NonZero:
      break;
  }
  Prime p = x.prime();
  long v = *x.valuation();
  int parity = static_cast<int>(((v % 2) + 2) % 2);
  if (p.is_two()) {
    unsigned long u8 = static_cast<unsigned long>(x.unit_digits(3).get_ui());
    return SquareClass(p, parity, u8);
  }
  mpz_class ac(angular_component(x));
  int leg = mpz_legendre(ac.get_mpz_t(), mpz_class(p.value()).get_mpz_t());
  return SquareClass(p, parity, leg == 1 ? 0 : 1);
}

unsigned long sqrt_mod_p(unsigned long a, Prime p) {
  if (p.is_two()) return a % 2;
  mpz_class pz(p.value());
  mpz_class az(a % p.value());
  if (az == 0) return 0;
  if (mpz_legendre(az.get_mpz_t(), pz.get_mpz_t()) != 1) {
    throw DomainError("sqrt_mod_p: not a quadratic residue");
  }
  if (p.value() % 4 == 3) {
    mpz_class e = (pz + 1) / 4, r;
    mpz_powm(r.get_mpz_t(), az.get_mpz_t(), e.get_mpz_t(), pz.get_mpz_t());
    return static_cast<unsigned long>(r.get_ui());
  }
  // Tonelli-Shanks.
  mpz_class q = pz - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  mpz_class z(least_nonresidue(p));
  mpz_class c, t, r, b;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), pz.get_mpz_t());
  mpz_powm(t.get_mpz_t(), az.get_mpz_t(), q.get_mpz_t(), pz.get_mpz_t());
  mpz_class e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), az.get_mpz_t(), e.get_mpz_t(), pz.get_mpz_t());
  unsigned long m = s;
  while (t != 1) {
    mpz_class tt = t;
    unsigned long i = 0;
    while (tt != 1) {
      tt = tt * tt % pz;
      ++i;
    }
    b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % pz;
    r = r * b % pz;
    c = b * b % pz;
    t = t * c % pz;
    m = i;
  }
  return static_cast<unsigned long>(r.get_ui());
}

PadicScalar hensel_sqrt(const PadicScalar& x) {
  if (x.is_exact_zero()) return x;
  SquareClass cls = square_class(x);  // PrecisionExhausted propagates
  if (!cls.is_trivial()) {
    throw NotASquare("hensel_sqrt: operand is not a square (class " +
                     cls.label() + ")");
  }
  Prime p = x.prime();
  long v = *x.valuation();
  long w = v / 2;
  long N = x.rel_precision();

  if (!p.is_two()) {
    mpz_class pk = p.pow(N);
    mpz_class u = x.unit_digits(N);
    mpz_class s(sqrt_mod_p(angular_component(x), p));
    long e = 1;
    while (e < N) {
      long e2 = std::min(2 * e, N);
      mpz_class m = p.pow(e2);
      mpz_class sinv = mod_inverse(s, m);
      mpz_class two_inv = mod_inverse(mpz_class(2), m);
      s = (s + u % m * sinv) % m * two_inv % m;
      e = e2;
    }
    if (mpz_class(s % p.value()).get_ui() > (p.value() - 1) / 2) s = pk - s;
    return PadicScalar::from_unit(p, w, s, N);
  }

  // p = 2: bit-by-bit lifting; the root is determined mod 2^(N-1).
  mpz_class u = x.unit_digits(N);
  mpz_class s(1);
  for (long e = 3; e < N; ++e) {
    mpz_class m2 = p.pow(e + 1);
    if ((s * s - u) % m2 != 0) s += p.pow(e - 1);
  }
  mpz_class pk1 = p.pow(N - 1);
  s %= pk1;
  if (mpz_class(s % 4) == 3) s = pk1 - s;
  return PadicScalar::from_unit(p, w, s, N - 1);
}

PadicScalar teichmueller(Prime p, unsigned long residue, long rel_precision) {
  residue %= p.value();
  if (residue == 0) throw DomainError("teichmueller: residue must be a unit");
  mpz_class pk = p.pow(rel_precision);
  mpz_class t(residue);
  for (long i = 0; i <= rel_precision; ++i) {
    mpz_class next;
    mpz_powm_ui(next.get_mpz_t(), t.get_mpz_t(), p.value(), pk.get_mpz_t());
    if (next == t) break;
    t = next;
  }
  return PadicScalar::from_unit(p, 0, t, rel_precision);
}

}  // namespace padic_sl2
