#include "padic_sl2/mat2.hpp"

#include <algorithm>
#include <sstream>

namespace padic_sl2 {

namespace {

PadicScalar one(Prime p, long rel) { return PadicScalar::from_integer(1, p, rel); }
PadicScalar zero(Prime p) { return PadicScalar::exact_zero(p); }

}  // namespace

Mat2::Mat2(PadicScalar a, PadicScalar b, PadicScalar c, PadicScalar d)
    : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {
  if (!(e_[0].prime() == e_[1].prime() && e_[0].prime() == e_[2].prime() &&
        e_[0].prime() == e_[3].prime())) {
    throw InvalidParams("Mat2: entries live over different primes");
  }
  check_det("Mat2");
}

Mat2::Mat2(Unchecked, PadicScalar a, PadicScalar b, PadicScalar c, PadicScalar d)
    : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

void Mat2::check_det(const char* who) const {
  PadicScalar dev = det() - one(prime(), kDefaultRelPrecision);
  if (dev.zero_state() == PadicScalar::ZeroState::NonZero) {
    throw InvalidParams(std::string(who) + ": determinant is not 1");
  }
}

Mat2 Mat2::identity(Prime p, long rel) {
  return Mat2(Unchecked{}, one(p, rel), zero(p), zero(p), one(p, rel));
}

Mat2 Mat2::minus_identity(Prime p, long rel) {
  return Mat2(Unchecked{}, -one(p, rel), zero(p), zero(p), -one(p, rel));
}

Mat2 Mat2::weyl(Prime p, long rel) {
  return Mat2(Unchecked{}, zero(p), one(p, rel), -one(p, rel), zero(p));
}

Mat2 Mat2::diagonal(const PadicScalar& t) {
  Prime p = t.prime();
  return Mat2(Unchecked{}, t, zero(p), zero(p), t.inverse());
}

Mat2 Mat2::upper_unipotent(const PadicScalar& u) {
  Prime p = u.prime();
  long rel = std::max<long>(1, u.rel_precision());
  return Mat2(Unchecked{}, one(p, rel), u, zero(p), one(p, rel));
}

Mat2 Mat2::lower_unipotent(const PadicScalar& u) {
  Prime p = u.prime();
  long rel = std::max<long>(1, u.rel_precision());
  return Mat2(Unchecked{}, one(p, rel), zero(p), u, one(p, rel));
}

Mat2 Mat2::antidiagonal(const PadicScalar& t) {
  Prime p = t.prime();
  return Mat2(Unchecked{}, zero(p), t, -t.inverse(), zero(p));
}

Mat2 Mat2::operator*(const Mat2& o) const {
  Mat2 r(Unchecked{}, e_[0] * o.e_[0] + e_[1] * o.e_[2],
         e_[0] * o.e_[1] + e_[1] * o.e_[3], e_[2] * o.e_[0] + e_[3] * o.e_[2],
         e_[2] * o.e_[1] + e_[3] * o.e_[3]);
  PadicScalar dev = r.det() - one(prime(), kDefaultRelPrecision);
  if (dev.zero_state() == PadicScalar::ZeroState::NonZero) {
    throw InternalInconsistency("Mat2: product determinant drifted from 1");
  }
  return r;
}

Mat2 Mat2::inverse() const {
  return Mat2(Unchecked{}, e_[3], -e_[1], -e_[2], e_[0]);
}

Mat2 Mat2::operator-() const {
  return Mat2(Unchecked{}, -e_[0], -e_[1], -e_[2], -e_[3]);
}

Mat2 Mat2::pow(long e) const {
  Mat2 base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e)
                          : static_cast<unsigned long>(e);
  Mat2 acc = identity(prime());
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool Mat2::congruent(const Mat2& o) const {
  for (int i = 0; i < 4; ++i) {
    if (!e_[i].congruent(o.e_[i])) return false;
  }
  return true;
}

namespace {

// Zero test that refuses to guess: Unknown -> PrecisionExhausted.
bool decide_zero(const PadicScalar& x, const char* what) {
  switch (x.zero_state()) {
    case PadicScalar::ZeroState::Zero:
      return true;
    case PadicScalar::ZeroState::NonZero:
      return false;
    case PadicScalar::ZeroState::Unknown:
      throw PrecisionExhausted(std::string(what) +
                               ": zero test undecidable at tracked precision");
  }
  throw InternalInconsistency("decide_zero");
}

}  // namespace

bool Mat2::is_identity() const {
  PadicScalar one_ = one(prime(), kDefaultRelPrecision);
  return decide_zero(e_[1], "is_identity") && decide_zero(e_[2], "is_identity") &&
         decide_zero(e_[0] - one_, "is_identity") &&
         decide_zero(e_[3] - one_, "is_identity");
}

bool Mat2::is_minus_identity() const {
  PadicScalar one_ = one(prime(), kDefaultRelPrecision);
  return decide_zero(e_[1], "is_minus_identity") &&
         decide_zero(e_[2], "is_minus_identity") &&
         decide_zero(e_[0] + one_, "is_minus_identity") &&
         decide_zero(e_[3] + one_, "is_minus_identity");
}

std::string Mat2::to_string() const {
  std::ostringstream os;
  os << "[[" << e_[0].to_string() << ", " << e_[1].to_string() << "], ["
     << e_[2].to_string() << ", " << e_[3].to_string() << "]]";
  return os.str();
}

Mat2 conjugate(const Mat2& A, const Mat2& g) { return g.inverse() * A * g; }

long matrix_valuation(const Mat2& A) {
  std::optional<long> low;
  std::optional<long> unknown_floor;
  for (int i = 0; i < 4; ++i) {
    const PadicScalar& x = A.entry(i / 2, i % 2);
    switch (x.zero_state()) {
      case PadicScalar::ZeroState::Zero:
        break;
      case PadicScalar::ZeroState::NonZero: {
        long v = *x.valuation();
        if (!low || v < *low) low = v;
        break;
      }
      case PadicScalar::ZeroState::Unknown: {
        long f = x.abs_precision();
        if (!unknown_floor || f < *unknown_floor) unknown_floor = f;
        break;
      }
    }
  }
  if (!low) {
    throw PrecisionExhausted("matrix_valuation: all entries near zero");
  }
  if (unknown_floor && *unknown_floor < *low) {
    throw PrecisionExhausted("matrix_valuation: undecidable at tracked precision");
  }
  return *low;
}

Mat2 BruhatForm::reconstruct() const {
  if (cell == Cell::B) return left;
  return left * Mat2::weyl(left.prime()) * *right;
}

BruhatForm bruhat_decompose(const Mat2& A) {
  Prime p = A.prime();
  if (decide_zero(A.c(), "bruhat_decompose")) {
    return BruhatForm{BruhatForm::Cell::B, A, std::nullopt};
  }
  PadicScalar cinv = A.c().inverse();
  Mat2 left(-cinv, -A.a(), PadicScalar::exact_zero(p), -A.c());
  Mat2 right = Mat2::upper_unipotent(A.d() * cinv);
  BruhatForm form{BruhatForm::Cell::BwB, left, right};
  if (!form.reconstruct().congruent(A)) {
    throw InternalInconsistency("bruhat_decompose: reconstruction mismatch");
  }
  return form;
}

Mat2 antidiagonal_relation(const PadicScalar& t) {
  if (decide_zero(t, "antidiagonal_relation")) {
    throw DomainError("antidiagonal_relation: t must be nonzero");
  }
  Mat2 rhs = Mat2::antidiagonal(t);
  Mat2 lhs = Mat2::upper_unipotent(t) * Mat2::lower_unipotent(-t.inverse()) *
             Mat2::upper_unipotent(t);
  if (!lhs.congruent(rhs)) {
    throw InternalInconsistency("antidiagonal_relation: identity fails");
  }
  return rhs;
}

Mat2 diagonal_relation(const PadicScalar& t) {
  Mat2 rhs = Mat2::diagonal(t);
  Mat2 lhs = antidiagonal_relation(t) * Mat2::weyl(t.prime()).inverse();
  if (!lhs.congruent(rhs)) {
    throw InternalInconsistency("diagonal_relation: identity fails");
  }
  return rhs;
}

}  // namespace padic_sl2
