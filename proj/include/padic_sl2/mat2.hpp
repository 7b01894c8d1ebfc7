#pragma once

#include <array>
#include <optional>
#include <string>

#include "padic_sl2/padic.hpp"

namespace padic_sl2 {

/**
 * A 2x2 matrix over Q_p with determinant 1.  The determinant contract is
 * checked at construction (exactly for rational-origin entries, at tracked
 * precision otherwise) and preserved by every operation here.
 */
class Mat2 {
 public:
  Mat2(PadicScalar a, PadicScalar b, PadicScalar c, PadicScalar d);

  static Mat2 identity(Prime p, long rel_precision = kDefaultRelPrecision);
  static Mat2 minus_identity(Prime p, long rel_precision = kDefaultRelPrecision);
  // (0 1; -1 0), the standard Weyl representative.
  static Mat2 weyl(Prime p, long rel_precision = kDefaultRelPrecision);
  static Mat2 diagonal(const PadicScalar& t);         // diag(t, 1/t)
  static Mat2 upper_unipotent(const PadicScalar& u);  // (1 u; 0 1)
  static Mat2 lower_unipotent(const PadicScalar& u);  // (1 0; u 1)
  // (0 t; -1/t 0)
  static Mat2 antidiagonal(const PadicScalar& t);

  const PadicScalar& a() const { return e_[0]; }
  const PadicScalar& b() const { return e_[1]; }
  const PadicScalar& c() const { return e_[2]; }
  const PadicScalar& d() const { return e_[3]; }
  const PadicScalar& entry(int row, int col) const { return e_[2 * row + col]; }
  Prime prime() const { return e_[0].prime(); }

  PadicScalar trace() const { return e_[0] + e_[3]; }
  PadicScalar det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }

  Mat2 operator*(const Mat2& other) const;
  // Adjugate; no division since det = 1.
  Mat2 inverse() const;
  Mat2 operator-() const;
  Mat2 pow(long e) const;

  bool congruent(const Mat2& other) const;
  friend bool operator==(const Mat2& x, const Mat2& y) { return x.congruent(y); }

  // Exact tests; Unknown states propagate as PrecisionExhausted.
  bool is_identity() const;
  bool is_minus_identity() const;
  bool is_central() const { return is_identity() || is_minus_identity(); }

  std::string to_string() const;

 private:
  struct Unchecked {};
  Mat2(Unchecked, PadicScalar a, PadicScalar b, PadicScalar c, PadicScalar d);
  void check_det(const char* who) const;

  std::array<PadicScalar, 4> e_;
};

// g^{-1} A g.
Mat2 conjugate(const Mat2& A, const Mat2& g);

// Minimum of the four entry valuations.
long matrix_valuation(const Mat2& A);

/**
 * A = left (cell B, lower-left entry exactly zero) or A = left * weyl * right
 * with both factors upper triangular and the right factor unipotent.
 */
struct BruhatForm {
  enum class Cell { B, BwB };
  Cell cell;
  Mat2 left;
  std::optional<Mat2> right;

  Mat2 reconstruct() const;
};

BruhatForm bruhat_decompose(const Mat2& A);

// (1 t; 0 1)(1 0; -1/t 1)(1 t; 0 1) = (0 t; -1/t 0); self-checking.
Mat2 antidiagonal_relation(const PadicScalar& t);
// (0 t; -1/t 0)(0 -1; 1 0) = diag(t, 1/t); self-checking.
Mat2 diagonal_relation(const PadicScalar& t);

}  // namespace padic_sl2
