#pragma once

#include <optional>
#include <string>
#include <variant>

#include "padic_sl2/mat2.hpp"

namespace padic_sl2 {

/**
 * Parametric descriptions of the definable-subgroup families, with exact
 * membership oracles.  An optional conjugator g turns a descriptor for S
 * into one for g S g^{-1} (membership undoes g first).
 *
 * Equality constraints in membership use congruence at tracked precision;
 * valuation threshold tests are strict and raise PrecisionExhausted when a
 * boundary is undecidable.
 */
class SubgroupDescriptor {
 public:
  struct Unipotents {};       // (+-1 u; 0 +-1)
  struct UnipotentsPlus {};   // (1 u; 0 1)
  struct DiagonalTorus {};    // diag(t, 1/t)
  struct NormTorus {          // (a b; b*delta a), a^2 - b^2 delta = 1
    mpq_class delta;
  };
  struct UpperTriangular {};  // (t u; 0 1/t)
  struct DiagonalNormalizer {};  // diagonal together with antidiagonal
  struct IntegralPoints {};      // all entry valuations >= 0
  struct Additive {  // (1 u; 0 1) with v(u) >= gamma
    long gamma;
  };
  struct MultUnits {  // diag(x, 1/x) with v(x) in nZ and unit part in 1+p^g0 O
    long n;           // n = 0 forces v(x) = 0
    long gamma0;      // >= 1
  };
  struct UpperParam {  // (t u; 0 1/t) with t in MultUnits-set, v(u) >= z.gamma
    MultUnits units;   // units.n must be 0 so that P*Z stays inside Z
    Additive translations;
  };
  struct Filtration {  // v(b) >= n, a in 1 + p^(2n + v(delta)) O  (p = 2: 2n-1)
    long n;
    mpq_class delta;
  };
  struct Congruence {  // v(diag - 1) >= gamma, v(b) >= eta1, v(c) >= eta2
    long gamma;
    long eta1;
    long eta2;
  };
  struct Centralizer {  // everything commuting with a fixed anisotropic anchor
    mpq_class delta;    // square-class representative of tr^2 - 4
    Mat2 anchor;
  };

  using Variant =
      std::variant<Unipotents, UnipotentsPlus, DiagonalTorus, NormTorus,
                   UpperTriangular, DiagonalNormalizer, IntegralPoints, Additive,
                   MultUnits, UpperParam, Filtration, Congruence, Centralizer>;

  static SubgroupDescriptor unipotents(Prime p);
  static SubgroupDescriptor unipotents_plus(Prime p);
  static SubgroupDescriptor diagonal_torus(Prime p);
  static SubgroupDescriptor norm_torus(Prime p, const mpq_class& delta);
  static SubgroupDescriptor upper_triangular(Prime p);
  static SubgroupDescriptor diagonal_normalizer(Prime p);
  static SubgroupDescriptor integral_points(Prime p);
  static SubgroupDescriptor additive(Prime p, long gamma);
  static SubgroupDescriptor mult_units(Prime p, long n, long gamma0);
  static SubgroupDescriptor upper_param(Prime p, MultUnits units, Additive z);
  static SubgroupDescriptor filtration(Prime p, long n, const mpq_class& delta);
  static SubgroupDescriptor congruence(Prime p, long gamma, long eta1, long eta2);
  static SubgroupDescriptor centralizer(Prime p, const mpq_class& delta,
                                        const Mat2& anchor);

  SubgroupDescriptor with_conjugator(const Mat2& g) const;

  Prime prime() const { return prime_; }
  const Variant& variant() const { return variant_; }
  const std::optional<Mat2>& conjugator() const { return conjugator_; }
  std::string variant_name() const;

 private:
  SubgroupDescriptor(Prime p, Variant v) : prime_(p), variant_(std::move(v)) {}

  Prime prime_;
  Variant variant_;
  std::optional<Mat2> conjugator_;
};

bool member(const SubgroupDescriptor& D, const Mat2& A);

// True iff H_{gamma,eta1,eta2} is a group: eta1 + eta2 >= gamma >= 0.
bool congruence_group_check(long gamma, long eta1, long eta2);

struct FiltrationLevel {
  bool infinite = false;  // central elements
  long level = 0;

  friend bool operator==(const FiltrationLevel&, const FiltrationLevel&) = default;
};

// v(b) for x = (a b; b delta a) in the norm torus, with a self-check of the
// paired unit condition on a (InternalInconsistency on violation).
FiltrationLevel filtration_level(const Mat2& x, const mpq_class& delta);

// x in Z_n maps to b p^{-n} mod p; surjective onto Z/p with kernel Z_{n+1}
// over the lemma's validity range.
unsigned long z_quotient_map(const Mat2& x, long n, const mpq_class& delta);

// res(a + b sqrt(delta)) in the quadratic residue field, as (res a, res b).
// Unramified delta only.
std::pair<unsigned long, unsigned long> residue_character(const Mat2& x,
                                                          const mpq_class& delta);

struct Boundedness {
  bool bounded = false;
  std::optional<long> witness;  // m with v(x) >= m for every member
};

// Decided from the descriptor parameters alone.
Boundedness is_bounded(const SubgroupDescriptor& D);

}  // namespace padic_sl2
