#pragma once

#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "quatrep/local_field.hpp"

namespace quatrep {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Element sum a_i p_D^i (i < d) of the maximal order O_D, known modulo P_D^prec.
///
/// Coefficient a_i is an element of O_E known modulo P_E^ceil((prec - i)/d).
struct QuatElem {
  const Algebra* alg = nullptr;
  int prec = 0;
  std::vector<LocalElem> a;
};

/// Division algebra of degree d and invariant r/d over F, presented by the
/// unramified E, p_D^d = p_F and p_D c p_D^-1 = sigma^r(c).
class Algebra {
 public:
  /// max_prec: largest p_D-adic precision any element may carry.
  static AlgebraPtr create(FieldKind kind, std::uint32_t p, unsigned e, unsigned d, unsigned r, int max_prec);

  unsigned d() const { return d_; }
  unsigned r() const { return r_; }
  int max_prec() const { return max_prec_; }
  std::uint32_t q() const { return E_->q(); }
  const UnramExt& E() const { return *E_; }
  const UnramExt& F() const { return E_->base(); }
  const GaloisField& kD() const { return E_->kD(); }
  const GaloisField& kF() const { return E_->kF(); }
  FieldKind kind() const { return E_->kind(); }

  /// E-precision of coefficient i when the element is known mod P_D^n.
  int coeff_prec(int i, int n) const;

  QuatElem zero(int prec) const;
  QuatElem one(int prec) const;
  QuatElem from_int(long long n, int prec) const;
  /// a viewed in D (a in E).
  QuatElem from_E(const LocalElem& a, int prec) const;
  /// c * p_D^k for c in E and 0 <= k.
  QuatElem monomial(const LocalElem& c, int k, int prec) const;
  QuatElem uniformizer(int prec) const;
  QuatElem teichmuller(GaloisField::Elem x, int prec) const;

  QuatElem add(const QuatElem& x, const QuatElem& y) const;
  QuatElem sub(const QuatElem& x, const QuatElem& y) const;
  QuatElem neg(const QuatElem& x) const;
  QuatElem mul(const QuatElem& x, const QuatElem& y) const;
  /// Inverse of a unit of O_D, same precision.
  QuatElem inv(const QuatElem& x) const;
  QuatElem pow(const QuatElem& x, long long e) const;
  /// x y x^-1 y^-1 for units x, y.
  QuatElem commutator(const QuatElem& x, const QuatElem& y) const;
  /// p_D^k x p_D^-k: coefficients twisted by sigma^(r k).
  QuatElem conj_pD(const QuatElem& x, long long k) const;

  QuatElem truncate(const QuatElem& x, int prec) const;
  /// p_D-adic valuation; equals prec for x = 0 to its precision.
  int valuation(const QuatElem& x) const;
  bool is_unit(const QuatElem& x) const { return x.prec > 0 && valuation(x) == 0; }
  bool equal_mod(const QuatElem& x, const QuatElem& y, int n) const;
  /// Largest i <= prec with x in 1 + P_D^i.
  int unit_level(const QuatElem& x) const;

  /// (w, s): p_D-valuation and the residue of the level-w coefficient.
  std::pair<int, GaloisField::Elem> residue_and_valuation(const QuatElem& x) const;
  /// Residue of the coefficient at p_D-level k (k < prec), in k_D.
  GaloisField::Elem level_digit(const QuatElem& x, int k) const;

  /// Reduced norm: determinant of left multiplication on the right E-basis p_D^j.
  LocalElem nrd(const QuatElem& x) const;
  /// a sigma(a) - p_F b sigma(b) for d = 2.
  LocalElem nrd_closed_form(const QuatElem& x) const;
  /// Left multiplication matrix (entries in E).
  std::vector<std::vector<LocalElem>> left_matrix(const QuatElem& x) const;

  /// ceil(i/d): nrd(U_D^i) = U_F^k.
  int nrd_filtration_image(int i) const;
  /// Sampled check that nrd(U_D^i) lies in U_F^k and hits every class of U_F^k/U_F^(k+1).
  bool verify_nrd_filtration(int i, int samples, std::mt19937_64& rng) const;

  /// v in D^1 with v = 1 + s^ p_D^i mod P_D^(i+1); needs trace zero when d | i.
  QuatElem lift_graded_to_D1(GaloisField::Elem s, int i, int prec) const;
  /// u e^-1 in D^1 with e in E* of the same reduced norm.
  QuatElem normalize_to_D1(const QuatElem& u) const;
  bool is_norm_one(const QuatElem& x) const;
  /// Number of residues s for which some v in D^1 has v = 1 + s^ p_D^i mod P_D^(i+1),
  /// by exhaustive search over U_D^i / U_D^(d(floor(i/d)+1)).
  std::size_t graded_image_size(int i) const;

  QuatElem random_elem(int prec, std::mt19937_64& rng) const;
  QuatElem random_unit(int prec, std::mt19937_64& rng) const;
  /// Random element of 1 + P_D^level.
  QuatElem random_one_unit(int level, int prec, std::mt19937_64& rng) const;
  LocalElem random_E(int prec, std::mt19937_64& rng) const;

  std::vector<std::uint32_t> to_digits(const QuatElem& x) const;

 private:
  Algebra() = default;
  void check(const QuatElem& x) const;
  QuatElem finish(std::vector<LocalElem> coeffs, int prec) const;

  unsigned d_ = 2, r_ = 1;
  int max_prec_ = 12;
  UnramExtPtr E_;
};

}  // namespace quatrep
