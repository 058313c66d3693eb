#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "quatrep/galois_field.hpp"

namespace quatrep {

enum class FieldKind { EqualChar, Mixed };

/// k_F = F_q with q = p^e.
struct ResidueField {
  std::uint32_t p = 2;
  unsigned e = 1;
  std::uint32_t q = 2;
  GaloisFieldPtr field;
};

ResidueField make_residue_field(std::uint32_t p, unsigned e);

/// F_q((t)) or Q_p, elements known modulo P_F^precision.
struct LocalFieldSpec {
  FieldKind kind = FieldKind::EqualChar;
  ResidueField residue;
  int precision = 12;
};

LocalFieldSpec make_local_field(FieldKind kind, std::uint32_t p, unsigned e, int precision);

class UnramExt;
using UnramExtPtr = std::shared_ptr<const UnramExt>;

/// Truncated element of F or of the unramified extension E.
///
/// Equal characteristic: v[k] is the k_D-coefficient of t^k, k < prec.
/// Mixed: v holds the d coordinates on 1, x, ..., x^(d-1), each modulo p^prec.
/// The owning UnramExt must outlive the element.
struct LocalElem {
  const UnramExt* ext = nullptr;
  int prec = 0;
  std::vector<std::int64_t> v;
};

/// The unramified extension E/F of degree d (d = 1 gives F itself).
///
/// Mixed characteristic: O_E = Z_p[x]/(h) with h the lift of the defining
/// polynomial of k_D whose coefficients lie in [0, p).
class UnramExt {
 public:
  /// cap: the largest absolute precision any element may carry.
  static UnramExtPtr create(const LocalFieldSpec& base, unsigned d, int cap);

  FieldKind kind() const { return kind_; }
  std::uint32_t p() const { return p_; }
  std::uint32_t q() const { return q_; }
  unsigned degree() const { return d_; }
  int cap() const { return cap_; }
  const GaloisField& kD() const { return *kD_; }
  const GaloisField& kF() const { return *kF_; }
  /// The degree-1 extension (F itself) sharing this base; this when d = 1.
  const UnramExt& base() const { return d_ == 1 ? *this : *base_; }
  UnramExtPtr base_ptr() const { return base_; }

  // Residue-field embedding k_F -> k_D and its partial inverse.
  GaloisField::Elem embed_residue(GaloisField::Elem x) const { return kf2kd_[x]; }
  bool residue_in_base(GaloisField::Elem y) const { return kd2kf_[y] >= 0; }
  GaloisField::Elem residue_to_base(GaloisField::Elem y) const;

  LocalElem zero(int prec) const;
  LocalElem one(int prec) const { return from_int(1, prec); }
  LocalElem from_int(long long n, int prec) const;
  /// The uniformizer t or p, to the given precision.
  LocalElem uniformizer(int prec) const;
  /// Naive lift: the constant series (equal char) or the coordinate vector (mixed).
  LocalElem lift(GaloisField::Elem x, int prec) const;

  LocalElem add(const LocalElem& a, const LocalElem& b) const;
  LocalElem sub(const LocalElem& a, const LocalElem& b) const;
  LocalElem neg(const LocalElem& a) const;
  LocalElem mul(const LocalElem& a, const LocalElem& b) const;
  /// Inverse of a unit; precision preserved.
  LocalElem inv(const LocalElem& a) const;
  /// a / b for a unit b.
  LocalElem div(const LocalElem& a, const LocalElem& b) const { return mul(a, inv(b)); }
  LocalElem pow(const LocalElem& a, long long e) const;

  /// Valuation; equals a.prec when a is zero to its precision.
  int valuation(const LocalElem& a) const;
  bool is_zero(const LocalElem& a) const { return valuation(a) >= a.prec; }
  bool is_unit(const LocalElem& a) const { return valuation(a) == 0 && a.prec > 0; }
  /// Multiply by uniformizer^k (k >= 0); precision grows by k up to the cap.
  LocalElem shift(const LocalElem& a, int k) const;
  /// Divide by uniformizer^k; requires valuation >= k.
  LocalElem unshift(const LocalElem& a, int k) const;
  LocalElem truncate(const LocalElem& a, int prec) const;
  /// Agreement of a and b modulo P^n (n must not exceed either precision).
  bool equal_mod(const LocalElem& a, const LocalElem& b, int n) const;
  /// k-th digit: residue of (a / uniformizer^k) mod P (k < prec); in k_D.
  GaloisField::Elem digit(const LocalElem& a, int k) const;
  GaloisField::Elem residue(const LocalElem& a) const { return digit(a, 0); }

  /// Frobenius sigma^times (times may be negative).
  LocalElem frobenius(const LocalElem& a, long long times = 1) const;
  /// Norm and trace to F, as elements of base().
  LocalElem norm(const LocalElem& a) const;
  LocalElem trace(const LocalElem& a) const;
  /// The Teichmueller lift of a nonzero residue.
  LocalElem teichmuller(GaloisField::Elem x, int prec) const;

  /// F -> E and its partial inverse (throws if a does not lie in F).
  LocalElem from_base(const LocalElem& a) const;
  LocalElem to_base(const LocalElem& a) const;
  bool in_base(const LocalElem& a) const;

  /// Solve N(u) = target with u = 1 mod P_E^k, for target = 1 mod P_F^k, k >= 1.
  LocalElem solve_norm_equation(const LocalElem& target, int k) const;

  std::string to_string(const LocalElem& a) const;
  /// Base-p digits of every coordinate, for serialization.
  std::vector<std::uint32_t> to_digits(const LocalElem& a) const;

 private:
  UnramExt() = default;
  void check(const LocalElem& a) const;
  std::int64_t mod_pow(int prec) const { return ppow_[prec]; }
  LocalElem mixed_mul_raw(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b, int prec) const;
  LocalElem frob_once(const LocalElem& a) const;

  FieldKind kind_;
  std::uint32_t p_, q_;
  unsigned e_, d_;
  int cap_;
  GaloisFieldPtr kD_, kF_;
  UnramExtPtr base_;
  std::vector<GaloisField::Elem> kf2kd_;
  std::vector<long> kd2kf_;
  // mixed only
  std::vector<std::int64_t> ppow_;                 // p^i for i <= cap
  std::vector<std::int64_t> h_;                    // monic lift, h_[d] = 1
  std::vector<std::vector<std::int64_t>> sigma_;   // sigma(x^j) coordinates mod p^cap
};

}  // namespace quatrep
