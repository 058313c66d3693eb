#pragma once

#include <cstdint>
#include <string>

#include "quatrep/cyclotomic.hpp"
#include "quatrep/galois_field.hpp"

namespace quatrep {

/// Which coefficient field a computation runs over.
struct CoeffFieldSpec {
  long characteristic = 0;  // 0 or a prime
  long root_order = 1;      // m: the field contains primitive m-th roots of unity
  unsigned extension_degree = 1;

  bool operator==(const CoeffFieldSpec&) const = default;
};

/// Cyclotomic field Q(zeta_m) for characteristic 0, else GF(l^k) with k least
/// such that m divides l^k - 1.
CoeffFieldSpec make_field(long characteristic, long m);

/// GF(l^k) together with a chosen primitive m-th root of unity rho.
///
/// rho is generator()^((l^k - 1)/m), so root(e) = rho^e.
class FiniteCoeffField {
 public:
  using Elem = GaloisField::Elem;

  explicit FiniteCoeffField(const CoeffFieldSpec& spec);
  FiniteCoeffField(long ell, long m) : FiniteCoeffField(make_field(ell, m)) {}

  const CoeffFieldSpec& spec() const { return spec_; }
  long characteristic() const { return spec_.characteristic; }
  long root_order() const { return spec_.root_order; }
  const GaloisField& gf() const { return *gf_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const { return gf_->from_int(v); }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  Elem add(Elem a, Elem b) const { return gf_->add(a, b); }
  Elem sub(Elem a, Elem b) const { return gf_->sub(a, b); }
  Elem neg(Elem a) const { return gf_->neg(a); }
  Elem mul(Elem a, Elem b) const { return gf_->mul(a, b); }
  Elem inv(Elem a) const { return gf_->inv(a); }
  Elem div(Elem a, Elem b) const { return gf_->div(a, b); }
  Elem pow(Elem a, long long e) const { return gf_->pow(a, e); }

  Elem root(long long e) const;
  /// generator()^((l^k - 1)/n) for any n dividing l^k - 1.
  Elem root_of_unity(long n) const;
  /// e in [0, m) with rho^e = a, or -1 when a is not an m-th root of unity.
  long root_exponent(Elem a) const;

  std::string to_string(Elem a) const { return std::to_string(a); }

 private:
  CoeffFieldSpec spec_;
  GaloisFieldPtr gf_;
  long step_;  // (l^k - 1) / m
};

/// Ring map from the l-integral part of Q(zeta_M) onto a finite field of
/// characteristic l.
///
/// Write M = l^a * m'. zeta_M goes to theta, the element of order m' with
/// theta^(l^a) = root_of_unity(m'). This makes reduce(zeta_M^(M/n)) equal
/// root_of_unity(n) for every n dividing m'. When l does not divide M, theta
/// is simply root_of_unity(M).
class Reduction {
 public:
  Reduction(const CyclotomicField& source, const FiniteCoeffField& target);

  FiniteCoeffField::Elem map(const Cyc& a) const;
  /// Exponent e of zeta_M goes to this exponent of the target's rho.
  long map_exponent(long long e) const;
  /// Inverse on roots of unity of order prime to l: rho^j lifts to zeta_M^result.
  long lift_exponent(long long j) const;

  long ell() const { return ell_; }
  long ell_part() const { return ell_pow_; }
  long prime_to_ell_part() const { return mprime_; }

 private:
  const CyclotomicField* src_;
  const FiniteCoeffField* dst_;
  long ell_, ell_pow_, mprime_;
  long theta_exp_;  // theta = rho^theta_exp_
  std::vector<FiniteCoeffField::Elem> theta_pow_;
};

/// Largest divisor of m prime to l.
long prime_to_part(long m, long ell);

/// The field used to reduce Q(zeta_M) modulo l: make_field(l, prime_to_part(M, l)).
CoeffFieldSpec reduction_field(long M, long ell);

/// Smallest prime l' with l' = 1 mod m and l' not dividing group_order.
long surrogate_prime(long m, long long group_order);

}  // namespace quatrep
