#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

namespace quatrep {

/// Element of Q(zeta_m): rational coefficients of 1, zeta, ..., zeta^(phi(m)-1).
struct Cyc {
  std::vector<mpq_class> c;
  bool operator==(const Cyc& o) const { return c == o.c; }
  bool operator!=(const Cyc& o) const { return c != o.c; }
};

/// The m-th cyclotomic field, elements kept reduced modulo Phi_m.
class CyclotomicField {
 public:
  using Elem = Cyc;

  explicit CyclotomicField(long m);

  long characteristic() const { return 0; }
  long root_order() const { return m_; }
  int phi() const { return phi_; }
  /// Integer coefficients of Phi_m, constant term first.
  const std::vector<long>& cyclotomic_poly() const { return poly_; }

  Elem zero() const;
  Elem one() const { return from_int(1); }
  Elem from_int(long long v) const;
  Elem from_rational(const mpq_class& v) const;
  bool is_zero(const Elem& a) const;
  bool eq(const Elem& a, const Elem& b) const { return a.c == b.c; }

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem pow(const Elem& a, long long e) const;

  /// zeta_m^e for any integer e.
  Elem root(long long e) const;
  /// The fixed primitive n-th root zeta_m^(m/n); n must divide m.
  Elem root_of_unity(long n) const;

  /// If a = zeta^e for some e, return e in [0, m); otherwise -1.
  long root_exponent(const Elem& a) const;

  std::string to_string(const Elem& a) const;

 private:
  long m_;
  int phi_;
  std::vector<long> poly_;
  std::vector<std::vector<long>> high_;  // x^(phi+j) mod Phi_m
  std::vector<Elem> roots_;
};

using CyclotomicFieldPtr = std::shared_ptr<const CyclotomicField>;

std::vector<long> cyclotomic_polynomial(long m);
long euler_phi(long m);

}  // namespace quatrep
