#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace quatrep {

/// Finite field GF(p^k).
///
/// An element is encoded as the integer sum c_i p^i, where c_0 + c_1 x + ...
/// is its polynomial representative modulo the defining polynomial. The
/// defining polynomial is the least monic irreducible of degree k when the
/// polynomials are ordered by the same encoding of their lower coefficients.
class GaloisField {
 public:
  using Elem = std::uint32_t;

  GaloisField(std::uint32_t p, unsigned k);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  std::uint32_t size() const { return size_; }
  /// Coefficients c_0..c_k of the defining polynomial (c_k = 1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const;
  bool is_zero(Elem a) const { return a == 0; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, long long e) const;

  /// x -> x^(p^times).
  Elem frobenius(Elem a, unsigned times = 1) const;

  /// The multiplicative generator with the smallest encoding.
  Elem generator() const { return gen_; }
  /// Discrete logarithm to the base generator(); a must be nonzero.
  std::uint32_t log(Elem a) const;
  Elem exp(long long e) const;
  /// Multiplicative order of a nonzero element.
  std::uint32_t order(Elem a) const;

  /// Polynomial coefficients c_0..c_{k-1} of a.
  std::vector<std::uint32_t> coeffs(Elem a) const;
  Elem from_coeffs(const std::vector<std::uint32_t>& c) const;

  /// Trace to the subfield of order p^sub (sub divides k).
  Elem trace_to(Elem a, unsigned sub) const;
  /// Absolute trace as an element of the prime field, returned as an integer.
  std::uint32_t abs_trace(Elem a) const;
  bool in_subfield(Elem a, unsigned sub) const { return frobenius(a, sub) == a; }

  bool operator==(const GaloisField& o) const { return p_ == o.p_ && k_ == o.k_; }

 private:
  std::uint32_t p_;
  unsigned k_;
  std::uint32_t size_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pw_;       // p^i
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
  Elem gen_ = 1;

  Elem mul_slow(Elem a, Elem b) const;
};

using GaloisFieldPtr = std::shared_ptr<const GaloisField>;

/// Shared, cached instance of GF(p^k).
GaloisFieldPtr galois_field(std::uint32_t p, unsigned k);

/// Least monic irreducible polynomial of degree k over F_p (coefficients c_0..c_k).
std::vector<std::uint32_t> least_irreducible(std::uint32_t p, unsigned k);

bool is_prime(std::uint64_t n);

}  // namespace quatrep
