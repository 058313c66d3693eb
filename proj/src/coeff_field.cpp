#include "quatrep/coeff_field.hpp"

#include <numeric>

#include "quatrep/errors.hpp"

namespace quatrep {

CoeffFieldSpec make_field(long characteristic, long m) {
  if (m < 1) throw DomainError("root order must be positive");
  if (characteristic == 0) return {0, m, 1};
  if (characteristic < 0 || !is_prime(static_cast<std::uint64_t>(characteristic)))
    throw DomainError("characteristic must be 0 or prime");
  if (m % characteristic == 0)
    throw DomainError("no primitive m-th root of unity in characteristic dividing m");
  unsigned k = 1;
  long long pk = characteristic % m;
  while ((pk - 1 + m) % m != 0) {
    pk = pk * characteristic % m;
    ++k;
  }
  return {characteristic, m, k};
}

FiniteCoeffField::FiniteCoeffField(const CoeffFieldSpec& spec) : spec_(spec) {
  if (spec.characteristic <= 0) throw DomainError("finite coefficient field needs a prime characteristic");
  gf_ = galois_field(static_cast<std::uint32_t>(spec.characteristic), spec.extension_degree);
  const long n = gf_->size() - 1;
  if (n % spec.root_order) throw DomainError("root order does not divide l^k - 1");
  step_ = n / spec.root_order;
}

FiniteCoeffField::Elem FiniteCoeffField::root(long long e) const {
  long long m = spec_.root_order;
  long long t = e % m;
  if (t < 0) t += m;
  return gf_->exp(t * step_);
}

FiniteCoeffField::Elem FiniteCoeffField::root_of_unity(long n) const {
  const long size1 = gf_->size() - 1;
  if (n <= 0 || size1 % n) throw DomainError("root order not admissible for this finite field");
  return gf_->exp(size1 / n);
}

long FiniteCoeffField::root_exponent(Elem a) const {
  if (a == 0) return -1;
  long l = gf_->log(a);
  if (l % step_) return -1;
  return l / step_;
}

long prime_to_part(long m, long ell) {
  while (m % ell == 0) m /= ell;
  return m;
}

CoeffFieldSpec reduction_field(long M, long ell) { return make_field(ell, prime_to_part(M, ell)); }

namespace {
long inv_mod(long a, long m) {
  if (m == 1) return 0;
  long r0 = m, r1 = ((a % m) + m) % m, x0 = 0, x1 = 1;
  while (r1) {
    long q = r0 / r1;
    long t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  if (r0 != 1) throw DomainError("not invertible modulo m");
  return ((x0 % m) + m) % m;
}
}  // namespace

Reduction::Reduction(const CyclotomicField& source, const FiniteCoeffField& target)
    : src_(&source), dst_(&target), ell_(target.characteristic()) {
  const long M = source.root_order();
  mprime_ = prime_to_part(M, ell_);
  ell_pow_ = M / mprime_;
  const long Mt = target.root_order();
  if (Mt % mprime_) throw DomainError("target field lacks the needed roots of unity");
  const long u = inv_mod(ell_pow_ % mprime_, mprime_);
  theta_exp_ = (Mt / mprime_) * u % Mt;
  const int phi = source.phi();
  theta_pow_.resize(phi);
  for (int i = 0; i < phi; ++i) theta_pow_[i] = target.root(static_cast<long long>(theta_exp_) * i);
}

FiniteCoeffField::Elem Reduction::map(const Cyc& a) const {
  const auto& gf = dst_->gf();
  FiniteCoeffField::Elem r = 0;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    const mpq_class& x = a.c[i];
    if (sgn(x) == 0) continue;
    mpz_class num = x.get_num(), den = x.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(ell_)))
      throw DomainError("reduction: denominator divisible by l (not l-integral)");
    mpz_class nm = num % ell_;
    if (nm < 0) nm += ell_;
    mpz_class dm = den % ell_;
    auto c = gf.div(gf.from_int(nm.get_si()), gf.from_int(dm.get_si()));
    r = gf.add(r, gf.mul(c, theta_pow_[i]));
  }
  return r;
}

long Reduction::map_exponent(long long e) const {
  const long long Mt = dst_->root_order();
  long long t = (e % Mt) * theta_exp_ % Mt;
  if (t < 0) t += Mt;
  return static_cast<long>(t);
}

long Reduction::lift_exponent(long long j) const {
  const long Mt = dst_->root_order();
  const long step = Mt / mprime_;
  long long jj = ((j % Mt) + Mt) % Mt;
  if (jj % step) throw DomainError("root of unity order not prime to l or outside the image");
  // rho^j = root_of_unity(m')^t, and zeta_M^(l^a t) maps there.
  long long t = jj / step;
  return static_cast<long>((ell_pow_ * t) % src_->root_order());
}

long surrogate_prime(long m, long long group_order) {
  for (long cand = m + 1;; cand += m) {
    if (is_prime(static_cast<std::uint64_t>(cand)) && group_order % cand != 0) return cand;
  }
}

}  // namespace quatrep
