#include "quatrep/galois_field.hpp"

#include <map>
#include <mutex>

#include "quatrep/errors.hpp"

namespace quatrep {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using Poly = std::vector<std::uint32_t>;  // c_0..c_n over F_p

// Remainder of a modulo the monic polynomial m.
Poly poly_rem(Poly a, const Poly& m, std::uint32_t p) {
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    std::uint32_t lead = a.back();
    std::size_t shift = a.size() - 1 - dm;
    if (lead) {
      for (std::size_t i = 0; i <= dm; ++i) {
        std::uint64_t t = a[shift + i] + static_cast<std::uint64_t>(p - lead) * m[i];
        a[shift + i] = static_cast<std::uint32_t>(t % p);
      }
    }
    a.pop_back();
  }
  return a;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const unsigned k = static_cast<unsigned>(f.size() - 1);
  for (unsigned deg = 1; 2 * deg <= k; ++deg) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < deg; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(deg + 1);
      std::uint64_t c = code;
      for (unsigned i = 0; i < deg; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[deg] = 1;
      Poly r = poly_rem(f, g, p);
      bool zero = true;
      for (auto x : r) zero = zero && x == 0;
      if (zero) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

std::vector<std::uint32_t> least_irreducible(std::uint32_t p, unsigned k) {
  if (!is_prime(p)) throw DomainError("characteristic must be prime");
  if (k == 0) throw DomainError("extension degree must be positive");
  std::uint64_t count = 1;
  for (unsigned i = 0; i < k; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly f(k + 1);
    std::uint64_t c = code;
    for (unsigned i = 0; i < k; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    f[k] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw DomainError("no irreducible polynomial found");
}

GaloisField::GaloisField(std::uint32_t p, unsigned k) : p_(p), k_(k) {
  std::uint64_t sz = 1;
  for (unsigned i = 0; i < k; ++i) {
    pw_.push_back(static_cast<std::uint32_t>(sz));
    sz *= p;
    if (sz > (1u << 24)) throw BudgetError("finite field too large");
  }
  size_ = static_cast<std::uint32_t>(sz);
  modulus_ = least_irreducible(p, k);

  const std::uint64_t n = size_ - 1;
  const auto factors = prime_factors(n);
  auto pow_slow = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul_slow(r, a);
      a = mul_slow(a, a);
      e >>= 1;
    }
    return r;
  };
  gen_ = 0;
  for (Elem cand = 1; cand < size_ && !gen_; ++cand) {
    bool ok = true;
    for (auto f : factors) ok = ok && pow_slow(cand, n / f) != 1;
    if (ok) gen_ = cand;
  }
  if (size_ == 2) gen_ = 1;
  exp_.assign(2 * n + 1, 0);
  log_.assign(size_, 0);
  Elem x = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_[i] = x;
    exp_[i + n] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_slow(x, gen_);
  }
  exp_[2 * n] = 1;
}

GaloisField::Elem GaloisField::mul_slow(Elem a, Elem b) const {
  Poly pa = coeffs(a), pb = coeffs(b);
  Poly prod(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i)
    for (unsigned j = 0; j < k_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(pa[i]) * pb[j]) % p_);
  prod = poly_rem(prod, modulus_, p_);
  prod.resize(k_, 0);
  return from_coeffs(prod);
}

std::vector<std::uint32_t> GaloisField::coeffs(Elem a) const {
  std::vector<std::uint32_t> c(k_);
  for (unsigned i = 0; i < k_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

GaloisField::Elem GaloisField::from_coeffs(const std::vector<std::uint32_t>& c) const {
  Elem r = 0;
  for (unsigned i = 0; i < k_ && i < c.size(); ++i) r += (c[i] % p_) * pw_[i];
  return r;
}

GaloisField::Elem GaloisField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

GaloisField::Elem GaloisField::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  if (k_ == 1) {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem r = 0;
  for (unsigned i = 0; i < k_; ++i) {
    Elem s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * pw_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

GaloisField::Elem GaloisField::neg(Elem a) const {
  if (p_ == 2) return a;
  Elem r = 0;
  for (unsigned i = 0; i < k_; ++i) {
    Elem d = a % p_;
    r += (d ? p_ - d : 0) * pw_[i];
    a /= p_;
  }
  return r;
}

GaloisField::Elem GaloisField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

GaloisField::Elem GaloisField::mul(Elem a, Elem b) const {
  if (!a || !b) return 0;
  return exp_[log_[a] + log_[b]];
}

GaloisField::Elem GaloisField::inv(Elem a) const {
  if (!a) throw DomainError("inversion of zero in finite field");
  const std::uint32_t n = size_ - 1;
  return exp_[(n - log_[a]) % n];
}

GaloisField::Elem GaloisField::pow(Elem a, long long e) const {
  const long long n = size_ - 1;
  if (!a) {
    if (e < 0) throw DomainError("inversion of zero in finite field");
    return e == 0 ? 1 : 0;
  }
  long long t = (static_cast<long long>(log_[a]) * (e % n)) % n;
  if (t < 0) t += n;
  return exp_[t];
}

GaloisField::Elem GaloisField::frobenius(Elem a, unsigned times) const {
  times %= k_;
  if (!a || !times) return a;
  long long e = 1;
  for (unsigned i = 0; i < times; ++i) e *= p_;
  return pow(a, e);
}

std::uint32_t GaloisField::log(Elem a) const {
  if (!a) throw DomainError("logarithm of zero");
  return log_[a];
}

GaloisField::Elem GaloisField::exp(long long e) const {
  const long long n = size_ - 1;
  long long t = e % n;
  if (t < 0) t += n;
  return exp_[t];
}

std::uint32_t GaloisField::order(Elem a) const {
  const std::uint32_t n = size_ - 1;
  std::uint32_t l = log(a);
  std::uint64_t g = n, b = l;
  while (b) {
    std::uint64_t t = g % b;
    g = b;
    b = t;
  }
  return static_cast<std::uint32_t>(n / g);
}

GaloisField::Elem GaloisField::trace_to(Elem a, unsigned sub) const {
  if (sub == 0 || k_ % sub) throw DomainError("not a subfield degree");
  Elem s = 0, x = a;
  for (unsigned i = 0; i < k_ / sub; ++i) {
    s = add(s, x);
    x = frobenius(x, sub);
  }
  return s;
}

std::uint32_t GaloisField::abs_trace(Elem a) const { return trace_to(a, 1); }

GaloisFieldPtr galois_field(std::uint32_t p, unsigned k) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, unsigned>, GaloisFieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, k}];
  if (!slot) slot = std::make_shared<const GaloisField>(p, k);
  return slot;
}

}  // namespace quatrep
