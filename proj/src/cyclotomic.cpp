#include "quatrep/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "quatrep/errors.hpp"

namespace quatrep {

long euler_phi(long m) {
  long r = m, n = m;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      while (n % d == 0) n /= d;
      r -= r / d;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

std::vector<long> cyclotomic_polynomial(long m) {
  if (m < 1) throw DomainError("cyclotomic index must be positive");
  static std::mutex mu;
  static std::map<long, std::vector<long>> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find(m); it != memo.end()) return it->second;
  }
  // x^m - 1 divided by Phi_d for every proper divisor d.
  std::vector<long> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (long d = 1; d < m; ++d) {
    if (m % d) continue;
    auto den = cyclotomic_polynomial(d);
    const std::size_t dd = den.size() - 1;
    std::vector<long> q(num.size() - dd, 0);
    for (std::size_t i = num.size() - 1; i + 1 > dd; --i) {
      long c = num[i];  // den is monic
      q[i - dd] = c;
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
      if (i == dd) break;
    }
    num = q;
  }
  std::lock_guard<std::mutex> lock(mu);
  memo[m] = num;
  return num;
}

CyclotomicField::CyclotomicField(long m) : m_(m) {
  poly_ = cyclotomic_polynomial(m);
  phi_ = static_cast<int>(poly_.size() - 1);
  // x^phi = -sum poly_i x^i, then shift repeatedly.
  std::vector<long> cur(phi_);
  for (int i = 0; i < phi_; ++i) cur[i] = -poly_[i];
  const long nhigh = std::max<long>(phi_, m - phi_);
  for (long j = 0; j < nhigh; ++j) {
    high_.push_back(cur);
    std::vector<long> nxt(phi_, 0);
    long top = cur[phi_ - 1];
    for (int i = phi_ - 1; i > 0; --i) nxt[i] = cur[i - 1];
    for (int i = 0; i < phi_; ++i) nxt[i] += top * (-poly_[i]);
    cur = nxt;
  }
  roots_.reserve(m);
  for (long e = 0; e < m; ++e) {
    Elem z = zero();
    if (e < phi_) {
      z.c[e] = 1;
    } else {
      const auto& h = high_[e - phi_];
      for (int i = 0; i < phi_; ++i) z.c[i] = h[i];
    }
    roots_.push_back(z);
  }
}

CyclotomicField::Elem CyclotomicField::zero() const { return Elem{std::vector<mpq_class>(phi_)}; }

CyclotomicField::Elem CyclotomicField::from_int(long long v) const {
  Elem r = zero();
  r.c[0] = mpq_class(static_cast<long>(v));
  return r;
}

CyclotomicField::Elem CyclotomicField::from_rational(const mpq_class& v) const {
  Elem r = zero();
  r.c[0] = v;
  return r;
}

bool CyclotomicField::is_zero(const Elem& a) const {
  for (const auto& x : a.c)
    if (sgn(x) != 0) return false;
  return true;
}

CyclotomicField::Elem CyclotomicField::add(const Elem& a, const Elem& b) const {
  Elem r = a;
  for (int i = 0; i < phi_; ++i) r.c[i] += b.c[i];
  return r;
}

CyclotomicField::Elem CyclotomicField::sub(const Elem& a, const Elem& b) const {
  Elem r = a;
  for (int i = 0; i < phi_; ++i) r.c[i] -= b.c[i];
  return r;
}

CyclotomicField::Elem CyclotomicField::neg(const Elem& a) const {
  Elem r = a;
  for (auto& x : r.c) x = -x;
  return r;
}

CyclotomicField::Elem CyclotomicField::mul(const Elem& a, const Elem& b) const {
  std::vector<mpq_class> prod(2 * phi_ - 1);
  for (int i = 0; i < phi_; ++i) {
    if (sgn(a.c[i]) == 0) continue;
    for (int j = 0; j < phi_; ++j) {
      if (sgn(b.c[j]) == 0) continue;
      prod[i + j] += a.c[i] * b.c[j];
    }
  }
  Elem r = zero();
  for (int i = 0; i < phi_; ++i) r.c[i] = prod[i];
  for (int j = phi_; j < 2 * phi_ - 1; ++j) {
    if (sgn(prod[j]) == 0) continue;
    const auto& h = high_[j - phi_];
    for (int i = 0; i < phi_; ++i)
      if (h[i]) r.c[i] += prod[j] * h[i];
  }
  return r;
}

CyclotomicField::Elem CyclotomicField::inv(const Elem& a) const {
  if (is_zero(a)) throw DomainError("inversion of zero in cyclotomic field");
  if (long e = root_exponent(a); e >= 0) return root(-e);
  // Solve (multiplication by a) y = 1 by Gaussian elimination.
  const int n = phi_;
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1));
  Elem basis = one();
  for (int j = 0; j < n; ++j) {
    Elem col = mul(a, root(j));
    for (int i = 0; i < n; ++i) m[i][j] = col.c[i];
  }
  m[0][n] = 1;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && sgn(m[piv][col]) == 0) ++piv;
    if (piv == n) throw DomainError("singular multiplication matrix");
    std::swap(m[piv], m[col]);
    mpq_class iv = 1 / m[col][col];
    for (int j = col; j <= n; ++j) m[col][j] *= iv;
    for (int i = 0; i < n; ++i) {
      if (i == col || sgn(m[i][col]) == 0) continue;
      mpq_class f = m[i][col];
      for (int j = col; j <= n; ++j) m[i][j] -= f * m[col][j];
    }
  }
  Elem r = zero();
  for (int i = 0; i < n; ++i) r.c[i] = m[i][n];
  return r;
}

CyclotomicField::Elem CyclotomicField::pow(const Elem& a, long long e) const {
  if (e < 0) return pow(inv(a), -e);
  Elem r = one(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

CyclotomicField::Elem CyclotomicField::root(long long e) const {
  long long t = e % m_;
  if (t < 0) t += m_;
  return roots_[t];
}

CyclotomicField::Elem CyclotomicField::root_of_unity(long n) const {
  if (n <= 0 || m_ % n) throw DomainError("root order does not divide the field's root order");
  return root(m_ / n);
}

long CyclotomicField::root_exponent(const Elem& a) const {
  // Cheap filter: roots of unity have small integer coordinates.
  for (const auto& x : a.c)
    if (x.get_den() != 1) return -1;
  for (long e = 0; e < m_; ++e)
    if (roots_[e].c == a.c) return e;
  return -1;
}

std::string CyclotomicField::to_string(const Elem& a) const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < phi_; ++i) {
    if (sgn(a.c[i]) == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << a.c[i].get_str();
    if (i) os << "*z^" << i;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace quatrep
