#include "quatrep/local_field.hpp"

#include <algorithm>
#include <sstream>

#include "quatrep/errors.hpp"

namespace quatrep {

namespace {
using i64 = std::int64_t;
using i128 = __int128;

i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>(static_cast<i128>(a) * b % m); }
i64 norm_mod(i64 a, i64 m) {
  a %= m;
  return a < 0 ? a + m : a;
}
}  // namespace

ResidueField make_residue_field(std::uint32_t p, unsigned e) {
  if (!is_prime(p)) throw DomainError("residue characteristic must be prime");
  ResidueField r;
  r.p = p;
  r.e = e;
  r.field = galois_field(p, e);
  r.q = r.field->size();
  return r;
}

LocalFieldSpec make_local_field(FieldKind kind, std::uint32_t p, unsigned e, int precision) {
  if (kind == FieldKind::Mixed && e != 1) throw DomainError("mixed characteristic base requires q = p");
  if (precision < 1) throw DomainError("precision must be positive");
  return {kind, make_residue_field(p, e), precision};
}

UnramExtPtr UnramExt::create(const LocalFieldSpec& base, unsigned d, int cap) {
  if (d < 1) throw DomainError("extension degree must be positive");
  if (cap < 1) throw DomainError("precision cap must be positive");
  auto* x = new UnramExt();
  std::shared_ptr<UnramExt> self(x);
  x->kind_ = base.kind;
  x->p_ = base.residue.p;
  x->e_ = base.residue.e;
  x->q_ = base.residue.q;
  x->d_ = d;
  x->cap_ = cap;
  x->kF_ = base.residue.field;
  x->kD_ = galois_field(x->p_, x->e_ * d);
  if (d > 1) x->base_ = create(base, 1, cap);

  // Residue embedding: send the generator x of k_F to the least root of its modulus in k_D.
  const auto& kF = *x->kF_;
  const auto& kD = *x->kD_;
  GaloisField::Elem root = 0;
  if (x->e_ > 1) {
    const auto& mod = kF.modulus();
    bool found = false;
    for (GaloisField::Elem y = 0; y < kD.size() && !found; ++y) {
      GaloisField::Elem s = 0, pw = 1;
      for (std::size_t i = 0; i < mod.size(); ++i) {
        s = kD.add(s, kD.mul(kD.from_int(mod[i]), pw));
        pw = kD.mul(pw, y);
      }
      if (s == 0) {
        root = y;
        found = true;
      }
    }
    if (!found) throw ObstructionError("residue field embedding not found");
  }
  x->kf2kd_.resize(kF.size());
  x->kd2kf_.assign(kD.size(), -1);
  for (GaloisField::Elem a = 0; a < kF.size(); ++a) {
    auto c = kF.coeffs(a);
    GaloisField::Elem img = 0, pw = 1;
    for (unsigned i = 0; i < c.size(); ++i) {
      img = kD.add(img, kD.mul(kD.from_int(c[i]), pw));
      pw = kD.mul(pw, root);
    }
    if (x->e_ == 1) img = kD.from_int(c[0]);
    x->kf2kd_[a] = img;
    x->kd2kf_[img] = static_cast<long>(a);
  }

  if (x->kind_ == FieldKind::Mixed) {
    long double bound = 1;
    for (int i = 0; i < cap; ++i) bound *= x->p_;
    if (bound > 4.0e18L) throw BudgetError("p-adic precision cap too large for 64-bit residues");
    x->ppow_.resize(cap + 1);
    x->ppow_[0] = 1;
    for (int i = 1; i <= cap; ++i) x->ppow_[i] = x->ppow_[i - 1] * x->p_;
    const auto& mod = kD.modulus();
    x->h_.assign(mod.begin(), mod.end());
    // sigma(x): root of h congruent to x^p, by Newton iteration.
    const i64 M = x->ppow_[cap];
    LocalElem y{x, cap, std::vector<i64>(d, 0)};
    if (d > 1) {
      // The class of x is encoded as p; its Frobenius image is x^p.
      auto coords = kD.coeffs(kD.frobenius(x->p_, 1));
      for (unsigned i = 0; i < d; ++i) y.v[i] = coords[i];
      auto eval = [&](const std::vector<i64>& poly, const LocalElem& at) {
        LocalElem acc = x->zero(cap);
        for (std::size_t i = poly.size(); i-- > 0;) {
          acc = x->mul(acc, at);
          acc.v[0] = norm_mod(acc.v[0] + poly[i], M);
        }
        return acc;
      };
      std::vector<i64> dh(d);
      for (unsigned i = 1; i <= d; ++i) dh[i - 1] = x->h_[i] * static_cast<i64>(i);
      for (int known = 1; known < 2 * cap; known *= 2) {
        auto hv = eval(x->h_, y);
        auto dv = eval(dh, y);
        y = x->sub(y, x->mul(hv, x->inv(dv)));
      }
      if (!x->is_zero(eval(x->h_, y))) throw ObstructionError("Frobenius lift did not converge");
    } else {
      y.v[0] = 0;
    }
    x->sigma_.assign(d, std::vector<i64>(d, 0));
    LocalElem pw = x->one(cap);
    for (unsigned j = 0; j < d; ++j) {
      x->sigma_[j] = pw.v;
      pw = x->mul(pw, y);
    }
  }
  return self;
}

void UnramExt::check(const LocalElem& a) const {
  if (a.ext != this) throw DomainError("local field element from a different field");
}

GaloisField::Elem UnramExt::residue_to_base(GaloisField::Elem y) const {
  if (kd2kf_[y] < 0) throw DomainError("residue does not lie in k_F");
  return static_cast<GaloisField::Elem>(kd2kf_[y]);
}

LocalElem UnramExt::zero(int prec) const {
  prec = std::clamp(prec, 0, cap_);
  if (kind_ == FieldKind::EqualChar) return {this, prec, std::vector<i64>(prec, 0)};
  return {this, prec, std::vector<i64>(d_, 0)};
}

LocalElem UnramExt::from_int(long long n, int prec) const {
  LocalElem r = zero(prec);
  if (r.prec == 0) return r;
  if (kind_ == FieldKind::EqualChar) {
    r.v[0] = kD_->from_int(n);
  } else {
    r.v[0] = norm_mod(n, mod_pow(r.prec));
  }
  return r;
}

LocalElem UnramExt::uniformizer(int prec) const { return shift(one(prec - 1), 1); }

LocalElem UnramExt::lift(GaloisField::Elem x, int prec) const {
  LocalElem r = zero(prec);
  if (r.prec == 0) return r;
  if (kind_ == FieldKind::EqualChar) {
    r.v[0] = x;
  } else {
    auto c = kD_->coeffs(x);
    for (unsigned i = 0; i < d_; ++i) r.v[i] = c[i];
  }
  return r;
}

LocalElem UnramExt::truncate(const LocalElem& a, int prec) const {
  check(a);
  prec = std::clamp(prec, 0, a.prec);
  LocalElem r = a;
  r.prec = prec;
  if (kind_ == FieldKind::EqualChar) {
    r.v.resize(prec);
  } else {
    for (auto& c : r.v) c %= mod_pow(prec);
  }
  return r;
}

LocalElem UnramExt::add(const LocalElem& a, const LocalElem& b) const {
  check(a);
  check(b);
  const int prec = std::min(a.prec, b.prec);
  LocalElem r = zero(prec);
  if (kind_ == FieldKind::EqualChar) {
    for (int k = 0; k < prec; ++k) r.v[k] = kD_->add(a.v[k], b.v[k]);
  } else {
    const i64 M = mod_pow(prec);
    for (unsigned i = 0; i < d_; ++i) r.v[i] = (a.v[i] % M + b.v[i] % M) % M;
  }
  return r;
}

LocalElem UnramExt::neg(const LocalElem& a) const {
  check(a);
  LocalElem r = a;
  if (kind_ == FieldKind::EqualChar) {
    for (auto& c : r.v) c = kD_->neg(static_cast<GaloisField::Elem>(c));
  } else {
    const i64 M = mod_pow(a.prec);
    for (auto& c : r.v) c = norm_mod(-c, M);
  }
  return r;
}

LocalElem UnramExt::sub(const LocalElem& a, const LocalElem& b) const { return add(a, neg(b)); }

int UnramExt::valuation(const LocalElem& a) const {
  check(a);
  if (kind_ == FieldKind::EqualChar) {
    for (int k = 0; k < a.prec; ++k)
      if (a.v[k]) return k;
    return a.prec;
  }
  int best = a.prec;
  for (auto c : a.v) {
    if (c == 0) continue;
    int v = 0;
    while (v < best && c % p_ == 0) {
      c /= p_;
      ++v;
    }
    best = std::min(best, v);
  }
  return best;
}

LocalElem UnramExt::mixed_mul_raw(const std::vector<i64>& a, const std::vector<i64>& b, int prec) const {
  const i64 M = mod_pow(prec);
  std::vector<i128> prod(2 * d_ - 1, 0);
  for (unsigned i = 0; i < d_; ++i) {
    if (!a[i]) continue;
    for (unsigned j = 0; j < d_; ++j) {
      if (!b[j]) continue;
      prod[i + j] = (prod[i + j] + static_cast<i128>(a[i] % M) * (b[j] % M)) % M;
    }
  }
  for (std::size_t k = prod.size(); k-- > d_;) {
    i128 c = prod[k];
    if (!c) continue;
    // x^d = -sum h_i x^i
    for (unsigned i = 0; i < d_; ++i) prod[k - d_ + i] = (prod[k - d_ + i] - c * h_[i]) % M;
    prod[k] = 0;
  }
  LocalElem r{this, prec, std::vector<i64>(d_)};
  for (unsigned i = 0; i < d_; ++i) {
    i128 c = prod[i] % M;
    if (c < 0) c += M;
    r.v[i] = static_cast<i64>(c);
  }
  return r;
}

LocalElem UnramExt::mul(const LocalElem& a, const LocalElem& b) const {
  check(a);
  check(b);
  const int va = valuation(a), vb = valuation(b);
  const int prec = std::min({va + b.prec, vb + a.prec, cap_});
  if (kind_ == FieldKind::Mixed) return mixed_mul_raw(a.v, b.v, prec);
  LocalElem r = zero(prec);
  for (int i = va; i < a.prec && i < prec; ++i) {
    const auto ai = static_cast<GaloisField::Elem>(a.v[i]);
    if (!ai) continue;
    for (int j = vb; j < b.prec && i + j < prec; ++j) {
      const auto bj = static_cast<GaloisField::Elem>(b.v[j]);
      if (bj) r.v[i + j] = kD_->add(static_cast<GaloisField::Elem>(r.v[i + j]), kD_->mul(ai, bj));
    }
  }
  return r;
}

LocalElem UnramExt::inv(const LocalElem& a) const {
  check(a);
  if (a.prec == 0) throw PrecisionError("inversion of an element known to 0 digits");
  if (!is_unit(a)) throw DomainError("inversion of a non-unit without valuation shift");
  const int prec = a.prec;
  const auto r0 = kD_->inv(residue(a));
  if (kind_ == FieldKind::EqualChar) {
    LocalElem b = zero(prec);
    b.v[0] = r0;
    for (int k = 1; k < prec; ++k) {
      GaloisField::Elem s = 0;
      for (int i = 1; i <= k; ++i)
        s = kD_->add(s, kD_->mul(static_cast<GaloisField::Elem>(a.v[i]), static_cast<GaloisField::Elem>(b.v[k - i])));
      b.v[k] = kD_->neg(kD_->mul(r0, s));
    }
    return b;
  }
  LocalElem b = lift(r0, prec);
  const LocalElem two = from_int(2, prec);
  for (int known = 1; known < prec; known *= 2) b = mul(b, sub(two, mul(a, b)));
  return truncate(b, prec);
}

LocalElem UnramExt::pow(const LocalElem& a, long long e) const {
  if (e < 0) return pow(inv(a), -e);
  LocalElem r = one(a.prec), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

LocalElem UnramExt::shift(const LocalElem& a, int k) const {
  check(a);
  if (k < 0) throw DomainError("negative shift");
  const int prec = std::min(a.prec + k, cap_);
  LocalElem r = zero(prec);
  if (kind_ == FieldKind::EqualChar) {
    for (int i = 0; i + k < prec; ++i) r.v[i + k] = a.v[i];
  } else {
    const i64 M = mod_pow(prec);
    for (unsigned i = 0; i < d_; ++i) r.v[i] = mulmod(a.v[i], mod_pow(std::min(k, cap_)), M);
  }
  return r;
}

LocalElem UnramExt::unshift(const LocalElem& a, int k) const {
  check(a);
  if (k < 0) throw DomainError("negative shift");
  if (valuation(a) < k) throw DomainError("division by uniformizer power exceeds valuation");
  const int prec = a.prec - k;
  LocalElem r = zero(prec);
  if (kind_ == FieldKind::EqualChar) {
    for (int i = 0; i < prec; ++i) r.v[i] = a.v[i + k];
  } else {
    for (unsigned i = 0; i < d_; ++i) r.v[i] = (a.v[i] / mod_pow(k)) % mod_pow(prec);
  }
  return r;
}

bool UnramExt::equal_mod(const LocalElem& a, const LocalElem& b, int n) const {
  if (n > a.prec || n > b.prec) throw PrecisionError("comparison beyond tracked precision");
  auto diff = sub(truncate(a, n), truncate(b, n));
  return valuation(diff) >= n;
}

GaloisField::Elem UnramExt::digit(const LocalElem& a, int k) const {
  check(a);
  if (k >= a.prec) throw PrecisionError("digit beyond tracked precision");
  if (kind_ == FieldKind::EqualChar) return static_cast<GaloisField::Elem>(a.v[k]);
  std::vector<std::uint32_t> c(d_);
  for (unsigned i = 0; i < d_; ++i) c[i] = static_cast<std::uint32_t>((a.v[i] / mod_pow(k)) % p_);
  return kD_->from_coeffs(c);
}

LocalElem UnramExt::frob_once(const LocalElem& a) const {
  if (kind_ == FieldKind::EqualChar) {
    LocalElem r = a;
    for (auto& c : r.v) c = kD_->frobenius(static_cast<GaloisField::Elem>(c), e_);
    return r;
  }
  const i64 M = mod_pow(a.prec);
  LocalElem r = zero(a.prec);
  for (unsigned j = 0; j < d_; ++j) {
    if (!a.v[j]) continue;
    for (unsigned i = 0; i < d_; ++i) r.v[i] = (r.v[i] + mulmod(a.v[j], sigma_[j][i] % M, M)) % M;
  }
  return r;
}

LocalElem UnramExt::frobenius(const LocalElem& a, long long times) const {
  check(a);
  long long t = times % static_cast<long long>(d_);
  if (t < 0) t += d_;
  if (kind_ == FieldKind::EqualChar) {
    if (!t) return a;
    LocalElem r = a;
    for (auto& c : r.v) c = kD_->frobenius(static_cast<GaloisField::Elem>(c), static_cast<unsigned>(e_ * t));
    return r;
  }
  LocalElem r = a;
  for (long long i = 0; i < t; ++i) r = frob_once(r);
  return r;
}

LocalElem UnramExt::norm(const LocalElem& a) const {
  LocalElem r = a, s = a;
  for (unsigned i = 1; i < d_; ++i) {
    s = frobenius(s, 1);
    r = mul(r, s);
  }
  return to_base(r);
}

LocalElem UnramExt::trace(const LocalElem& a) const {
  LocalElem r = a, s = a;
  for (unsigned i = 1; i < d_; ++i) {
    s = frobenius(s, 1);
    r = add(r, s);
  }
  return to_base(r);
}

LocalElem UnramExt::teichmuller(GaloisField::Elem x, int prec) const {
  if (x == 0) throw DomainError("Teichmueller lift of zero");
  if (kind_ == FieldKind::EqualChar) return lift(x, prec);
  LocalElem y = lift(x, prec);
  const long long qd = static_cast<long long>(kD_->size());
  for (int i = 0; i < y.prec; ++i) y = pow(y, qd);
  return y;
}

bool UnramExt::in_base(const LocalElem& a) const {
  check(a);
  if (kind_ == FieldKind::EqualChar) {
    for (auto c : a.v)
      if (kd2kf_[c] < 0) return false;
    return true;
  }
  for (unsigned i = 1; i < d_; ++i)
    if (a.v[i] % mod_pow(a.prec)) return false;
  return true;
}

LocalElem UnramExt::to_base(const LocalElem& a) const {
  if (d_ == 1) return a;
  if (!in_base(a)) throw DomainError("element does not lie in the base field");
  LocalElem r = base_->zero(a.prec);
  if (kind_ == FieldKind::EqualChar) {
    for (int k = 0; k < a.prec; ++k) r.v[k] = kd2kf_[a.v[k]];
  } else {
    r.v[0] = a.v[0];
  }
  return r;
}

LocalElem UnramExt::from_base(const LocalElem& a) const {
  if (d_ == 1) {
    check(a);
    return a;
  }
  if (a.ext != base_.get()) throw DomainError("element is not from the base field");
  LocalElem r = zero(a.prec);
  if (kind_ == FieldKind::EqualChar) {
    for (int k = 0; k < a.prec; ++k) r.v[k] = kf2kd_[a.v[k]];
  } else {
    r.v[0] = a.v[0];
  }
  return r;
}

LocalElem UnramExt::solve_norm_equation(const LocalElem& target, int k) const {
  const UnramExt& F = base();
  if (target.ext != &F) throw DomainError("norm target must lie in the base field");
  if (k < 1) throw DomainError("norm equation level must be at least 1");
  const int N = target.prec;
  if (N > cap_) throw PrecisionError("target precision exceeds the extension's cap");
  if (F.valuation(F.sub(target, F.one(N))) < std::min(k, N))
    throw DomainError("norm target is not congruent to 1 at the requested level");
  // Residue with nonzero trace, used to split Tr(y) = c.
  GaloisField::Elem y0 = 0, tr0 = 0;
  for (GaloisField::Elem y = 1; y < kD_->size(); ++y) {
    tr0 = kD_->trace_to(y, e_);
    if (tr0) {
      y0 = y;
      break;
    }
  }
  LocalElem u = one(N);
  for (int level = k; level < N; ++level) {
    LocalElem delta = F.mul(target, F.inv(norm(u)));
    LocalElem diff = F.sub(delta, F.one(N));
    int v = F.valuation(diff);
    if (v < level) throw ObstructionError("norm equation: level did not advance");
    if (v >= N) break;
    if (v > level) {
      level = v - 1;
      continue;
    }
    const auto c = F.digit(diff, level);  // in k_D encoding of k_F
    const auto cD = embed_residue(c);
    const auto y = kD_->mul(kD_->mul(cD, kD_->inv(tr0)), y0);
    LocalElem step = add(one(N), shift(lift(y, N - level), level));
    u = mul(u, step);
  }
  if (!F.equal_mod(norm(u), target, N)) throw ObstructionError("norm equation solution failed verification");
  return u;
}

std::vector<std::uint32_t> UnramExt::to_digits(const LocalElem& a) const {
  std::vector<std::uint32_t> out;
  if (kind_ == FieldKind::EqualChar) {
    for (int k = 0; k < a.prec; ++k)
      for (auto c : kD_->coeffs(static_cast<GaloisField::Elem>(a.v[k]))) out.push_back(c);
  } else {
    for (unsigned i = 0; i < d_; ++i) {
      i64 c = a.v[i];
      for (int k = 0; k < a.prec; ++k) {
        out.push_back(static_cast<std::uint32_t>(c % p_));
        c /= p_;
      }
    }
  }
  return out;
}

std::string UnramExt::to_string(const LocalElem& a) const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < a.v.size(); ++i) os << (i ? "," : "") << a.v[i];
  os << "]+O(" << (kind_ == FieldKind::EqualChar ? "t" : "p") << "^" << a.prec << ")";
  return os.str();
}

}  // namespace quatrep
