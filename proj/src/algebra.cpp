#include "quatrep/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "quatrep/errors.hpp"

namespace quatrep {

AlgebraPtr Algebra::create(FieldKind kind, std::uint32_t p, unsigned e, unsigned d, unsigned r, int max_prec) {
  if (d < 2) throw DomainError("division algebra degree must be at least 2");
  if (r < 1 || r > d || std::gcd(r, d) != 1) throw DomainError("invariant r/d needs 1 <= r <= d and gcd(r, d) = 1");
  if (max_prec < 1) throw DomainError("precision must be positive");
  auto* a = new Algebra();
  AlgebraPtr self(a);
  a->d_ = d;
  a->r_ = r;
  a->max_prec_ = max_prec;
  const int cap = (max_prec + static_cast<int>(d) - 1) / static_cast<int>(d) + 2;
  a->E_ = UnramExt::create(make_local_field(kind, p, e, cap), d, cap);
  return self;
}

void Algebra::check(const QuatElem& x) const {
  if (x.alg != this) throw DomainError("quaternion element from a different algebra");
}

int Algebra::coeff_prec(int i, int n) const {
  if (n <= i) return 0;
  return (n - i + static_cast<int>(d_) - 1) / static_cast<int>(d_);
}

QuatElem Algebra::finish(std::vector<LocalElem> coeffs, int prec) const {
  prec = std::min(prec, max_prec_);
  for (int k = 0; k < static_cast<int>(d_); ++k) prec = std::min(prec, static_cast<int>(d_) * coeffs[k].prec + k);
  QuatElem r{this, prec, {}};
  r.a.reserve(d_);
  for (int k = 0; k < static_cast<int>(d_); ++k) r.a.push_back(E_->truncate(coeffs[k], coeff_prec(k, prec)));
  return r;
}

QuatElem Algebra::zero(int prec) const {
  prec = std::clamp(prec, 0, max_prec_);
  QuatElem r{this, prec, {}};
  for (int k = 0; k < static_cast<int>(d_); ++k) r.a.push_back(E_->zero(coeff_prec(k, prec)));
  return r;
}

QuatElem Algebra::from_int(long long n, int prec) const {
  QuatElem r = zero(prec);
  r.a[0] = E_->from_int(n, r.a[0].prec);
  return r;
}

QuatElem Algebra::one(int prec) const { return from_int(1, prec); }

QuatElem Algebra::from_E(const LocalElem& a, int prec) const {
  QuatElem r = zero(prec);
  r.a[0] = E_->truncate(a, r.a[0].prec);
  if (r.a[0].prec < coeff_prec(0, r.prec)) return finish(r.a, r.prec);
  return r;
}

QuatElem Algebra::monomial(const LocalElem& c, int k, int prec) const {
  if (k < 0) throw DomainError("negative p_D power");
  std::vector<LocalElem> coeffs;
  const int dd = static_cast<int>(d_);
  const int slot = k % dd, shift = k / dd;
  for (int i = 0; i < dd; ++i) coeffs.push_back(E_->zero(E_->cap()));
  coeffs[slot] = E_->shift(c, shift);
  // A monomial is known exactly beyond c's precision in the other slots.
  prec = std::min(prec, dd * coeffs[slot].prec + slot);
  return finish(coeffs, prec);
}

QuatElem Algebra::uniformizer(int prec) const { return monomial(E_->one(E_->cap()), 1, prec); }

QuatElem Algebra::teichmuller(GaloisField::Elem x, int prec) const {
  return from_E(E_->teichmuller(x, coeff_prec(0, prec)), prec);
}

QuatElem Algebra::add(const QuatElem& x, const QuatElem& y) const {
  check(x);
  check(y);
  std::vector<LocalElem> c;
  for (unsigned k = 0; k < d_; ++k) c.push_back(E_->add(x.a[k], y.a[k]));
  return finish(std::move(c), std::min(x.prec, y.prec));
}

QuatElem Algebra::neg(const QuatElem& x) const {
  check(x);
  QuatElem r = x;
  for (auto& c : r.a) c = E_->neg(c);
  return r;
}

QuatElem Algebra::sub(const QuatElem& x, const QuatElem& y) const { return add(x, neg(y)); }

QuatElem Algebra::mul(const QuatElem& x, const QuatElem& y) const {
  check(x);
  check(y);
  const int wx = valuation(x), wy = valuation(y);
  const int target = std::min({wx + y.prec, wy + x.prec, max_prec_});
  const int dd = static_cast<int>(d_);
  std::vector<LocalElem> c(dd);
  std::vector<bool> have(dd, false);
  const int ecap = E_->cap();
  for (int i = 0; i < dd; ++i) {
    for (int j = 0; j < dd; ++j) {
      LocalElem t = E_->mul(x.a[i], E_->frobenius(y.a[j], static_cast<long long>(r_) * i));
      int k = i + j;
      if (k >= dd) {
        k -= dd;
        t = E_->shift(t, 1);
      }
      if (!have[k]) {
        c[k] = t;
        have[k] = true;
      } else {
        c[k] = E_->add(c[k], t);
      }
    }
  }
  for (int k = 0; k < dd; ++k)
    if (!have[k]) c[k] = E_->zero(ecap);
  return finish(std::move(c), target);
}

QuatElem Algebra::inv(const QuatElem& x) const {
  check(x);
  if (x.prec == 0) throw PrecisionError("inversion below precision floor");
  if (!is_unit(x)) throw DomainError("inversion of a non-unit of O_D");
  QuatElem y = from_E(E_->inv(x.a[0]), x.prec);
  const QuatElem two = from_int(2, x.prec);
  for (int known = 1; known < x.prec; known *= 2) y = mul(y, sub(two, mul(x, y)));
  return truncate(y, x.prec);
}

QuatElem Algebra::pow(const QuatElem& x, long long e) const {
  if (e < 0) return pow(inv(x), -e);
  QuatElem r = one(x.prec), b = x;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

QuatElem Algebra::commutator(const QuatElem& x, const QuatElem& y) const {
  return mul(mul(x, y), mul(inv(x), inv(y)));
}

QuatElem Algebra::conj_pD(const QuatElem& x, long long k) const {
  check(x);
  QuatElem r = x;
  for (auto& c : r.a) c = E_->frobenius(c, static_cast<long long>(r_) * k);
  return r;
}

QuatElem Algebra::truncate(const QuatElem& x, int prec) const {
  check(x);
  prec = std::clamp(prec, 0, x.prec);
  QuatElem r{this, prec, {}};
  for (int k = 0; k < static_cast<int>(d_); ++k) r.a.push_back(E_->truncate(x.a[k], coeff_prec(k, prec)));
  return r;
}

int Algebra::valuation(const QuatElem& x) const {
  check(x);
  int w = x.prec;
  for (int i = 0; i < static_cast<int>(d_); ++i) {
    if (x.a[i].prec == 0) continue;
    w = std::min(w, static_cast<int>(d_) * E_->valuation(x.a[i]) + i);
  }
  return w;
}

bool Algebra::equal_mod(const QuatElem& x, const QuatElem& y, int n) const {
  if (n > x.prec || n > y.prec) throw PrecisionError("comparison beyond tracked precision");
  return valuation(sub(truncate(x, n), truncate(y, n))) >= n;
}

int Algebra::unit_level(const QuatElem& x) const { return valuation(sub(x, one(x.prec))); }

GaloisField::Elem Algebra::level_digit(const QuatElem& x, int k) const {
  check(x);
  if (k >= x.prec) throw PrecisionError("level beyond tracked precision");
  const int dd = static_cast<int>(d_);
  return E_->digit(x.a[k % dd], k / dd);
}

std::pair<int, GaloisField::Elem> Algebra::residue_and_valuation(const QuatElem& x) const {
  const int w = valuation(x);
  if (w >= x.prec) throw DomainError("residue of zero");
  return {w, level_digit(x, w)};
}

std::vector<std::vector<LocalElem>> Algebra::left_matrix(const QuatElem& x) const {
  check(x);
  const int dd = static_cast<int>(d_);
  std::vector<std::vector<LocalElem>> m(dd, std::vector<LocalElem>(dd));
  for (int k = 0; k < dd; ++k)
    for (int j = 0; j < dd; ++j) {
      const int i = ((k - j) % dd + dd) % dd;
      LocalElem c = E_->frobenius(x.a[i], -static_cast<long long>(r_) * (i + j));
      if (i + j >= dd) c = E_->shift(c, 1);
      m[k][j] = c;
    }
  return m;
}

LocalElem Algebra::nrd(const QuatElem& x) const {
  const auto m = left_matrix(x);
  const int dd = static_cast<int>(d_);
  std::vector<int> perm(dd);
  std::iota(perm.begin(), perm.end(), 0);
  LocalElem det;
  bool first = true;
  do {
    int inversions = 0;
    for (int a = 0; a < dd; ++a)
      for (int b = a + 1; b < dd; ++b) inversions += perm[a] > perm[b];
    LocalElem term = m[perm[0]][0];
    for (int j = 1; j < dd; ++j) term = E_->mul(term, m[perm[j]][j]);
    if (inversions % 2) term = E_->neg(term);
    det = first ? term : E_->add(det, term);
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return E_->to_base(det);
}

LocalElem Algebra::nrd_closed_form(const QuatElem& x) const {
  check(x);
  if (d_ != 2) throw DomainError("closed-form reduced norm needs d = 2");
  const auto& a = x.a[0];
  const auto& b = x.a[1];
  LocalElem t = E_->sub(E_->mul(a, E_->frobenius(a)), E_->shift(E_->mul(b, E_->frobenius(b)), 1));
  return E_->to_base(t);
}

int Algebra::nrd_filtration_image(int i) const {
  if (i < 1) throw DomainError("filtration index must be positive");
  return (i + static_cast<int>(d_) - 1) / static_cast<int>(d_);
}

bool Algebra::verify_nrd_filtration(int i, int samples, std::mt19937_64& rng) const {
  const int k = nrd_filtration_image(i);
  const int prec = std::min(max_prec_, static_cast<int>(d_) * (k + 2));
  const auto& F = this->F();
  std::set<GaloisField::Elem> classes;
  auto record = [&](const QuatElem& x) {
    LocalElem diff = F.sub(nrd(x), F.one(coeff_prec(0, prec)));
    if (F.valuation(diff) < k) return false;
    if (k < diff.prec) classes.insert(F.digit(diff, k));
    return true;
  };
  for (int s = 0; s < samples; ++s)
    if (!record(random_one_unit(i, prec, rng))) return false;
  // The elements 1 + y p_F^k lie in U_D^i and realize every trace.
  for (GaloisField::Elem y = 0; y < kD().size(); ++y)
    if (!record(add(one(prec), monomial(E_->lift(y, E_->cap()), static_cast<int>(d_) * k, prec)))) return false;
  return classes.size() == kF().size();
}

bool Algebra::is_norm_one(const QuatElem& x) const {
  const auto n = nrd(x);
  return F().is_zero(F().sub(n, F().one(n.prec)));
}

QuatElem Algebra::lift_graded_to_D1(GaloisField::Elem s, int i, int prec) const {
  if (i < 1) throw DomainError("graded level must be positive");
  if (i >= prec) throw PrecisionError("graded level beyond precision");
  if (s == 0) return one(prec);
  if (i % static_cast<int>(d_) == 0 && kD().trace_to(s, E_->kF().degree()) != 0)
    throw ObstructionError("trace obstruction: no norm-one lift of a residue with nonzero trace at a level divisible by d");
  const auto& F = this->F();
  QuatElem v0 = add(one(prec), monomial(E_->lift(s, E_->cap()), i, prec));
  LocalElem eta = nrd(v0);
  LocalElem diff = F.sub(eta, F.one(eta.prec));
  const int level = F.valuation(diff);
  QuatElem v = v0;
  if (level < eta.prec) {
    if (level < 1) throw ObstructionError("norm of a one-unit is not a one-unit");
    LocalElem e = E_->solve_norm_equation(eta, level);
    v = mul(v0, from_E(E_->inv(e), prec));
  }
  if (!is_norm_one(v)) throw ObstructionError("norm repair failed");
  if (unit_level(v) < i || level_digit(v, i) != s) throw ObstructionError("norm repair disturbed the graded residue");
  return v;
}

QuatElem Algebra::normalize_to_D1(const QuatElem& u) const {
  if (!is_unit(u)) throw DomainError("normalize_to_D1 needs a unit");
  const auto& F = this->F();
  const auto& kd = kD();
  LocalElem eta = nrd(u);
  const int n = eta.prec;
  // Teichmueller part: N(teich(g^j)) = teich(residue of eta).
  const auto res = E_->embed_residue(F.residue(eta));
  const std::uint32_t qd1 = kd.size() - 1;
  const std::uint32_t step = qd1 / (E_->q() - 1);
  const std::uint32_t lg = kd.log(res);
  if (lg % step) throw ObstructionError("residue of the norm is not in k_F");
  LocalElem eps = E_->teichmuller(kd.exp(lg / step), n);
  LocalElem rest = F.mul(eta, F.inv(E_->norm(eps)));
  LocalElem e = eps;
  if (!F.is_zero(F.sub(rest, F.one(n)))) e = E_->mul(eps, E_->solve_norm_equation(rest, 1));
  QuatElem v = mul(u, from_E(E_->inv(e), u.prec));
  if (!is_norm_one(v)) throw ObstructionError("normalization to norm one failed");
  return v;
}

std::size_t Algebra::graded_image_size(int i) const {
  if (i < 1) throw DomainError("graded level must be positive");
  const int dd = static_cast<int>(d_);
  const int kk = i / dd + 1;  // norms in U_F^kk lift through U_E^kk, which lies in U_D^(i+1)
  const int top = dd * kk;
  const int prec = top + dd;
  if (prec > max_prec_) throw PrecisionError("graded image search needs more precision");
  const std::uint32_t Q = kD().size();
  const int levels = top - i;
  std::uint64_t total = 1;
  for (int l = 0; l < levels; ++l) total *= Q;
  if (total > 2000000) throw BudgetError("graded image search too large");
  const auto& F = this->F();
  std::vector<QuatElem> basis;  // lifts of p_D^l, l = i .. top-1
  for (int l = i; l < top; ++l) basis.push_back(monomial(E_->one(E_->cap()), l, prec));
  std::set<GaloisField::Elem> image;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    QuatElem v = one(prec);
    GaloisField::Elem lead = 0;
    for (int l = 0; l < levels; ++l) {
      const auto s = static_cast<GaloisField::Elem>(c % Q);
      c /= Q;
      if (l == 0) lead = s;
      if (s) v = add(v, mul(from_E(E_->lift(s, E_->cap()), prec), basis[l]));
    }
    if (image.count(lead)) continue;
    LocalElem diff = F.sub(nrd(v), F.one(kk + 1));
    if (F.valuation(diff) >= kk) image.insert(lead);
  }
  return image.size();
}

LocalElem Algebra::random_E(int prec, std::mt19937_64& rng) const {
  LocalElem a = E_->zero(prec);
  if (E_->kind() == FieldKind::EqualChar) {
    for (auto& c : a.v) c = static_cast<std::int64_t>(rng() % kD().size());
  } else {
    std::uint64_t M = 1;
    for (int i = 0; i < a.prec; ++i) M *= E_->p();
    for (auto& c : a.v) c = static_cast<std::int64_t>(rng() % M);
  }
  return a;
}

QuatElem Algebra::random_elem(int prec, std::mt19937_64& rng) const {
  QuatElem r = zero(prec);
  for (int k = 0; k < static_cast<int>(d_); ++k) r.a[k] = random_E(r.a[k].prec, rng);
  return r;
}

QuatElem Algebra::random_unit(int prec, std::mt19937_64& rng) const {
  for (;;) {
    QuatElem r = random_elem(prec, rng);
    if (is_unit(r)) return r;
  }
}

QuatElem Algebra::random_one_unit(int level, int prec, std::mt19937_64& rng) const {
  QuatElem t = random_elem(std::max(prec - level, 0), rng);
  QuatElem pl = monomial(E_->one(E_->cap()), level, max_prec_);
  return add(one(prec), truncate(mul(pl, t), prec));
}

std::vector<std::uint32_t> Algebra::to_digits(const QuatElem& x) const {
  std::vector<std::uint32_t> out;
  for (const auto& c : x.a) {
    auto dgt = E_->to_digits(c);
    out.insert(out.end(), dgt.begin(), dgt.end());
  }
  return out;
}

}  // namespace quatrep
