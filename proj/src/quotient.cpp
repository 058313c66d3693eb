#include "quatrep/quotient.hpp"

#include "quatrep/errors.hpp"

namespace quatrep {

UnitQuotientPtr UnitQuotient::create(AlgebraPtr alg, int f, std::size_t limit) {
  if (f < 1) throw DomainError("UnitQuotient: level must be >= 1");
  if (f > alg->max_prec()) throw PrecisionError("UnitQuotient: algebra precision below the level");
  std::shared_ptr<UnitQuotient> uq(new UnitQuotient());
  uq->alg_ = alg;
  uq->f_ = f;
  uq->Q_ = alg->kD().size();
  uq->Qf_ = 1;
  for (int i = 0; i < f; ++i) uq->Qf_ *= uq->Q_;
  const std::uint64_t n = uq->expected_order();
  if (n > limit) throw BudgetError("UnitQuotient: group order " + std::to_string(n) + " exceeds the limit");

  std::vector<FinGroup::Key> keys;
  keys.reserve(n);
  const unsigned d = alg->d();
  for (unsigned e = 0; e < d; ++e)
    for (std::uint64_t rest = 0; rest < uq->Qf_ / uq->Q_; ++rest)
      for (std::uint64_t a0 = 1; a0 < uq->Q_; ++a0) keys.push_back(e * uq->Qf_ + rest * uq->Q_ + a0);

  const UnitQuotient* self = uq.get();
  auto mul = [self](FinGroup::Key x, FinGroup::Key y) -> FinGroup::Key {
    const Algebra& A = *self->alg_;
    const long long ex = static_cast<long long>(x / self->Qf_), ey = static_cast<long long>(y / self->Qf_);
    QuatElem u = self->decode_unit(x % self->Qf_), v = self->decode_unit(y % self->Qf_);
    QuatElem w = A.mul(u, A.conj_pD(v, ex));
    return ((ex + ey) % A.d()) * self->Qf_ + self->encode_unit(w);
  };
  auto inv = [self](FinGroup::Key x) -> FinGroup::Key {
    const Algebra& A = *self->alg_;
    const long long ex = static_cast<long long>(x / self->Qf_);
    QuatElem u = A.conj_pD(A.inv(self->decode_unit(x % self->Qf_)), -ex);
    return ((A.d() - ex) % A.d()) * self->Qf_ + self->encode_unit(u);
  };
  auto index = [self](FinGroup::Key k) { return self->key_index(k); };
  uq->G_ = std::make_shared<FinGroup>("Gamma_" + std::to_string(f), std::move(keys), FinGroup::Key{1}, mul, inv, index);
  return uq;
}

std::uint64_t UnitQuotient::expected_order() const { return d() * (Q_ - 1) * (Qf_ / Q_); }

std::int64_t UnitQuotient::key_index(FinGroup::Key k) const {
  const std::uint64_t e = k / Qf_, code = k % Qf_, a0 = code % Q_, rest = code / Q_;
  if (e >= d() || a0 == 0) return -1;
  return static_cast<std::int64_t>(e * (Q_ - 1) * (Qf_ / Q_) + rest * (Q_ - 1) + (a0 - 1));
}

QuatElem UnitQuotient::decode_unit(std::uint64_t code) const {
  const Algebra& A = *alg_;
  const UnramExt& E = A.E();
  const int d = static_cast<int>(A.d());
  QuatElem u = A.zero(f_);
  if (A.kind() == FieldKind::EqualChar) {
    for (int l = 0; l < f_; ++l, code /= Q_) u.a[l % d].v[l / d] = static_cast<std::int64_t>(code % Q_);
    return u;
  }
  std::vector<std::int64_t> ppow(f_ + 1, 1);
  for (int k = 1; k <= f_; ++k) ppow[k] = ppow[k - 1] * E.p();
  for (int l = 0; l < f_; ++l, code /= Q_) {
    auto c = A.kD().coeffs(static_cast<GaloisField::Elem>(code % Q_));
    auto& v = u.a[l % d].v;
    for (std::size_t j = 0; j < c.size(); ++j) v[j] += static_cast<std::int64_t>(c[j]) * ppow[l / d];
  }
  return u;
}

std::uint64_t UnitQuotient::encode_unit(const QuatElem& u) const {
  if (u.prec < f_) throw PrecisionError("UnitQuotient: element known below the level");
  std::uint64_t code = 0, w = 1;
  for (int l = 0; l < f_; ++l, w *= Q_) code += alg_->level_digit(u, l) * w;
  if (code % Q_ == 0) throw DomainError("UnitQuotient: not a unit");
  return code;
}

FinGroup::Key UnitQuotient::key_of(int e, const QuatElem& u) const {
  const int d = static_cast<int>(this->d());
  e = ((e % d) + d) % d;
  return static_cast<std::uint64_t>(e) * Qf_ + encode_unit(u);
}

QuatElem UnitQuotient::unit(GIdx g) const { return decode_unit(G_->key(g) % Qf_); }

GaloisField::Elem UnitQuotient::digit(GIdx g, int level) const {
  if (level < 0 || level >= f_) throw DomainError("UnitQuotient::digit: level out of range");
  std::uint64_t c = G_->key(g) % Qf_;
  for (int l = 0; l < level; ++l) c /= Q_;
  return static_cast<GaloisField::Elem>(c % Q_);
}

int UnitQuotient::unit_level(GIdx g) const {
  if (residue(g) != alg_->kD().one()) return 0;
  for (int l = 1; l < f_; ++l)
    if (digit(g, l) != 0) return l;
  return f_;
}

LocalElem UnitQuotient::nrd_unit(GIdx g) const { return alg_->nrd(unit(g)); }

GIdx UnitQuotient::pD() const { return G_->index_of(Qf_ + 1); }

GIdx UnitQuotient::teich(GaloisField::Elem x) const { return index_of(0, alg_->teichmuller(x, f_)); }

GIdx UnitQuotient::one_plus(GaloisField::Elem x, int level) const {
  const Algebra& A = *alg_;
  if (level < 1) throw DomainError("one_plus: level must be >= 1");
  QuatElem u = A.one(f_);
  if (level < f_) u = A.add(u, A.monomial(A.E().lift(x, f_), level, f_));
  return index_of(0, u);
}

SubgroupPtr UnitQuotient::whole() const {
  if (!whole_) whole_ = Subgroup::whole(G_, "Gamma");
  return whole_;
}

SubgroupPtr UnitQuotient::units() const {
  if (!units_) units_ = Subgroup::from_predicate(G_, [this](GIdx g) { return eps(g) == 0; }, "units");
  return units_;
}

SubgroupPtr UnitQuotient::delta() const {
  if (!delta_) {
    const int k = alg_->nrd_filtration_image(f_);
    const UnramExt& F = alg_->F();
    const LocalElem one = F.one(k);
    delta_ = Subgroup::from_predicate(
        G_, [&](GIdx g) { return eps(g) == 0 && F.equal_mod(nrd_unit(g), one, k); }, "Delta");
  }
  return delta_;
}

SubgroupPtr UnitQuotient::unit_level_subgroup(int i) const {
  return Subgroup::from_predicate(G_, [&](GIdx g) { return eps(g) == 0 && unit_level(g) >= i; },
                                  "U" + std::to_string(i));
}

namespace {
// Level digits of the unit part of g satisfy pred(level, digit) at every level.
bool digits_all(const UnitQuotient& uq, GIdx g, const std::function<bool(int, GaloisField::Elem)>& pred) {
  for (int l = 0; l < uq.level(); ++l)
    if (!pred(l, uq.digit(g, l))) return false;
  return true;
}
}  // namespace

SubgroupPtr UnitQuotient::F_image() const {
  if (!fimg_) {
    const UnramExt& E = alg_->E();
    const int d = static_cast<int>(this->d());
    fimg_ = Subgroup::from_predicate(
        G_,
        [&](GIdx g) {
          return eps(g) == 0 && digits_all(*this, g, [&](int l, GaloisField::Elem x) {
                   return l % d == 0 ? E.residue_in_base(x) : x == 0;
                 });
        },
        "F*");
  }
  return fimg_;
}

SubgroupPtr UnitQuotient::E_unram_image() const {
  if (!eun_) {
    const int d = static_cast<int>(this->d());
    eun_ = Subgroup::from_predicate(
        G_,
        [&](GIdx g) {
          return eps(g) == 0 && digits_all(*this, g, [&](int l, GaloisField::Elem x) { return l % d == 0 || x == 0; });
        },
        "E*(unramified)");
  }
  return eun_;
}

SubgroupPtr UnitQuotient::E_ram_image() const {
  if (!eram_) {
    if (d() != 2) throw DomainError("E_ram_image: needs d = 2");
    const UnramExt& E = alg_->E();
    eram_ = Subgroup::from_predicate(
        G_, [&](GIdx g) { return digits_all(*this, g, [&](int, GaloisField::Elem x) { return E.residue_in_base(x); }); },
        "E*(ramified)");
  }
  return eram_;
}

SubgroupPtr UnitQuotient::delta_residue_kernel() const {
  if (!rker_) {
    auto D = delta();
    std::vector<GIdx> e;
    for (GIdx g : D->elements())
      if (residue(g) == alg_->kD().one()) e.push_back(g);
    rker_ = Subgroup::from_elements(G_, std::move(e), "ker(rho)");
  }
  return rker_;
}

FinGroupPtr UnitQuotient::delta_group() const {
  if (!delta_group_) {
    auto D = delta();
    std::vector<FinGroup::Key> keys;
    for (GIdx g : D->elements()) keys.push_back(G_->key(g));
    FinGroupPtr G = G_;
    auto mul = [G](FinGroup::Key a, FinGroup::Key b) { return G->key(G->mul(G->index_of(a), G->index_of(b))); };
    auto inv = [G](FinGroup::Key a) { return G->key(G->inv(G->index_of(a))); };
    delta_group_ = std::make_shared<FinGroup>("Delta_" + std::to_string(f_), std::move(keys), FinGroup::Key{1}, mul, inv);
  }
  return delta_group_;
}

PaperSubgroups paper_subgroups(const UnitQuotient& uq) {
  const int f = uq.level();
  if (uq.d() != 2) throw DomainError("paper_subgroups: needs d = 2");
  const Algebra& A = uq.algebra();
  if (f % 2 == 0 && A.kind() == FieldKind::EqualChar && A.E().p() == 2)
    throw DomainError("paper_subgroups: equal characteristic 2 with even level is inseparable; use the Q_2 base");
  PaperSubgroups s;
  const int m = (f + 1) / 2;
  s.N = join(uq.F_image(), uq.unit_level_subgroup(m), "N");
  if (f % 2 == 0) {
    s.J = join(uq.E_ram_image(), uq.unit_level_subgroup(f / 2), "J");
  } else {
    // 1 + P_E is the part of the unramified E at unit level >= d
    auto PE = intersect(uq.E_unram_image(), uq.unit_level_subgroup(2), "1+P_E");
    auto FPE = join(uq.F_image(), PE, "F*(1+P_E)");
    s.J = join(uq.E_unram_image(), uq.unit_level_subgroup((f - 1) / 2), "J");
    s.J1 = join(FPE, uq.unit_level_subgroup((f - 1) / 2), "J'");
    s.J2 = join(FPE, uq.unit_level_subgroup((f + 1) / 2), "J''");
  }
  return s;
}

DerivedCheck derived_subgroup_check(FieldKind kind, std::uint32_t q, unsigned d, int f, std::size_t limit) {
  std::uint32_t p = 2;
  while (q % p) ++p;
  unsigned e = 0;
  for (std::uint32_t t = q; t > 1; t /= p) ++e;
  auto alg = Algebra::create(kind, p, e, d, 1, f + 2);
  auto uq = UnitQuotient::create(alg, f, limit);
  auto D = uq->delta();
  auto der = derived_subgroup(D);
  auto ker = uq->delta_residue_kernel();
  DerivedCheck r;
  r.delta_order = D->size();
  r.derived_order = der->size();
  r.kernel_order = ker->size();
  r.equal = der->same_elements(*ker);
  return r;
}

}  // namespace quatrep
