#include <doctest.h>

#include <random>
#include <set>

#include "quatrep/errors.hpp"
#include "quatrep/local_field.hpp"

using namespace quatrep;

namespace {

struct Setup {
  FieldKind kind;
  std::uint32_t p;
  unsigned e;
  unsigned d;
};

std::vector<Setup> all_setups() {
  return {{FieldKind::EqualChar, 2, 1, 2}, {FieldKind::EqualChar, 3, 1, 2}, {FieldKind::EqualChar, 2, 1, 3},
          {FieldKind::EqualChar, 3, 1, 3}, {FieldKind::EqualChar, 2, 2, 2}, {FieldKind::Mixed, 2, 1, 2},
          {FieldKind::Mixed, 3, 1, 2},     {FieldKind::Mixed, 2, 1, 3},     {FieldKind::Mixed, 3, 1, 3},
          {FieldKind::Mixed, 5, 1, 2}};
}

UnramExtPtr make_ext(const Setup& s, int cap) {
  return UnramExt::create(make_local_field(s.kind, s.p, s.e, cap), s.d, cap);
}

LocalElem random_elem(const UnramExt& E, int prec, std::mt19937_64& rng) {
  LocalElem a = E.zero(prec);
  if (E.kind() == FieldKind::EqualChar) {
    for (auto& c : a.v) c = static_cast<std::int64_t>(rng() % E.kD().size());
  } else {
    std::int64_t M = 1;
    for (int i = 0; i < prec; ++i) M *= E.p();
    for (auto& c : a.v) c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(M));
  }
  return a;
}

// Extend a by random digits to precision prec.
LocalElem extend(const UnramExt& E, const LocalElem& a, int prec, std::mt19937_64& rng) {
  LocalElem noise = random_elem(E, prec - a.prec, rng);
  LocalElem wide = E.zero(prec);
  if (E.kind() == FieldKind::EqualChar) {
    for (int k = 0; k < a.prec; ++k) wide.v[k] = a.v[k];
  } else {
    wide.v = a.v;
  }
  return E.add(wide, E.shift(noise, a.prec));
}

}  // namespace

TEST_CASE("basic series arithmetic") {
  auto F = UnramExt::create(make_local_field(FieldKind::EqualChar, 2, 1, 4), 1, 4);
  auto one_t = F->add(F->one(4), F->uniformizer(4));
  auto sq = F->mul(one_t, one_t);
  CHECK(sq.v == std::vector<std::int64_t>{1, 0, 1, 0});
  auto iv = F->inv(one_t);
  CHECK(iv.v == std::vector<std::int64_t>{1, 1, 1, 1});
  CHECK(iv.prec == 4);

  auto Q2 = UnramExt::create(make_local_field(FieldKind::Mixed, 2, 1, 4), 1, 4);
  auto three = Q2->from_int(3, 4);
  CHECK(Q2->inv(three).v[0] == 11);
  CHECK_THROWS_AS(Q2->inv(Q2->from_int(2, 4)), DomainError);
  CHECK_THROWS_AS(Q2->inv(Q2->zero(4)), DomainError);
  CHECK(Q2->valuation(Q2->zero(4)) == 4);
}

TEST_CASE("mixed characteristic with e > 1 is rejected") {
  CHECK_THROWS_AS(make_local_field(FieldKind::Mixed, 2, 2, 4), DomainError);
}

TEST_CASE("Frobenius") {
  std::mt19937_64 rng(1);
  for (const auto& s : all_setups()) {
    auto E = make_ext(s, 8);
    const auto& F = E->base();
    for (int t = 0; t < 100; ++t) {
      auto a = random_elem(*E, 8, rng);
      auto x = a;
      for (unsigned i = 0; i < s.d; ++i) x = E->frobenius(x);
      CHECK(E->equal_mod(x, a, 8));
      auto b = E->from_base(random_elem(F, 8, rng));
      CHECK(E->equal_mod(E->frobenius(b), b, 8));
      CHECK(E->equal_mod(E->frobenius(E->frobenius(a), -1), a, 8));
    }
    auto omega = E->teichmuller(E->kD().generator(), 8);
    CHECK(E->equal_mod(E->frobenius(omega), E->pow(omega, E->q()), 8));
  }
}

TEST_CASE("norm and trace land in F") {
  std::mt19937_64 rng(2);
  {
    auto E = make_ext({FieldKind::EqualChar, 2, 1, 2}, 6);
    auto omega = E->teichmuller(E->kD().generator(), 6);
    auto n = E->norm(omega);
    CHECK(E->base().equal_mod(n, E->base().one(6), 6));
  }
  for (const auto& s : all_setups()) {
    auto E = make_ext(s, 7);
    const auto& F = E->base();
    for (int t = 0; t < 50; ++t) {
      auto a = random_elem(*E, 7, rng);
      CHECK_NOTHROW(E->norm(a));
      CHECK_NOTHROW(E->trace(a));
      auto b = random_elem(F, 7, rng);
      CHECK(F.equal_mod(E->norm(E->from_base(b)), F.pow(b, s.d), 7));
    }
    // Trace is onto k_F at the residue level.
    std::set<std::uint32_t> tr;
    for (std::uint32_t y = 0; y < E->kD().size(); ++y) tr.insert(E->kD().trace_to(y, s.e));
    CHECK(tr.size() == E->kF().size());
  }
}

TEST_CASE("Teichmueller lifts") {
  auto E = make_ext({FieldKind::Mixed, 2, 1, 2}, 6);
  auto w = E->teichmuller(E->kD().generator(), 6);
  auto poly = E->add(E->add(E->mul(w, w), w), E->one(6));
  CHECK(E->is_zero(poly));
  CHECK(E->equal_mod(E->pow(w, 3), E->one(6), 6));
  for (const auto& s : all_setups()) {
    auto X = make_ext(s, 6);
    const auto& kD = X->kD();
    if (kD.size() > 81) continue;
    CHECK(X->equal_mod(X->teichmuller(1, 6), X->one(6), 6));
    auto g = X->teichmuller(kD.generator(), 6);
    CHECK(X->equal_mod(X->pow(g, kD.size() - 1), X->one(6), 6));
    for (std::uint32_t a = 1; a < kD.size(); ++a)
      for (std::uint32_t b = 1; b < kD.size(); ++b)
        CHECK(X->equal_mod(X->mul(X->teichmuller(a, 6), X->teichmuller(b, 6)), X->teichmuller(kD.mul(a, b), 6), 6));
  }
  CHECK_THROWS_AS(E->teichmuller(0, 6), DomainError);
}

TEST_CASE("norm equation") {
  std::mt19937_64 rng(3);
  {
    auto E = make_ext({FieldKind::EqualChar, 2, 1, 2}, 6);
    const auto& F = E->base();
    auto u1 = E->solve_norm_equation(F.one(6), 1);
    CHECK(E->equal_mod(u1, E->one(6), 6));
    auto target = F.add(F.one(6), F.uniformizer(6));
    auto u = E->solve_norm_equation(target, 1);
    CHECK(F.equal_mod(E->norm(u), target, 6));
    CHECK(E->valuation(E->sub(u, E->one(6))) >= 1);
  }
  for (const auto& s : all_setups()) {
    if (s.e != 1 || s.p > 3) continue;
    auto E = make_ext(s, 8);
    const auto& F = E->base();
    for (int t = 0; t < 100; ++t) {
      int k = 1 + static_cast<int>(rng() % 3);
      auto target = F.add(F.one(8), F.shift(random_elem(F, 8 - k, rng), k));
      auto u = E->solve_norm_equation(target, k);
      CHECK(F.equal_mod(E->norm(u), target, 8));
      CHECK(E->valuation(E->sub(u, E->one(8))) >= k);
    }
  }
}

TEST_CASE("precision soundness") {
  std::mt19937_64 rng(4);
  int cases = 0;
  while (cases < 1000) {
    for (const auto& s : all_setups()) {
      auto E = make_ext(s, 14);
      const int N = 3 + static_cast<int>(rng() % 6);
      auto a = random_elem(*E, N, rng);
      auto b = random_elem(*E, N, rng);
      auto A = extend(*E, a, N + 5, rng);
      auto B = extend(*E, b, N + 5, rng);
      auto sum = E->add(a, b);
      CHECK(E->equal_mod(E->truncate(E->add(A, B), sum.prec), sum, sum.prec));
      auto prod = E->mul(a, b);
      CHECK(prod.prec >= N);
      CHECK(E->equal_mod(E->truncate(E->mul(A, B), prod.prec), prod, prod.prec));
      if (E->is_unit(a)) {
        auto ia = E->inv(a);
        CHECK(ia.prec == N);
        CHECK(E->equal_mod(E->truncate(E->inv(A), N), ia, N));
      }
      CHECK(E->equal_mod(E->truncate(E->frobenius(A), N), E->frobenius(a), N));
      // A product with a non-unit carries more known digits.
      auto pa = E->shift(a, 2);
      auto pprod = E->mul(pa, b);
      CHECK(pprod.prec == std::min(N + 2 + std::min(E->valuation(a), E->valuation(b)), 14));
      CHECK(E->equal_mod(E->truncate(E->mul(E->shift(A, 2), B), pprod.prec), pprod, pprod.prec));
      ++cases;
    }
  }
}

TEST_CASE("graded norm image on unit levels") {
  for (const auto& s : all_setups()) {
    if (s.p > 3 || s.e != 1) continue;
    auto E = make_ext(s, 8);
    const auto& F = E->base();
    for (int i = 1; i <= 6; ++i) {
      std::set<std::uint32_t> hit;
      for (std::uint32_t y = 0; y < E->kD().size(); ++y) {
        auto u = E->add(E->one(8), E->shift(E->lift(y, 8 - i), i));
        auto n = E->norm(u);
        auto diff = F.sub(n, F.one(8));
        CHECK(F.valuation(diff) >= i);
        hit.insert(F.digit(diff, i));
      }
      CHECK(hit.size() == E->kF().size());
    }
  }
}
