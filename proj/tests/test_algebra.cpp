#include <doctest.h>

#include <random>
#include <set>

#include "quatrep/algebra.hpp"
#include "quatrep/errors.hpp"

using namespace quatrep;

namespace {

struct Config {
  FieldKind kind;
  std::uint32_t p;
  unsigned d;
  unsigned r;
};

std::vector<Config> configs() {
  return {{FieldKind::EqualChar, 2, 2, 1}, {FieldKind::EqualChar, 3, 2, 1}, {FieldKind::EqualChar, 2, 3, 1},
          {FieldKind::EqualChar, 3, 3, 2}, {FieldKind::Mixed, 2, 2, 1},     {FieldKind::Mixed, 3, 2, 1},
          {FieldKind::Mixed, 2, 3, 1},     {FieldKind::Mixed, 3, 3, 1}};
}

AlgebraPtr make(const Config& c, int prec = 12) { return Algebra::create(c.kind, c.p, 1, c.d, c.r, prec); }

}  // namespace

TEST_CASE("defining relations") {
  auto A = Algebra::create(FieldKind::EqualChar, 2, 1, 2, 1, 12);
  auto pd = A->uniformizer(12);
  auto pf = A->from_E(A->E().uniformizer(6), 12);
  CHECK(A->equal_mod(A->mul(pd, pd), pf, 12));
  auto w = A->teichmuller(A->kD().generator(), 12);
  auto lhs = A->mul(pd, w);
  auto rhs = A->mul(A->pow(w, A->q()), pd);
  CHECK(A->equal_mod(lhs, rhs, lhs.prec));
  for (const auto& c : configs()) {
    auto B = make(c);
    auto P = B->uniformizer(12);
    auto Pd = B->pow(P, c.d);
    auto PF = B->from_E(B->E().uniformizer(B->coeff_prec(0, 12)), 12);
    CHECK(B->equal_mod(Pd, PF, std::min(Pd.prec, 12)));
  }
}

TEST_CASE("inverse round trip and valuation additivity") {
  std::mt19937_64 rng(5);
  for (const auto& c : configs()) {
    auto A = make(c);
    for (int t = 0; t < 100; ++t) {
      auto x = A->random_unit(12, rng);
      auto y = A->inv(x);
      CHECK(A->equal_mod(A->mul(x, y), A->one(12), 12));
      CHECK(A->equal_mod(A->mul(y, x), A->one(12), 12));
      auto u = A->random_elem(12, rng);
      auto v = A->random_elem(12, rng);
      const int wu = A->valuation(u), wv = A->valuation(v);
      auto uv = A->mul(u, v);
      if (wu + wv < uv.prec) CHECK(A->valuation(uv) == wu + wv);
    }
    CHECK_THROWS_AS(A->inv(A->uniformizer(12)), DomainError);
  }
}

TEST_CASE("reduced norm values") {
  for (const auto& c : configs()) {
    auto A = make(c);
    const auto& F = A->F();
    const int nf = A->coeff_prec(0, 12);
    auto one_pd = A->add(A->one(12), A->uniformizer(12));
    auto sign = (c.d % 2 == 1) ? 1 : -1;
    auto expect = F.add(F.one(nf), F.shift(F.from_int(sign, nf - 1), 1));
    auto got = A->nrd(one_pd);
    CHECK(F.equal_mod(got, expect, std::min(got.prec, nf)));
    auto npd = A->nrd(A->uniformizer(12));
    auto expect_pd = F.shift(F.from_int(c.d % 2 == 1 ? 1 : -1, nf - 1), 1);
    CHECK(F.equal_mod(npd, expect_pd, std::min(npd.prec, nf)));
    std::mt19937_64 rng(6);
    for (int t = 0; t < 20; ++t) {
      auto a = A->random_E(nf, rng);
      auto n = A->nrd(A->from_E(a, 12));
      CHECK(F.equal_mod(n, A->E().norm(a), std::min(n.prec, nf)));
    }
  }
}

TEST_CASE("reduced norm is multiplicative; closed form agrees") {
  std::mt19937_64 rng(7);
  int pairs = 0;
  while (pairs < 1000) {
    for (const auto& c : configs()) {
      auto A = make(c);
      const auto& F = A->F();
      auto x = A->random_elem(12, rng);
      auto y = A->random_elem(12, rng);
      auto nxy = A->nrd(A->mul(x, y));
      auto prod = F.mul(A->nrd(x), A->nrd(y));
      const int n = std::min(nxy.prec, prod.prec);
      CHECK(n >= 1);
      CHECK(F.equal_mod(nxy, prod, n));
      if (c.d == 2) {
        auto a = A->nrd(x), b = A->nrd_closed_form(x);
        CHECK(F.equal_mod(a, b, std::min(a.prec, b.prec)));
      }
      ++pairs;
    }
  }
}

TEST_CASE("residue and valuation") {
  auto A = Algebra::create(FieldKind::EqualChar, 2, 1, 2, 1, 8);
  const auto& kD = A->kD();
  auto [w0, s0] = A->residue_and_valuation(A->teichmuller(kD.generator(), 8));
  CHECK(w0 == 0);
  CHECK(kD.order(s0) == 3);
  auto [w1, s1] = A->residue_and_valuation(A->add(A->one(8), A->uniformizer(8)));
  CHECK(w1 == 0);
  CHECK(s1 == 1);
  // Every unit class at q = 2: p_D u has residue sigma(residue u) at level 1.
  for (std::uint32_t a = 1; a < kD.size(); ++a)
    for (std::uint32_t b = 0; b < kD.size(); ++b) {
      auto u = A->add(A->from_E(A->E().lift(a, 4), 8), A->monomial(A->E().lift(b, 4), 1, 8));
      auto [w, s] = A->residue_and_valuation(A->mul(A->uniformizer(8), u));
      CHECK(w == 1);
      CHECK(s == kD.mul(a, a));
    }
  CHECK_THROWS_AS(A->residue_and_valuation(A->zero(8)), DomainError);
}

TEST_CASE("filtration image of the reduced norm") {
  auto A2 = Algebra::create(FieldKind::EqualChar, 2, 1, 2, 1, 16);
  CHECK(A2->nrd_filtration_image(1) == 1);
  CHECK(A2->nrd_filtration_image(2) == 1);
  auto A3 = Algebra::create(FieldKind::EqualChar, 2, 1, 3, 1, 18);
  CHECK(A3->nrd_filtration_image(4) == 2);
  std::mt19937_64 rng(8);
  for (const auto& c : configs()) {
    auto A = Algebra::create(c.kind, c.p, 1, c.d, c.r, 24);
    for (int i = 1; i <= 6; ++i) CHECK(A->verify_nrd_filtration(i, 30, rng));
  }
}

TEST_CASE("graded pieces of the norm-one group") {
  for (const auto& c : configs()) {
    if (c.kind != FieldKind::EqualChar) continue;
    auto A = make(c, 12);
    const std::size_t q = A->q();
    std::size_t full = 1;
    for (unsigned j = 0; j < c.d; ++j) full *= q;
    for (int i = 1; i <= 4; ++i) {
      const std::size_t expected = (i % static_cast<int>(c.d) == 0) ? full / q : full;
      CHECK(A->graded_image_size(i) == expected);
    }
  }
}

TEST_CASE("norm-one lifts of graded residues") {
  auto A = Algebra::create(FieldKind::EqualChar, 2, 1, 2, 1, 12);
  CHECK(A->equal_mod(A->lift_graded_to_D1(0, 1, 12), A->one(12), 12));
  const auto g = A->kD().generator();
  auto v = A->lift_graded_to_D1(g, 1, 12);
  CHECK(A->is_norm_one(v));
  auto expect = A->add(A->one(12), A->mul(A->teichmuller(g, 12), A->uniformizer(12)));
  CHECK(A->equal_mod(v, expect, 2));
  // Trace obstruction at level 2.
  for (std::uint32_t s = 1; s < A->kD().size(); ++s) {
    if (A->kD().trace_to(s, 1) != 0) {
      CHECK_THROWS_AS(A->lift_graded_to_D1(s, 2, 12), ObstructionError);
      // Brute force: no element 1 + s p_D^2 + c p_D^3 has norm 1 mod p_F^2.
      for (std::uint32_t c3 = 0; c3 < A->kD().size(); ++c3) {
        auto w = A->add(A->one(6), A->monomial(A->E().lift(s, 4), 2, 6));
        w = A->add(w, A->monomial(A->E().lift(c3, 4), 3, 6));
        auto n = A->nrd(w);
        CHECK(!A->F().equal_mod(n, A->F().one(2), 2));
      }
    } else {
      CHECK(A->is_norm_one(A->lift_graded_to_D1(s, 2, 12)));
    }
  }
  for (const auto& c : configs()) {
    auto B = make(c);
    for (int i = 1; i <= 5; ++i)
      for (std::uint32_t s = 0; s < B->kD().size(); ++s) {
        if (i % static_cast<int>(c.d) == 0 && B->kD().trace_to(s, 1) != 0) continue;
        auto x = B->lift_graded_to_D1(s, i, 12);
        CHECK(B->is_norm_one(x));
        CHECK(B->unit_level(x) >= i);
        CHECK(B->level_digit(x, i) == s);
      }
  }
}

TEST_CASE("normalization to norm one") {
  std::mt19937_64 rng(9);
  auto A = Algebra::create(FieldKind::EqualChar, 2, 1, 2, 1, 12);
  auto t = A->normalize_to_D1(A->add(A->one(12), A->uniformizer(12)));
  CHECK(A->is_norm_one(t));
  CHECK(A->equal_mod(t, A->add(A->one(12), A->uniformizer(12)), 2));
  auto v = A->lift_graded_to_D1(1, 1, 12);
  CHECK(A->equal_mod(A->normalize_to_D1(v), v, 12));
  for (const auto& c : configs()) {
    auto B = make(c);
    for (int k = 0; k < 100; ++k) {
      auto u = B->random_unit(12, rng);
      auto n = B->normalize_to_D1(u);
      auto nn = B->nrd(n);
      const int floor_prec = 12 / static_cast<int>(c.d);
      CHECK(nn.prec >= floor_prec);
      CHECK(B->F().equal_mod(nn, B->F().one(floor_prec), floor_prec));
    }
  }
}
