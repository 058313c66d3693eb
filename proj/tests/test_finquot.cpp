#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "quatrep/errors.hpp"
#include "quatrep/quotient.hpp"

using namespace quatrep;

namespace {

UnitQuotientPtr make(FieldKind kind, std::uint32_t p, unsigned e, unsigned d, int f) {
  return UnitQuotient::create(Algebra::create(kind, p, e, d, 1, f + 2), f);
}

// Subgroup generated by all commutators, by brute force.
std::set<GIdx> brute_derived(const Subgroup& H) {
  const FinGroup& G = H.group();
  std::set<GIdx> s{G.identity()};
  for (GIdx a : H.elements())
    for (GIdx b : H.elements()) s.insert(G.commutator(a, b));
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<GIdx> cur(s.begin(), s.end());
    for (GIdx a : cur)
      for (GIdx b : cur)
        if (s.insert(G.mul(a, b)).second) grew = true;
  }
  return s;
}

std::uint64_t delta_closed_form(std::uint64_t q, int f) {
  std::uint64_t n = q + 1;
  for (int l = 1; l < f; ++l) n *= (l % 2) ? q * q : q;
  return n;
}

}  // namespace

TEST_CASE("order of Gamma_f matches the closed form") {
  for (auto kind : {FieldKind::EqualChar, FieldKind::Mixed})
    for (std::uint32_t q : {2u, 3u})
      for (int f = 1; f <= 3; ++f) {
        auto uq = make(kind, q, 1, 2, f);
        std::uint64_t expect = 2 * (q * q - 1);
        for (int i = 1; i < f; ++i) expect *= q * q;
        CHECK(uq->gamma()->size() == expect);
        CHECK(uq->expected_order() == expect);
        CHECK(uq->delta()->size() == delta_closed_form(q, f));
      }
  CHECK(make(FieldKind::EqualChar, 2, 1, 3, 2)->gamma()->size() == 3 * 7 * 8);
}

TEST_CASE("group axioms on random triples") {
  std::mt19937_64 rng(11);
  for (auto kind : {FieldKind::EqualChar, FieldKind::Mixed})
    for (unsigned d : {2u, 3u}) {
      auto uq = make(kind, 2, 1, d, d == 2 ? 3 : 2);
      const FinGroup& G = *uq->gamma();
      std::uniform_int_distribution<GIdx> pick(0, static_cast<GIdx>(G.size() - 1));
      CHECK(G.key(G.identity()) == 1);
      for (int t = 0; t < 10000; ++t) {
        GIdx a = pick(rng), b = pick(rng), c = pick(rng);
        CHECK(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)));
        CHECK(G.mul(a, G.inv(a)) == G.identity());
        CHECK(G.mul(G.identity(), a) == a);
      }
    }
}

TEST_CASE("Gamma_f multiplication agrees with the algebra") {
  std::mt19937_64 rng(12);
  auto uq = make(FieldKind::Mixed, 3, 1, 2, 3);
  const Algebra& A = uq->algebra();
  const FinGroup& G = *uq->gamma();
  for (int t = 0; t < 200; ++t) {
    QuatElem u = A.random_unit(6, rng), v = A.random_unit(6, rng);
    // (u p_D)(v p_D) = u sigma(v) p_F
    GIdx x = uq->index_of(1, u), y = uq->index_of(1, v);
    CHECK(G.mul(x, y) == uq->index_of(0, A.mul(u, A.conj_pD(v, 1))));
    CHECK(G.mul(uq->index_of(0, u), uq->index_of(0, v)) == uq->index_of(0, A.mul(u, v)));
  }
  CHECK(G.order(uq->pD()) == 2);
}

TEST_CASE("Delta_2 at q = 2 has the A4 pattern") {
  for (auto kind : {FieldKind::EqualChar, FieldKind::Mixed}) {
    auto uq = make(kind, 2, 1, 2, 2);
    auto D = uq->delta();
    REQUIRE(D->size() == 12);
    auto cls = conjugacy_classes(D);
    std::vector<std::size_t> sizes;
    for (auto& c : cls) sizes.push_back(c.elements.size());
    CHECK(sizes == std::vector<std::size_t>{1, 3, 4, 4});
    CHECK(cls[0].rep == uq->gamma()->identity());
    CHECK(abelianization(D) == std::vector<std::uint64_t>{3});
    auto der = derived_subgroup(D);
    CHECK(der->size() == 4);
    CHECK(std::set<GIdx>(der->elements().begin(), der->elements().end()) == brute_derived(*D));
    CHECK(left_cosets(D, der)->index() == 3);
    CHECK(center(D)->size() == 1);
  }
}

TEST_CASE("level 1 at q = 3") {
  auto uq = make(FieldKind::EqualChar, 3, 1, 2, 1);
  auto D = uq->delta();
  CHECK(D->size() == 4);
  CHECK(is_abelian(D));
  CHECK(abelianization(D) == std::vector<std::uint64_t>{4});
  // -1 is central
  GIdx minus1 = uq->index_of(0, uq->algebra().from_int(-1, 1));
  CHECK(center(D)->contains(minus1));

  auto G = uq->whole();
  CHECK(G->size() == 16);
  auto der = derived_subgroup(G);
  CHECK(der->same_elements(*D));
  CHECK(abelianization(G).size() == 2);  // F*/(F*)^2 pattern: C2 x C2
  CHECK(abelianization(G) == std::vector<std::uint64_t>{2, 2});

  auto cs = left_cosets(G, uq->units());
  CHECK(cs->index() == 2);
  CHECK(cs->reps == std::vector<GIdx>{G->group().identity(), uq->pD()});
  auto triv = left_cosets(G, G);
  CHECK(triv->reps == std::vector<GIdx>{G->group().identity()});
}

TEST_CASE("abelianization of Delta_f is cyclic of order q + 1") {
  for (std::uint32_t q : {2u, 3u})
    for (int f = 1; f <= 3; ++f) {
      auto uq = make(FieldKind::Mixed, q, 1, 2, f);
      CHECK(abelianization(uq->delta()) == std::vector<std::uint64_t>{q + 1});
    }
}

TEST_CASE("derived subgroup of Delta_f is the residue kernel") {
  struct Case {
    std::uint32_t q;
    unsigned d;
    int f;
    std::size_t index;
  };
  for (auto c : {Case{2, 2, 2, 3}, Case{3, 2, 2, 4}, Case{2, 2, 3, 3}, Case{2, 3, 2, 7}, Case{2, 3, 3, 7},
                 Case{3, 3, 1, 13}}) {
    auto r = derived_subgroup_check(FieldKind::EqualChar, c.q, c.d, c.f);
    CAPTURE(c.q);
    CAPTURE(c.d);
    CAPTURE(c.f);
    CHECK(r.equal);
    CHECK(r.index() == c.index);
  }
  CHECK_THROWS_AS(derived_subgroup_check(FieldKind::EqualChar, 5, 2, 3, 1000), BudgetError);
}

TEST_CASE("double cosets partition the group") {
  auto uq = make(FieldKind::Mixed, 2, 1, 2, 2);
  auto G = uq->whole();
  auto D = uq->delta();
  auto E = uq->E_ram_image();
  auto dc = double_cosets(G, D, E);
  std::size_t total = 0;
  for (auto& x : dc) total += x.size;
  CHECK(total == G->size());
  // Mackey count: |D x E| = |D| |E| / |D cap xEx^-1|
  for (auto& x : dc) {
    auto c = intersect(D, conjugate(E, x.rep));
    CHECK(x.size * c->size() == D->size() * E->size());
  }
}

TEST_CASE("named subgroups") {
  SUBCASE("f = 2 over Q_2") {
    auto uq = make(FieldKind::Mixed, 2, 1, 2, 2);
    auto s = paper_subgroups(*uq);
    CHECK(uq->gamma()->size() / s.J->size() == 3);
    CHECK(is_normal(s.N, uq->whole()));
    CHECK(s.N->is_subgroup_of(*s.J));
  }
  SUBCASE("f = 2 at q = 3") {
    for (auto kind : {FieldKind::EqualChar, FieldKind::Mixed}) {
      auto uq = make(kind, 3, 1, 2, 2);
      auto s = paper_subgroups(*uq);
      CHECK(s.J->size() == 36);
      CHECK(uq->gamma()->size() / s.J->size() == 4);
      CHECK(intersect(s.J, uq->delta())->size() == 18);
    }
  }
  SUBCASE("f = 3") {
    for (std::uint32_t q : {2u, 3u}) {
      auto uq = make(FieldKind::EqualChar, q, 1, 2, 3);
      auto s = paper_subgroups(*uq);
      CHECK(s.J1->size() / s.J2->size() == q * q);
      CHECK(s.J2->same_elements(*s.N));
      CHECK(s.J->same_elements(*uq->units()));
      CHECK(is_normal(s.J2, s.J));
      CHECK(is_normal(s.J1, s.J));
    }
  }
  CHECK_THROWS_AS(paper_subgroups(*make(FieldKind::EqualChar, 2, 1, 2, 2)), DomainError);
}

TEST_CASE("characters of abelian quotients") {
  auto uq = make(FieldKind::Mixed, 2, 1, 2, 2);
  auto D = uq->delta();
  auto der = derived_subgroup(D);
  auto chars = abelian_characters(D, der, 3);
  CHECK(chars.size() == 3);
  for (auto& c : chars) CHECK(is_homomorphism(c));
  // over mu_1 only the trivial character survives
  CHECK(abelian_characters(D, der, 1).size() == 1);
  // characters of Gamma_1 at q = 3 trivial on Delta_1 with values in mu_2
  auto u3 = make(FieldKind::EqualChar, 3, 1, 2, 1);
  CHECK(abelian_characters(u3->whole(), u3->delta(), 2).size() == 4);
  CHECK_THROWS_AS(abelian_invariants(u3->whole(), Subgroup::generate(u3->gamma(), {}, "1")), DomainError);
}

TEST_CASE("subgroup construction errors") {
  auto uq = make(FieldKind::Mixed, 2, 1, 2, 1);
  // {1, p_D, x} for a random non-identity unit is not closed
  std::vector<GIdx> bad{uq->gamma()->identity(), uq->teich(2)};
  CHECK_THROWS_AS(Subgroup::from_elements(uq->gamma(), bad, "bad"), DomainError);
  CHECK_THROWS_AS(UnitQuotient::create(Algebra::create(FieldKind::Mixed, 5, 1, 2, 1, 6), 4, 1000), BudgetError);
}
