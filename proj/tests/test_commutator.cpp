#include <doctest.h>

#include <random>
#include <set>

#include "quatrep/commutator.hpp"
#include "quatrep/errors.hpp"

using namespace quatrep;

namespace {

struct Case {
  unsigned d;
  std::uint32_t q;
};

const Case kCases[] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}};

AlgebraPtr make(const Case& c, int prec) {
  return Algebra::create(FieldKind::EqualChar, c.q, 1, c.d, 1, prec);
}

}  // namespace

TEST_CASE("z and t") {
  auto A = make({2, 2}, 12);
  auto zt = make_z_t(*A, 12);
  CHECK(A->equal_mod(A->pow(zt.z, 3), A->one(12), 12));
  CHECK(!A->equal_mod(zt.z, A->one(12), 1));
  CHECK(A->is_norm_one(zt.z));
  CHECK(A->is_norm_one(zt.t));
  CHECK(A->equal_mod(zt.t, A->add(A->one(12), A->uniformizer(12)), 2));
  for (int j = 1; j < 2; ++j) CHECK(A->E().is_zero(zt.z.a[j]));
  for (const auto& c : kCases) {
    auto B = make(c, 12);
    auto zt2 = make_z_t(*B, 12);
    long order = 1;
    for (unsigned j = 0; j < c.d; ++j) order *= c.q;
    order = (order - 1) / (c.q - 1);
    CHECK(B->equal_mod(B->pow(zt2.z, order), B->one(12), 12));
    CHECK(B->kD().order(B->residue_and_valuation(zt2.z).second) == order);
    CHECK(B->is_norm_one(zt2.t));
  }
  CHECK_THROWS_AS(make_z_t(*A, 2), PrecisionError);
}

TEST_CASE("counting inequality behind the level-a denominator") {
  for (long q = 2; q <= 16; ++q)
    for (int d = 2; d <= 5; ++d) {
      long qd = 1, qd1 = 1;
      for (int j = 0; j < d; ++j) qd *= q;
      for (int j = 0; j < d - 1; ++j) qd1 *= q;
      CHECK((q - 1) * (qd1 - 1) < qd - 1);
    }
  for (const auto& c : kCases) {
    auto A = make(c, 12);
    auto zt = make_z_t(*A, 12);
    const auto& kD = A->kD();
    const auto zbar = A->residue_and_valuation(zt.z).second;
    for (int i = 1; i <= 10; ++i) {
      if (i % static_cast<int>(c.d) == 0) continue;
      unsigned frob = static_cast<unsigned>(i % static_cast<int>(c.d));
      CHECK(kD.div(zbar, kD.frobenius(zbar, frob)) != 1);
    }
  }
}

TEST_CASE("level-a step") {
  auto A = make({2, 2}, 12);
  auto zt = make_z_t(*A, 12);
  CHECK(A->equal_mod(solve_level_a(*A, zt.z, 0, 1, 12), A->one(12), 12));
  auto v = solve_level_a(*A, zt.z, 1, 1, 12);
  auto comm = A->commutator(zt.z, v);
  CHECK(A->unit_level(comm) >= 1);
  CHECK(A->level_digit(comm, 1) == 1);
  CHECK(A->is_norm_one(v));
  CHECK_THROWS_AS(solve_level_a(*A, zt.z, 1, 2, 12), DomainError);
  for (const auto& c : kCases) {
    auto B = make(c, 12);
    auto zt2 = make_z_t(*B, 12);
    for (int i = 1; i <= 5; ++i) {
      if (i % static_cast<int>(c.d) == 0) continue;
      for (std::uint32_t s = 0; s < B->kD().size(); ++s) {
        auto vv = solve_level_a(*B, zt2.z, s, i, 12);
        auto cc = B->commutator(zt2.z, vv);
        CHECK(B->unit_level(cc) >= i);
        CHECK(B->level_digit(cc, i) == s);
      }
    }
  }
}

TEST_CASE("level-b step") {
  auto A = make({2, 3}, 12);
  const auto& kD = A->kD();
  std::set<std::uint32_t> image, trace_zero;
  for (std::uint32_t x = 0; x < kD.size(); ++x) {
    image.insert(kD.sub(kD.pow(x, 3), x));
    if (kD.trace_to(x, 1) == 0) trace_zero.insert(x);
  }
  CHECK(image == trace_zero);
  CHECK(image.size() == 3);
  auto zt = make_z_t(*A, 12);
  CHECK(A->equal_mod(solve_level_b(*A, zt.t, 0, 2, 12), A->one(12), 12));
  for (auto s : trace_zero) {
    if (!s) continue;
    auto v = solve_level_b(*A, zt.t, s, 2, 12);
    CHECK(A->unit_level(v) == 1);
    auto cc = A->commutator(zt.t, v);
    CHECK(A->unit_level(cc) >= 2);
    CHECK(A->level_digit(cc, 2) == s);
  }
  for (std::uint32_t s = 1; s < kD.size(); ++s)
    if (!trace_zero.count(s)) CHECK_THROWS_AS(solve_level_b(*A, zt.t, s, 2, 12), ObstructionError);
}

TEST_CASE("factorization into two commutators") {
  std::mt19937_64 rng(11);
  auto A = make({2, 2}, 12);
  auto w1 = factor_two_commutators(*A, A->one(12), 12);
  CHECK(A->equal_mod(w1.b, A->one(12), 12));
  CHECK(A->equal_mod(w1.c, A->one(12), 12));
  for (const auto& c : kCases) {
    auto B = make(c, 12);
    auto zt = make_z_t(*B, 12);
    for (int k = 0; k < 5; ++k) {
      auto g = B->normalize_to_D1(B->random_unit(12, rng));
      auto h = B->normalize_to_D1(B->random_unit(12, rng));
      auto a = B->mul(B->commutator(zt.z, g), B->commutator(zt.t, h));
      CHECK(verify_witness(*B, factor_two_commutators(*B, a, 12)).ok);
      auto r = random_norm_one_unit(*B, 12, rng);
      CHECK(verify_witness(*B, factor_two_commutators(*B, r, 12)).ok);
    }
    CHECK_THROWS_AS(factor_two_commutators(*B, B->add(B->one(12), B->uniformizer(12)), 12), DomainError);
  }
}

TEST_CASE("witness verification detects perturbations") {
  std::mt19937_64 rng(12);
  auto A = make({2, 2}, 12);
  auto a = random_norm_one_unit(*A, 12, rng);
  auto w = factor_two_commutators(*A, a, 12);
  CHECK(verify_witness(*A, w).ok);
  auto bad = w;
  bad.b = A->mul(w.b, A->lift_graded_to_D1(1, 11, 12));
  auto r = verify_witness(*A, bad);
  CHECK(!r.ok);
  CHECK(r.agreement == 11);
  auto bad2 = w;
  bad2.c = A->one(12);
  if (!A->equal_mod(A->commutator(w.z, w.b), a, 12)) CHECK(!verify_witness(*A, bad2).ok);
}
