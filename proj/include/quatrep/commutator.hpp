#pragma once

#include <cstdint>
#include <string>

#include "quatrep/algebra.hpp"

namespace quatrep {

/// a = (z, b)(t, c) mod P_D^precision, with (x, y) = x y x^-1 y^-1.
struct CommutatorWitness {
  QuatElem z, t, b, c, a;
  int precision = 0;
  std::uint64_t seed = 0;
};

struct ZT {
  QuatElem z, t;
};

/// z: Teichmueller root of order (q^d-1)/(q-1); t = (1 + p_D) u^-1 with N(u) = 1 + (-1)^(d-1) p_F.
ZT make_z_t(const Algebra& alg, int prec);

/// v in D^1 cap U^i with (z, v) = 1 + s^ p_D^i mod P_D^(i+1); d must not divide i.
QuatElem solve_level_a(const Algebra& alg, const QuatElem& z, GaloisField::Elem s, int i, int prec);

/// v in D^1 cap U^(i-1) with (t, v) = 1 + s^ p_D^i mod P_D^(i+1); d | i and Tr(s) = 0.
QuatElem solve_level_b(const Algebra& alg, const QuatElem& t, GaloisField::Elem s, int i, int prec);

/// Residues x with x^(q^r) - x = s, by enumeration of k_D; empty if none.
std::vector<GaloisField::Elem> artin_schreier_roots(const Algebra& alg, GaloisField::Elem s);

/// Factor a norm-one 1-unit as a product of two commutators of norm-one elements.
CommutatorWitness factor_two_commutators(const Algebra& alg, const QuatElem& a, int prec);

struct WitnessCheck {
  bool ok = false;
  /// Level of agreement between a and (z,b)(t,c); equals precision when ok.
  int agreement = 0;
  std::string reason;
};

WitnessCheck verify_witness(const Algebra& alg, const CommutatorWitness& w);

/// A random element of D^1 cap U^1 at the given precision.
QuatElem random_norm_one_unit(const Algebra& alg, int prec, std::mt19937_64& rng);

}  // namespace quatrep
