#pragma once

#include <string>

#include "quatrep/quotient.hpp"
#include "quatrep/rep.hpp"

namespace quatrep {

/// d (q^d - 1) p^(f-1): a multiple of the exponent of Gamma_f. All characters
/// attached to Gamma_f take values in mu_M for this M.
long coefficient_modulus(const UnitQuotient& uq);

/// nu(g^k) = zeta_n^(c k) on k_D^* = <g>, n = q^2 - 1; regular iff nu^q != nu.
bool tame_is_regular(std::uint32_t q, long c);
/// Order of nu restricted to k_D^1 (the elements x^(q-1)).
long tame_restriction_order(std::uint32_t q, long c);
/// lambda(u) = nu(residue(u)) on the unit classes, values in mu_M.
Character tame_lambda(const UnitQuotient& uq, long c, long M);

/// Minimal character datum: psi_a at the middle level and a character of mu_F.
struct WildDatum {
  GaloisField::Elem a = 1;  // in k_D; f even needs a != 0, f odd needs a outside k_F
  long cF = 0;              // theta(teich(g_F^k)) = zeta_(q-1)^(cF k)
};

/// chi on N = F^*(1 + P_D^floor((f+1)/2)).
Character wild_chi(const UnitQuotient& uq, const SubgroupPtr& N, const WildDatum& w, long M);
/// Elements of Gamma_f fixing chi under conjugation.
SubgroupPtr character_stabilizer(const UnitQuotient& uq, const Character& chi);

template <class K>
struct BuiltRep {
  Induced<K> Pi;          // Pi = ind_J^Gamma lambda
  SubgroupPtr J;          // inducing subgroup
  SubgroupPtr N;          // domain of chi (wild only)
  SubgroupPtr isotropic;  // M with M/J'' maximal isotropic (f odd only)
  long M = 0;             // coefficient modulus
  int level = 1;
  std::string kind;       // "tame" | "wild-even" | "wild-odd"
  std::string normalization;
};

/// ind from the unit classes of lambda_nu; throws DomainError if nu is not regular.
template <class K>
BuiltRep<K> build_tame_rep(const K& k, const UnitQuotient& uq, long c);

/// Minimal wild representation of level f = uq.level() in {2, 3}.
template <class K>
BuiltRep<K> build_wild_rep(const K& k, const UnitQuotient& uq, const WildDatum& w);

}  // namespace quatrep
