#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "quatrep/constructions.hpp"
#include "quatrep/meataxe.hpp"
#include "quatrep/rep.hpp"

namespace quatrep {

struct Component {
  int id = 0;
  int multiplicity = 0;  // in the composition series
  int dim = 0;
  int socle_multiplicity = 0;  // dim Hom(S, V)
};

/// Decomposition of a module over a finite coefficient field.
///
/// mode is "exact" when the commutant dimension was computed over Q(zeta_M),
/// "surrogate" when everything ran over a large prime field standing in for
/// characteristic 0, and "modular" for genuine characteristic l.
struct DecompReport {
  std::string input;
  int input_dim = 0;
  long characteristic = 0;
  long field_characteristic = 0;  // the field the Meataxe ran over
  long field_root_order = 1;
  std::size_t group_order = 0;
  std::string mode;
  std::uint64_t seed = 0;
  std::vector<Component> components;
  int commutant_dim = 0;
  bool semisimple = false;
  std::string pattern;
  std::vector<SplitResult> certificates;  // one per component
  std::vector<Module> reps;               // not serialized

  int component_count() const { return static_cast<int>(components.size()); }
};

/// irreducible | two-inequivalent | one-with-multiplicity-two | other
std::string pattern_tag(const std::vector<Component>& cs);

nlohmann::json to_json(const DecompReport& r);

Module to_module(const Rep<FF>& r);

/// Meataxe decomposition. commutant < 0 means compute it densely.
/// Throws std::logic_error if the semisimple identities fail when gcd(char, |G|) = 1.
DecompReport decompose_module(const FF& k, const Module& m, std::size_t group_order, std::uint64_t seed,
                              std::string input, std::string mode, int commutant = -1);

/// Decompose res_L P, with the commutant taken from the Mackey formula.
DecompReport decompose_restriction(const Induced<FF>& P, const SubgroupPtr& L, std::uint64_t seed,
                                   std::string mode);

/// Re-check every certificate and the count identities without searching.
bool verify_report(const FF& k, const DecompReport& r);

/// Re-check a serialized report: certificates against the listed component
/// modules, pairwise inequivalence and the dimension count. Empty string when fine.
std::string verify_decomp_json(const nlohmann::json& j);

/// Coefficient fields for a characteristic-0 computation at modulus M: the
/// surrogate prime field always, and Q(zeta_M) when phi(M) is at most max_phi.
struct Char0Fields {
  std::unique_ptr<CyclotomicField> exact;
  std::unique_ptr<FF> surrogate;
};
Char0Fields char0_fields(long M, std::size_t group_order, int max_phi = 64);

/// Characteristic-l reduction of a characteristic-0 representation, entry by entry.
Rep<FF> reduce_mod_ell(const Rep<CyclotomicField>& r, const FF& target);
Induced<FF> reduce_mod_ell(const Induced<CyclotomicField>& P, const FF& target);

/// Characters x of Gamma_f trivial on Delta_f with x^2 = 1 such that P (x) x is equivalent to P.
template <class K>
int twist_stabilizer_count(const UnitQuotient& uq, const Induced<K>& P, long M);

}  // namespace quatrep
