#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "quatrep/certify.hpp"
#include "quatrep/constructions.hpp"
#include "quatrep/decompose.hpp"

namespace quatrep {

UnitQuotientPtr make_quotient(const CheckParams& p, int f);

/// One input to build_tame_rep or build_wild_rep.
struct Instance {
  std::string kind;  // tame | wild
  long c = 0;
  WildDatum w;
  std::string label() const;
  nlohmann::json to_json() const;
};

/// Regular nu with values of order prime to l, one per Frobenius orbit {c, qc}.
std::vector<Instance> tame_instances(const UnitQuotient& uq, long ell);
/// Wild data at levels 2 and 3: every a (outside k_F at odd level) and every
/// central exponent cF realizable in characteristic l.
std::vector<Instance> wild_instances(const UnitQuotient& uq, long ell);
std::vector<Instance> all_instances(const UnitQuotient& uq, long ell);

template <class K>
BuiltRep<K> build_instance(const K& k, const UnitQuotient& uq, const Instance& in) {
  return in.kind == "tame" ? build_tame_rep(k, uq, in.c) : build_wild_rep(k, uq, in.w);
}

/// Meataxe runs over ff (surrogate prime field or F_l-bar); commutants are
/// recomputed over Q(zeta_M) when that field is small enough.
struct Work {
  long M = 1, ell = 0;
  std::unique_ptr<CyclotomicField> exact;
  std::unique_ptr<FF> ff;
  std::string mode;
};
Work make_work(const UnitQuotient& uq, long ell);

struct Evaluated {
  Instance in;
  BuiltRep<FF> built;
  DecompReport dec;
  nlohmann::json to_json() const;
};

/// Build the instance and decompose its restriction to Delta_f.
/// Throws std::logic_error if the exact and finite-field commutants differ.
Evaluated evaluate(const UnitQuotient& uq, const Work& w, const Instance& in, std::uint64_t seed);

/// The one-dimensional module given by chi on the generators of L.
Module character_module(const FF& k, const Character& chi, const SubgroupPtr& L);

/// Index of a one-dimensional component isomorphic to chi, or -1.
int matches_character(const FF& k, const DecompReport& dec, const Character& chi, const SubgroupPtr& L);

}  // namespace quatrep
