#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "quatrep/fingroup.hpp"
#include "quatrep/meataxe.hpp"

namespace quatrep {

struct BrauerClass {
  GIdx rep = 0;
  std::size_t size = 0;
  long order = 1;
};

/// Irreducible characters of a group, either ordinary (computed over a
/// surrogate prime field P = 1 mod M with P prime to |H|) or Brauer
/// characters in characteristic l on the l-regular classes.
///
/// A character value at g is stored as the sorted multiset of exponents e with
/// eigenvalue zeta_M^e. For a representation this multiset at every element
/// determines the trace function and conversely, so two characters agree
/// exactly when their multisets agree class by class.
struct BrauerTable {
  SubgroupPtr group;
  long M = 1;
  long characteristic = 0;
  std::uint64_t seed = 0;
  std::vector<BrauerClass> classes;
  std::vector<int> dims;
  std::vector<std::vector<std::vector<long>>> eigen;  // [character][class]
  std::vector<Module> modules;

  std::size_t size() const { return dims.size(); }
};

/// Images of every element of H (indexed by H->pos) under a module given on H->gens().
std::vector<FMat> module_images(const FF& k, const Module& m, const Subgroup& H);

/// Eigenvalue exponents of a semisimple matrix a whose order divides o (o | M, o prime to char).
std::vector<long> eigen_exponents(const FF& k, const std::vector<FF::Elem>& roots, const FMat& a, long o, long M);

/// Irreducible characters from the regular representation over k; ell = 0
/// when k stands in for characteristic 0 (then k must not divide |H|).
BrauerTable irreducible_table(const FF& k, const SubgroupPtr& H, long M, long ell, std::uint64_t seed);

/// Ordinary irreducible characters from the regular representation over the surrogate field.
/// Checks that the squared dimensions add up to |H|.
BrauerTable ordinary_table(const SubgroupPtr& H, long M, std::uint64_t seed);

/// Irreducible Brauer characters in characteristic l, from the regular representation.
BrauerTable modular_table(const SubgroupPtr& H, long M, long ell, std::uint64_t seed);

/// Character of an arbitrary module on the classes of a table.
std::vector<std::vector<long>> module_character(const FF& k, const Module& m, const BrauerTable& t);

struct BrauerMatch {
  std::vector<int> reduction_of;  // ordinary i -> Brauer j with chi_i = phi_j on l-regular classes, or -1
  std::vector<bool> reached;      // Brauer j is some reduction
  bool all_irreducible() const;
  bool all_reached() const;
};

BrauerMatch match_reductions(const BrauerTable& ordinary, const BrauerTable& modular);

nlohmann::json to_json(const BrauerTable& t);

}  // namespace quatrep
