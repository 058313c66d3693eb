#pragma once

#include <cstdint>
#include <vector>

#include "quatrep/coeff_field.hpp"
#include "quatrep/linalg.hpp"

namespace quatrep {

using FF = FiniteCoeffField;
using FMat = Mat<FF>;
using FVec = std::vector<FF::Elem>;

/// A module for a group algebra: the images of a generating set acting on column vectors.
struct Module {
  int dim = 0;
  std::vector<FMat> gens;
};

/// Semi-echelon basis of the smallest subspace containing vs and stable under gens.
std::vector<FVec> spin(const FF& k, const std::vector<FMat>& gens, const std::vector<FVec>& vs, int n);

/// Outcome of one Meataxe search.
///
/// Irreducible verdicts carry the certifying data: an algebra element
/// A = sum coeffs[i] * (product of gens along words[i]), an eigenvalue of A with
/// one-dimensional eigenspace spanned by v, and w spanning the transposed
/// eigenspace. Both v and w spin to the whole space.
struct SplitResult {
  enum class Status { Irreducible, Reducible, Uncertified } status = Status::Uncertified;
  std::vector<FVec> sub;  // proper nonzero submodule (RREF rows) when reducible
  std::vector<std::vector<int>> words;
  FVec coeffs;
  FF::Elem eigenvalue = 0;
  FVec v, w;
  int attempts = 0;
  std::uint64_t seed = 0;
};

SplitResult meataxe_split(const FF& k, const Module& m, std::uint64_t seed, int budget = 400);
/// Re-check an irreducibility certificate without searching.
bool verify_certificate(const FF& k, const Module& m, const SplitResult& r);

/// Submodule and quotient actions for an invariant subspace given by RREF rows.
std::pair<Module, Module> split_module(const FF& k, const Module& m, std::vector<FVec> sub);

/// Composition factors, bottom to top. Throws BudgetError if a factor cannot be certified.
std::vector<Module> composition_factors(const FF& k, const Module& m, std::uint64_t seed);

int hom_dim_modules(const FF& k, const Module& a, const Module& b);

struct FactorClass {
  Module rep;
  int multiplicity = 0;
};
/// Group irreducible modules into isomorphism classes, in order of first appearance.
std::vector<FactorClass> iso_classes(const FF& k, const std::vector<Module>& factors);

/// Characteristic polynomial, constant term first, monic.
FVec charpoly(const FF& k, const FMat& a);
/// Roots in the field, ascending by encoding.
std::vector<FF::Elem> poly_roots(const FF& k, const FVec& p);

}  // namespace quatrep
