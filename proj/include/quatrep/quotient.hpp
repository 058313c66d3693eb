#pragma once

#include <memory>

#include "quatrep/algebra.hpp"
#include "quatrep/fingroup.hpp"

namespace quatrep {

class UnitQuotient;
using UnitQuotientPtr = std::shared_ptr<const UnitQuotient>;

/// Gamma_f = D* / <p_F> (1 + P_D^f), elements u p_D^eps with 0 <= eps < d.
///
/// Keys are eps * Q^f + sum_l digit_l(u) Q^l where digit_l is the level-l residue
/// and Q = |k_D|, so the identity is the smallest key.
class UnitQuotient : public std::enable_shared_from_this<UnitQuotient> {
 public:
  static UnitQuotientPtr create(AlgebraPtr alg, int f, std::size_t limit = 100000);

  const Algebra& algebra() const { return *alg_; }
  AlgebraPtr algebra_ptr() const { return alg_; }
  int level() const { return f_; }
  std::uint32_t q() const { return alg_->q(); }
  unsigned d() const { return alg_->d(); }
  FinGroupPtr gamma() const { return G_; }
  /// Closed form d (q^d - 1) q^(d(f-1)).
  std::uint64_t expected_order() const;

  FinGroup::Key key_of(int eps, const QuatElem& u) const;
  GIdx index_of(int eps, const QuatElem& u) const { return G_->index_of(key_of(eps, u)); }
  int eps(GIdx g) const { return static_cast<int>(G_->key(g) / Qf_); }
  /// Canonical unit part at precision f.
  QuatElem unit(GIdx g) const;
  GaloisField::Elem digit(GIdx g, int level) const;
  GaloisField::Elem residue(GIdx g) const { return digit(g, 0); }
  /// Largest i <= f with the unit part in 1 + P_D^i.
  int unit_level(GIdx g) const;
  /// nrd of the unit part, known mod p_F^ceil(f/d).
  LocalElem nrd_unit(GIdx g) const;

  GIdx pD() const;
  GIdx teich(GaloisField::Elem x) const;
  /// 1 + x^ p_D^level (naive lift of x).
  GIdx one_plus(GaloisField::Elem x, int level) const;

  SubgroupPtr whole() const;
  /// Image of F* U_D (eps = 0).
  SubgroupPtr units() const;
  /// Image of D^1 (norm-one classes).
  SubgroupPtr delta() const;
  /// Image of 1 + P_D^i.
  SubgroupPtr unit_level_subgroup(int i) const;
  SubgroupPtr F_image() const;
  /// Unramified E = F(omega).
  SubgroupPtr E_unram_image() const;
  /// Ramified E = F(p_D) (d = 2).
  SubgroupPtr E_ram_image() const;
  /// Kernel of the residue map on Delta_f.
  SubgroupPtr delta_residue_kernel() const;

  /// Delta_f as a group in its own right (same keys).
  FinGroupPtr delta_group() const;

 private:
  UnitQuotient() = default;
  QuatElem decode_unit(std::uint64_t code) const;
  std::uint64_t encode_unit(const QuatElem& u) const;
  std::int64_t key_index(FinGroup::Key k) const;

  AlgebraPtr alg_;
  int f_ = 1;
  std::uint64_t Q_ = 0, Qf_ = 0;
  FinGroupPtr G_;
  mutable SubgroupPtr whole_, units_, delta_, fimg_, eun_, eram_, rker_;
  mutable FinGroupPtr delta_group_;
};

/// Named subgroups J, J', J'' attached to the stratum of level f (d = 2).
struct PaperSubgroups {
  SubgroupPtr J;
  SubgroupPtr J1;  // J' (f odd)
  SubgroupPtr J2;  // J'' (f odd)
  SubgroupPtr N;   // F* (1 + P_D^floor((f+1)/2)), domain of the minimal character
};
/// Throws DomainError for equal characteristic 2 with f even.
PaperSubgroups paper_subgroups(const UnitQuotient& uq);

struct DerivedCheck {
  bool equal = false;
  std::size_t delta_order = 0;
  std::size_t derived_order = 0;
  std::size_t kernel_order = 0;
  std::size_t index() const { return derived_order ? delta_order / derived_order : 0; }
};
/// Derived subgroup of Delta_f against the kernel of the residue map Delta_f -> k_D^1.
DerivedCheck derived_subgroup_check(FieldKind kind, std::uint32_t q, unsigned d, int f, std::size_t limit = 100000);

}  // namespace quatrep
