#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace quatrep {

using GIdx = std::uint32_t;

/// Finite group on elements 0..n-1, indexed by sorted normal-form keys.
///
/// Element 0 need not be the identity; use identity().
class FinGroup {
 public:
  using Key = std::uint64_t;
  using KeyMul = std::function<Key(Key, Key)>;
  using KeyInv = std::function<Key(Key)>;
  using KeyIndex = std::function<std::int64_t(Key)>;  // -1 when absent

  /// keys must be sorted and contain the identity key.
  FinGroup(std::string name, std::vector<Key> keys, Key identity, KeyMul mul, KeyInv inv,
           KeyIndex index = nullptr, std::size_t memo_limit = 1500);

  const std::string& name() const { return name_; }
  std::size_t size() const { return keys_.size(); }
  GIdx identity() const { return id_; }
  Key key(GIdx g) const { return keys_[g]; }
  /// Index of a key; throws if the key is not an element.
  GIdx index_of(Key k) const;
  bool has_key(Key k) const { return lookup(k) >= 0; }

  GIdx mul(GIdx a, GIdx b) const;
  GIdx inv(GIdx a) const { return inv_[a]; }
  GIdx pow(GIdx a, long long e) const;
  GIdx conj(GIdx x, GIdx g) const { return mul(mul(x, g), inv(x)); }  // x g x^-1
  GIdx commutator(GIdx a, GIdx b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
  std::uint64_t order(GIdx a) const;
  std::uint64_t exponent() const;

 private:
  std::int64_t lookup(Key k) const;

  std::string name_;
  std::vector<Key> keys_;
  GIdx id_ = 0;
  KeyMul kmul_;
  KeyIndex kindex_;
  std::vector<GIdx> inv_;
  std::size_t memo_limit_;
  mutable std::vector<GIdx> table_;  // lazily filled, UINT32_MAX = unknown
  mutable std::vector<std::uint64_t> order_;
  mutable std::uint64_t exponent_ = 0;
};

using FinGroupPtr = std::shared_ptr<const FinGroup>;

/// Subgroup of a FinGroup, with a generating set and a spanning tree of words.
class Subgroup {
 public:
  /// Closure of gens.
  static std::shared_ptr<const Subgroup> generate(FinGroupPtr g, std::vector<GIdx> gens, std::string tag);
  /// Elements satisfying pred; verified to be closed, generating set chosen greedily.
  static std::shared_ptr<const Subgroup> from_predicate(FinGroupPtr g, const std::function<bool(GIdx)>& pred,
                                                        std::string tag);
  static std::shared_ptr<const Subgroup> whole(FinGroupPtr g, std::string tag = "whole");
  /// From an explicit element list that is known to be a subgroup.
  static std::shared_ptr<const Subgroup> from_elements(FinGroupPtr g, std::vector<GIdx> elems, std::string tag);

  const FinGroup& group() const { return *g_; }
  FinGroupPtr group_ptr() const { return g_; }
  std::size_t size() const { return elems_.size(); }
  const std::vector<GIdx>& elements() const { return elems_; }
  const std::vector<GIdx>& gens() const { return gens_; }
  const std::string& tag() const { return tag_; }
  bool contains(GIdx g) const { return pos_[g] >= 0; }
  /// Position of g in elements(), or -1.
  std::int32_t pos(GIdx g) const { return pos_[g]; }
  /// Spanning-tree data: element at position i equals elements()[parent(i)] * gens()[gen_of(i)].
  std::int32_t tree_parent(std::size_t i) const { return tree_parent_[i]; }
  std::int32_t tree_gen(std::size_t i) const { return tree_gen_[i]; }
  /// Positions in BFS order (identity first).
  const std::vector<std::int32_t>& bfs_order() const { return bfs_; }
  bool same_elements(const Subgroup& o) const { return elems_ == o.elems_; }
  bool is_subgroup_of(const Subgroup& o) const;
  std::shared_ptr<const Subgroup> with_tag(std::string tag) const;

 private:
  Subgroup() = default;
  void build_index();
  void build_tree();

  FinGroupPtr g_;
  std::vector<GIdx> elems_;
  std::vector<std::int32_t> pos_;
  std::vector<GIdx> gens_;
  std::string tag_;
  std::vector<std::int32_t> tree_parent_, tree_gen_, bfs_;
};

using SubgroupPtr = std::shared_ptr<const Subgroup>;

SubgroupPtr intersect(const SubgroupPtr& a, const SubgroupPtr& b, std::string tag = "intersection");
/// x H x^-1.
SubgroupPtr conjugate(const SubgroupPtr& h, GIdx x, std::string tag = "conjugate");
/// Subgroup generated by the elements of a and b.
SubgroupPtr join(const SubgroupPtr& a, const SubgroupPtr& b, std::string tag = "join");
bool is_normal(const SubgroupPtr& n, const SubgroupPtr& k);
SubgroupPtr center(const SubgroupPtr& k);
SubgroupPtr derived_subgroup(const SubgroupPtr& k);
bool is_abelian(const SubgroupPtr& k);
std::uint64_t subgroup_exponent(const SubgroupPtr& k);

/// Left cosets g H of H inside K.
struct Cosets {
  SubgroupPtr K, H;
  std::vector<GIdx> reps;            // minimal element of each coset, ascending
  std::vector<std::int32_t> label;   // per element of the ambient group; -1 outside K
  std::size_t index() const { return reps.size(); }
};
using CosetsPtr = std::shared_ptr<const Cosets>;
CosetsPtr left_cosets(const SubgroupPtr& K, const SubgroupPtr& H);

/// Double cosets L x H inside K; reps are the minimal elements.
struct DoubleCoset {
  GIdx rep;
  std::size_t size;
};
std::vector<DoubleCoset> double_cosets(const SubgroupPtr& K, const SubgroupPtr& L, const SubgroupPtr& H);

struct ConjugacyClass {
  GIdx rep;  // minimal element
  std::vector<GIdx> elements;
};
/// Classes sorted by size, then by minimal element.
std::vector<ConjugacyClass> conjugacy_classes(const SubgroupPtr& k);

/// Invariant factors d1 | d2 | ... of K/N for an abelian quotient (N normal in K).
std::vector<std::uint64_t> abelian_invariants(const SubgroupPtr& K, const SubgroupPtr& N);
/// Invariant factors of K / [K, K].
std::vector<std::uint64_t> abelianization(const SubgroupPtr& K);

/// A group character with values zeta_M^exps.
struct Character {
  SubgroupPtr domain;
  long M = 1;
  std::vector<std::int32_t> exps;  // aligned with domain->elements()

  std::int32_t at(GIdx g) const;
  bool operator==(const Character& o) const { return M == o.M && exps == o.exps && domain->same_elements(*o.domain); }
};

/// Character from values on the generators of dom; throws if not well defined.
Character character_from_gens(const SubgroupPtr& dom, long M, const std::vector<std::int32_t>& gen_exps);
/// Check that exps defines a homomorphism (full check on generators times elements).
bool is_homomorphism(const Character& chi);
Character restrict_character(const Character& chi, const SubgroupPtr& h);
/// g -> chi(x^-1 g x) on x H x^-1.
Character conjugate_character(const Character& chi, GIdx x);
Character multiply_characters(const Character& a, const Character& b);
Character trivial_character(const SubgroupPtr& dom, long M);

/// All characters of K trivial on N extending base (a character of S with N <= S <= K,
/// K/N abelian) whose values are M-th roots of unity, in deterministic order.
std::vector<Character> extend_character_all(const Character& base, const SubgroupPtr& K, std::size_t limit = 0);
/// All characters of K / N with values in mu_M.
std::vector<Character> abelian_characters(const SubgroupPtr& K, const SubgroupPtr& N, long M);

}  // namespace quatrep
