#include "quatrep/fingroup.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>

#include "quatrep/errors.hpp"

namespace quatrep {

namespace {
constexpr GIdx kUnknown = std::numeric_limits<GIdx>::max();

long mod(long a, long m) {
  a %= m;
  return a < 0 ? a + m : a;
}

long inv_mod(long a, long m) {
  long g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1 != 0) {
    long qq = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - qq * a1);
    std::tie(x, x1) = std::make_pair(x1, x - qq * x1);
  }
  if (g != 1) throw DomainError("inv_mod: not invertible");
  return mod(x, m);
}
}  // namespace

// ---------------------------------------------------------------- FinGroup

FinGroup::FinGroup(std::string name, std::vector<Key> keys, Key identity, KeyMul mul, KeyInv inv, KeyIndex index,
                   std::size_t memo_limit)
    : name_(std::move(name)), keys_(std::move(keys)), kmul_(std::move(mul)), kindex_(std::move(index)),
      memo_limit_(memo_limit) {
  if (!std::is_sorted(keys_.begin(), keys_.end())) throw DomainError("FinGroup: keys must be sorted");
  if (keys_.size() >= kUnknown) throw BudgetError("FinGroup: too many elements");
  id_ = index_of(identity);
  inv_.resize(keys_.size());
  for (std::size_t i = 0; i < keys_.size(); ++i) inv_[i] = index_of(inv(keys_[i]));
  if (keys_.size() <= memo_limit_) table_.assign(keys_.size() * keys_.size(), kUnknown);
  order_.assign(keys_.size(), 0);
}

std::int64_t FinGroup::lookup(Key k) const {
  if (kindex_) return kindex_(k);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
  if (it == keys_.end() || *it != k) return -1;
  return it - keys_.begin();
}

GIdx FinGroup::index_of(Key k) const {
  auto i = lookup(k);
  if (i < 0) throw DomainError(name_ + ": key is not a group element");
  return static_cast<GIdx>(i);
}

GIdx FinGroup::mul(GIdx a, GIdx b) const {
  if (!table_.empty()) {
    GIdx& slot = table_[static_cast<std::size_t>(a) * keys_.size() + b];
    if (slot == kUnknown) slot = index_of(kmul_(keys_[a], keys_[b]));
    return slot;
  }
  return index_of(kmul_(keys_[a], keys_[b]));
}

GIdx FinGroup::pow(GIdx a, long long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  GIdx r = id_;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t FinGroup::order(GIdx a) const {
  if (order_[a] != 0) return order_[a];
  std::uint64_t n = 1;
  GIdx x = a;
  while (x != id_) {
    x = mul(x, a);
    ++n;
  }
  order_[a] = n;
  return n;
}

std::uint64_t FinGroup::exponent() const {
  if (exponent_ == 0) {
    std::uint64_t e = 1;
    for (GIdx g = 0; g < size(); ++g) e = std::lcm(e, order(g));
    exponent_ = e;
  }
  return exponent_;
}

// ---------------------------------------------------------------- Subgroup

namespace {

std::vector<GIdx> closure(const FinGroup& G, const std::vector<GIdx>& gens) {
  std::vector<char> seen(G.size(), 0);
  std::vector<GIdx> out{G.identity()};
  seen[G.identity()] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (GIdx s : gens) {
      GIdx y = G.mul(out[i], s);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

// Greedy generating set: scan elements in ascending order, keep those outside the current closure.
std::vector<GIdx> greedy_gens(const FinGroup& G, const std::vector<GIdx>& elems) {
  std::vector<GIdx> gens;
  std::vector<char> in(G.size(), 0);
  in[G.identity()] = 1;
  std::size_t have = 1;
  for (GIdx x : elems) {
    if (have == elems.size()) break;
    if (in[x]) continue;
    gens.push_back(x);
    auto c = closure(G, gens);
    for (GIdx y : c) in[y] = 1;
    have = c.size();
  }
  return gens;
}

}  // namespace

void Subgroup::build_index() {
  pos_.assign(g_->size(), -1);
  for (std::size_t i = 0; i < elems_.size(); ++i) pos_[elems_[i]] = static_cast<std::int32_t>(i);
}

void Subgroup::build_tree() {
  const std::size_t n = elems_.size();
  tree_parent_.assign(n, -1);
  tree_gen_.assign(n, -1);
  bfs_.clear();
  std::vector<char> seen(n, 0);
  auto root = pos_[g_->identity()];
  seen[root] = 1;
  bfs_.push_back(root);
  for (std::size_t i = 0; i < bfs_.size(); ++i) {
    GIdx x = elems_[bfs_[i]];
    for (std::size_t s = 0; s < gens_.size(); ++s) {
      auto p = pos_[g_->mul(x, gens_[s])];
      if (p < 0) throw DomainError("Subgroup: generator leaves the subgroup");
      if (!seen[p]) {
        seen[p] = 1;
        tree_parent_[p] = bfs_[i];
        tree_gen_[p] = static_cast<std::int32_t>(s);
        bfs_.push_back(p);
      }
    }
  }
  if (bfs_.size() != n) throw DomainError("Subgroup: generators do not generate");
}

SubgroupPtr Subgroup::generate(FinGroupPtr g, std::vector<GIdx> gens, std::string tag) {
  std::shared_ptr<Subgroup> s(new Subgroup());
  s->g_ = std::move(g);
  s->elems_ = closure(*s->g_, gens);
  gens.erase(std::remove(gens.begin(), gens.end(), s->g_->identity()), gens.end());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  s->gens_ = std::move(gens);
  s->tag_ = std::move(tag);
  s->build_index();
  s->build_tree();
  return s;
}

SubgroupPtr Subgroup::from_elements(FinGroupPtr g, std::vector<GIdx> elems, std::string tag) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  std::shared_ptr<Subgroup> s(new Subgroup());
  s->g_ = std::move(g);
  s->gens_ = greedy_gens(*s->g_, elems);
  s->elems_ = std::move(elems);
  s->tag_ = std::move(tag);
  s->build_index();
  if (closure(*s->g_, s->gens_) != s->elems_) throw DomainError("Subgroup '" + s->tag_ + "': not closed");
  s->build_tree();
  return s;
}

SubgroupPtr Subgroup::from_predicate(FinGroupPtr g, const std::function<bool(GIdx)>& pred, std::string tag) {
  std::vector<GIdx> elems;
  for (GIdx x = 0; x < g->size(); ++x)
    if (pred(x)) elems.push_back(x);
  return from_elements(std::move(g), std::move(elems), std::move(tag));
}

SubgroupPtr Subgroup::whole(FinGroupPtr g, std::string tag) {
  return from_predicate(std::move(g), [](GIdx) { return true; }, std::move(tag));
}

bool Subgroup::is_subgroup_of(const Subgroup& o) const {
  return std::all_of(elems_.begin(), elems_.end(), [&](GIdx x) { return o.contains(x); });
}

SubgroupPtr Subgroup::with_tag(std::string tag) const {
  auto s = std::make_shared<Subgroup>(*this);
  s->tag_ = std::move(tag);
  return s;
}

// ---------------------------------------------------------------- services

SubgroupPtr intersect(const SubgroupPtr& a, const SubgroupPtr& b, std::string tag) {
  std::vector<GIdx> e;
  for (GIdx x : a->elements())
    if (b->contains(x)) e.push_back(x);
  return Subgroup::from_elements(a->group_ptr(), std::move(e), std::move(tag));
}

SubgroupPtr conjugate(const SubgroupPtr& h, GIdx x, std::string tag) {
  const FinGroup& G = h->group();
  std::vector<GIdx> gens;
  for (GIdx s : h->gens()) gens.push_back(G.conj(x, s));
  return Subgroup::generate(h->group_ptr(), std::move(gens), std::move(tag));
}

SubgroupPtr join(const SubgroupPtr& a, const SubgroupPtr& b, std::string tag) {
  std::vector<GIdx> gens = a->gens();
  gens.insert(gens.end(), b->gens().begin(), b->gens().end());
  return Subgroup::generate(a->group_ptr(), std::move(gens), std::move(tag));
}

bool is_normal(const SubgroupPtr& n, const SubgroupPtr& k) {
  const FinGroup& G = n->group();
  for (GIdx x : k->gens())
    for (GIdx s : n->gens())
      if (!n->contains(G.conj(x, s))) return false;
  return true;
}

SubgroupPtr center(const SubgroupPtr& k) {
  const FinGroup& G = k->group();
  std::vector<GIdx> e;
  for (GIdx x : k->elements()) {
    bool central = true;
    for (GIdx s : k->gens())
      if (G.mul(x, s) != G.mul(s, x)) {
        central = false;
        break;
      }
    if (central) e.push_back(x);
  }
  return Subgroup::from_elements(k->group_ptr(), std::move(e), "center(" + k->tag() + ")");
}

bool is_abelian(const SubgroupPtr& k) {
  const FinGroup& G = k->group();
  const auto& gs = k->gens();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      if (G.mul(gs[i], gs[j]) != G.mul(gs[j], gs[i])) return false;
  return true;
}

SubgroupPtr derived_subgroup(const SubgroupPtr& k) {
  const FinGroup& G = k->group();
  std::vector<GIdx> gens;
  for (GIdx a : k->gens())
    for (GIdx b : k->gens())
      if (a < b) gens.push_back(G.commutator(a, b));
  auto d = Subgroup::generate(k->group_ptr(), gens, "derived(" + k->tag() + ")");
  // normal closure in k
  for (bool grew = true; grew;) {
    grew = false;
    for (GIdx x : k->gens()) {
      for (GIdx s : d->gens()) {
        GIdx c = G.conj(x, s);
        if (!d->contains(c)) {
          gens.push_back(c);
          grew = true;
        }
      }
    }
    if (grew) d = Subgroup::generate(k->group_ptr(), gens, d->tag());
  }
  return d;
}

std::uint64_t subgroup_exponent(const SubgroupPtr& k) {
  std::uint64_t e = 1;
  for (GIdx x : k->elements()) e = std::lcm(e, k->group().order(x));
  return e;
}

CosetsPtr left_cosets(const SubgroupPtr& K, const SubgroupPtr& H) {
  const FinGroup& G = K->group();
  auto c = std::make_shared<Cosets>();
  c->K = K;
  c->H = H;
  c->label.assign(G.size(), -1);
  for (GIdx x : K->elements()) {
    if (c->label[x] >= 0) continue;
    auto id = static_cast<std::int32_t>(c->reps.size());
    c->reps.push_back(x);
    for (GIdx h : H->elements()) c->label[G.mul(x, h)] = id;
  }
  return c;
}

std::vector<DoubleCoset> double_cosets(const SubgroupPtr& K, const SubgroupPtr& L, const SubgroupPtr& H) {
  const FinGroup& G = K->group();
  auto cs = left_cosets(K, H);
  std::vector<char> seen(cs->index(), 0);
  std::vector<DoubleCoset> out;
  for (std::size_t c = 0; c < cs->index(); ++c) {
    if (seen[c]) continue;
    std::vector<std::size_t> orbit{c};
    seen[c] = 1;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (GIdx l : L->gens()) {
        auto d = static_cast<std::size_t>(cs->label[G.mul(l, cs->reps[orbit[i]])]);
        if (!seen[d]) {
          seen[d] = 1;
          orbit.push_back(d);
        }
      }
    out.push_back({cs->reps[c], orbit.size() * H->size()});
  }
  return out;
}

std::vector<ConjugacyClass> conjugacy_classes(const SubgroupPtr& k) {
  const FinGroup& G = k->group();
  std::vector<char> seen(G.size(), 0);
  std::vector<ConjugacyClass> out;
  for (GIdx x : k->elements()) {
    if (seen[x]) continue;
    ConjugacyClass cl{x, {x}};
    seen[x] = 1;
    for (std::size_t i = 0; i < cl.elements.size(); ++i)
      for (GIdx s : k->gens()) {
        GIdx y = G.conj(s, cl.elements[i]);
        if (!seen[y]) {
          seen[y] = 1;
          cl.elements.push_back(y);
        }
      }
    std::sort(cl.elements.begin(), cl.elements.end());
    out.push_back(std::move(cl));
  }
  std::stable_sort(out.begin(), out.end(), [](const ConjugacyClass& a, const ConjugacyClass& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
    return a.rep < b.rep;
  });
  return out;
}

std::vector<std::uint64_t> abelian_invariants(const SubgroupPtr& K, const SubgroupPtr& N) {
  const FinGroup& G = K->group();
  for (GIdx a : K->gens())
    for (GIdx b : K->gens())
      if (!N->contains(G.commutator(a, b))) throw DomainError("abelian_invariants: quotient is not abelian");
  auto cs = left_cosets(K, N);
  std::vector<std::uint64_t> ord;
  for (GIdx r : cs->reps) {
    std::uint64_t k = 1;
    for (GIdx x = r; !N->contains(x); x = G.mul(x, r)) ++k;
    ord.push_back(k);
  }
  std::uint64_t n = cs->index();
  std::map<std::uint64_t, std::vector<int>> exps;  // prime -> exponents, descending
  std::uint64_t m = n;
  for (std::uint64_t p = 2; m > 1; ++p) {
    if (m % p) continue;
    int a = 0;
    while (m % p == 0) {
      m /= p;
      ++a;
    }
    // s_j = log_p #{x : x^(p^j) = 1}
    std::vector<int> s(a + 2, 0);
    for (int j = 1; j <= a + 1; ++j) {
      std::uint64_t pj = 1;
      for (int t = 0; t < j; ++t) pj *= p;
      std::uint64_t cnt = 0;
      for (auto o : ord)
        if (pj % o == 0) ++cnt;
      int l = 0;
      while (cnt > 1) {
        cnt /= p;
        ++l;
      }
      s[j] = l;
    }
    // number of cyclic factors with exponent >= j is s_j - s_{j-1}
    std::vector<int> e;
    for (int j = a; j >= 1; --j) {
      int ge = s[j] - s[j - 1];
      int ge_next = j < a ? s[j + 1] - s[j] : 0;
      for (int t = 0; t < ge - ge_next; ++t) e.push_back(j);
    }
    exps[p] = e;
  }
  std::size_t rank = 0;
  for (auto& [p, e] : exps) rank = std::max(rank, e.size());
  std::vector<std::uint64_t> out(rank, 1);
  for (auto& [p, e] : exps)
    for (std::size_t t = 0; t < e.size(); ++t)
      for (int u = 0; u < e[t]; ++u) out[rank - 1 - t] *= p;
  return out;
}

std::vector<std::uint64_t> abelianization(const SubgroupPtr& K) { return abelian_invariants(K, derived_subgroup(K)); }

// ---------------------------------------------------------------- characters

std::int32_t Character::at(GIdx g) const {
  auto p = domain->pos(g);
  if (p < 0) throw DomainError("Character: element outside the domain");
  return exps[p];
}

Character character_from_gens(const SubgroupPtr& dom, long M, const std::vector<std::int32_t>& gen_exps) {
  if (gen_exps.size() != dom->gens().size()) throw DomainError("character_from_gens: wrong number of values");
  Character chi{dom, M, std::vector<std::int32_t>(dom->size(), 0)};
  for (auto p : dom->bfs_order()) {
    if (dom->tree_parent(p) < 0) continue;
    chi.exps[p] = static_cast<std::int32_t>(mod(chi.exps[dom->tree_parent(p)] + gen_exps[dom->tree_gen(p)], M));
  }
  if (!is_homomorphism(chi)) throw DomainError("character_from_gens: values do not define a character");
  return chi;
}

bool is_homomorphism(const Character& chi) {
  const auto& H = *chi.domain;
  const FinGroup& G = H.group();
  if (chi.exps[H.pos(G.identity())] != 0) return false;
  for (std::size_t i = 0; i < H.size(); ++i)
    for (GIdx s : H.gens())
      if (mod(chi.exps[i] + chi.at(s), chi.M) != chi.at(G.mul(H.elements()[i], s))) return false;
  return true;
}

Character restrict_character(const Character& chi, const SubgroupPtr& h) {
  Character r{h, chi.M, {}};
  r.exps.reserve(h->size());
  for (GIdx x : h->elements()) r.exps.push_back(chi.at(x));
  return r;
}

Character conjugate_character(const Character& chi, GIdx x) {
  const FinGroup& G = chi.domain->group();
  auto dom = conjugate(chi.domain, x, "conj(" + chi.domain->tag() + ")");
  Character r{dom, chi.M, {}};
  GIdx xi = G.inv(x);
  for (GIdx g : dom->elements()) r.exps.push_back(chi.at(G.conj(xi, g)));
  return r;
}

Character multiply_characters(const Character& a, const Character& b) {
  if (a.M != b.M || !a.domain->same_elements(*b.domain)) throw DomainError("multiply_characters: mismatch");
  Character r = a;
  for (std::size_t i = 0; i < r.exps.size(); ++i) r.exps[i] = static_cast<std::int32_t>(mod(a.exps[i] + b.exps[i], a.M));
  return r;
}

Character trivial_character(const SubgroupPtr& dom, long M) {
  return Character{dom, M, std::vector<std::int32_t>(dom->size(), 0)};
}

std::vector<Character> extend_character_all(const Character& base, const SubgroupPtr& K, std::size_t limit) {
  const FinGroup& G = K->group();
  const long M = base.M;
  std::vector<Character> cur{base};
  SubgroupPtr S = base.domain;
  for (GIdx g : K->elements()) {
    if (S->contains(g)) continue;
    long k = 1;
    GIdx gk = g;
    while (!S->contains(gk)) {
      gk = G.mul(gk, g);
      ++k;
    }
    std::vector<GIdx> gens = S->gens();
    gens.push_back(g);
    auto S2 = Subgroup::generate(K->group_ptr(), gens, K->tag());
    // S2 = union of S g^j, j < k
    std::vector<GIdx> gpow(k);
    gpow[0] = G.identity();
    for (long j = 1; j < k; ++j) gpow[j] = G.mul(gpow[j - 1], g);
    std::vector<Character> next;
    const long gg = std::gcd(k, M);
    for (const auto& chi : cur) {
      long e = chi.at(gk);
      if (e % gg != 0) continue;  // no M-th root of unity extends chi here
      long x0 = mod((e / gg) * inv_mod(k / gg, M / gg), M / gg);
      for (long t = 0; t < gg; ++t) {
        long x = x0 + t * (M / gg);
        Character ext{S2, M, std::vector<std::int32_t>(S2->size(), 0)};
        for (std::size_t i = 0; i < S->size(); ++i)
          for (long j = 0; j < k; ++j)
            ext.exps[S2->pos(G.mul(S->elements()[i], gpow[j]))] =
                static_cast<std::int32_t>(mod(chi.exps[i] + j * x, M));
        next.push_back(std::move(ext));
        if (limit && next.size() >= limit && S2->size() == K->size()) break;
      }
      if (limit && next.size() >= limit && S2->size() == K->size()) break;
    }
    cur = std::move(next);
    S = S2;
  }
  return cur;
}

std::vector<Character> abelian_characters(const SubgroupPtr& K, const SubgroupPtr& N, long M) {
  return extend_character_all(trivial_character(N, M), K);
}

}  // namespace quatrep
