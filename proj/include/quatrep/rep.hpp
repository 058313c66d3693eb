#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "quatrep/coeff_field.hpp"
#include "quatrep/cyclotomic.hpp"
#include "quatrep/fingroup.hpp"
#include "quatrep/linalg.hpp"

namespace quatrep {

/// Images of zeta_M^e, e in [0, M), in the field.
///
/// Cyclotomic fields need M | root_order. Finite fields of characteristic l send
/// zeta_M to the same theta as Reduction, so character values reduce consistently.
std::vector<Cyc> root_table(const CyclotomicField& k, long M);
std::vector<FiniteCoeffField::Elem> root_table(const FiniteCoeffField& k, long M);

/// Representation of a subgroup by matrices over K, evaluated on demand.
template <class K>
struct Rep {
  using E = typename K::Elem;
  const K* field = nullptr;
  SubgroupPtr domain;
  int dim = 0;
  std::function<Mat<K>(GIdx)> eval;
  std::string provenance;

  Mat<K> at(GIdx g) const {
    if (!domain->contains(g)) throw DomainError("Rep: element outside the domain of " + provenance);
    return eval(g);
  }
  std::vector<Mat<K>> gen_images() const {
    std::vector<Mat<K>> r;
    for (GIdx s : domain->gens()) r.push_back(eval(s));
    return r;
  }
};

template <class K>
Rep<K> rep_from_character(const K& k, const Character& chi, std::string provenance = "character") {
  auto roots = std::make_shared<std::vector<typename K::Elem>>(root_table(k, chi.M));
  Rep<K> r;
  r.field = &k;
  r.domain = chi.domain;
  r.dim = 1;
  r.provenance = std::move(provenance);
  auto c = std::make_shared<Character>(chi);
  const K* kp = &k;
  r.eval = [kp, c, roots](GIdx g) {
    Mat<K> m = mat_zero(*kp, 1, 1);
    m.a[0] = (*roots)[c->at(g)];
    return m;
  };
  return r;
}

/// Images of every element precomputed along the domain's spanning tree.
template <class K>
Rep<K> tabulate(const Rep<K>& r) {
  const auto& H = *r.domain;
  const K& k = *r.field;
  auto table = std::make_shared<std::vector<Mat<K>>>(H.size());
  auto gens = r.gen_images();
  for (auto p : H.bfs_order()) {
    if (H.tree_parent(p) < 0)
      (*table)[p] = mat_identity(k, r.dim);
    else
      (*table)[p] = mat_mul(k, (*table)[H.tree_parent(p)], gens[H.tree_gen(p)]);
  }
  Rep<K> t = r;
  auto dom = r.domain;
  t.eval = [table, dom](GIdx g) { return (*table)[dom->pos(g)]; };
  return t;
}

/// Compare r with its tabulated version on gens x elements (full homomorphism check).
template <class K>
bool is_representation(const Rep<K>& r) {
  const K& k = *r.field;
  const auto& H = *r.domain;
  const FinGroup& G = H.group();
  if (!mat_equal(k, r.at(G.identity()), mat_identity(k, r.dim))) return false;
  for (GIdx h : H.elements()) {
    auto mh = r.eval(h);
    for (GIdx s : H.gens())
      if (!mat_equal(k, mat_mul(k, mh, r.eval(s)), r.eval(G.mul(h, s)))) return false;
  }
  return true;
}

template <class K>
Rep<K> restrict_rep(const Rep<K>& r, const SubgroupPtr& L) {
  if (!L->is_subgroup_of(*r.domain)) throw DomainError("restrict_rep: not a subgroup of the domain");
  Rep<K> s = r;
  s.domain = L;
  s.provenance = "res(" + r.provenance + ", " + L->tag() + ")";
  return s;
}

/// g -> r(x^-1 g x) on x H x^-1.
template <class K>
Rep<K> conjugate_rep(const Rep<K>& r, GIdx x) {
  Rep<K> s = r;
  auto dom = r.domain;
  const FinGroup* G = &dom->group();
  s.domain = conjugate(dom, x, "conj(" + dom->tag() + ")");
  GIdx xi = G->inv(x);
  auto ev = r.eval;
  s.eval = [ev, G, x, xi](GIdx g) { return ev(G->mul(G->mul(xi, g), x)); };
  s.provenance = "conj(" + r.provenance + ")";
  return s;
}

template <class K>
Rep<K> twist_rep(const Rep<K>& r, const Character& chi) {
  const K& k = *r.field;
  auto roots = std::make_shared<std::vector<typename K::Elem>>(root_table(k, chi.M));
  auto c = std::make_shared<Character>(restrict_character(chi, r.domain));
  Rep<K> s = r;
  auto ev = r.eval;
  const K* kp = &k;
  s.eval = [ev, c, roots, kp](GIdx g) { return mat_scale(*kp, (*roots)[c->at(g)], ev(g)); };
  s.provenance = "twist(" + r.provenance + ")";
  return s;
}

template <class K>
Rep<K> direct_sum(const Rep<K>& a, const Rep<K>& b) {
  if (!a.domain->same_elements(*b.domain)) throw DomainError("direct_sum: different domains");
  Rep<K> s = a;
  s.dim = a.dim + b.dim;
  const K* kp = a.field;
  auto ea = a.eval, eb = b.eval;
  const int na = a.dim, n = s.dim;
  s.eval = [kp, ea, eb, na, n](GIdx g) {
    auto m = mat_zero(*kp, n, n);
    auto x = ea(g), y = eb(g);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < na; ++j) m(i, j) = x(i, j);
    for (int i = 0; i < n - na; ++i)
      for (int j = 0; j < n - na; ++j) m(na + i, na + j) = y(i, j);
    return m;
  };
  s.provenance = a.provenance + " + " + b.provenance;
  return s;
}

/// Left regular representation: g e_h = e_(gh).
template <class K>
Rep<K> regular_rep(const K& k, const SubgroupPtr& H) {
  Rep<K> r;
  r.field = &k;
  r.domain = H;
  r.dim = static_cast<int>(H->size());
  r.provenance = "regular(" + H->tag() + ")";
  const K* kp = &k;
  r.eval = [kp, H](GIdx g) {
    const int n = static_cast<int>(H->size());
    auto m = mat_zero(*kp, n, n);
    for (int j = 0; j < n; ++j) m(H->pos(H->group().mul(g, H->elements()[j])), j) = kp->one();
    return m;
  };
  return r;
}

/// ind_H^G lam, kept in induced form.
template <class K>
struct Induced {
  SubgroupPtr G, H;
  Rep<K> lam;
  CosetsPtr cosets;
  std::string provenance;

  int dim() const { return static_cast<int>(cosets->index()) * lam.dim; }
};

template <class K>
Induced<K> make_induced(const SubgroupPtr& G, const Rep<K>& lam, std::string provenance = "induced") {
  if (!lam.domain->is_subgroup_of(*G)) throw DomainError("make_induced: not a subgroup");
  return Induced<K>{G, lam.domain, lam, left_cosets(G, lam.domain), std::move(provenance)};
}

/// Block-monomial matrices on the minimal-element transversal.
template <class K>
Rep<K> induced_rep(const Induced<K>& P) {
  Rep<K> r;
  r.field = P.lam.field;
  r.domain = P.G;
  r.dim = P.dim();
  r.provenance = P.provenance;
  auto cs = P.cosets;
  auto lam = P.lam;
  r.eval = [cs, lam](GIdx g) {
    const K& k = *lam.field;
    const FinGroup& G = cs->K->group();
    const int n = lam.dim, m = static_cast<int>(cs->index());
    auto M = mat_zero(k, n * m, n * m);
    for (int j = 0; j < m; ++j) {
      GIdx x = G.mul(g, cs->reps[j]);
      int i = cs->label[x];
      auto blk = lam.eval(G.mul(G.inv(cs->reps[i]), x));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) M(i * n + a, j * n + b) = blk(a, b);
    }
    return M;
  };
  return r;
}

template <class K>
Induced<K> twist_induced(const Induced<K>& P, const Character& chi) {
  Induced<K> Q = P;
  Q.lam = twist_rep(P.lam, restrict_character(chi, P.H));
  Q.provenance = "twist(" + P.provenance + ")";
  return Q;
}

/// Mackey: res_L ind_H^G lam = sum over x in L\G/H of ind_{L cap xHx^-1}^L (x lam).
template <class K>
std::vector<Induced<K>> mackey_restrict(const Induced<K>& P, const SubgroupPtr& L) {
  std::vector<Induced<K>> out;
  for (const auto& dc : double_cosets(P.G, L, P.H)) {
    auto xl = conjugate_rep(P.lam, dc.rep);
    auto A = intersect(L, xl.domain, "mackey");
    auto inner = restrict_rep(xl, A);
    out.push_back(make_induced(L, inner, P.provenance + "|" + L->tag()));
  }
  return out;
}

template <class K>
int hom_dim_dense(const Rep<K>& a, const Rep<K>& b, const SubgroupPtr& over) {
  const K& k = *a.field;
  if (a.dim == 1 && b.dim == 1) {
    for (GIdx s : over->gens())
      if (!k.eq(a.eval(s).a[0], b.eval(s).a[0])) return 0;
    return 1;
  }
  std::vector<std::pair<Mat<K>, Mat<K>>> pairs;
  for (GIdx s : over->gens()) pairs.emplace_back(a.eval(s), b.eval(s));
  return static_cast<int>(intertwiners(k, a.dim, b.dim, pairs).size());
}

template <class K>
int hom_dim_dense(const Rep<K>& a, const Rep<K>& b) {
  return hom_dim_dense(a, b, a.domain);
}

template <class K>
int commutant_dim_dense(const Rep<K>& r) {
  return hom_dim_dense(r, r);
}

/// dim Hom_G(ind_A alpha, ind_B beta) = sum over y in A\G/B of dim Hom_{A cap yBy^-1}(alpha, y beta).
template <class K>
int hom_dim(const Induced<K>& a, const Induced<K>& b) {
  if (!a.G->same_elements(*b.G)) throw DomainError("hom_dim: different groups");
  int total = 0;
  for (const auto& dc : double_cosets(a.G, a.H, b.H)) {
    auto yb = conjugate_rep(b.lam, dc.rep);
    auto C = intersect(a.H, yb.domain, "mackey");
    total += hom_dim_dense(a.lam, yb, C);
  }
  return total;
}

template <class K>
int commutant_dim(const Induced<K>& P) {
  return hom_dim(P, P);
}

/// Commutant of the restriction of P to L, through the Mackey pieces.
template <class K>
int restricted_commutant_dim(const Induced<K>& P, const SubgroupPtr& L) {
  auto pieces = mackey_restrict(P, L);
  int total = 0;
  for (const auto& x : pieces)
    for (const auto& y : pieces) total += hom_dim(x, y);
  return total;
}

/// Double cosets H g H whose g intertwines lam: Hom_{H cap gHg^-1}(lam, g lam) != 0.
template <class K>
std::vector<DoubleCoset> intertwining_set(const SubgroupPtr& G, const Rep<K>& lam) {
  std::vector<DoubleCoset> out;
  for (const auto& dc : double_cosets(G, lam.domain, lam.domain)) {
    auto gl = conjugate_rep(lam, dc.rep);
    auto C = intersect(lam.domain, gl.domain, "intertwining");
    if (hom_dim_dense(lam, gl, C) > 0) out.push_back(dc);
  }
  return out;
}

}  // namespace quatrep
