#include "quatrep/brauer.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "quatrep/coeff_field.hpp"
#include "quatrep/rep.hpp"

namespace quatrep {

std::vector<FMat> module_images(const FF& k, const Module& m, const Subgroup& H) {
  std::vector<FMat> out(H.size());
  for (auto p : H.bfs_order()) {
    if (H.tree_parent(p) < 0)
      out[p] = mat_identity(k, m.dim);
    else
      out[p] = mat_mul(k, out[H.tree_parent(p)], m.gens[H.tree_gen(p)]);
  }
  return out;
}

std::vector<long> eigen_exponents(const FF& k, const std::vector<FF::Elem>& roots, const FMat& a, long o, long M) {
  std::vector<long> out;
  const long step = M / o;
  for (long j = 0; j < o; ++j) {
    FMat b = a;
    for (int i = 0; i < a.rows; ++i) b(i, i) = k.sub(b(i, i), roots[j * step]);
    int nullity = a.rows - mat_rank(k, b);
    for (int t = 0; t < nullity; ++t) out.push_back(j * step);
  }
  if (static_cast<int>(out.size()) != a.rows) throw std::logic_error("eigen_exponents: matrix is not semisimple");
  return out;
}

BrauerTable irreducible_table(const FF& k, const SubgroupPtr& H, long M, long ell, std::uint64_t seed) {
  BrauerTable t;
  t.group = H;
  t.M = M;
  t.characteristic = ell;
  t.seed = seed;
  const FinGroup& G = H->group();
  for (const auto& c : conjugacy_classes(H)) {
    long o = static_cast<long>(G.order(c.rep));
    if (ell != 0 && o % ell == 0) continue;
    if (M % o != 0) throw DomainError("brauer: element order does not divide M");
    t.classes.push_back({c.rep, c.elements.size(), o});
  }
  auto reg = regular_rep(k, H);
  auto classes = iso_classes(k, composition_factors(k, Module{reg.dim, reg.gen_images()}, seed));
  for (auto& c : classes) t.modules.push_back(c.rep);
  // Order by dimension, then by character, so tables are canonical.
  std::vector<std::pair<std::pair<int, std::vector<std::vector<long>>>, std::size_t>> keyed;
  for (std::size_t i = 0; i < t.modules.size(); ++i)
    keyed.push_back({{t.modules[i].dim, module_character(k, t.modules[i], t)}, i});
  std::sort(keyed.begin(), keyed.end());
  std::vector<Module> mods;
  for (auto& [key, i] : keyed) {
    t.dims.push_back(key.first);
    t.eigen.push_back(key.second);
    mods.push_back(t.modules[i]);
  }
  t.modules = std::move(mods);
  if (ell == 0) {
    std::size_t sq = 0;
    for (int d : t.dims) sq += static_cast<std::size_t>(d) * d;
    if (sq != H->size()) throw std::logic_error("irreducible_table: squared dimensions do not add up to |H|");
  }
  if (t.size() != t.classes.size()) throw std::logic_error("irreducible_table: count differs from regular classes");
  return t;
}

std::vector<std::vector<long>> module_character(const FF& k, const Module& m, const BrauerTable& t) {
  auto roots = root_table(k, t.M);
  auto imgs = module_images(k, m, *t.group);
  std::vector<std::vector<long>> out;
  for (const auto& c : t.classes) out.push_back(eigen_exponents(k, roots, imgs[t.group->pos(c.rep)], c.order, t.M));
  return out;
}

BrauerTable ordinary_table(const SubgroupPtr& H, long M, std::uint64_t seed) {
  FF k(surrogate_prime(M, static_cast<long long>(H->size())), M);
  return irreducible_table(k, H, M, 0, seed);
}

BrauerTable modular_table(const SubgroupPtr& H, long M, long ell, std::uint64_t seed) {
  FF k(ell, prime_to_part(M, ell));
  return irreducible_table(k, H, M, ell, seed);
}

bool BrauerMatch::all_irreducible() const {
  return std::all_of(reduction_of.begin(), reduction_of.end(), [](int j) { return j >= 0; });
}
bool BrauerMatch::all_reached() const { return std::all_of(reached.begin(), reached.end(), [](bool b) { return b; }); }

BrauerMatch match_reductions(const BrauerTable& ordinary, const BrauerTable& modular) {
  if (ordinary.M != modular.M) throw DomainError("match_reductions: different moduli");
  std::map<GIdx, std::size_t> where;
  for (std::size_t c = 0; c < ordinary.classes.size(); ++c) where[ordinary.classes[c].rep] = c;
  BrauerMatch m;
  m.reached.assign(modular.size(), false);
  for (std::size_t i = 0; i < ordinary.size(); ++i) {
    std::vector<std::vector<long>> res;
    for (const auto& c : modular.classes) res.push_back(ordinary.eigen[i][where.at(c.rep)]);
    int hit = -1;
    for (std::size_t j = 0; j < modular.size(); ++j)
      if (modular.eigen[j] == res) hit = static_cast<int>(j);
    m.reduction_of.push_back(hit);
    if (hit >= 0) m.reached[hit] = true;
  }
  return m;
}

nlohmann::json to_json(const BrauerTable& t) {
  nlohmann::json j;
  j["M"] = t.M;
  j["characteristic"] = t.characteristic;
  j["seed"] = t.seed;
  auto cls = nlohmann::json::array();
  for (const auto& c : t.classes) cls.push_back({{"size", c.size}, {"order", c.order}});
  j["classes"] = cls;
  j["dims"] = t.dims;
  j["eigen_exponents"] = t.eigen;
  return j;
}

}  // namespace quatrep
