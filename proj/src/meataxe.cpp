#include "quatrep/meataxe.hpp"

#include <random>

#include "quatrep/errors.hpp"

namespace quatrep {

namespace {

struct SemiEchelon {
  const FF* k;
  std::vector<FVec> rows;
  std::vector<int> piv;

  // Reduce v against the rows; returns true if something new remains (then appended).
  bool add(FVec v) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto c = v[piv[r]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (rows[r][j] != 0) v[j] = k->sub(v[j], k->mul(c, rows[r][j]));
    }
    int p = -1;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) {
        p = static_cast<int>(j);
        break;
      }
    if (p < 0) return false;
    auto inv = k->inv(v[p]);
    for (auto& x : v) x = k->mul(x, inv);
    rows.push_back(std::move(v));
    piv.push_back(p);
    return true;
  }
};

std::vector<FVec> rref_rows(const FF& k, const std::vector<FVec>& rows, int n) {
  FMat m = mat_zero(k, static_cast<int>(rows.size()), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < n; ++j) m(static_cast<int>(i), j) = rows[i][j];
  auto piv = rref(k, m);
  std::vector<FVec> out(piv.size(), FVec(n));
  for (std::size_t i = 0; i < piv.size(); ++i)
    for (int j = 0; j < n; ++j) out[i][j] = m(static_cast<int>(i), j);
  return out;
}

std::vector<int> pivots_of(const std::vector<FVec>& rows) {
  std::vector<int> p;
  for (const auto& r : rows) {
    int c = 0;
    while (r[c] == 0) ++c;
    p.push_back(c);
  }
  return p;
}

FMat word_matrix(const FF& k, const Module& m, const std::vector<int>& w) {
  FMat a = mat_identity(k, m.dim);
  for (int g : w) a = mat_mul(k, a, m.gens[g]);
  return a;
}

FMat algebra_element(const FF& k, const Module& m, const std::vector<std::vector<int>>& words, const FVec& coeffs) {
  FMat a = mat_zero(k, m.dim, m.dim);
  for (std::size_t i = 0; i < words.size(); ++i)
    if (coeffs[i] != 0) a = mat_add(k, a, mat_scale(k, coeffs[i], word_matrix(k, m, words[i])));
  return a;
}

FMat shifted(const FF& k, FMat a, FF::Elem lambda) {
  for (int i = 0; i < a.rows; ++i) a(i, i) = k.sub(a(i, i), lambda);
  return a;
}

}  // namespace

std::vector<FVec> spin(const FF& k, const std::vector<FMat>& gens, const std::vector<FVec>& vs, int n) {
  SemiEchelon se{&k, {}, {}};
  for (const auto& v : vs) {
    se.add(v);
    if (static_cast<int>(se.rows.size()) == n) return se.rows;
  }
  for (std::size_t i = 0; i < se.rows.size(); ++i)
    for (const auto& g : gens) {
      se.add(mat_apply(k, g, se.rows[i]));
      if (static_cast<int>(se.rows.size()) == n) return se.rows;
    }
  return se.rows;
}

FVec charpoly(const FF& k, const FMat& a0) {
  const int n = a0.rows;
  FMat h = a0;
  // similarity reduction to upper Hessenberg form
  for (int c = 0; c + 2 < n; ++c) {
    int p = -1;
    for (int r = c + 1; r < n; ++r)
      if (h(r, c) != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    if (p != c + 1) {
      for (int j = 0; j < n; ++j) std::swap(h(p, j), h(c + 1, j));
      for (int i = 0; i < n; ++i) std::swap(h(i, p), h(i, c + 1));
    }
    auto inv = k.inv(h(c + 1, c));
    for (int i = c + 2; i < n; ++i) {
      if (h(i, c) == 0) continue;
      auto f = k.mul(h(i, c), inv);
      for (int j = 0; j < n; ++j) h(i, j) = k.sub(h(i, j), k.mul(f, h(c + 1, j)));
      for (int r = 0; r < n; ++r) h(r, c + 1) = k.add(h(r, c + 1), k.mul(f, h(r, i)));
    }
  }
  // p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
  std::vector<FVec> P(n + 1);
  P[0] = FVec{k.one()};
  for (int m = 1; m <= n; ++m) {
    FVec cur(m + 1, k.zero());
    const auto& prev = P[m - 1];
    for (std::size_t t = 0; t < prev.size(); ++t) {
      cur[t + 1] = k.add(cur[t + 1], prev[t]);
      cur[t] = k.sub(cur[t], k.mul(h(m - 1, m - 1), prev[t]));
    }
    auto prod = k.one();
    for (int i = m - 1; i >= 1; --i) {
      prod = k.mul(prod, h(i, i - 1));
      auto coef = k.mul(h(i - 1, m - 1), prod);
      if (coef == 0) continue;
      const auto& pi = P[i - 1];
      for (std::size_t t = 0; t < pi.size(); ++t) cur[t] = k.sub(cur[t], k.mul(coef, pi[t]));
    }
    P[m] = std::move(cur);
  }
  return P[n];
}

std::vector<FF::Elem> poly_roots(const FF& k, const FVec& p) {
  const std::uint64_t Q = k.gf().size();
  if (Q > (1u << 22)) throw BudgetError("poly_roots: field too large for root enumeration");
  std::vector<FF::Elem> out;
  const int deg = static_cast<int>(p.size()) - 1;
  for (std::uint64_t x = 0; x < Q && static_cast<int>(out.size()) < deg; ++x) {
    auto e = static_cast<FF::Elem>(x);
    FF::Elem v = 0;
    for (int t = deg; t >= 0; --t) v = k.add(k.mul(v, e), p[t]);
    if (v == 0) out.push_back(e);
  }
  return out;
}

SplitResult meataxe_split(const FF& k, const Module& m, std::uint64_t seed, int budget) {
  SplitResult res;
  res.seed = seed;
  const int n = m.dim;
  if (n == 1) {
    res.status = SplitResult::Status::Irreducible;
    res.words = {{}};
    res.coeffs = {k.one()};
    res.eigenvalue = k.one();
    res.v = res.w = {k.one()};
    return res;
  }
  std::mt19937_64 rng(seed);
  const auto Q = static_cast<FF::Elem>(k.gf().size());
  std::uniform_int_distribution<FF::Elem> coef(0, Q - 1);
  std::vector<std::vector<int>> words;
  for (std::size_t g = 0; g < m.gens.size(); ++g) words.push_back({static_cast<int>(g)});
  if (words.empty()) words.push_back({});
  std::vector<FMat> transposed;
  for (const auto& g : m.gens) transposed.push_back(mat_transpose(k, g));

  for (int att = 1; att <= budget; ++att) {
    res.attempts = att;
    if (!m.gens.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
      auto w = words[pick(rng)];
      const auto& w2 = words[pick(rng)];
      w.insert(w.end(), w2.begin(), w2.end());
      if (w.size() > 12) w.resize(12);
      if (words.size() < 16)
        words.push_back(w);
      else
        words[std::uniform_int_distribution<std::size_t>(m.gens.size(), words.size() - 1)(rng)] = w;
    }
    FVec c(words.size());
    for (auto& x : c) x = coef(rng);
    FMat A = algebra_element(k, m, words, c);
    for (auto lambda : poly_roots(k, charpoly(k, A))) {
      FMat B = shifted(k, A, lambda);
      auto N = nullspace(k, B);
      for (const auto& v : N) {
        auto S = spin(k, m.gens, {v}, n);
        if (static_cast<int>(S.size()) < n) {
          res.status = SplitResult::Status::Reducible;
          res.sub = rref_rows(k, S, n);
          return res;
        }
      }
      if (N.size() != 1) continue;
      auto Nt = nullspace(k, mat_transpose(k, B));
      auto St = spin(k, transposed, {Nt[0]}, n);
      if (static_cast<int>(St.size()) < n) {
        // annihilator of an invariant subspace for the transposes is invariant
        FMat ann = mat_zero(k, static_cast<int>(St.size()), n);
        for (std::size_t i = 0; i < St.size(); ++i)
          for (int j = 0; j < n; ++j) ann(static_cast<int>(i), j) = St[i][j];
        res.status = SplitResult::Status::Reducible;
        res.sub = rref_rows(k, nullspace(k, ann), n);
        return res;
      }
      res.status = SplitResult::Status::Irreducible;
      res.words = words;
      res.coeffs = c;
      res.eigenvalue = lambda;
      res.v = N[0];
      res.w = Nt[0];
      return res;
    }
  }
  res.status = SplitResult::Status::Uncertified;
  return res;
}

bool verify_certificate(const FF& k, const Module& m, const SplitResult& r) {
  if (r.status != SplitResult::Status::Irreducible) return false;
  const int n = m.dim;
  if (n == 1) return true;
  FMat B = shifted(k, algebra_element(k, m, r.words, r.coeffs), r.eigenvalue);
  if (static_cast<int>(nullspace(k, B).size()) != 1) return false;
  if (mat_apply(k, B, r.v) != FVec(n, 0)) return false;
  if (mat_apply(k, mat_transpose(k, B), r.w) != FVec(n, 0)) return false;
  std::vector<FMat> tr;
  for (const auto& g : m.gens) tr.push_back(mat_transpose(k, g));
  return static_cast<int>(spin(k, m.gens, {r.v}, n).size()) == n &&
         static_cast<int>(spin(k, tr, {r.w}, n).size()) == n;
}

std::pair<Module, Module> split_module(const FF& k, const Module& m, std::vector<FVec> sub) {
  const int n = m.dim;
  sub = rref_rows(k, sub, n);
  const auto piv = pivots_of(sub);
  const int s = static_cast<int>(sub.size());
  std::vector<char> is_piv(n, 0);
  for (int p : piv) is_piv[p] = 1;
  std::vector<int> np;
  for (int j = 0; j < n; ++j)
    if (!is_piv[j]) np.push_back(j);
  Module S{s, {}}, Qm{n - s, {}};
  for (const auto& g : m.gens) {
    FMat a = mat_zero(k, s, s);
    for (int t = 0; t < s; ++t) {
      auto y = mat_apply(k, g, sub[t]);
      for (int u = 0; u < s; ++u) a(u, t) = y[piv[u]];
    }
    S.gens.push_back(std::move(a));
    FMat b = mat_zero(k, n - s, n - s);
    for (int j = 0; j < n - s; ++j) {
      FVec y(n, k.zero());
      for (int i = 0; i < n; ++i) y[i] = g(i, np[j]);
      for (int t = 0; t < s; ++t) {
        auto c = y[piv[t]];
        if (c == 0) continue;
        for (int i = 0; i < n; ++i) y[i] = k.sub(y[i], k.mul(c, sub[t][i]));
      }
      for (int i = 0; i < n - s; ++i) b(i, j) = y[np[i]];
    }
    Qm.gens.push_back(std::move(b));
  }
  return {S, Qm};
}

std::vector<Module> composition_factors(const FF& k, const Module& m, std::uint64_t seed) {
  auto r = meataxe_split(k, m, seed);
  if (r.status == SplitResult::Status::Irreducible) return {m};
  if (r.status == SplitResult::Status::Uncertified)
    throw BudgetError("meataxe: no certificate within the retry budget (dim " + std::to_string(m.dim) + ")");
  auto [S, Qm] = split_module(k, m, r.sub);
  auto a = composition_factors(k, S, seed * 6364136223846793005ULL + 1);
  auto b = composition_factors(k, Qm, seed * 6364136223846793005ULL + 2);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

int hom_dim_modules(const FF& k, const Module& a, const Module& b) {
  std::vector<std::pair<FMat, FMat>> pairs;
  for (std::size_t i = 0; i < a.gens.size(); ++i) pairs.emplace_back(a.gens[i], b.gens[i]);
  return static_cast<int>(intertwiners(k, a.dim, b.dim, pairs).size());
}

std::vector<FactorClass> iso_classes(const FF& k, const std::vector<Module>& factors) {
  std::vector<FactorClass> out;
  for (const auto& f : factors) {
    bool found = false;
    for (auto& c : out)
      if (c.rep.dim == f.dim && hom_dim_modules(k, c.rep, f) > 0) {
        ++c.multiplicity;
        found = true;
        break;
      }
    if (!found) out.push_back({f, 1});
  }
  return out;
}

}  // namespace quatrep
