#include "quatrep/instances.hpp"

#include <stdexcept>

namespace quatrep {

using nlohmann::json;

UnitQuotientPtr make_quotient(const CheckParams& p, int f) {
  auto alg = Algebra::create(p.kind(), p.p(), p.e(), p.d, 1, f + 2);
  return UnitQuotient::create(alg, f, p.limit);
}

std::string Instance::label() const {
  return kind == "tame" ? "tame c=" + std::to_string(c)
                        : "wild a=" + std::to_string(w.a) + " cF=" + std::to_string(w.cF);
}

json Instance::to_json() const {
  if (kind == "tame") return json{{"kind", kind}, {"c", c}};
  return json{{"kind", kind}, {"a", w.a}, {"cF", w.cF}};
}

std::vector<Instance> tame_instances(const UnitQuotient& uq, long ell) {
  const long q = uq.q(), n = q * q - 1;
  const long step = ell ? n / prime_to_part(n, ell) : 1;
  std::vector<Instance> out;
  if (uq.d() != 2) return out;
  for (long c = 0; c < n; c += step)
    if (tame_is_regular(static_cast<std::uint32_t>(q), c) && c <= (c * q) % n) out.push_back({"tame", c, {}});
  return out;
}

std::vector<Instance> wild_instances(const UnitQuotient& uq, long ell) {
  std::vector<Instance> out;
  const int f = uq.level();
  const Algebra& A = uq.algebra();
  if (uq.d() != 2 || f < 2 || f > 3) return out;
  if (f % 2 == 0 && A.E().p() == 2 && A.kind() == FieldKind::EqualChar) return out;
  const long q = uq.q();
  const long step = ell ? (q - 1) / prime_to_part(q - 1, ell) : 1;
  for (GaloisField::Elem a = 1; a < A.kD().size(); ++a) {
    if (f % 2 == 1 && A.E().residue_in_base(a)) continue;
    for (long cF = 0; cF < q - 1; cF += step) out.push_back({"wild", 0, WildDatum{a, cF}});
  }
  return out;
}

Work make_work(const UnitQuotient& uq, long ell) {
  Work w;
  w.M = coefficient_modulus(uq);
  w.ell = ell;
  if (ell == 0) {
    auto f0 = char0_fields(w.M, uq.gamma()->size());
    w.exact = std::move(f0.exact);
    w.ff = std::move(f0.surrogate);
    w.mode = w.exact ? "exact" : "surrogate";
  } else {
    w.ff = std::make_unique<FF>(ell, prime_to_part(w.M, ell));
    w.mode = "modular";
  }
  return w;
}

json Evaluated::to_json() const {
  json j = in.to_json();
  j["label"] = in.label();
  j["construction"] = built.kind;
  j["dim"] = built.Pi.dim();
  j["normalization"] = built.normalization;
  j["decomposition"] = quatrep::to_json(dec);
  return j;
}

Evaluated evaluate(const UnitQuotient& uq, const Work& w, const Instance& in, std::uint64_t seed) {
  Evaluated e{in, build_instance(*w.ff, uq, in), {}};
  auto D = uq.delta();
  int d = restricted_commutant_dim(e.built.Pi, D);
  if (w.exact) {
    int de = restricted_commutant_dim(build_instance(*w.exact, uq, in).Pi, D);
    if (de != d) throw std::logic_error("commutant over Q(zeta_M) differs from the surrogate field");
  }
  auto dense = restrict_rep(induced_rep(e.built.Pi), D);
  e.dec = decompose_module(*w.ff, to_module(dense), D->size(), seed, in.label() + "|Delta", w.mode, d);
  return e;
}

Module character_module(const FF& k, const Character& chi, const SubgroupPtr& L) {
  auto roots = root_table(k, chi.M);
  Module m{1, {}};
  for (GIdx s : L->gens()) {
    FMat x = mat_zero(k, 1, 1);
    x.a[0] = roots[chi.at(s)];
    m.gens.push_back(x);
  }
  return m;
}

int matches_character(const FF& k, const DecompReport& dec, const Character& chi, const SubgroupPtr& L) {
  auto m = character_module(k, chi, L);
  for (std::size_t i = 0; i < dec.reps.size(); ++i)
    if (dec.reps[i].dim == 1 && hom_dim_modules(k, dec.reps[i], m) == 1) return static_cast<int>(i);
  return -1;
}

std::vector<Instance> all_instances(const UnitQuotient& uq, long ell) {
  auto a = tame_instances(uq, ell);
  auto b = wild_instances(uq, ell);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace quatrep
