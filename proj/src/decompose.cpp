#include "quatrep/decompose.hpp"

#include <numeric>
#include <stdexcept>

#include "quatrep/errors.hpp"

namespace quatrep {

std::string pattern_tag(const std::vector<Component>& cs) {
  if (cs.size() == 1 && cs[0].multiplicity == 1) return "irreducible";
  if (cs.size() == 1 && cs[0].multiplicity == 2) return "one-with-multiplicity-two";
  if (cs.size() == 2 && cs[0].multiplicity == 1 && cs[1].multiplicity == 1) return "two-inequivalent";
  return "other";
}

namespace {

nlohmann::json vec_json(const FVec& v) {
  auto a = nlohmann::json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

nlohmann::json certificate_json(const SplitResult& s) {
  nlohmann::json j;
  j["status"] = s.status == SplitResult::Status::Irreducible ? "irreducible"
                : s.status == SplitResult::Status::Reducible ? "reducible"
                                                             : "uncertified";
  j["seed"] = s.seed;
  j["attempts"] = s.attempts;
  j["words"] = s.words;
  j["coeffs"] = vec_json(s.coeffs);
  j["eigenvalue"] = s.eigenvalue;
  j["v"] = vec_json(s.v);
  j["w"] = vec_json(s.w);
  return j;
}

}  // namespace

nlohmann::json to_json(const DecompReport& r) {
  nlohmann::json j;
  j["input"] = r.input;
  j["input_dim"] = r.input_dim;
  j["characteristic"] = r.characteristic;
  j["field_characteristic"] = r.field_characteristic;
  j["field_root_order"] = r.field_root_order;
  j["group_order"] = r.group_order;
  j["mode"] = r.mode;
  j["seed"] = r.seed;
  auto cs = nlohmann::json::array();
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    const auto& c = r.components[i];
    nlohmann::json cj{{"id", c.id}, {"multiplicity", c.multiplicity}, {"dim", c.dim},
                      {"socle_multiplicity", c.socle_multiplicity}};
    if (i < r.reps.size()) {
      auto gens = nlohmann::json::array();
      for (const auto& g : r.reps[i].gens) gens.push_back(g.a);
      cj["gens"] = gens;
    }
    cs.push_back(cj);
  }
  j["components"] = cs;
  j["commutant_dim"] = r.commutant_dim;
  j["semisimple"] = r.semisimple;
  j["pattern"] = r.pattern;
  auto cert = nlohmann::json::array();
  for (const auto& s : r.certificates) cert.push_back(certificate_json(s));
  j["certificates"] = cert;
  return j;
}

Module to_module(const Rep<FF>& r) { return Module{r.dim, r.gen_images()}; }

DecompReport decompose_module(const FF& k, const Module& m, std::size_t group_order, std::uint64_t seed,
                              std::string input, std::string mode, int commutant) {
  DecompReport r;
  r.input = std::move(input);
  r.input_dim = m.dim;
  r.field_characteristic = k.characteristic();
  r.field_root_order = k.root_order();
  r.characteristic = mode == "modular" ? k.characteristic() : 0;
  r.group_order = group_order;
  r.mode = std::move(mode);
  r.seed = seed;
  r.commutant_dim = commutant >= 0 ? commutant : hom_dim_modules(k, m, m);

  auto classes = iso_classes(k, composition_factors(k, m, seed));
  int socle = 0, sum_sq = 0, total = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    Component c;
    c.id = static_cast<int>(i);
    c.multiplicity = classes[i].multiplicity;
    c.dim = classes[i].rep.dim;
    c.socle_multiplicity = hom_dim_modules(k, classes[i].rep, m);
    socle += c.socle_multiplicity * c.dim;
    sum_sq += c.multiplicity * c.multiplicity;
    total += c.multiplicity * c.dim;
    r.components.push_back(c);
    auto cert = meataxe_split(k, classes[i].rep, seed + 1 + i);
    if (cert.status != SplitResult::Status::Irreducible)
      throw BudgetError("decompose: could not certify component " + std::to_string(i));
    r.certificates.push_back(std::move(cert));
    r.reps.push_back(classes[i].rep);
  }
  if (total != m.dim) throw std::logic_error("decompose: composition length does not add up");
  r.semisimple = socle == m.dim;
  if (group_order % static_cast<std::size_t>(k.characteristic()) != 0) {
    if (!r.semisimple) throw std::logic_error("decompose: non-semisimple module in coprime characteristic");
    if (sum_sq != r.commutant_dim) throw std::logic_error("decompose: commutant differs from sum of m^2");
  }
  r.pattern = pattern_tag(r.components);
  return r;
}

DecompReport decompose_restriction(const Induced<FF>& P, const SubgroupPtr& L, std::uint64_t seed,
                                   std::string mode) {
  auto dense = restrict_rep(induced_rep(P), L);
  int commutant = restricted_commutant_dim(P, L);
  return decompose_module(*P.lam.field, to_module(dense), L->size(), seed,
                          "res(" + P.provenance + ", " + L->tag() + ")", std::move(mode), commutant);
}

bool verify_report(const FF& k, const DecompReport& r) {
  if (r.certificates.size() != r.reps.size() || r.reps.size() != r.components.size()) return false;
  int total = 0;
  for (std::size_t i = 0; i < r.reps.size(); ++i) {
    if (r.reps[i].dim != r.components[i].dim) return false;
    if (!verify_certificate(k, r.reps[i], r.certificates[i])) return false;
    total += r.components[i].dim * r.components[i].multiplicity;
    for (std::size_t j = 0; j < i; ++j)
      if (r.reps[j].dim == r.reps[i].dim && hom_dim_modules(k, r.reps[j], r.reps[i]) != 0) return false;
  }
  return total == r.input_dim && pattern_tag(r.components) == r.pattern;
}

std::string verify_decomp_json(const nlohmann::json& j) {
  const long ch = j.at("field_characteristic").get<long>();
  FF k(ch, j.at("field_root_order").get<long>());
  DecompReport r;
  r.input_dim = j.at("input_dim").get<int>();
  r.pattern = j.at("pattern").get<std::string>();
  const auto& cs = j.at("components");
  const auto& certs = j.at("certificates");
  if (cs.size() != certs.size()) return "certificate count differs from component count";
  for (std::size_t i = 0; i < cs.size(); ++i) {
    Component c;
    c.id = cs[i].at("id").get<int>();
    c.dim = cs[i].at("dim").get<int>();
    c.multiplicity = cs[i].at("multiplicity").get<int>();
    r.components.push_back(c);
    Module m{c.dim, {}};
    for (const auto& g : cs[i].at("gens")) {
      FMat x = mat_zero(k, c.dim, c.dim);
      x.a = g.get<std::vector<FF::Elem>>();
      if (x.a.size() != static_cast<std::size_t>(c.dim) * c.dim) return "malformed generator matrix";
      m.gens.push_back(std::move(x));
    }
    r.reps.push_back(std::move(m));
    const auto& cj = certs[i];
    SplitResult s;
    s.status = cj.at("status") == "irreducible" ? SplitResult::Status::Irreducible : SplitResult::Status::Uncertified;
    s.words = cj.at("words").get<std::vector<std::vector<int>>>();
    s.coeffs = cj.at("coeffs").get<FVec>();
    s.eigenvalue = cj.at("eigenvalue").get<FF::Elem>();
    s.v = cj.at("v").get<FVec>();
    s.w = cj.at("w").get<FVec>();
    s.seed = cj.at("seed").get<std::uint64_t>();
    r.certificates.push_back(std::move(s));
  }
  if (!verify_report(k, r)) return "component certificates do not verify";
  return "";
}

Char0Fields char0_fields(long M, std::size_t group_order, int max_phi) {
  Char0Fields f;
  long P = surrogate_prime(M, static_cast<long long>(group_order));
  f.surrogate = std::make_unique<FF>(P, M);
  long phi = M;
  {
    long m = M;
    for (long p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        phi = phi / p * (p - 1);
        while (m % p == 0) m /= p;
      }
    if (m > 1) phi = phi / m * (m - 1);
  }
  if (phi <= max_phi) f.exact = std::make_unique<CyclotomicField>(M);
  return f;
}

Rep<FF> reduce_mod_ell(const Rep<CyclotomicField>& r, const FF& target) {
  auto red = std::make_shared<Reduction>(*r.field, target);
  Rep<FF> out;
  out.field = &target;
  out.domain = r.domain;
  out.dim = r.dim;
  out.provenance = "reduce(" + r.provenance + ", " + std::to_string(target.characteristic()) + ")";
  auto src = r.eval;
  const FF* kp = &target;
  out.eval = [src, red, kp](GIdx g) {
    auto a = src(g);
    FMat b = mat_zero(*kp, a.rows, a.cols);
    for (std::size_t i = 0; i < a.a.size(); ++i) b.a[i] = red->map(a.a[i]);
    return b;
  };
  return out;
}

Induced<FF> reduce_mod_ell(const Induced<CyclotomicField>& P, const FF& target) {
  return Induced<FF>{P.G, P.H, tabulate(reduce_mod_ell(P.lam, target)), P.cosets,
                     "reduce(" + P.provenance + ")"};
}

template <class K>
int twist_stabilizer_count(const UnitQuotient& uq, const Induced<K>& P, long M) {
  int count = 0;
  for (const auto& chi : abelian_characters(uq.whole(), uq.delta(), M)) {
    bool square_trivial = true;
    for (auto e : chi.exps)
      if ((2L * e) % M != 0) square_trivial = false;
    if (!square_trivial) continue;
    if (hom_dim(P, twist_induced(P, chi)) >= 1) ++count;
  }
  return count;
}

template int twist_stabilizer_count(const UnitQuotient&, const Induced<CyclotomicField>&, long);
template int twist_stabilizer_count(const UnitQuotient&, const Induced<FF>&, long);

}  // namespace quatrep
