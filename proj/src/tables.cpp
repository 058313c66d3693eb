#include "quatrep/tables.hpp"

#include <sstream>

#include "quatrep/errors.hpp"
#include "quatrep/instances.hpp"

namespace quatrep {

IrrTable irreducibles_table(const CheckParams& p, const std::string& group, std::size_t max_order) {
  p.validate();
  if (group != "gamma" && group != "delta") throw DomainError("group must be gamma or delta");
  auto uq = make_quotient(p, p.f);
  auto w = make_work(*uq, p.ell);
  auto H = group == "delta" ? uq->delta() : uq->whole();
  auto D = uq->delta();
  if (H->size() > max_order) throw BudgetError("table: group of order " + std::to_string(H->size()) + " is too large");
  const FF& k = *w.ff;
  auto t = irreducible_table(k, H, w.M, p.ell, p.seed);

  IrrTable out;
  out.group = group;
  out.params = p;
  out.M = w.M;
  out.mode = p.ell ? "modular" : "surrogate";
  out.classes = t.classes;
  for (std::size_t i = 0; i < t.size(); ++i) {
    TableRow r;
    r.id = static_cast<int>(i);
    r.dim = t.dims[i];
    r.character = t.eigen[i];
    out.rows.push_back(std::move(r));
  }

  auto insts = all_instances(*uq, p.ell);
  if (group == "delta") {
    for (std::size_t n = 0; n < insts.size(); ++n) {
      auto e = evaluate(*uq, w, insts[n], p.seed + n);
      for (const auto& m : e.dec.reps) {
        auto ch = module_character(k, m, t);
        for (auto& r : out.rows)
          if (r.character == ch) r.origins.push_back(insts[n].label());
      }
    }
    return out;
  }

  std::vector<Module> built;
  for (const auto& in : insts) built.push_back(to_module(induced_rep(build_instance(k, *uq, in).Pi)));
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto& r = out.rows[i];
    auto imgs = module_images(k, t.modules[i], *H);
    Module res{r.dim, {}};
    for (GIdx s : D->gens()) res.gens.push_back(imgs[H->pos(s)]);
    auto dec = decompose_module(k, res, D->size(), p.seed + i, "row " + std::to_string(i) + "|Delta", out.mode);
    r.restriction_commutant = dec.commutant_dim;
    r.restriction_pattern = dec.pattern;
    for (std::size_t n = 0; n < insts.size(); ++n)
      if (built[n].dim == r.dim && hom_dim_modules(k, built[n], t.modules[i]) > 0)
        r.origins.push_back(insts[n].label());
  }
  return out;
}

nlohmann::json to_json(const IrrTable& t) {
  nlohmann::json j;
  j["group"] = t.group;
  j["params"] = to_json(t.params);
  j["M"] = t.M;
  j["mode"] = t.mode;
  auto cls = nlohmann::json::array();
  for (const auto& c : t.classes) cls.push_back({{"size", c.size}, {"order", c.order}});
  j["classes"] = cls;
  auto rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    nlohmann::json x{{"id", r.id}, {"dim", r.dim}, {"l_packet", r.origins}, {"character", r.character}};
    if (r.restriction_commutant >= 0) {
      x["restriction_commutant"] = r.restriction_commutant;
      x["restriction_pattern"] = r.restriction_pattern;
    }
    rows.push_back(x);
  }
  j["rows"] = rows;
  return j;
}

std::string to_tsv(const IrrTable& t) {
  std::ostringstream os;
  os << "group\tid\tdim\trestriction_commutant\trestriction_pattern\tl_packet\tcharacter\n";
  for (const auto& r : t.rows) {
    os << t.group << '\t' << r.id << '\t' << r.dim << '\t';
    if (r.restriction_commutant >= 0)
      os << r.restriction_commutant << '\t' << r.restriction_pattern;
    else
      os << "-\t-";
    os << '\t';
    for (std::size_t i = 0; i < r.origins.size(); ++i) os << (i ? ";" : "") << r.origins[i];
    if (r.origins.empty()) os << '-';
    os << '\t';
    for (std::size_t c = 0; c < r.character.size(); ++c) {
      os << (c ? ";" : "");
      for (std::size_t e = 0; e < r.character[c].size(); ++e) os << (e ? "," : "") << r.character[c][e];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace quatrep
