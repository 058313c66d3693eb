// Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "quatrep/brauer.hpp"
#include "quatrep/certify.hpp"
#include "quatrep/errors.hpp"
#include "quatrep/instances.hpp"
#include "quatrep/local_field.hpp"

using namespace quatrep;
using nlohmann::json;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void fail(const std::string& why) {
    if (ok) note << "first failure: " << why << "; ";
    ok = false;
  }
  void require(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

CheckParams params(std::uint32_t q, int f, long ell = 0) {
  CheckParams p;
  p.q = q;
  p.f = f;
  p.ell = ell;
  return p;
}

std::string tag(std::uint32_t q, int f, long ell) {
  return "q=" + std::to_string(q) + " f=" + std::to_string(f) + " l=" + std::to_string(ell);
}

CheckReport checked_run(Outcome& o, const std::string& id, const CheckParams& p) {
  auto r = run_check(id, p);
  const std::string where = id + " " + tag(p.q, p.f, p.ell);
  o.require(verify_report_witness(r).empty(), where + ": witness does not re-verify");
  return r;
}

std::uint32_t char_of(std::uint32_t q) {
  for (std::uint32_t p = 2;; ++p)
    if (q % p == 0) return p;
}

long gcd_l(long a, long b) { return std::gcd(a, b); }

// ------------------------------------------------------------------ 1

void tame_classification(Outcome& o) {
  int rows = 0, fours = 0;
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto r = checked_run(o, "C2", params(q, 1));
    o.require(r.verdict == "pass", "C2 " + tag(q, 1, 0) + " verdict " + r.verdict);
    o.require(r.witness.at("mode") == "exact", "q=" + std::to_string(q) + " not over exact coefficients");
    std::set<long> four_restrictions;
    for (const auto& row : r.witness.at("instances")) {
      const long c = row.at("c");
      // order of nu restricted to the cyclic group k_D^1 of order q + 1
      const long ord = (q + 1) / gcd_l(c, q + 1);
      const bool four = q % 2 == 1 && ord == 2;
      const auto& dec = row.at("decomposition");
      o.require(row.at("components_are_nu_and_nuq").get<bool>(), row.at("label").get<std::string>() + ": components");
      o.require(dec.at("commutant_dim") == (four ? 4 : 2), row.at("label").get<std::string>() + ": d_Pi");
      if (dec.at("commutant_dim") == 4) four_restrictions.insert(std::min(c % (q + 1), (q + 1 - c % (q + 1)) % (q + 1)));
      ++rows;
    }
    o.require(four_restrictions.size() == (q % 2 == 1 ? 1u : 0u), "q=" + std::to_string(q) + ": d_Pi = 4 orbit count");
    fours += static_cast<int>(four_restrictions.size());
  }
  o.note << rows << " regular orbits, d=4 restrictions " << fours;
}

// ------------------------------------------------------------------ 2

void trichotomy(Outcome& o) {
  int configs = 0, instances = 0;
  std::vector<std::string> over_budget, empty;
  std::map<std::string, int> patterns;
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    for (int f = 1; f <= 3; ++f) {
      for (long ell : {0L, 2L, 3L, 5L}) {
        if (ell == static_cast<long>(char_of(q))) continue;
        CheckReport r;
        try {
          r = checked_run(o, "C3", params(q, f, ell));
        } catch (const BudgetError& e) {
          over_budget.push_back(tag(q, f, ell));
          continue;
        } catch (const DomainError& e) {
          empty.push_back(tag(q, f, ell));
          continue;
        }
        ++configs;
        o.require(r.verdict == "pass", "C3 " + tag(q, f, ell) + " verdict " + r.verdict);
        for (const auto& row : r.witness.at("instances")) {
          const int d = row.at("commutant");
          const auto& comps = row.at("components");
          const std::string where = tag(q, f, ell) + " " + row.at("label").get<std::string>();
          o.require(d == 1 || d == 2 || d == 4, where + ": d_Pi = " + std::to_string(d));
          o.require(comps.size() <= 2, where + ": more than two components");
          if (d == 4) o.require(comps.size() == 1 && comps[0].at("multiplicity") == 2, where + ": d = 4 without multiplicity 2");
          patterns[row.at("pattern").get<std::string>()]++;
          ++instances;
        }
      }
    }
  }
  o.note << configs << " configurations, " << instances << " representations (";
  const char* sep = "";
  for (const auto& [k, v] : patterns) {
    o.note << sep << k << " " << v;
    sep = ", ";
  }
  o.note << "); no representation: ";
  for (const auto& s : empty) o.note << "[" << s << "]";
  o.note << "; over the finite-field budget: ";
  for (const auto& s : over_budget) o.note << "[" << s << "]";
}

// ------------------------------------------------------------------ 3

void p2_f2(Outcome& o) {
  auto r = checked_run(o, "C4", params(2, 2));
  const auto& in = r.witness.at("instance");
  o.require(r.verdict == "pass", "C4 verdict " + r.verdict);
  o.require(r.params.kind() == FieldKind::Mixed, "base is not Q_2");
  o.require(in.at("dim") == 3, "dim Pi != 3");
  o.require(in.at("decomposition").at("pattern") == "irreducible", "restriction not irreducible");
  o.require(r.witness.at("delta_irreducible_dims") == json({1, 1, 1, 3}), "Delta_2 dims");
  // |Delta_2| = 12 fixes sum of squares.
  o.note << "dim 3 irreducible; Delta_2 dims " << r.witness.at("delta_irreducible_dims").dump();
}

// ------------------------------------------------------------------ 4

void wild_p_odd(Outcome& o) {
  int n = 0;
  for (auto [q, f] : std::vector<std::pair<std::uint32_t, int>>{{3, 2}, {5, 2}, {3, 3}}) {
    auto r = checked_run(o, "C5", params(q, f));
    o.require(r.verdict == "pass", "C5 " + tag(q, f, 0) + " verdict " + r.verdict);
    for (const auto& row : r.witness.at("instances")) {
      const auto& comps = row.at("components");
      const std::string where = tag(q, f, 0) + " " + row.at("label").get<std::string>();
      o.require(comps.size() == 2, where + ": not two components");
      if (comps.size() != 2) continue;
      o.require(comps[0].at("multiplicity") == 1 && comps[1].at("multiplicity") == 1, where + ": multiplicity");
      o.require(comps[0].at("dim") == comps[1].at("dim") && comps[0].at("dim").get<int>() > 1, where + ": dims");
      ++n;
    }
  }
  o.note << n << " wild representations split into two inequivalent halves";
}

// ------------------------------------------------------------------ 5

void fp_qp(Outcome& o) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto r = checked_run(o, "C8", params(p, 1, p));
    o.require(r.verdict == "pass", "C8 p=" + std::to_string(p) + " verdict " + r.verdict);
    o.require(r.witness.at("delta_brauer_table").at("dims").size() == p + 1, "Delta_1 has p + 1 characters");
    o.require(r.witness.at("nontrivial_irreducibles_are_pi_r").get<bool>(), "pi_r are the nontrivial characters");
    int twos = 0;
    for (const auto& row : r.witness.at("instances")) {
      const int rr = row.at("r");
      const bool two = p % 2 == 1 && 2 * rr == static_cast<int>(p) - 1;
      const auto& dec = row.at("decomposition");
      o.require(row.at("contains_pi_r").get<bool>() && row.at("contains_pi_p_minus_1_minus_r").get<bool>(),
                "p=" + std::to_string(p) + " r=" + std::to_string(rr) + ": components");
      o.require((dec.at("pattern") == "one-with-multiplicity-two") == two,
                "p=" + std::to_string(p) + " r=" + std::to_string(rr) + ": multiplicity pattern");
      twos += dec.at("pattern") == "one-with-multiplicity-two";
    }
    o.note << "p=" << p << ": " << r.witness.at("instances").size() << " Pi_r, multiplicity two " << twos
           << ", equivalent " << r.witness.at("equivalent_pairs").dump() << "; ";
  }
}

// ------------------------------------------------------------------ 6

void commutators(Outcome& o) {
  for (auto [d, q] : std::vector<std::pair<unsigned, std::uint32_t>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    auto p = params(q, 3);
    p.d = d;
    p.samples = 100;
    p.precision = 12;
    auto r = checked_run(o, "C7", p);
    const std::string where = "d=" + std::to_string(d) + " q=" + std::to_string(q);
    o.require(r.verdict == "pass", "C7 " + where + " verdict " + r.verdict);
    o.require(r.witness.at("verified") == 100, where + ": verified witnesses");
    // D^1/[D*,D*] = k_D^1, of order (q^d - 1)/(q - 1)
    std::uint64_t index = 0, qq = 1;
    for (unsigned i = 0; i < d; ++i, qq *= q) index += qq;
    int levels = 0;
    for (const auto& lvl : r.witness.at("derived_subgroup")) {
      o.require(lvl.at("ok").get<bool>() && lvl.at("index") == index, where + ": derived index");
      ++levels;
    }
    o.require(levels == 3, where + ": derived subgroup checked at f = 1..3");
    o.note << where << ": 100/100, index " << index << "; ";
  }
}

// ------------------------------------------------------------------ 7

void mod_ell(Outcome& o) {
  for (auto [q, ell] : std::vector<std::pair<std::uint32_t, long>>{{2, 3}, {3, 2}, {2, 5}}) {
    for (int f = 1; f <= 2; ++f) {
      auto r = checked_run(o, "C6", params(q, f, ell));
      o.require(r.verdict == "pass", "C6 " + tag(q, f, ell) + " verdict " + r.verdict);
      const auto& red = r.witness.at("reached");
      for (const auto& x : red) o.require(x.get<bool>(), tag(q, f, ell) + ": a modular irreducible is not reached");
      o.note << tag(q, f, ell) << " " << r.witness.at("ordinary_dims").dump() << "->"
             << r.witness.at("modular_dims").dump() << "; ";
    }
  }
  auto r = checked_run(o, "C6", params(2, 2, 2));
  o.require(r.verdict == "flagged-discrepancy", "l = p verdict " + r.verdict);
  for (const auto& x : r.witness.at("modular_dims")) o.require(x == 1, "l = p: modular dims");
  for (const auto& c : r.witness.at("reduced_wild_representation").at("components"))
    o.require(c.at("dim") == 1, "l = p: reduced wild factor of dim > 1");
  o.note << "l=p: flagged, wild 3-dim reduces to "
         << r.witness.at("reduced_wild_representation").at("components").size() << " one-dimensional factors";
}

// ------------------------------------------------------------------ 8

void twist_count(Outcome& o) {
  int n = 0;
  for (std::uint32_t q : {3u, 5u}) {
    auto r = checked_run(o, "C9", params(q, 1));
    o.require(r.verdict == "pass", "C9 q=" + std::to_string(q) + " verdict " + r.verdict);
    for (const auto& row : r.witness.at("instances")) {
      o.require(row.at("commutant") == row.at("twist_count"), row.at("label").get<std::string>());
      ++n;
    }
  }
  o.note << n << " tame instances, twist count = d_Pi";
}

// ------------------------------------------------------------------ 9

struct LocalSetup {
  FieldKind kind;
  std::uint32_t p;
  unsigned e, d;
};

LocalElem random_local(const UnramExt& E, int prec, std::mt19937_64& rng) {
  LocalElem a = E.zero(prec);
  if (E.kind() == FieldKind::EqualChar) {
    for (auto& c : a.v) c = static_cast<std::int64_t>(rng() % E.kD().size());
  } else {
    std::int64_t M = 1;
    for (int i = 0; i < prec; ++i) M *= E.p();
    for (auto& c : a.v) c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(M));
  }
  return a;
}

LocalElem widen(const UnramExt& E, const LocalElem& a, int prec, std::mt19937_64& rng) {
  LocalElem wide = E.zero(prec);
  if (E.kind() == FieldKind::EqualChar) {
    for (int k = 0; k < a.prec; ++k) wide.v[k] = a.v[k];
  } else {
    wide.v = a.v;
  }
  return E.add(wide, E.shift(random_local(E, prec - a.prec, rng), a.prec));
}

void properties(Outcome& o) {
  std::mt19937_64 rng(2024);
  const std::vector<LocalSetup> setups{{FieldKind::EqualChar, 2, 1, 2}, {FieldKind::EqualChar, 3, 1, 2},
                                       {FieldKind::EqualChar, 2, 1, 3}, {FieldKind::EqualChar, 2, 2, 2},
                                       {FieldKind::Mixed, 2, 1, 2},     {FieldKind::Mixed, 3, 1, 2},
                                       {FieldKind::Mixed, 2, 1, 3},     {FieldKind::Mixed, 5, 1, 2}};

  // norm multiplicativity
  int norm_cases = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto& s = setups[i % setups.size()];
    auto A = Algebra::create(s.kind, s.p, s.e, s.d, 1, 12);
    auto x = A->random_elem(12, rng), y = A->random_elem(12, rng);
    auto nxy = A->nrd(A->mul(x, y));
    auto prod = A->F().mul(A->nrd(x), A->nrd(y));
    const int n = std::min(nxy.prec, prod.prec);
    o.require(n >= 1 && A->F().equal_mod(nxy, prod, n), "nrd(xy) != nrd(x) nrd(y)");
    ++norm_cases;
  }

  // precision soundness: results at precision N agree with any lift of the inputs
  int prec_cases = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto& s = setups[i % setups.size()];
    auto E = UnramExt::create(make_local_field(s.kind, s.p, s.e, 14), s.d, 14);
    const int N = 3 + static_cast<int>(rng() % 6);
    auto a = random_local(*E, N, rng), b = random_local(*E, N, rng);
    auto A = widen(*E, a, N + 5, rng), B = widen(*E, b, N + 5, rng);
    auto sum = E->add(a, b), prod = E->mul(a, b);
    o.require(E->equal_mod(E->truncate(E->add(A, B), sum.prec), sum, sum.prec), "sum precision");
    o.require(E->equal_mod(E->truncate(E->mul(A, B), prod.prec), prod, prod.prec), "product precision");
    if (E->is_unit(a)) o.require(E->equal_mod(E->truncate(E->inv(A), N), E->inv(a), N), "inverse precision");
    ++prec_cases;
  }

  // graded pieces: U^i/U^(i+1) of D^1 has q^d elements, q^(d-1) (trace zero) when d | i
  int graded = 0;
  for (const auto& s : setups) {
    auto A = Algebra::create(s.kind, s.p, s.e, s.d, 1, 12);
    std::size_t full = 1;
    for (unsigned j = 0; j < s.d; ++j) full *= A->q();
    for (int i = 1; i <= 4; ++i) {
      std::size_t got;
      try {
        got = A->graded_image_size(i);
      } catch (const BudgetError&) {
        continue;
      }
      o.require(got == (i % static_cast<int>(s.d) == 0 ? full / A->q() : full), "graded piece size");
      ++graded;
    }
  }

  // |Delta_f| from the graded pieces, Mackey against dense intertwiners, sum of dim^2
  int mackey = 0, tables = 0;
  for (auto [q, f] : std::vector<std::pair<std::uint32_t, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {4, 1},
                                                                {4, 2}, {5, 1}, {5, 2}, {3, 3}}) {
    auto p = params(q, f);
    auto uq = make_quotient(p, f);
    std::size_t order = q + 1;
    for (int i = 1; i < f; ++i) order *= (i % 2 == 0) ? q : q * q;
    o.require(uq->delta()->size() == order, "|Delta_f| at " + tag(q, f, 0));

    const long M = coefficient_modulus(*uq);
    if (uq->delta()->size() <= 400) {
      auto t = ordinary_table(uq->delta(), M, 1);
      long sq = 0;
      for (int dim : t.dims) sq += static_cast<long>(dim) * dim;
      o.require(sq == static_cast<long>(uq->delta()->size()), "sum of dim^2 at " + tag(q, f, 0));
      o.require(t.dims.size() == t.classes.size(), "irreducible count != class count at " + tag(q, f, 0));
      ++tables;
    }
    if (uq->whole()->size() > 2000) continue;
    auto w = make_work(*uq, 0);
    std::vector<Induced<FF>> built;
    for (const auto& in : all_instances(*uq, 0)) built.push_back(build_instance(*w.ff, *uq, in).Pi);
    for (std::size_t i = 0; i < built.size(); ++i) {
      const auto& P = built[i];
      auto dense = tabulate(induced_rep(P));
      int total = 0;
      for (const auto& piece : mackey_restrict(P, uq->delta())) total += piece.dim();
      o.require(total == P.dim(), "Mackey pieces lose dimension");
      o.require(commutant_dim(P) == commutant_dim_dense(dense), "commutant: Mackey vs dense");
      o.require(restricted_commutant_dim(P, uq->delta()) == commutant_dim_dense(restrict_rep(dense, uq->delta())),
                "restricted commutant: Mackey vs dense");
      const auto& Q = built[rng() % built.size()];
      o.require(hom_dim(P, Q) == hom_dim_dense(dense, tabulate(induced_rep(Q))), "hom_dim: Mackey vs dense");
      ++mackey;
    }
  }
  o.note << norm_cases << " norm pairs, " << prec_cases << " precision cases, " << graded << " graded pieces, "
         << mackey << " Mackey comparisons, " << tables << " character tables";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double target_s;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {"tame classification, q in {2,3,4,5}", 30, tame_classification},
      {"trichotomy over all built representations", 600, trichotomy},
      {"q = 2 over Q_2, f = 2: irreducible of dimension 3", 10, p2_f2},
      {"wild, p odd: two inequivalent components", 120, wild_p_odd},
      {"F = Q_p, characteristic-p coefficients", 30, fp_qp},
      {"two commutators and derived subgroup", 120, commutators},
      {"reduction mod l and Brauer matching", 120, mod_ell},
      {"twist count equals d_Pi", 60, twist_count},
      {"property suites", 120, properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.ok;
    std::printf("%s  %zu  %s  [%.1f s, target %.0f s%s]  %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].name, s,
                criteria[i].target_s, s > criteria[i].target_s ? ", over target" : "", o.note.str().c_str());
    std::fflush(stdout);
  }
  return failed;
}
