#include "quatrep/commutator.hpp"

#include "quatrep/errors.hpp"

namespace quatrep {

ZT make_z_t(const Algebra& alg, int prec) {
  if (prec < 3) throw PrecisionError("commutator construction needs precision at least 3");
  const auto& E = alg.E();
  const auto& F = alg.F();
  const auto& kD = alg.kD();
  const auto zbar = kD.pow(kD.generator(), alg.q() - 1);
  ZT out;
  out.z = alg.teichmuller(zbar, prec);
  const int nf = alg.coeff_prec(0, prec);
  const long long sign = (alg.d() % 2 == 1) ? 1 : -1;
  LocalElem target = F.add(F.one(nf), F.shift(F.from_int(sign, nf - 1), 1));
  LocalElem u = E.solve_norm_equation(target, 1);
  QuatElem one_pd = alg.add(alg.one(prec), alg.uniformizer(prec));
  out.t = alg.mul(one_pd, alg.from_E(E.inv(u), prec));
  if (!alg.is_norm_one(out.t)) throw ObstructionError("t is not of reduced norm one");
  return out;
}

QuatElem solve_level_a(const Algebra& alg, const QuatElem& z, GaloisField::Elem s, int i, int prec) {
  const int d = static_cast<int>(alg.d());
  if (i < 1 || i % d == 0) throw DomainError("level-a step needs d not dividing i");
  if (s == 0) return alg.one(prec);
  const auto& kD = alg.kD();
  const auto zbar = alg.residue_and_valuation(z).second;
  // sigma^(r i) acts on k_D as the (q^(r i))-th power.
  const unsigned frob = static_cast<unsigned>((static_cast<long long>(alg.r()) * i % d) * alg.kF().degree());
  const auto denom = kD.sub(kD.div(zbar, kD.frobenius(zbar, frob)), kD.one());
  if (denom == 0) throw ObstructionError("level-a denominator vanished");
  const auto x = kD.div(s, denom);
  return alg.lift_graded_to_D1(x, i, prec);
}

std::vector<GaloisField::Elem> artin_schreier_roots(const Algebra& alg, GaloisField::Elem s) {
  const auto& kD = alg.kD();
  const unsigned frob = alg.r() * alg.kF().degree();
  std::vector<GaloisField::Elem> out;
  for (GaloisField::Elem x = 0; x < kD.size(); ++x)
    if (kD.sub(kD.frobenius(x, frob), x) == s) out.push_back(x);
  return out;
}

QuatElem solve_level_b(const Algebra& alg, const QuatElem& t, GaloisField::Elem s, int i, int prec) {
  (void)t;
  const int d = static_cast<int>(alg.d());
  if (i < d || i % d != 0) throw DomainError("level-b step needs d dividing i");
  if (s == 0) return alg.one(prec);
  if (alg.kD().trace_to(s, alg.kF().degree()) != 0) throw ObstructionError("level-b residue has nonzero trace");
  auto roots = artin_schreier_roots(alg, s);
  if (roots.empty()) throw ObstructionError("no Artin-Schreier root for a trace-zero residue");
  return alg.lift_graded_to_D1(roots.front(), i - 1, prec);
}

namespace {

QuatElem product_form(const Algebra& alg, const CommutatorWitness& w) {
  return alg.mul(alg.commutator(w.z, w.b), alg.commutator(w.t, w.c));
}

}  // namespace

CommutatorWitness factor_two_commutators(const Algebra& alg, const QuatElem& a_in, int prec) {
  if (a_in.prec < prec) throw PrecisionError("input known to fewer digits than requested");
  QuatElem a = alg.truncate(a_in, prec);
  if (!alg.is_norm_one(a)) throw DomainError("input is not of reduced norm one");
  if (alg.unit_level(a) < 1) throw DomainError("input is not a 1-unit");
  const int d = static_cast<int>(alg.d());
  auto zt = make_z_t(alg, prec);
  CommutatorWitness w{zt.z, zt.t, alg.one(prec), alg.one(prec), a, prec, 0};
  for (int i = 1; i < prec; ++i) {
    const QuatElem W = product_form(alg, w);
    const bool divisible = i % d == 0;
    const QuatElem u = divisible ? alg.mul(alg.inv(W), a) : alg.mul(a, alg.inv(W));
    const int level = alg.unit_level(u);
    if (level < i) throw ObstructionError("discrepancy below the current level");
    if (level > i) continue;
    const auto s = alg.level_digit(u, i);
    if (!divisible) {
      w.b = alg.mul(solve_level_a(alg, w.z, s, i, prec), w.b);
    } else {
      if (alg.kD().trace_to(s, alg.kF().degree()) != 0)
        throw ObstructionError("norm-one discrepancy with nonzero trace at a level divisible by d");
      w.c = alg.mul(w.c, solve_level_b(alg, w.t, s, i, prec));
    }
    const int after = alg.unit_level(alg.mul(a, alg.inv(product_form(alg, w))));
    if (after <= i) throw ObstructionError("commutator iteration did not advance at level " + std::to_string(i));
  }
  auto check = verify_witness(alg, w);
  if (!check.ok) throw ObstructionError("final witness failed verification: " + check.reason);
  return w;
}

WitnessCheck verify_witness(const Algebra& alg, const CommutatorWitness& w) {
  WitnessCheck out;
  const int n = w.precision;
  const int nf = n / static_cast<int>(alg.d());
  const auto& F = alg.F();
  auto norm_one = [&](const QuatElem& x) {
    auto v = alg.nrd(x);
    return v.prec >= nf && F.equal_mod(v, F.one(nf), nf);
  };
  for (auto [x, name] : {std::pair{&w.z, "z"}, {&w.t, "t"}, {&w.b, "b"}, {&w.c, "c"}}) {
    if (x->prec < n) {
      out.reason = std::string(name) + " known to fewer digits than the precision";
      return out;
    }
    if (!norm_one(*x)) {
      out.reason = std::string(name) + " is not of reduced norm one";
      return out;
    }
  }
  auto prod = product_form(alg, w);
  auto diff = alg.sub(alg.truncate(prod, n), alg.truncate(w.a, n));
  out.agreement = std::min(alg.valuation(diff), n);
  if (out.agreement < n) {
    out.reason = "a and (z,b)(t,c) differ at level " + std::to_string(out.agreement);
    return out;
  }
  out.ok = true;
  return out;
}

QuatElem random_norm_one_unit(const Algebra& alg, int prec, std::mt19937_64& rng) {
  return alg.normalize_to_D1(alg.random_one_unit(1, prec, rng));
}

}  // namespace quatrep
