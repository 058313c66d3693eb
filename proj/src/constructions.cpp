#include "quatrep/constructions.hpp"

#include <numeric>
#include <random>

#include "quatrep/errors.hpp"

namespace quatrep {

namespace {

long mod(long a, long m) {
  a %= m;
  return a < 0 ? a + m : a;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// t with n t = v mod M, or -1.
long solve_linear(long n, long v, long M) {
  long g = std::gcd(n, M);
  if (mod(v, g) != 0) return -1;
  long n1 = n / g, M1 = M / g, v1 = mod(v / g, M1);
  for (long t = 0; t < M1; ++t)
    if (mod(n1 * t, M1) == v1) return t;
  return -1;
}

template <class K>
typename K::Elem field_pow(const K& k, typename K::Elem x, long e) {
  if (e < 0) {
    x = k.inv(x);
    e = -e;
  }
  auto r = k.one();
  while (e > 0) {
    if (e & 1) r = k.mul(r, x);
    x = k.mul(x, x);
    e >>= 1;
  }
  return r;
}

template <class K>
Mat<K> mat_pow(const K& k, const Mat<K>& a, long e) {
  auto r = mat_identity(k, a.rows);
  for (long i = 0; i < e; ++i) r = mat_mul(k, r, a);
  return r;
}

template <class K>
bool spot_check(const Rep<K>& r, int samples, std::uint64_t seed) {
  const K& k = *r.field;
  const auto& H = *r.domain;
  const FinGroup& G = H.group();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, H.size() - 1);
  for (int t = 0; t < samples; ++t) {
    GIdx x = H.elements()[pick(rng)], y = H.elements()[pick(rng)];
    if (!mat_equal(k, mat_mul(k, r.eval(x), r.eval(y)), r.eval(G.mul(x, y)))) return false;
  }
  return true;
}

template <class K>
bool check_rep(const Rep<K>& r) {
  if (r.field->characteristic() != 0) return is_representation(r);
  return spot_check(r, 100, 7);
}

}  // namespace

long coefficient_modulus(const UnitQuotient& uq) {
  const long q = uq.q();
  long qd = 1;
  for (unsigned i = 0; i < uq.d(); ++i) qd *= q;
  return static_cast<long>(uq.d()) * (qd - 1) * ipow(uq.algebra().E().p(), uq.level() - 1);
}

bool tame_is_regular(std::uint32_t q, long c) {
  const long n = static_cast<long>(q) * q - 1;
  return mod(c * (static_cast<long>(q) - 1), n) != 0;
}

long tame_restriction_order(std::uint32_t q, long c) {
  const long n = static_cast<long>(q) * q - 1;
  return n / std::gcd(n, mod(c * (static_cast<long>(q) - 1), n) == 0 ? n : mod(c * (static_cast<long>(q) - 1), n));
}

Character tame_lambda(const UnitQuotient& uq, long c, long M) {
  const long n = static_cast<long>(uq.q()) * uq.q() - 1;
  if (uq.d() != 2) throw DomainError("tame_lambda: needs d = 2");
  if (M % n != 0) throw DomainError("tame_lambda: modulus must be a multiple of q^2 - 1");
  auto H = uq.units();
  const GaloisField& kD = uq.algebra().kD();
  Character chi{H, M, {}};
  for (GIdx g : H->elements()) chi.exps.push_back(static_cast<std::int32_t>(mod(c * kD.log(uq.residue(g)) * (M / n), M)));
  return chi;
}

Character wild_chi(const UnitQuotient& uq, const SubgroupPtr& N, const WildDatum& w, long M) {
  const Algebra& A = uq.algebra();
  const FinGroup& G = *uq.gamma();
  const long q = uq.q(), p = A.E().p();
  const int m = (uq.level() + 1) / 2;
  if (M % p != 0 || M % (q - 1) != 0) throw DomainError("wild_chi: modulus lacks p-th or (q-1)-th roots");
  Character chi{N, M, {}};
  for (GIdx g : N->elements()) {
    auto res = uq.residue(g);
    if (!A.E().residue_in_base(res)) throw DomainError("wild_chi: element outside F^* U^m");
    GIdx u = G.mul(G.inv(uq.teich(res)), g);
    if (uq.unit_level(u) < m) throw DomainError("wild_chi: element outside F^* U^m");
    auto x = m < uq.level() ? uq.digit(u, m) : 0;
    long tr = A.kD().abs_trace(A.kD().mul(w.a, x));
    long kf = A.kF().log(A.E().residue_to_base(res));
    chi.exps.push_back(static_cast<std::int32_t>(mod(w.cF * kf * (M / (q - 1)) + tr * (M / p), M)));
  }
  if (!is_homomorphism(chi)) throw DomainError("wild_chi: not a character");
  return chi;
}

SubgroupPtr character_stabilizer(const UnitQuotient& uq, const Character& chi) {
  const FinGroup& G = *uq.gamma();
  const auto& N = *chi.domain;
  return Subgroup::from_predicate(
      uq.gamma(),
      [&](GIdx g) {
        for (GIdx s : N.gens()) {
          GIdx c = G.conj(g, s);
          if (!N.contains(c) || chi.at(c) != chi.at(s)) return false;
        }
        return true;
      },
      "stab(chi)");
}

template <class K>
BuiltRep<K> build_tame_rep(const K& k, const UnitQuotient& uq, long c) {
  if (!tame_is_regular(uq.q(), c)) throw DomainError("build_tame_rep: nu is not regular (nu^q = nu)");
  BuiltRep<K> b;
  b.M = coefficient_modulus(uq);
  b.level = uq.level();
  b.kind = "tame";
  auto lam = tame_lambda(uq, c, b.M);
  b.J = uq.units();
  b.Pi = make_induced(uq.whole(), rep_from_character(k, lam, "lambda_nu"), "tame(c=" + std::to_string(c) + ")");
  b.normalization = "none";
  return b;
}

template <class K>
BuiltRep<K> build_wild_rep(const K& k, const UnitQuotient& uq, const WildDatum& w) {
  const int f = uq.level();
  if (f != 2 && f != 3) throw DomainError("build_wild_rep: supported levels are 2 and 3");
  const Algebra& A = uq.algebra();
  if (f % 2 == 0 && w.a == 0) throw DomainError("build_wild_rep: psi must be nontrivial");
  if (f % 2 == 1 && A.E().residue_in_base(w.a))
    throw DomainError("build_wild_rep: odd level needs a outside k_F (minimality)");
  auto subs = paper_subgroups(uq);
  BuiltRep<K> b;
  b.M = coefficient_modulus(uq);
  b.level = f;
  b.N = subs.N;
  const FinGroup& G = *uq.gamma();
  auto chi = wild_chi(uq, subs.N, w, b.M);
  b.J = character_stabilizer(uq, chi);

  if (f % 2 == 0) {
    b.kind = "wild-even";
    auto ext = extend_character_all(chi, b.J, 1);
    if (ext.empty()) throw ObstructionError("build_wild_rep: chi does not extend to its stabilizer");
    if (!is_homomorphism(ext[0])) throw ObstructionError("build_wild_rep: extension is not a character");
    b.Pi = make_induced(uq.whole(), rep_from_character(k, ext[0], "lambda"), "wild-even");
    b.normalization = "first extension in element order";
    return b;
  }

  b.kind = "wild-odd";
  const long q = uq.q();
  auto J1 = subs.J1, J2 = subs.J2;
  // greedy maximal isotropic M/J'' for (g, h) -> chi([g, h])
  auto Miso = J2;
  for (GIdx g : J1->elements()) {
    if (Miso->size() == static_cast<std::size_t>(q) * J2->size()) break;
    if (Miso->contains(g)) continue;
    bool iso = true;
    for (GIdx s : Miso->gens())
      if (chi.at(G.commutator(g, s)) != 0) {
        iso = false;
        break;
      }
    if (!iso) continue;
    auto gens = Miso->gens();
    gens.push_back(g);
    Miso = Subgroup::generate(uq.gamma(), gens, "M");
  }
  if (Miso->size() != static_cast<std::size_t>(q) * J2->size())
    throw ObstructionError("build_wild_rep: no maximal isotropic subgroup of the expected order");
  b.isotropic = Miso;
  auto chiM = extend_character_all(chi, Miso, 1);
  if (chiM.empty()) throw ObstructionError("build_wild_rep: chi does not extend to M");
  auto sigma_ind = make_induced(J1, rep_from_character(k, chiM[0], "chi_M"), "sigma0");
  if (commutant_dim(sigma_ind) != 1) throw ObstructionError("build_wild_rep: ind_M^J' chi_M is reducible");
  auto sigma = tabulate(induced_rep(sigma_ind));

  // J / J' is cyclic, generated by omega = teich(generator of k_D)
  GIdx omega = uq.teich(A.kD().generator());
  long n = 1;
  for (GIdx x = omega; !J1->contains(x); x = G.mul(x, omega)) ++n;
  GIdx omega_n = G.pow(omega, n);
  GIdx omega_inv = G.inv(omega);

  std::vector<std::pair<Mat<K>, Mat<K>>> pairs;
  for (GIdx h : J1->gens()) pairs.emplace_back(sigma.eval(h), sigma.eval(G.mul(G.mul(omega, h), omega_inv)));
  auto sols = intertwiners(k, static_cast<int>(q), static_cast<int>(q), pairs);
  if (sols.size() != 1) throw ObstructionError("build_wild_rep: conjugation by omega is not intertwined uniquely");
  const Mat<K>& Araw = sols[0];

  // A^n = c sigma(omega^n) with sigma(omega^n) = chi(omega^n) I
  auto roots = root_table(k, b.M);
  const long e = chi.at(omega_n);
  auto An = mat_pow(k, Araw, n);
  auto c = k.mul(An(0, 0), k.inv(roots[e]));
  if (!mat_equal(k, An, mat_scale(k, k.mul(c, roots[e]), mat_identity(k, static_cast<int>(q)))))
    throw ObstructionError("build_wild_rep: A^n is not scalar on sigma");
  // 1 = (-1) q + 1 n, so delta = det(A)^-1 c tau with tau^n = chi(omega^n)^q
  long t = solve_linear(n, q * e, b.M);
  if (t < 0) throw ObstructionError("build_wild_rep: no n-th root for the normalization");
  auto delta = k.mul(k.mul(k.inv(mat_det(k, Araw)), c), roots[t]);
  if (!k.eq(field_pow(k, delta, n), c)) throw ObstructionError("build_wild_rep: normalization failed");
  auto At = mat_scale(k, k.inv(delta), Araw);
  b.normalization = "lambda(omega) = delta^-1 A, delta = det(A)^-1 c zeta_M^" + std::to_string(t) +
                    ", n = " + std::to_string(n);

  // lambda(h omega^j) = sigma(h) At^j
  auto cs = left_cosets(b.J, J1);
  auto jmap = std::make_shared<std::vector<int>>(cs->index(), -1);
  auto Apow = std::make_shared<std::vector<Mat<K>>>();
  GIdx x = G.identity();
  for (long j = 0; j < n; ++j) {
    (*jmap)[cs->label[x]] = static_cast<int>(j);
    Apow->push_back(mat_pow(k, At, j));
    x = G.mul(x, omega);
  }
  auto ompow = std::make_shared<std::vector<GIdx>>();
  for (long j = 0; j < n; ++j) ompow->push_back(G.pow(omega, -j));
  Rep<K> lam;
  lam.field = &k;
  lam.domain = b.J;
  lam.dim = static_cast<int>(q);
  lam.provenance = "heisenberg";
  const FinGroup* Gp = &G;
  lam.eval = [sigma, cs, jmap, Apow, ompow, Gp, kp = &k](GIdx g) {
    int j = (*jmap)[cs->label[g]];
    return mat_mul(*kp, sigma.eval(Gp->mul(g, (*ompow)[j])), (*Apow)[j]);
  };
  lam = tabulate(lam);
  if (!check_rep(lam)) throw ObstructionError("build_wild_rep: extension to J is not a representation");
  b.Pi = make_induced(uq.whole(), lam, "wild-odd");
  return b;
}

template BuiltRep<CyclotomicField> build_tame_rep(const CyclotomicField&, const UnitQuotient&, long);
template BuiltRep<FiniteCoeffField> build_tame_rep(const FiniteCoeffField&, const UnitQuotient&, long);
template BuiltRep<CyclotomicField> build_wild_rep(const CyclotomicField&, const UnitQuotient&, const WildDatum&);
template BuiltRep<FiniteCoeffField> build_wild_rep(const FiniteCoeffField&, const UnitQuotient&, const WildDatum&);

}  // namespace quatrep
