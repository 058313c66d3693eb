#include "quatrep/rep.hpp"

#include <numeric>

namespace quatrep {

std::vector<Cyc> root_table(const CyclotomicField& k, long M) {
  if (k.root_order() % M != 0) throw DomainError("root_table: field lacks the roots of unity of order " + std::to_string(M));
  std::vector<Cyc> t;
  t.reserve(M);
  const long step = k.root_order() / M;
  for (long e = 0; e < M; ++e) t.push_back(k.root(e * step));
  return t;
}

std::vector<FiniteCoeffField::Elem> root_table(const FiniteCoeffField& k, long M) {
  const long ell = k.characteristic();
  const long mp = prime_to_part(M, ell);
  const long lpow = M / mp;
  if (k.root_order() % mp != 0)
    throw DomainError("root_table: field lacks the roots of unity of order " + std::to_string(mp));
  // theta has order m' and theta^(l^a) = root_of_unity(m')
  long inv = 0;
  for (long t = 0; t < mp; ++t)
    if ((t * (lpow % mp)) % mp == 1 % mp) {
      inv = t;
      break;
    }
  const auto theta = k.pow(k.root_of_unity(mp), inv);
  std::vector<FiniteCoeffField::Elem> out(M);
  auto x = k.one();
  for (long e = 0; e < M; ++e) {
    out[e] = x;
    x = k.mul(x, theta);
  }
  return out;
}

}  // namespace quatrep
