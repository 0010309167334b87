#include "rng.hpp"

#include <algorithm>

namespace qstr_test {

qstr::RelationBits random_relation(Rng &rng, std::size_t b) {
  const std::size_t size = 1 + rng.below(b);
  std::vector<std::size_t> pool(b);
  for (std::size_t k = 0; k < b; ++k)
    pool[k] = k;
  qstr::RelationBits r = 0;
  for (std::size_t k = 0; k < size; ++k) {
    const std::size_t pick = k + rng.below(b - k);
    std::swap(pool[k], pool[pick]);
    r |= qstr::bit_of(pool[k]);
  }
  return r;
}

qstr::Qcn random_qcn(Rng &rng, const qstr::CalculusPtr &calc, std::size_t n,
                     double density, std::size_t max_size) {
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < n; ++i)
    vars.push_back("v" + std::to_string(i));
  qstr::Qcn q(calc, vars, "generated");
  const std::size_t b = calc->size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!rng.chance(density))
        continue;
      qstr::RelationBits r = random_relation(rng, b);
      while (static_cast<std::size_t>(qstr::cardinality(r)) > max_size)
        r &= r - 1;
      q.set_bits(i, j, r);
    }
  return q;
}

qstr::EdgeProbabilities random_distributions(Rng &rng, const qstr::Qcn &q) {
  qstr::EdgeProbabilities out(q.calculus_ptr(), q.size());
  const std::size_t b = q.calculus().size();
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      std::vector<double> w(b, 0.0);
      double total = 0.0;
      for (std::size_t k = 0; k < b; ++k)
        if (q.bits(i, j) & qstr::bit_of(k)) {
          // Coarse weights make exact ties between scenarios likely.
          w[k] = static_cast<double>(1 + rng.below(4));
          total += w[k];
        }
      if (total == 0.0)
        continue;
      for (auto &x : w)
        x /= total;
      out.set(i, j, w);
    }
  return out;
}

} // namespace qstr_test
