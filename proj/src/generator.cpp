#include "qstr/generator.hpp"

#include <limits>
#include <random>

namespace qstr {

namespace {

// Uniform in [0, bound) by rejection, independent of the standard library's
// distribution implementations.
std::uint64_t draw_below(std::mt19937_64 &rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do
    x = rng();
  while (x >= limit);
  return x % bound;
}

double draw_unit(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

Qcn random_network(CalculusPtr calculus, const RandomModel &model) {
  if (model.variables == 0)
    throw InvalidArgument("random network needs at least one variable");
  if (model.label_size == 0 || model.label_size > calculus->size())
    throw InvalidArgument("label size must be in 1.." +
                          std::to_string(calculus->size()));
  if (!(model.density >= 0.0 && model.density <= 1.0))
    throw InvalidArgument("density must be in [0,1]");

  std::vector<std::string> names;
  for (std::size_t i = 0; i < model.variables; ++i)
    names.push_back("v" + std::to_string(i));
  Qcn q(calculus, std::move(names), "random");

  std::mt19937_64 rng(model.seed);
  const std::size_t b = calculus->size();
  for (std::size_t i = 0; i < model.variables; ++i)
    for (std::size_t j = i + 1; j < model.variables; ++j) {
      if (draw_unit(rng) >= model.density)
        continue;
      // Partial Fisher-Yates over the base relation indices.
      std::vector<std::size_t> pool(b);
      for (std::size_t k = 0; k < b; ++k)
        pool[k] = k;
      RelationBits r = 0;
      for (std::size_t t = 0; t < model.label_size; ++t) {
        const std::size_t pick = t + draw_below(rng, b - t);
        std::swap(pool[t], pool[pick]);
        r |= bit_of(pool[t]);
      }
      q.set_bits(i, j, r);
    }
  return q;
}

} // namespace qstr
