#ifndef QSTR_GENERATOR_HPP
#define QSTR_GENERATOR_HPP

#include <cstddef>
#include <cstdint>

#include "qstr/qcn.hpp"

namespace qstr {

struct RandomModel {
  std::size_t variables = 5;
  // Probability that an unordered pair is constrained.
  double density = 0.5;
  // Base relations per constrained pair, 1..|B|.
  std::size_t label_size = 2;
  std::uint64_t seed = 1;
};

// Model A(n, d, l) networks: each pair is constrained with probability d by a
// uniformly drawn set of l base relations; other pairs stay universal.
// Byte-stable for a given seed across platforms (only std::mt19937_64 raw
// output is used). Variables are named v0..v{n-1}.
Qcn random_network(CalculusPtr calculus, const RandomModel &model);

} // namespace qstr

#endif
