#ifndef QSTR_SEARCH_HPP
#define QSTR_SEARCH_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qstr/algebra.hpp"
#include "qstr/qcn.hpp"

namespace qstr::detail {

using Matrix = std::vector<RelationBits>;
using Pair = std::pair<std::size_t, std::size_t>;

Matrix matrix_of(const Qcn &q);
Qcn network_of(const Qcn &shape, const Matrix &m);

// Closure from a set of revised pairs (i < j). Returns false as soon as a
// constraint becomes empty. revisions, when given, is incremented per shrink.
bool propagate(const Calculus &c, std::size_t n, Matrix &m,
               const std::vector<Pair> &seeds, std::size_t *revisions);
bool propagate_all(const Calculus &c, std::size_t n, Matrix &m,
                   std::size_t *revisions);

// Non-atomic pair with the fewest base relations, lowest (i,j) on ties.
std::optional<Pair> pick_branch(std::size_t n, const Matrix &m);

// Copy of m with (i,j) fixed to base relation k, closed again. nullopt if
// closure empties a constraint.
std::optional<Matrix> branch(const Calculus &c, std::size_t n, const Matrix &m,
                             Pair edge, std::size_t k);

} // namespace qstr::detail

#endif
