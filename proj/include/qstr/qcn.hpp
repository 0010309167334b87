#ifndef QSTR_QCN_HPP
#define QSTR_QCN_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qstr/algebra.hpp"
#include "qstr/calculi.hpp"

namespace qstr {

/// A qualitative constraint network: variables v_0..v_{n-1} and a relation for
/// every ordered pair. The diagonal is always {Id} and (j,i) always holds the
/// converse of (i,j); every mutator keeps both in place.
class Qcn {
public:
  // All off-diagonal constraints start universal. Throws InvalidArgument on
  // an empty or duplicated variable list.
  Qcn(CalculusPtr calculus, std::vector<std::string> variables,
      std::string name = "net");

  const std::string &name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  std::size_t size() const { return vars_.size(); }
  const std::vector<std::string> &variables() const { return vars_; }
  const std::string &variable(std::size_t i) const { return vars_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  const Calculus &calculus() const { return *calculus_; }
  const CalculusPtr &calculus_ptr() const { return calculus_; }

  RelationBits bits(std::size_t i, std::size_t j) const {
    return m_[i * vars_.size() + j];
  }
  Relation at(std::size_t i, std::size_t j) const;

  // Writes r at (i,j) and its converse at (j,i). On the diagonal only {Id} is
  // accepted. An empty relation is stored as is.
  void set(std::size_t i, std::size_t j, const Relation &r);
  void set_bits(std::size_t i, std::size_t j, RelationBits r);
  // Intersects (i,j) with r. Returns true if the constraint shrank.
  bool refine(std::size_t i, std::size_t j, const Relation &r);
  bool refine_bits(std::size_t i, std::size_t j, RelationBits r);

  bool is_atomic() const;
  bool has_empty_constraint() const;
  // Number of unordered pairs whose constraint is not universal.
  std::size_t constrained_pairs() const;
  // Entrywise subset test; same algebra and variables required.
  bool is_refinement_of(const Qcn &other) const;

  friend bool operator==(const Qcn &a, const Qcn &b);

private:
  void check_index(std::size_t i, std::size_t j) const;

  CalculusPtr calculus_;
  std::vector<std::string> vars_;
  std::string name_;
  std::vector<RelationBits> m_;
};

// Value-returning forms of the mutators.
Qcn new_qcn(CalculusPtr calculus, std::vector<std::string> variables);
Qcn set_constraint(Qcn q, std::size_t i, std::size_t j, const Relation &r);
Qcn refine(Qcn q, std::size_t i, std::size_t j, const Relation &r);

// Pairwise intersection of two networks over the same algebra and variables.
Qcn intersect(const Qcn &a, const Qcn &b);

// Copy of q with its variables listed in the given order (a permutation of
// q's variables); throws InvalidArgument otherwise.
Qcn reorder_variables(const Qcn &q, const std::vector<std::string> &order);

// Copy of q over a superset of its variables; pairs involving a variable q
// does not mention are universal.
Qcn embed_variables(const Qcn &q, const std::vector<std::string> &variables);

// Lists every broken network invariant (diagonal, converse consistency).
std::vector<std::string> audit(const Qcn &q);

} // namespace qstr

#endif
