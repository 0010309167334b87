#include "qstr/qcn.hpp"

#include <set>

namespace qstr {

Qcn::Qcn(CalculusPtr calculus, std::vector<std::string> variables,
         std::string name)
    : calculus_(std::move(calculus)), vars_(std::move(variables)),
      name_(std::move(name)) {
  if (!calculus_)
    throw InvalidArgument("network needs a calculus");
  if (vars_.empty())
    throw InvalidArgument("network needs at least one variable");
  std::set<std::string_view> seen;
  for (const auto &v : vars_) {
    if (v.empty())
      throw InvalidArgument("empty variable name");
    if (!seen.insert(v).second)
      throw InvalidArgument("duplicate variable name '" + v + "'");
  }
  const std::size_t n = vars_.size();
  m_.assign(n * n, calculus_->universal_bits());
  for (std::size_t i = 0; i < n; ++i)
    m_[i * n + i] = bit_of(calculus_->identity());
}

std::optional<std::size_t> Qcn::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name)
      return i;
  return std::nullopt;
}

void Qcn::check_index(std::size_t i, std::size_t j) const {
  if (i >= vars_.size() || j >= vars_.size())
    throw InvalidArgument("variable index out of range");
}

Relation Qcn::at(std::size_t i, std::size_t j) const {
  check_index(i, j);
  return {*calculus_, bits(i, j)};
}

void Qcn::set(std::size_t i, std::size_t j, const Relation &r) {
  if (&r.calculus() != calculus_.get())
    throw CalculusMismatch("relation from calculus " + r.calculus().name() +
                           " used in a " + calculus_->name() + " network");
  set_bits(i, j, r.bits());
}

void Qcn::set_bits(std::size_t i, std::size_t j, RelationBits r) {
  check_index(i, j);
  if (r & ~calculus_->universal_bits())
    throw InvalidArgument("relation bits outside calculus");
  if (i == j) {
    if (r != bit_of(calculus_->identity()))
      throw InvalidArgument("diagonal constraint of '" + vars_[i] +
                            "' must be the identity relation");
    return;
  }
  const std::size_t n = vars_.size();
  m_[i * n + j] = r;
  m_[j * n + i] = calculus_->converse_bits(r);
}

bool Qcn::refine(std::size_t i, std::size_t j, const Relation &r) {
  if (&r.calculus() != calculus_.get())
    throw CalculusMismatch("relation from calculus " + r.calculus().name() +
                           " used in a " + calculus_->name() + " network");
  return refine_bits(i, j, r.bits());
}

bool Qcn::refine_bits(std::size_t i, std::size_t j, RelationBits r) {
  check_index(i, j);
  const RelationBits old = bits(i, j);
  const RelationBits next = old & r;
  if (next == old)
    return false;
  if (i == j) {
    // The diagonal is fixed to {Id}.
    throw InvalidArgument("refining the diagonal of '" + vars_[i] +
                          "' to exclude the identity");
  }
  set_bits(i, j, next);
  return true;
}

bool Qcn::is_atomic() const {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if (cardinality(bits(i, j)) != 1)
        return false;
  return true;
}

bool Qcn::has_empty_constraint() const {
  for (RelationBits r : m_)
    if (r == 0)
      return true;
  return false;
}

std::size_t Qcn::constrained_pairs() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if (bits(i, j) != calculus_->universal_bits())
        ++count;
  return count;
}

bool Qcn::is_refinement_of(const Qcn &other) const {
  if (!calculus_->same_algebra(*other.calculus_) || vars_ != other.vars_)
    return false;
  for (std::size_t k = 0; k < m_.size(); ++k)
    if (m_[k] & ~other.m_[k])
      return false;
  return true;
}

bool operator==(const Qcn &a, const Qcn &b) {
  return a.calculus_->same_algebra(*b.calculus_) && a.vars_ == b.vars_ &&
         a.name_ == b.name_ && a.m_ == b.m_;
}

Qcn new_qcn(CalculusPtr calculus, std::vector<std::string> variables) {
  return Qcn(std::move(calculus), std::move(variables));
}

Qcn set_constraint(Qcn q, std::size_t i, std::size_t j, const Relation &r) {
  q.set(i, j, r);
  return q;
}

Qcn refine(Qcn q, std::size_t i, std::size_t j, const Relation &r) {
  q.refine(i, j, r);
  return q;
}

Qcn intersect(const Qcn &a, const Qcn &b) {
  if (!a.calculus().same_algebra(b.calculus()))
    throw CalculusMismatch("networks use different calculi (" +
                           a.calculus().name() + " vs " + b.calculus().name() +
                           ")");
  if (a.variables() != b.variables())
    throw InvalidArgument("networks have different variables");
  Qcn out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      out.refine_bits(i, j, b.bits(i, j));
  return out;
}

Qcn reorder_variables(const Qcn &q, const std::vector<std::string> &order) {
  if (order.size() != q.size())
    throw InvalidArgument("variable lists differ in length");
  std::vector<std::size_t> from;
  for (const auto &v : order) {
    auto i = q.index_of(v);
    if (!i)
      throw InvalidArgument("unknown variable '" + v + "'");
    from.push_back(*i);
  }
  Qcn out(q.calculus_ptr(), order, q.name());
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      out.set_bits(i, j, q.bits(from[i], from[j]));
  return out;
}

Qcn embed_variables(const Qcn &q, const std::vector<std::string> &variables) {
  Qcn out(q.calculus_ptr(), variables, q.name());
  std::vector<std::size_t> at;
  for (const auto &v : q.variables()) {
    auto i = out.index_of(v);
    if (!i)
      throw InvalidArgument("variable '" + v + "' does not occur in the target network");
    at.push_back(*i);
  }
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j)
      out.set_bits(at[i], at[j], q.bits(i, j));
  return out;
}

std::vector<std::string> audit(const Qcn &q) {
  std::vector<std::string> out;
  const Calculus &c = q.calculus();
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q.bits(i, i) != bit_of(c.identity()))
      out.push_back("diagonal of " + q.variable(i) + " is not {Id}");
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (q.bits(i, j) & ~c.universal_bits())
        out.push_back("constraint (" + q.variable(i) + "," + q.variable(j) +
                      ") has bits outside the calculus");
      if (q.bits(j, i) != c.converse_bits(q.bits(i, j)))
        out.push_back("constraint (" + q.variable(j) + "," + q.variable(i) +
                      ") is not the converse of (" + q.variable(i) + "," +
                      q.variable(j) + ")");
    }
  }
  return out;
}

} // namespace qstr
