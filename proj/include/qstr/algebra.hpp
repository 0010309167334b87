#ifndef QSTR_ALGEBRA_HPP
#define QSTR_ALGEBRA_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qstr/error.hpp"

namespace qstr {

// A set of base-relation indices, one bit per base relation.
using RelationBits = std::uint64_t;

inline constexpr std::size_t max_base_relations = 64;

inline constexpr RelationBits bit_of(std::size_t k) {
  return RelationBits{1} << k;
}

inline int cardinality(RelationBits r) { return std::popcount(r); }

// Calls f(k) for every base index k in r, ascending.
template <typename F> inline void for_each_base(RelationBits r, F &&f) {
  while (r) {
    f(static_cast<std::size_t>(std::countr_zero(r)));
    r &= r - 1;
  }
}

/// A finite set of jointly exhaustive, pairwise disjoint base relations
/// together with the identity, the converse permutation and the weak
/// composition table. Immutable after construction.
///
/// The constructor only checks shapes (sizes, index ranges). Algebraic laws
/// such as converse involution or converse/composition duality are checked by
/// validate_calculus(), so a malformed user table can still be inspected.
class Calculus {
public:
  Calculus(std::string name, std::string domain_description,
           std::vector<std::string> base_relations, std::size_t identity,
           std::vector<std::size_t> converse,
           std::vector<RelationBits> composition, bool atomic_closure_decides);

  const std::string &name() const { return name_; }
  const std::string &domain_description() const { return domain_; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string> &base_relations() const { return names_; }
  const std::string &base_name(std::size_t k) const { return names_.at(k); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t identity() const { return identity_; }
  std::size_t converse_of(std::size_t k) const { return converse_.at(k); }
  RelationBits compose_base(std::size_t a, std::size_t b) const {
    return table_[a * names_.size() + b];
  }
  bool atomic_closure_decides() const { return closure_decides_; }
  RelationBits universal_bits() const { return universal_; }

  RelationBits converse_bits(RelationBits r) const;
  RelationBits compose_bits(RelationBits r, RelationBits s) const;

  // Parses names into a bit set; throws InvalidArgument on an unknown name.
  RelationBits bits_of(std::span<const std::string> names) const;
  RelationBits bits_of(std::initializer_list<std::string_view> names) const;
  // Names in declaration order.
  std::vector<std::string> names_of(RelationBits r) const;

  // Algebraic equality: name, relations, identity, converse and table.
  // The atomic_closure_decides flag is metadata and not compared.
  bool same_algebra(const Calculus &other) const;

private:
  std::string name_;
  std::string domain_;
  std::vector<std::string> names_;
  std::size_t identity_;
  std::vector<std::size_t> converse_;
  std::vector<RelationBits> table_;
  bool closure_decides_;
  RelationBits universal_;
  std::size_t chunks_;
  // compose_chunk_[(a * chunks_ + c) * 256 + v] = a ⋄ (v << 8c)
  std::vector<RelationBits> compose_chunk_;
};

/// An element of 2^B: a disjunction of base relations of one calculus.
class Relation {
public:
  Relation(const Calculus &calculus, RelationBits bits);

  static Relation empty(const Calculus &c) { return {c, 0}; }
  static Relation universal(const Calculus &c) {
    return {c, c.universal_bits()};
  }
  static Relation base(const Calculus &c, std::size_t k);
  static Relation identity(const Calculus &c) { return base(c, c.identity()); }
  static Relation of(const Calculus &c,
                     std::initializer_list<std::string_view> names) {
    return {c, c.bits_of(names)};
  }

  RelationBits bits() const { return bits_; }
  const Calculus &calculus() const { return *calculus_; }
  std::size_t size() const { return static_cast<std::size_t>(cardinality(bits_)); }
  bool is_empty() const { return bits_ == 0; }
  bool is_atomic() const { return cardinality(bits_) == 1; }
  bool contains(std::size_t k) const { return (bits_ & bit_of(k)) != 0; }
  bool is_subset_of(const Relation &other) const;

  // "{p,pi}" using calculus names.
  std::string to_string() const;

  friend bool operator==(const Relation &a, const Relation &b) {
    return a.calculus_ == b.calculus_ && a.bits_ == b.bits_;
  }

private:
  const Calculus *calculus_;
  RelationBits bits_;
};

Relation converse(const Relation &r);
Relation compose(const Relation &r, const Relation &s);
Relation unite(const Relation &r, const Relation &s);
Relation intersect(const Relation &r, const Relation &s);
Relation complement(const Relation &r);
inline bool is_atomic(const Relation &r) { return r.is_atomic(); }
inline Relation universal(const Calculus &c) { return Relation::universal(c); }

} // namespace qstr

#endif
