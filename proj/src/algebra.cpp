#include "qstr/algebra.hpp"

#include <algorithm>

namespace qstr {

Calculus::Calculus(std::string name, std::string domain_description,
                   std::vector<std::string> base_relations,
                   std::size_t identity, std::vector<std::size_t> converse,
                   std::vector<RelationBits> composition,
                   bool atomic_closure_decides)
    : name_(std::move(name)), domain_(std::move(domain_description)),
      names_(std::move(base_relations)), identity_(identity),
      converse_(std::move(converse)), table_(std::move(composition)),
      closure_decides_(atomic_closure_decides) {
  const std::size_t n = names_.size();
  if (n == 0 || n > max_base_relations)
    throw InvalidArgument("calculus '" + name_ +
                          "': number of base relations must be in 1..64");
  if (identity_ >= n)
    throw InvalidArgument("calculus '" + name_ + "': identity out of range");
  if (converse_.size() != n)
    throw InvalidArgument("calculus '" + name_ +
                          "': converse map has wrong size");
  if (table_.size() != n * n)
    throw InvalidArgument("calculus '" + name_ +
                          "': composition table has wrong size");
  universal_ = n == 64 ? ~RelationBits{0} : bit_of(n) - 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (converse_[k] >= n)
      throw InvalidArgument("calculus '" + name_ +
                            "': converse index out of range");
    for (std::size_t j = k + 1; j < n; ++j)
      if (names_[k] == names_[j])
        throw InvalidArgument("calculus '" + name_ +
                              "': duplicate base relation " + names_[k]);
  }
  for (RelationBits e : table_)
    if (e & ~universal_)
      throw InvalidArgument("calculus '" + name_ +
                            "': composition entry out of range");

  chunks_ = (n + 7) / 8;
  compose_chunk_.assign(n * chunks_ * 256, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < chunks_; ++c) {
      RelationBits *row = &compose_chunk_[(a * chunks_ + c) * 256];
      for (unsigned v = 1; v < 256; ++v) {
        // Reuse the entry for v without its lowest bit.
        const unsigned low = static_cast<unsigned>(std::countr_zero(v));
        const std::size_t b = c * 8 + low;
        const RelationBits add = b < n ? compose_base(a, b) : 0;
        row[v] = row[v & (v - 1)] | add;
      }
    }
}

std::optional<std::size_t> Calculus::index_of(std::string_view name) const {
  for (std::size_t k = 0; k < names_.size(); ++k)
    if (names_[k] == name)
      return k;
  return std::nullopt;
}

RelationBits Calculus::converse_bits(RelationBits r) const {
  RelationBits out = 0;
  for_each_base(r, [&](std::size_t k) { out |= bit_of(converse_[k]); });
  return out;
}

RelationBits Calculus::compose_bits(RelationBits r, RelationBits s) const {
  if (r == 0 || s == 0)
    return 0;
  RelationBits out = 0;
  for_each_base(r, [&](std::size_t a) {
    const RelationBits *rows = &compose_chunk_[a * chunks_ * 256];
    RelationBits rest = s;
    for (std::size_t c = 0; rest != 0; ++c, rest >>= 8)
      out |= rows[c * 256 + (rest & 0xff)];
  });
  return out;
}

RelationBits Calculus::bits_of(std::span<const std::string> names) const {
  RelationBits out = 0;
  for (const auto &n : names) {
    auto k = index_of(n);
    if (!k)
      throw InvalidArgument("relation '" + n + "' is not a base relation of " +
                            name_);
    out |= bit_of(*k);
  }
  return out;
}

RelationBits
Calculus::bits_of(std::initializer_list<std::string_view> names) const {
  std::vector<std::string> v(names.begin(), names.end());
  return bits_of(std::span<const std::string>(v));
}

std::vector<std::string> Calculus::names_of(RelationBits r) const {
  std::vector<std::string> out;
  for_each_base(r, [&](std::size_t k) { out.push_back(names_[k]); });
  return out;
}

bool Calculus::same_algebra(const Calculus &other) const {
  return name_ == other.name_ && names_ == other.names_ &&
         identity_ == other.identity_ && converse_ == other.converse_ &&
         table_ == other.table_;
}

Relation::Relation(const Calculus &calculus, RelationBits bits)
    : calculus_(&calculus), bits_(bits) {
  if (bits & ~calculus.universal_bits())
    throw InvalidArgument("relation bits outside calculus " + calculus.name());
}

Relation Relation::base(const Calculus &c, std::size_t k) {
  if (k >= c.size())
    throw InvalidArgument("base relation index out of range");
  return {c, bit_of(k)};
}

bool Relation::is_subset_of(const Relation &other) const {
  if (calculus_ != other.calculus_)
    throw CalculusMismatch("relations belong to different calculi");
  return (bits_ & ~other.bits_) == 0;
}

std::string Relation::to_string() const {
  std::string out = "{";
  bool first = true;
  for_each_base(bits_, [&](std::size_t k) {
    if (!first)
      out += ",";
    out += calculus_->base_name(k);
    first = false;
  });
  return out + "}";
}

namespace {

void require_same(const Relation &r, const Relation &s) {
  if (&r.calculus() != &s.calculus())
    throw CalculusMismatch("relations belong to different calculi (" +
                           r.calculus().name() + " vs " +
                           s.calculus().name() + ")");
}

} // namespace

Relation converse(const Relation &r) {
  return {r.calculus(), r.calculus().converse_bits(r.bits())};
}

Relation compose(const Relation &r, const Relation &s) {
  require_same(r, s);
  return {r.calculus(), r.calculus().compose_bits(r.bits(), s.bits())};
}

Relation unite(const Relation &r, const Relation &s) {
  require_same(r, s);
  return {r.calculus(), r.bits() | s.bits()};
}

Relation intersect(const Relation &r, const Relation &s) {
  require_same(r, s);
  return {r.calculus(), r.bits() & s.bits()};
}

Relation complement(const Relation &r) {
  return {r.calculus(), ~r.bits() & r.calculus().universal_bits()};
}

} // namespace qstr
