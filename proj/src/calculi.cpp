#include "qstr/calculi.hpp"

#include <array>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "embedded.hpp"
#include "lexer.hpp"

namespace qstr {

namespace {

using detail::Line;
using detail::Token;

[[noreturn]] void fail(const std::string &source, const Line &line,
                       const Token &token, const std::string &message) {
  throw ParseError(source, line.number, token.column, message);
}

const Token &expect_keyword(const std::string &source,
                            const std::vector<Line> &lines, std::size_t idx,
                            const std::string &keyword) {
  if (idx >= lines.size())
    throw ParseError(source, lines.empty() ? 0 : lines.back().number, 0,
                     "expected '" + keyword + "' line");
  const Line &line = lines[idx];
  if (line.tokens[0].text != keyword)
    fail(source, line, line.tokens[0],
         "expected '" + keyword + "', found '" + line.tokens[0].text + "'");
  return line.tokens[0];
}

std::size_t lookup(const std::string &source, const Line &line,
                   const Token &tok, const std::map<std::string, std::size_t> &ix) {
  auto it = ix.find(tok.text);
  if (it == ix.end())
    fail(source, line, tok, "unknown base relation '" + tok.text + "'");
  return it->second;
}

} // namespace

CalculusPtr parse_calculus(std::string_view text, const std::string &source) {
  const auto lines = detail::tokenize(text, source);
  std::size_t idx = 0;

  expect_keyword(source, lines, idx, "calculus");
  if (lines[idx].tokens.size() != 2)
    fail(source, lines[idx], lines[idx].tokens[0],
         "expected 'calculus <name>'");
  std::string name = lines[idx].tokens[1].text;
  ++idx;

  expect_keyword(source, lines, idx, "domain");
  if (lines[idx].tokens.size() != 2 || !lines[idx].tokens[1].quoted)
    fail(source, lines[idx], lines[idx].tokens[0],
         "expected 'domain \"<description>\"'");
  std::string domain = lines[idx].tokens[1].text;
  ++idx;

  expect_keyword(source, lines, idx, "relations");
  const Line &rel_line = lines[idx];
  if (rel_line.tokens.size() < 2)
    fail(source, rel_line, rel_line.tokens[0], "no base relations declared");
  if (rel_line.tokens.size() - 1 > max_base_relations)
    fail(source, rel_line, rel_line.tokens[0],
         "more than 64 base relations are not supported");
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  for (std::size_t t = 1; t < rel_line.tokens.size(); ++t) {
    const Token &tok = rel_line.tokens[t];
    if (tok.quoted || (tok.text.size() == 1 && std::string("(){}").find(tok.text[0]) != std::string::npos))
      fail(source, rel_line, tok, "invalid relation name '" + tok.text + "'");
    if (!index.emplace(tok.text, names.size()).second)
      fail(source, rel_line, tok, "duplicate base relation '" + tok.text + "'");
    names.push_back(tok.text);
  }
  ++idx;
  const std::size_t n = names.size();

  expect_keyword(source, lines, idx, "identity");
  if (lines[idx].tokens.size() != 2)
    fail(source, lines[idx], lines[idx].tokens[0], "expected 'identity <r>'");
  const std::size_t identity =
      lookup(source, lines[idx], lines[idx].tokens[1], index);
  ++idx;

  std::vector<std::size_t> converse(n, n);
  std::vector<RelationBits> table(n * n, 0);
  std::vector<bool> seen(n * n, false);

  for (; idx < lines.size(); ++idx) {
    const Line &line = lines[idx];
    const auto &toks = line.tokens;
    if (toks[0].text == "converse") {
      if (toks.size() != 3)
        fail(source, line, toks[0], "expected 'converse <r> <rconv>'");
      const std::size_t a = lookup(source, line, toks[1], index);
      const std::size_t b = lookup(source, line, toks[2], index);
      if (converse[a] != n)
        fail(source, line, toks[1], "duplicate converse for '" + toks[1].text + "'");
      converse[a] = b;
    } else if (toks[0].text == "compose") {
      if (toks.size() < 6 || toks[3].text != "=" || toks[4].text != "(" ||
          toks.back().text != ")")
        fail(source, line, toks[0],
             "expected 'compose <r1> <r2> = ( <s1> ... )'");
      const std::size_t a = lookup(source, line, toks[1], index);
      const std::size_t b = lookup(source, line, toks[2], index);
      if (seen[a * n + b])
        fail(source, line, toks[1],
             "duplicate composition entry (" + toks[1].text + "," +
                 toks[2].text + ")");
      seen[a * n + b] = true;
      RelationBits entry = 0;
      for (std::size_t t = 5; t + 1 < toks.size(); ++t)
        entry |= bit_of(lookup(source, line, toks[t], index));
      table[a * n + b] = entry;
    } else {
      fail(source, line, toks[0], "unexpected '" + toks[0].text + "'");
    }
  }

  const std::size_t last = lines.back().number;
  for (std::size_t k = 0; k < n; ++k)
    if (converse[k] == n)
      throw ParseError(source, last, 0, "missing converse for '" + names[k] + "'");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!seen[a * n + b])
        throw ParseError(source, last, 0,
                         "incomplete composition table: missing (" + names[a] +
                             "," + names[b] + ")");

  return std::make_shared<const Calculus>(std::move(name), std::move(domain),
                                          std::move(names), identity,
                                          std::move(converse), std::move(table),
                                          false);
}

CalculusPtr load_calculus(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open calculus file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_calculus(buf.str(), path.string());
}

std::string write_calculus(const Calculus &c) {
  std::string out = "calculus " + c.name() + "\n";
  out += "domain \"" + c.domain_description() + "\"\n";
  out += "relations";
  for (const auto &r : c.base_relations())
    out += " " + r;
  out += "\nidentity " + c.base_name(c.identity()) + "\n";
  for (std::size_t k = 0; k < c.size(); ++k)
    out += "converse " + c.base_name(k) + " " +
           c.base_name(c.converse_of(k)) + "\n";
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b) {
      out += "compose " + c.base_name(a) + " " + c.base_name(b) + " = (";
      for (const auto &s : c.names_of(c.compose_base(a, b)))
        out += " " + s;
      out += " )\n";
    }
  return out;
}

std::vector<std::string> builtin_names() { return {"pa", "ia", "rcc8"}; }

std::string_view builtin_source(std::string_view name) {
  for (const auto &[n, text] : detail::embedded_calculi())
    if (n == name)
      return text;
  throw InvalidArgument("unknown built-in calculus '" + std::string(name) + "'");
}

CalculusPtr builtin(std::string_view name) {
  static std::mutex mutex;
  static std::map<std::string, CalculusPtr, std::less<>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(name); it != cache.end())
    return it->second;
  bool known = false;
  for (const auto &n : builtin_names())
    known = known || n == name;
  if (!known)
    throw InvalidArgument("unknown built-in calculus '" + std::string(name) + "'");
  auto parsed = parse_calculus(builtin_source(name), std::string(name) + ".cal");
  const Calculus &p = *parsed;
  std::vector<std::size_t> conv(p.size());
  std::vector<RelationBits> table(p.size() * p.size());
  for (std::size_t a = 0; a < p.size(); ++a) {
    conv[a] = p.converse_of(a);
    for (std::size_t b = 0; b < p.size(); ++b)
      table[a * p.size() + b] = p.compose_base(a, b);
  }
  // The built-ins are calculi for which closure of atomic networks decides
  // satisfiability.
  auto calc = std::make_shared<const Calculus>(
      p.name(), p.domain_description(), p.base_relations(), p.identity(),
      std::move(conv), std::move(table), true);
  cache.emplace(std::string(name), calc);
  return calc;
}

std::vector<Violation> validate_calculus(const Calculus &c) {
  std::vector<Violation> out;
  const std::size_t n = c.size();
  const auto &nm = c.base_relations();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t kk = c.converse_of(c.converse_of(k));
    if (kk != k)
      out.push_back({Violation::Kind::converse_not_involution,
                     "converse not an involution: converse(converse(" + nm[k] +
                         ")) = " + nm[kk]});
  }
  const std::size_t id = c.identity();
  if (c.converse_of(id) != id)
    out.push_back({Violation::Kind::identity_not_self_converse,
                   "converse of identity " + nm[id] + " is " +
                       nm[c.converse_of(id)]});
  for (std::size_t b = 0; b < n; ++b) {
    if (c.compose_base(id, b) != bit_of(b))
      out.push_back({Violation::Kind::identity_law,
                     "identity law fails: " + nm[id] + " ; " + nm[b] + " = " +
                         Relation(c, c.compose_base(id, b)).to_string()});
    if (c.compose_base(b, id) != bit_of(b))
      out.push_back({Violation::Kind::identity_law,
                     "identity law fails: " + nm[b] + " ; " + nm[id] + " = " +
                         Relation(c, c.compose_base(b, id)).to_string()});
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const RelationBits lhs = c.converse_bits(c.compose_base(a, b));
      const RelationBits rhs =
          c.compose_base(c.converse_of(b), c.converse_of(a));
      if (lhs != rhs)
        out.push_back({Violation::Kind::converse_duality,
                       "converse not matching duality: converse(" + nm[a] +
                           " ; " + nm[b] + ") = " + Relation(c, lhs).to_string() +
                           " but " + nm[c.converse_of(b)] + " ; " +
                           nm[c.converse_of(a)] + " = " +
                           Relation(c, rhs).to_string()});
    }
  return out;
}

std::size_t ia_relation_of(long xs, long xe, long ys, long ye) {
  // Indices follow builtin("ia"): eq p pi m mi o oi s si d di f fi
  enum { eq, p, pi, m, mi, o, oi, s, si, d, di, f, fi };
  if (xe < ys)
    return p;
  if (xe == ys)
    return m;
  if (ye < xs)
    return pi;
  if (ye == xs)
    return mi;
  if (xs == ys)
    return xe == ye ? eq : (xe < ye ? s : si);
  if (xe == ye)
    return xs > ys ? f : fi;
  if (xs > ys && xe < ye)
    return d;
  if (xs < ys && xe > ye)
    return di;
  return xs < ys ? o : oi;
}

std::vector<RelationBits> derive_ia_table() {
  // Every order configuration of six endpoints is realized by ranks 0..5.
  constexpr std::size_t n = 13;
  std::vector<RelationBits> table(n * n, 0);
  std::array<long, 6> e{};
  for (long code = 0; code < 6 * 6 * 6 * 6 * 6 * 6; ++code) {
    long rest = code;
    for (auto &v : e) {
      v = rest % 6;
      rest /= 6;
    }
    const long xs = e[0], xe = e[1], zs = e[2], ze = e[3], ys = e[4], ye = e[5];
    if (xs >= xe || zs >= ze || ys >= ye)
      continue;
    const std::size_t xz = ia_relation_of(xs, xe, zs, ze);
    const std::size_t zy = ia_relation_of(zs, ze, ys, ye);
    table[xz * n + zy] |= bit_of(ia_relation_of(xs, xe, ys, ye));
  }
  return table;
}

OpraRelation make_opra(int granularity, int sector_of_b_from_a,
                       int sector_of_a_from_b) {
  if (granularity < 1)
    throw InvalidArgument("OPRA granularity must be positive");
  const int sectors = 4 * granularity;
  if (sector_of_b_from_a < 0 || sector_of_b_from_a >= sectors ||
      sector_of_a_from_b < 0 || sector_of_a_from_b >= sectors)
    throw InvalidArgument("OPRA sector out of range 0.." +
                          std::to_string(sectors - 1));
  return {granularity, sector_of_b_from_a, sector_of_a_from_b, false};
}

OpraRelation make_opra_same_position(int granularity, int sector) {
  OpraRelation r = make_opra(granularity, sector, sector);
  r.same_position = true;
  return r;
}

OpraRelation opra_converse(const OpraRelation &r) {
  OpraRelation out = r;
  std::swap(out.sector_of_b_from_a, out.sector_of_a_from_b);
  return out;
}

std::string to_string(const OpraRelation &r) {
  std::string out =
      std::to_string(r.granularity) + "<" + std::to_string(r.sector_of_b_from_a);
  if (!r.same_position)
    out += "^" + std::to_string(r.sector_of_a_from_b);
  return out;
}

} // namespace qstr
