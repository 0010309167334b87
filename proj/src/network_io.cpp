#include "qstr/network_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lexer.hpp"

namespace qstr {

namespace {

using detail::Line;
using detail::Token;

[[noreturn]] void fail(const std::string &source, const Line &line,
                       const Token &tok, const std::string &message) {
  throw ParseError(source, line.number, tok.column, message);
}

bool is_punct(const Token &t) {
  return !t.quoted && t.text.size() == 1 &&
         std::string_view("(){}").find(t.text[0]) != std::string_view::npos;
}

double parse_probability(const std::string &source, const Line &line,
                         const Token &tok, std::string_view text) {
  double value = 0.0;
  const char *first = text.data();
  const char *last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty())
    fail(source, line, tok,
         "malformed probability block: bad number '" + std::string(text) + "'");
  if (!(value >= 0.0 && value <= 1.0))
    fail(source, line, tok,
         "malformed probability block: probability outside [0,1]");
  return value;
}

// Entries between { and } as (key, probability, token).
std::vector<std::tuple<std::string, double, const Token *>>
parse_block(const std::string &source, const Line &line, std::size_t open) {
  const auto &toks = line.tokens;
  if (open >= toks.size() || toks[open].text != "{")
    fail(source, line, toks[std::min(open, toks.size() - 1)],
         "malformed probability block: expected '{'");
  if (toks.back().text != "}")
    fail(source, line, toks.back(), "malformed probability block: expected '}'");
  std::vector<std::tuple<std::string, double, const Token *>> out;
  for (std::size_t t = open + 1; t + 1 < toks.size(); ++t) {
    const Token &tok = toks[t];
    const auto colon = tok.text.rfind(':');
    if (is_punct(tok) || colon == std::string::npos || colon == 0)
      fail(source, line, tok,
           "malformed probability block: expected '<name>:<p>', found '" +
               tok.text + "'");
    out.emplace_back(tok.text.substr(0, colon),
                     parse_probability(source, line, tok,
                                       std::string_view(tok.text).substr(colon + 1)),
                     &tok);
  }
  return out;
}

struct PendingProb {
  std::size_t i, j;
  const Line *line;
};

} // namespace

CalculusPtr CalculusResolver::resolve(const std::string &name) const {
  if (override_calculus)
    return override_calculus;
  for (const auto &b : builtin_names())
    if (b == name)
      return builtin(name);
  for (const auto &dir : {search_dir, base_dir}) {
    if (!dir)
      continue;
    const auto path = *dir / (name + ".cal");
    std::error_code ec;
    if (std::filesystem::is_regular_file(path, ec))
      return load_calculus(path);
  }
  return nullptr;
}

ProbabilisticQcn parse_network(std::string_view text,
                               const CalculusResolver &resolver,
                               const std::string &source) {
  const auto lines = detail::tokenize(text, source);
  if (lines.empty())
    throw ParseError(source, 1, 1, "empty network file");

  const Line &head = lines[0];
  if (head.tokens.size() != 4 || head.tokens[0].text != "network" ||
      head.tokens[2].text != "calculus")
    fail(source, head, head.tokens[0],
         "expected 'network <name> calculus <calcname>'");
  const std::string name = head.tokens[1].text;
  const Token &calc_tok = head.tokens[3];
  CalculusPtr calc = resolver.resolve(calc_tok.text);
  if (!calc)
    fail(source, head, calc_tok, "unknown calculus '" + calc_tok.text + "'");

  if (lines.size() < 2 || lines[1].tokens[0].text != "vars")
    throw ParseError(source, lines.size() < 2 ? head.number : lines[1].number,
                     1, "expected 'vars <v1> ... <vn>'");
  const Line &vars_line = lines[1];
  std::vector<std::string> vars;
  for (std::size_t t = 1; t < vars_line.tokens.size(); ++t) {
    const Token &tok = vars_line.tokens[t];
    if (is_punct(tok) || tok.quoted)
      fail(source, vars_line, tok, "invalid variable name '" + tok.text + "'");
    for (const auto &v : vars)
      if (v == tok.text)
        fail(source, vars_line, tok, "duplicate variable '" + tok.text + "'");
    vars.push_back(tok.text);
  }
  if (vars.empty())
    fail(source, vars_line, vars_line.tokens[0], "no variables declared");

  ProbabilisticQcn pq(Qcn(calc, vars, name));
  Qcn &q = pq.qcn;
  const Calculus &c = *calc;

  auto var_index = [&](const Line &line, const Token &tok) {
    auto i = q.index_of(tok.text);
    if (!i)
      fail(source, line, tok, "unknown variable '" + tok.text + "'");
    return *i;
  };
  auto rel_index = [&](const Line &line, const Token &tok,
                       const std::string &rel) {
    auto k = c.index_of(rel);
    if (!k)
      fail(source, line, tok,
           "relation '" + rel + "' is not a base relation of calculus " +
               c.name());
    return *k;
  };

  std::vector<PendingProb> probs;
  for (std::size_t idx = 2; idx < lines.size(); ++idx) {
    const Line &line = lines[idx];
    const auto &toks = line.tokens;
    if (toks.size() >= 4 && toks[2].text == "(" && !toks[2].quoted) {
      const std::size_t i = var_index(line, toks[0]);
      const std::size_t j = var_index(line, toks[1]);
      if (toks.back().text != ")")
        fail(source, line, toks.back(), "expected ')'");
      RelationBits r = 0;
      for (std::size_t t = 3; t + 1 < toks.size(); ++t) {
        if (is_punct(toks[t]))
          fail(source, line, toks[t], "unexpected '" + toks[t].text + "'");
        r |= bit_of(rel_index(line, toks[t], toks[t].text));
      }
      if (i == j) {
        if (r != bit_of(c.identity()))
          fail(source, line, toks[0],
               "constraint of '" + toks[0].text +
                   "' with itself must be the identity relation");
        continue;
      }
      q.refine_bits(i, j, r);
    } else if (toks[0].text == "prob") {
      if (toks.size() < 5)
        fail(source, line, toks[0],
             "malformed probability block: expected 'prob <vi> <vj> { ... }'");
      const std::size_t i = var_index(line, toks[1]);
      const std::size_t j = var_index(line, toks[2]);
      if (i == j)
        fail(source, line, toks[1],
             "malformed probability block: edge needs two distinct variables");
      if (pq.edges.has(i, j))
        fail(source, line, toks[0],
             "malformed probability block: duplicate distribution for (" +
                 toks[1].text + "," + toks[2].text + ")");
      std::vector<double> dist(c.size(), 0.0);
      std::vector<bool> seen(c.size(), false);
      double sum = 0.0;
      for (const auto &[rel, p, tok] : parse_block(source, line, 3)) {
        const std::size_t k = rel_index(line, *tok, rel);
        if (seen[k])
          fail(source, line, *tok,
               "malformed probability block: relation '" + rel +
                   "' listed twice");
        seen[k] = true;
        dist[k] = p;
        sum += p;
      }
      if (std::abs(sum - 1.0) > probability_tolerance)
        fail(source, line, toks[0],
             "malformed probability block: probabilities sum to " +
                 format_probability(sum) + ", expected 1");
      pq.edges.set(i, j, std::move(dist));
      probs.push_back({i, j, &line});
    } else if (toks[0].text == "label") {
      if (toks.size() < 4)
        fail(source, line, toks[0],
             "malformed probability block: expected 'label <v> { ... }'");
      const std::size_t v = var_index(line, toks[1]);
      double sum = 0.0;
      for (const auto &[label, p, tok] : parse_block(source, line, 2)) {
        for (const auto &e : pq.labels[v])
          if (e.label == label)
            fail(source, line, *tok,
                 "malformed probability block: label '" + label +
                     "' listed twice");
        pq.labels[v].push_back({label, p});
        sum += p;
      }
      if (sum > 1.0 + probability_tolerance)
        fail(source, line, toks[0],
             "malformed probability block: label confidences sum to " +
                 format_probability(sum) + ", more than 1");
    } else {
      fail(source, line, toks[0], "unexpected '" + toks[0].text + "'");
    }
  }

  // Constraint lines may follow prob lines, so supports are checked last.
  for (const auto &p : probs)
    if (pq.edges.support(p.i, p.j) & ~q.bits(p.i, p.j))
      fail(source, *p.line, p.line->tokens[0],
           "malformed probability block: support of (" + q.variable(p.i) +
               "," + q.variable(p.j) + ") lies outside its constraint " +
               q.at(p.i, p.j).to_string());
  if (!probs.empty())
    pq.source = ProbabilitySource::external;
  return pq;
}

ProbabilisticQcn load_network(const std::filesystem::path &path,
                              CalculusResolver resolver) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open network file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!resolver.base_dir)
    resolver.base_dir = path.parent_path();
  return parse_network(buf.str(), resolver, path.string());
}

std::string format_probability(double p) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), p);
  return std::string(buf, ptr);
}

std::string write_network(const ProbabilisticQcn &pq) {
  const Qcn &q = pq.qcn;
  const Calculus &c = q.calculus();
  std::string out =
      "network " + q.name() + " calculus " + c.name() + "\nvars";
  for (const auto &v : q.variables())
    out += " " + v;
  out += "\n";
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      if (q.bits(i, j) == c.universal_bits())
        continue;
      out += q.variable(i) + " " + q.variable(j) + " (";
      for (const auto &r : c.names_of(q.bits(i, j)))
        out += " " + r;
      out += " )\n";
    }
  for (const auto &[i, j] : pq.edges.edges()) {
    const auto d = pq.edges.distribution(i, j);
    out += "prob " + q.variable(i) + " " + q.variable(j) + " {";
    for (std::size_t k = 0; k < d.size(); ++k)
      if (d[k] > 0.0)
        out += " " + c.base_name(k) + ":" + format_probability(d[k]);
    out += " }\n";
  }
  for (std::size_t v = 0; v < pq.labels.size(); ++v) {
    if (pq.labels[v].empty())
      continue;
    out += "label " + q.variable(v) + " {";
    for (const auto &e : pq.labels[v])
      out += " " + e.label + ":" + format_probability(e.probability);
    out += " }\n";
  }
  return out;
}

std::string write_network(const Qcn &q) {
  return write_network(ProbabilisticQcn(q));
}

std::string to_dot(const Qcn &q) {
  const Calculus &c = q.calculus();
  std::string out = "digraph \"" + q.name() + "\" {\n";
  for (const auto &v : q.variables())
    out += "  \"" + v + "\";\n";
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      if (q.bits(i, j) == c.universal_bits())
        continue;
      std::string label;
      for (const auto &r : c.names_of(q.bits(i, j)))
        label += (label.empty() ? "" : "|") + r;
      out += "  \"" + q.variable(i) + "\" -> \"" + q.variable(j) +
             "\" [label=\"" + label + "\"];\n";
    }
  return out + "}\n";
}

} // namespace qstr
