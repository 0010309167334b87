#include "qstr/export.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "qstr/network_io.hpp"

namespace qstr {

std::string AtomDocument::text() const {
  std::string out;
  for (const auto &l : lines)
    out += l + "\n";
  return out;
}

std::string asp_identifier(std::string_view name) {
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (char ch : name) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalpha(c))
      out += static_cast<char>(std::tolower(c));
    else if (std::isdigit(c) || c == '_')
      out += ch;
    else if (c == '<')
      out += "lt";
    else if (c == '=')
      out += "eq";
    else if (c == '>')
      out += "gt";
    else {
      out += 'x';
      out += hex[c >> 4];
      out += hex[c & 0xf];
    }
  }
  if (out.empty() || !std::islower(static_cast<unsigned char>(out[0])))
    out = "n" + out;
  return out;
}

std::vector<std::string> asp_identifiers(const std::vector<std::string> &names) {
  std::vector<std::string> out;
  std::set<std::string> taken;
  for (const auto &n : names) {
    std::string id = asp_identifier(n);
    while (taken.contains(id))
      id += "_";
    taken.insert(id);
    out.push_back(std::move(id));
  }
  return out;
}

AtomDocument to_neurasp_atoms(const ProbabilisticQcn &pq) {
  const Qcn &q = pq.qcn;
  const Calculus &c = q.calculus();
  const auto vars = asp_identifiers(q.variables());
  const auto rels = asp_identifiers(c.base_relations());

  AtomDocument doc;
  doc.lines.push_back("% NeurASP atoms for network " + q.name() +
                      " (calculus " + c.name() + ")");
  for (std::size_t v = 0; v < q.size(); ++v) {
    if (pq.labels[v].empty())
      continue;
    std::vector<LabelEntry> sorted = pq.labels[v];
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const LabelEntry &a, const LabelEntry &b) {
                       return a.probability > b.probability;
                     });
    std::vector<std::string> names;
    for (const auto &e : sorted)
      names.push_back(e.label);
    const auto ids = asp_identifiers(names);
    std::string list;
    for (const auto &id : ids)
      list += (list.empty() ? "" : ", ") + id;
    doc.lines.push_back("nn(region(1, " + vars[v] + "), [" + list + "]).");
  }
  doc.lines.push_back("nn(network(" + std::to_string(q.constrained_pairs()) +
                      ", " + asp_identifier(q.name()) + "), [true, false]).");
  for (const auto &[i, j] : pq.edges.edges()) {
    const auto d = pq.edges.distribution(i, j);
    std::string line = "% prob " + vars[i] + " " + vars[j] + ":";
    for (std::size_t k = 0; k < d.size(); ++k)
      if (d[k] > 0.0)
        line += " " + rels[k] + "=" + format_probability(d[k]);
    doc.lines.push_back(line);
  }
  return doc;
}

AtomDocument to_asp_facts(const Qcn &q) {
  const Calculus &c = q.calculus();
  const auto vars = asp_identifiers(q.variables());
  const auto rels = asp_identifiers(c.base_relations());

  AtomDocument doc;
  doc.lines.push_back("% ASP facts for network " + q.name() + " (calculus " +
                      c.name() + ")");
  for (std::size_t k = 0; k < c.size(); ++k)
    doc.lines.push_back("% relation " + c.base_name(k) + " -> " + rels[k]);
  for (std::size_t v = 0; v < q.size(); ++v)
    doc.lines.push_back("% variable " + q.variable(v) + " -> " + vars[v]);
  for (const auto &v : vars)
    doc.lines.push_back("var(" + v + ").");
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (i == j)
        continue;
      for_each_base(q.bits(i, j), [&](std::size_t k) {
        doc.lines.push_back("possible(" + vars[i] + ", " + vars[j] + ", " +
                            rels[k] + ").");
      });
    }
  for (std::size_t k = 0; k < c.size(); ++k)
    doc.lines.push_back("converse(" + rels[k] + ", " +
                        rels[c.converse_of(k)] + ").");
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b) {
      std::string line;
      for_each_base(c.compose_base(a, b), [&](std::size_t k) {
        line += (line.empty() ? "" : " ") + std::string("composition(") +
                rels[a] + ", " + rels[b] + ", " + rels[k] + ").";
      });
      if (line.empty())
        line = "% composition(" + rels[a] + ", " + rels[b] + ") is empty";
      doc.lines.push_back(line);
    }
  return doc;
}

} // namespace qstr
