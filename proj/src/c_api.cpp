#include "qstr/qstr.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <span>
#include <new>
#include <string>

#include "qstr/calculi.hpp"
#include "qstr/export.hpp"
#include "qstr/generator.hpp"
#include "qstr/network_io.hpp"
#include "qstr/probabilistic.hpp"
#include "qstr/solver.hpp"

struct qstr_calculus {
  qstr::CalculusPtr calc;
};

struct qstr_network {
  qstr::ProbabilisticQcn pq;
};

struct qstr_scenario_list {
  std::vector<qstr_network> items;
};

struct qstr_report {
  qstr::RobustnessReport report;
  qstr_network refinement;
};

namespace {

thread_local std::string last_error;

template <typename F> qstr_status guarded(F &&f) {
  last_error.clear();
  try {
    return f();
  } catch (const qstr::ParseError &e) {
    last_error = e.what();
    return QSTR_E_PARSE;
  } catch (const qstr::CalculusMismatch &e) {
    last_error = e.what();
    return QSTR_E_MISMATCH;
  } catch (const qstr::InvalidArgument &e) {
    last_error = e.what();
    return QSTR_E_ARGUMENT;
  } catch (const qstr::NoScenarioError &e) {
    last_error = e.what();
    return QSTR_E_NO_SCENARIO;
  } catch (const qstr::ContradictionError &e) {
    last_error = e.what();
    return QSTR_E_CONTRADICTION;
  } catch (const qstr::Error &e) {
    // Remaining engine errors are file access failures.
    last_error = e.what();
    return QSTR_E_IO;
  } catch (const std::bad_alloc &) {
    last_error = "out of memory";
    return QSTR_E_INTERNAL;
  } catch (const std::exception &e) {
    last_error = e.what();
    return QSTR_E_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return QSTR_E_INTERNAL;
  }
}

qstr_status bad_argument(const char *message) {
  last_error = message;
  return QSTR_E_ARGUMENT;
}

char *copy_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out)
    throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qstr::CalculusResolver make_resolver(const char *dir,
                                     const qstr_calculus *override_calculus) {
  qstr::CalculusResolver r;
  if (dir && *dir)
    r.search_dir = std::filesystem::path(dir);
  if (override_calculus)
    r.override_calculus = override_calculus->calc;
  return r;
}

qstr::RelationBits relation_bits(const qstr::Calculus &c,
                                 const char *const *relations, size_t count) {
  std::vector<std::string> names;
  for (size_t k = 0; k < count; ++k) {
    if (!relations[k])
      throw qstr::InvalidArgument("null relation name");
    names.emplace_back(relations[k]);
  }
  return c.bits_of(std::span<const std::string>(names));
}

// Probabilities of net, or scenario-derived ones when it carries none.
qstr::EdgeProbabilities probabilities_of(const qstr::ProbabilisticQcn &pq) {
  if (pq.source != qstr::ProbabilitySource::none)
    return pq.edges;
  return qstr::edge_probabilities_from_scenarios(pq.qcn).edges;
}

} // namespace

extern "C" {

const char *qstr_version(void) { return "1.0.0"; }

const char *qstr_status_string(qstr_status status) {
  switch (status) {
  case QSTR_OK:
    return "ok";
  case QSTR_INCONSISTENT:
    return "inconsistent";
  case QSTR_E_ARGUMENT:
    return "invalid argument";
  case QSTR_E_PARSE:
    return "parse error";
  case QSTR_E_IO:
    return "i/o error";
  case QSTR_E_MISMATCH:
    return "calculus mismatch";
  case QSTR_E_NO_SCENARIO:
    return "no scenario";
  case QSTR_E_CONTRADICTION:
    return "contradiction";
  case QSTR_E_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

const char *qstr_last_error(void) { return last_error.c_str(); }

void qstr_string_free(char *s) { std::free(s); }

qstr_status qstr_calculus_builtin(const char *name, qstr_calculus **out) {
  if (!name || !out)
    return bad_argument("null argument");
  return guarded([&] {
    *out = new qstr_calculus{qstr::builtin(name)};
    return QSTR_OK;
  });
}

qstr_status qstr_calculus_load(const char *path, qstr_calculus **out) {
  if (!path || !out)
    return bad_argument("null argument");
  return guarded([&] {
    *out = new qstr_calculus{qstr::load_calculus(path)};
    return QSTR_OK;
  });
}

qstr_status qstr_calculus_parse(const char *text, const char *source,
                                qstr_calculus **out) {
  if (!text || !out)
    return bad_argument("null argument");
  return guarded([&] {
    *out = new qstr_calculus{
        qstr::parse_calculus(text, source ? source : "<input>")};
    return QSTR_OK;
  });
}

void qstr_calculus_free(qstr_calculus *c) { delete c; }

const char *qstr_calculus_name(const qstr_calculus *c) {
  return c->calc->name().c_str();
}

size_t qstr_calculus_size(const qstr_calculus *c) { return c->calc->size(); }

const char *qstr_calculus_relation_name(const qstr_calculus *c, size_t k) {
  return k < c->calc->size() ? c->calc->base_name(k).c_str() : nullptr;
}

int qstr_calculus_closure_decides(const qstr_calculus *c) {
  return c->calc->atomic_closure_decides() ? 1 : 0;
}

qstr_status qstr_calculus_validate(const qstr_calculus *c,
                                   size_t *violation_count, char **report) {
  if (!c || !violation_count || !report)
    return bad_argument("null argument");
  return guarded([&] {
    const auto violations = qstr::validate_calculus(*c->calc);
    std::string text;
    for (const auto &v : violations)
      text += v.message + "\n";
    *report = copy_string(text);
    *violation_count = violations.size();
    return QSTR_OK;
  });
}

qstr_status qstr_calculus_write(const qstr_calculus *c, char **out) {
  if (!c || !out)
    return bad_argument("null argument");
  return guarded([&] {
    *out = copy_string(qstr::write_calculus(*c->calc));
    return QSTR_OK;
  });
}

qstr_status qstr_network_load(const char *path, const char *calculus_dir,
                              const qstr_calculus *override_calculus,
                              qstr_network **out) {
  if (!path || !out)
    return bad_argument("null argument");
  return guarded([&] {
    *out = new qstr_network{
        qstr::load_network(path, make_resolver(calculus_dir, override_calculus))};
    return QSTR_OK;
  });
}

qstr_status qstr_network_parse(const char *text, const char *source,
                               const char *calculus_dir,
                               const qstr_calculus *override_calculus,
                               qstr_network **out) {
  if (!text || !out)
    return bad_argument("null argument");
  return guarded([&] {
    *out = new qstr_network{qstr::parse_network(
        text, make_resolver(calculus_dir, override_calculus),
        source ? source : "<input>")};
    return QSTR_OK;
  });
}

qstr_status qstr_network_create(const qstr_calculus *c, const char *name,
                                const char *const *variables, size_t n,
                                qstr_network **out) {
  if (!c || !out || (n > 0 && !variables))
    return bad_argument("null argument");
  return guarded([&] {
    std::vector<std::string> vars;
    for (size_t i = 0; i < n; ++i) {
      if (!variables[i])
        throw qstr::InvalidArgument("null variable name");
      vars.emplace_back(variables[i]);
    }
    *out = new qstr_network{qstr::ProbabilisticQcn(
        qstr::Qcn(c->calc, std::move(vars), name ? name : "net"))};
    return QSTR_OK;
  });
}

qstr_status qstr_network_generate(const qstr_calculus *c, size_t n,
                                  double density, size_t label_size,
                                  uint64_t seed, qstr_network **out) {
  if (!c || !out)
    return bad_argument("null argument");
  return guarded([&] {
    qstr::RandomModel model{n, density, label_size, seed};
    *out = new qstr_network{
        qstr::ProbabilisticQcn(qstr::random_network(c->calc, model))};
    return QSTR_OK;
  });
}

void qstr_network_free(qstr_network *net) { delete net; }

const char *qstr_network_name(const qstr_network *net) {
  return net->pq.qcn.name().c_str();
}

const char *qstr_network_calculus_name(const qstr_network *net) {
  return net->pq.qcn.calculus().name().c_str();
}

int qstr_network_closure_decides(const qstr_network *net) {
  return net->pq.qcn.calculus().atomic_closure_decides() ? 1 : 0;
}

size_t qstr_network_size(const qstr_network *net) {
  return net->pq.qcn.size();
}

size_t qstr_network_relation_count(const qstr_network *net) {
  return net->pq.qcn.calculus().size();
}

const char *qstr_network_relation_name(const qstr_network *net, size_t k) {
  const auto &c = net->pq.qcn.calculus();
  return k < c.size() ? c.base_name(k).c_str() : nullptr;
}

const char *qstr_network_variable(const qstr_network *net, size_t i) {
  return i < net->pq.qcn.size() ? net->pq.qcn.variable(i).c_str() : nullptr;
}

qstr_status qstr_network_constraint(const qstr_network *net, size_t i, size_t j,
                                    uint64_t *bits) {
  if (!net || !bits)
    return bad_argument("null argument");
  return guarded([&] {
    *bits = net->pq.qcn.at(i, j).bits();
    return QSTR_OK;
  });
}

qstr_status qstr_network_set_constraint(qstr_network *net, size_t i, size_t j,
                                        const char *const *relations,
                                        size_t count) {
  if (!net || (count > 0 && !relations))
    return bad_argument("null argument");
  return guarded([&] {
    net->pq.qcn.set_bits(i, j,
                         relation_bits(net->pq.qcn.calculus(), relations, count));
    return QSTR_OK;
  });
}

qstr_status qstr_network_refine(qstr_network *net, size_t i, size_t j,
                                const char *const *relations, size_t count) {
  if (!net || (count > 0 && !relations))
    return bad_argument("null argument");
  return guarded([&] {
    net->pq.qcn.refine_bits(
        i, j, relation_bits(net->pq.qcn.calculus(), relations, count));
    return QSTR_OK;
  });
}

qstr_probability_source
qstr_network_probability_source(const qstr_network *net) {
  switch (net->pq.source) {
  case qstr::ProbabilitySource::external:
    return QSTR_PROB_EXTERNAL;
  case qstr::ProbabilitySource::scenario_derived:
    return QSTR_PROB_SCENARIO;
  case qstr::ProbabilitySource::none:
    break;
  }
  return QSTR_PROB_NONE;
}

qstr_status qstr_network_edge_probability(const qstr_network *net, size_t i,
                                          size_t j, size_t k, double *p,
                                          int *present) {
  if (!net || !p || !present)
    return bad_argument("null argument");
  return guarded([&] {
    if (k >= net->pq.qcn.calculus().size())
      throw qstr::InvalidArgument("base relation index out of range");
    auto value = net->pq.edges.probability(i, j, k);
    *present = value ? 1 : 0;
    *p = value.value_or(0.0);
    return QSTR_OK;
  });
}

uint64_t qstr_network_scenario_total(const qstr_network *net) {
  return net->pq.counts ? net->pq.counts->total : 0;
}

qstr_status qstr_network_scenario_count(const qstr_network *net, size_t i,
                                        size_t j, size_t k, uint64_t *count) {
  if (!net || !count)
    return bad_argument("null argument");
  return guarded([&] {
    const auto &q = net->pq.qcn;
    if (i >= q.size() || j >= q.size() || i == j ||
        k >= q.calculus().size())
      throw qstr::InvalidArgument("index out of range");
    *count = 0;
    if (!net->pq.counts)
      return QSTR_OK;
    const std::size_t kk = i < j ? k : q.calculus().converse_of(k);
    const auto &per = net->pq.counts->per_edge.at({std::min(i, j), std::max(i, j)});
    *count = per[kk];
    return QSTR_OK;
  });
}

size_t qstr_network_label_count(const qstr_network *net, size_t v) {
  return v < net->pq.labels.size() ? net->pq.labels[v].size() : 0;
}

qstr_status qstr_network_label(const qstr_network *net, size_t v, size_t k,
                               const char **label, double *p) {
  if (!net || !label || !p)
    return bad_argument("null argument");
  if (v >= net->pq.labels.size() || k >= net->pq.labels[v].size())
    return bad_argument("label index out of range");
  *label = net->pq.labels[v][k].label.c_str();
  *p = net->pq.labels[v][k].probability;
  return QSTR_OK;
}

qstr_status qstr_network_write(const qstr_network *net, char **out) {
  if (!net || !out)
    return bad_argument("null argument");
  return guarded([&] {
    *out = copy_string(qstr::write_network(net->pq));
    return QSTR_OK;
  });
}

qstr_status qstr_network_export(const qstr_network *net, const char *format,
                                char **out) {
  if (!net || !format || !out)
    return bad_argument("null argument");
  return guarded([&] {
    const std::string f = format;
    if (f == "dot")
      *out = copy_string(qstr::to_dot(net->pq.qcn));
    else if (f == "asp")
      *out = copy_string(qstr::to_asp_facts(net->pq.qcn).text());
    else if (f == "neurasp")
      *out = copy_string(qstr::to_neurasp_atoms(net->pq).text());
    else
      throw qstr::InvalidArgument("unknown export format '" + f +
                                  "' (expected dot, asp or neurasp)");
    return QSTR_OK;
  });
}

qstr_status qstr_network_intersect(const qstr_network *a, const qstr_network *b,
                                   qstr_network **out) {
  if (!a || !b || !out)
    return bad_argument("null argument");
  return guarded([&] {
    auto result = a->pq;
    result.qcn = qstr::intersect(
        a->pq.qcn, qstr::embed_variables(b->pq.qcn, a->pq.qcn.variables()));
    *out = new qstr_network{std::move(result)};
    return QSTR_OK;
  });
}

qstr_status qstr_check(const qstr_network *net, qstr_network **closed,
                       size_t *revisions) {
  if (!net)
    return bad_argument("null argument");
  return guarded([&] {
    auto result = qstr::a_closure(net->pq.qcn);
    if (revisions)
      *revisions = result.revisions;
    if (closed) {
      qstr::ProbabilisticQcn pq(std::move(result.closed_network));
      pq.labels = net->pq.labels;
      *closed = new qstr_network{std::move(pq)};
    }
    return result.consistent ? QSTR_OK : QSTR_INCONSISTENT;
  });
}

qstr_status qstr_solve(const qstr_network *net, qstr_network **scenario) {
  if (!net || !scenario)
    return bad_argument("null argument");
  return guarded([&] {
    *scenario = nullptr;
    auto s = qstr::solve(net->pq.qcn);
    if (!s)
      return QSTR_INCONSISTENT;
    *scenario = new qstr_network{qstr::ProbabilisticQcn(std::move(*s))};
    return QSTR_OK;
  });
}

qstr_status qstr_enumerate(const qstr_network *net, size_t limit, unsigned jobs,
                           qstr_scenario_list **out) {
  if (!net || !out)
    return bad_argument("null argument");
  return guarded([&] {
    auto list = std::make_unique<qstr_scenario_list>();
    for (auto &s : qstr::enumerate_scenarios(
             net->pq.qcn, limit == 0 ? qstr::unlimited : limit, jobs))
      list->items.push_back(qstr_network{qstr::ProbabilisticQcn(std::move(s))});
    *out = list.release();
    return QSTR_OK;
  });
}

size_t qstr_scenario_list_size(const qstr_scenario_list *list) {
  return list->items.size();
}

const qstr_network *qstr_scenario_list_at(const qstr_scenario_list *list,
                                          size_t k) {
  return k < list->items.size() ? &list->items[k] : nullptr;
}

void qstr_scenario_list_free(qstr_scenario_list *list) { delete list; }

qstr_status qstr_edge_probabilities(const qstr_network *net,
                                    qstr_network **out) {
  if (!net || !out)
    return bad_argument("null argument");
  return guarded([&] {
    auto pq = qstr::edge_probabilities_from_scenarios(net->pq.qcn);
    pq.labels = net->pq.labels;
    *out = new qstr_network{std::move(pq)};
    return QSTR_OK;
  });
}

qstr_status qstr_robustness(const qstr_network *probs,
                            const qstr_network *refinement, qstr_report **out) {
  if (!probs || !refinement || !out)
    return bad_argument("null argument");
  return guarded([&] {
    auto report = qstr::robustness(
        probabilities_of(probs->pq),
        qstr::reorder_variables(refinement->pq.qcn, probs->pq.qcn.variables()));
    qstr_network ref{qstr::ProbabilisticQcn(report.refinement)};
    *out = new qstr_report{std::move(report), std::move(ref)};
    return QSTR_OK;
  });
}

qstr_status qstr_max_robust(const qstr_network *probs,
                            const qstr_network *feasible, qstr_report **out) {
  if (!probs || !out)
    return bad_argument("null argument");
  return guarded([&] {
    *out = nullptr;
    const qstr::Qcn space =
        feasible ? qstr::embed_variables(feasible->pq.qcn,
                                           probs->pq.qcn.variables())
                 : probs->pq.qcn;
    auto report = qstr::max_robust_scenario(space, probabilities_of(probs->pq));
    if (!report)
      return QSTR_INCONSISTENT;
    qstr_network ref{qstr::ProbabilisticQcn(report->refinement)};
    *out = new qstr_report{std::move(*report), std::move(ref)};
    return QSTR_OK;
  });
}

qstr_status qstr_rectify(const qstr_network *net, const qstr_network *background,
                         qstr_network **out) {
  if (!net || !background || !out)
    return bad_argument("null argument");
  return guarded([&] {
    *out = new qstr_network{qstr::rectify(
        net->pq, qstr::embed_variables(background->pq.qcn,
                                         net->pq.qcn.variables()))};
    return QSTR_OK;
  });
}

double qstr_report_robustness(const qstr_report *r) {
  return r->report.robustness;
}

int qstr_report_satisfiable(const qstr_report *r) {
  return r->report.satisfiable ? 1 : 0;
}

const qstr_network *qstr_report_refinement(const qstr_report *r) {
  return &r->refinement;
}

size_t qstr_report_edge_count(const qstr_report *r) {
  return r->report.per_edge_probability.size();
}

qstr_status qstr_report_edge(const qstr_report *r, size_t k, size_t *i,
                             size_t *j, size_t *relation, double *p) {
  if (!r || !i || !j || !relation || !p)
    return bad_argument("null argument");
  if (k >= r->report.per_edge_probability.size())
    return bad_argument("edge index out of range");
  const auto &e = r->report.per_edge_probability[k];
  *i = e.i;
  *j = e.j;
  *relation = e.relation;
  *p = e.probability;
  return QSTR_OK;
}

size_t qstr_report_warning_count(const qstr_report *r) {
  return r->report.warnings.size();
}

const char *qstr_report_warning(const qstr_report *r, size_t k) {
  return k < r->report.warnings.size() ? r->report.warnings[k].c_str()
                                       : nullptr;
}

void qstr_report_free(qstr_report *r) { delete r; }

} // extern "C"
