#include "qstr/distribution.hpp"

#include <cmath>

namespace qstr {

EdgeProbabilities::EdgeProbabilities(CalculusPtr calculus,
                                     std::size_t variables)
    : calculus_(std::move(calculus)), n_(variables) {}

void EdgeProbabilities::check(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_ || i == j)
    throw InvalidArgument("edge index out of range");
}

void EdgeProbabilities::set(std::size_t i, std::size_t j,
                            std::vector<double> dist) {
  check(i, j);
  if (dist.size() != calculus_->size())
    throw InvalidArgument("distribution size does not match calculus " +
                          calculus_->name());
  for (double p : dist)
    if (!(p >= 0.0 && p <= 1.0 + probability_tolerance))
      throw InvalidArgument("probability outside [0,1]");
  if (i > j) {
    std::vector<double> flipped(dist.size(), 0.0);
    for (std::size_t k = 0; k < dist.size(); ++k)
      flipped[calculus_->converse_of(k)] += dist[k];
    dist = std::move(flipped);
    std::swap(i, j);
  }
  dist_[{i, j}] = std::move(dist);
}

void EdgeProbabilities::erase(std::size_t i, std::size_t j) {
  check(i, j);
  dist_.erase({std::min(i, j), std::max(i, j)});
}

bool EdgeProbabilities::has(std::size_t i, std::size_t j) const {
  check(i, j);
  return dist_.contains({std::min(i, j), std::max(i, j)});
}

std::vector<double> EdgeProbabilities::distribution(std::size_t i,
                                                    std::size_t j) const {
  check(i, j);
  auto it = dist_.find({std::min(i, j), std::max(i, j)});
  if (it == dist_.end())
    throw InvalidArgument("edge has no probability distribution");
  if (i < j)
    return it->second;
  std::vector<double> out(it->second.size(), 0.0);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[calculus_->converse_of(k)] += it->second[k];
  return out;
}

std::optional<double> EdgeProbabilities::probability(std::size_t i,
                                                     std::size_t j,
                                                     std::size_t base) const {
  check(i, j);
  auto it = dist_.find({std::min(i, j), std::max(i, j)});
  if (it == dist_.end())
    return std::nullopt;
  // Reading (j,i) as b means (i,j) holds b's converse.
  return it->second.at(i < j ? base : calculus_->converse_of(base));
}

RelationBits EdgeProbabilities::support(std::size_t i, std::size_t j) const {
  const auto d = distribution(i, j);
  RelationBits out = 0;
  for (std::size_t k = 0; k < d.size(); ++k)
    if (d[k] > 0.0)
      out |= bit_of(k);
  return out;
}

std::vector<Edge> EdgeProbabilities::edges() const {
  std::vector<Edge> out;
  for (const auto &[e, _] : dist_)
    out.push_back(e);
  return out;
}

ProbabilisticQcn::ProbabilisticQcn(Qcn network)
    : qcn(std::move(network)), edges(qcn.calculus_ptr(), qcn.size()),
      labels(qcn.size()) {}

bool ProbabilisticQcn::has_labels() const {
  for (const auto &l : labels)
    if (!l.empty())
      return true;
  return false;
}

bool operator==(const ProbabilisticQcn &a, const ProbabilisticQcn &b) {
  if (!(a.qcn == b.qcn) || a.labels != b.labels ||
      a.edges.edges() != b.edges.edges())
    return false;
  for (const auto &[i, j] : a.edges.edges())
    if (a.edges.distribution(i, j) != b.edges.distribution(i, j))
      return false;
  return true;
}

std::vector<std::string> audit(const ProbabilisticQcn &pq) {
  auto out = audit(pq.qcn);
  const Qcn &q = pq.qcn;
  for (const auto &[i, j] : pq.edges.edges()) {
    const auto d = pq.edges.distribution(i, j);
    double sum = 0.0;
    for (double p : d)
      sum += p;
    const std::string edge = "(" + q.variable(i) + "," + q.variable(j) + ")";
    if (std::abs(sum - 1.0) > probability_tolerance)
      out.push_back("distribution on " + edge + " sums to " +
                    std::to_string(sum));
    if (pq.edges.support(i, j) & ~q.bits(i, j))
      out.push_back("distribution on " + edge +
                    " has support outside the constraint");
  }
  for (std::size_t v = 0; v < pq.labels.size(); ++v) {
    double sum = 0.0;
    for (const auto &l : pq.labels[v])
      sum += l.probability;
    if (sum > 1.0 + probability_tolerance)
      out.push_back("label distribution of " + q.variable(v) +
                    " sums to more than 1");
  }
  return out;
}

} // namespace qstr
