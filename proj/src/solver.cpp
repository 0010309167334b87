#include "qstr/solver.hpp"

#include <algorithm>
#include <deque>
#include <future>

#include "search.hpp"

namespace qstr {

namespace detail {

Matrix matrix_of(const Qcn &q) {
  Matrix m(q.size() * q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j)
      m[i * q.size() + j] = q.bits(i, j);
  return m;
}

Qcn network_of(const Qcn &shape, const Matrix &m) {
  Qcn out = shape;
  const std::size_t n = shape.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.set_bits(i, j, m[i * n + j]);
  return out;
}

bool propagate(const Calculus &c, std::size_t n, Matrix &m,
               const std::vector<Pair> &seeds, std::size_t *revisions) {
  std::deque<Pair> queue;
  std::vector<char> queued(n * n, 0);
  auto enqueue = [&](std::size_t a, std::size_t b) {
    if (a > b)
      std::swap(a, b);
    if (!queued[a * n + b]) {
      queued[a * n + b] = 1;
      queue.emplace_back(a, b);
    }
  };
  for (const auto &[a, b] : seeds)
    enqueue(a, b);

  // (a,b) <- (a,b) ∩ via; false when it empties.
  auto revise = [&](std::size_t a, std::size_t b, RelationBits via) {
    RelationBits &cur = m[a * n + b];
    const RelationBits next = cur & via;
    if (next == cur)
      return true;
    cur = next;
    m[b * n + a] = c.converse_bits(next);
    if (revisions)
      ++*revisions;
    if (next == 0)
      return false;
    enqueue(a, b);
    return true;
  };

  while (!queue.empty()) {
    const auto [i, j] = queue.front();
    queue.pop_front();
    queued[i * n + j] = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || k == j)
        continue;
      if (!revise(i, k, c.compose_bits(m[i * n + j], m[j * n + k])) ||
          !revise(k, j, c.compose_bits(m[k * n + i], m[i * n + j])) ||
          !revise(j, k, c.compose_bits(m[j * n + i], m[i * n + k])) ||
          !revise(k, i, c.compose_bits(m[k * n + j], m[j * n + i])))
        return false;
    }
  }
  return true;
}

bool propagate_all(const Calculus &c, std::size_t n, Matrix &m,
                   std::size_t *revisions) {
  std::vector<Pair> seeds;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m[i * n + j] == 0)
        return false;
      seeds.emplace_back(i, j);
    }
  return propagate(c, n, m, seeds, revisions);
}

std::optional<Pair> pick_branch(std::size_t n, const Matrix &m) {
  std::optional<Pair> best;
  int best_size = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const int size = cardinality(m[i * n + j]);
      if (size > 1 && (!best || size < best_size)) {
        best = Pair{i, j};
        best_size = size;
      }
    }
  return best;
}

std::optional<Matrix> branch(const Calculus &c, std::size_t n, const Matrix &m,
                             Pair edge, std::size_t k) {
  Matrix next = m;
  const auto [i, j] = edge;
  next[i * n + j] = bit_of(k);
  next[j * n + i] = bit_of(c.converse_of(k));
  if (!propagate(c, n, next, {edge}, nullptr))
    return std::nullopt;
  return next;
}

} // namespace detail

namespace {

using detail::Matrix;

// Depth-first scenario search below an already closed matrix. Returns false
// once the visitor asks to stop.
bool search(const Calculus &c, std::size_t n, const Matrix &m,
            const std::function<bool(const Matrix &)> &visit) {
  const auto edge = detail::pick_branch(n, m);
  if (!edge)
    return visit(m);
  const RelationBits options = m[edge->first * n + edge->second];
  bool go_on = true;
  for_each_base(options, [&](std::size_t k) {
    if (!go_on)
      return;
    if (auto next = detail::branch(c, n, m, *edge, k))
      go_on = search(c, n, *next, visit);
  });
  return go_on;
}

} // namespace

ClosureResult a_closure(const Qcn &q) {
  Matrix m = detail::matrix_of(q);
  std::size_t revisions = 0;
  const bool ok = detail::propagate_all(q.calculus(), q.size(), m, &revisions);
  return {detail::network_of(q, m), ok, revisions};
}

bool is_closed_scenario(const Qcn &q) {
  if (!q.is_atomic())
    return false;
  const Calculus &c = q.calculus();
  const std::size_t n = q.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (q.bits(i, j) & ~c.compose_bits(q.bits(i, k), q.bits(k, j)))
          return false;
  return true;
}

std::optional<Qcn> solve(const Qcn &q) {
  std::optional<Qcn> found;
  for_each_scenario(q, [&](const Qcn &s) {
    found = s;
    return false;
  });
  return found;
}

std::size_t for_each_scenario(const Qcn &q,
                              const std::function<bool(const Qcn &)> &visit) {
  Matrix m = detail::matrix_of(q);
  if (!detail::propagate_all(q.calculus(), q.size(), m, nullptr))
    return 0;
  std::size_t count = 0;
  search(q.calculus(), q.size(), m, [&](const Matrix &s) {
    ++count;
    return visit(detail::network_of(q, s));
  });
  return count;
}

std::vector<Qcn> enumerate_scenarios(const Qcn &q, std::size_t limit,
                                     unsigned jobs) {
  std::vector<Qcn> out;
  if (limit == 0)
    return out;
  auto collect = [&q, limit](const Matrix &start) {
    std::vector<Qcn> found;
    search(q.calculus(), q.size(), start, [&](const Matrix &s) {
      found.push_back(detail::network_of(q, s));
      return found.size() < limit;
    });
    return found;
  };

  const Calculus &c = q.calculus();
  const std::size_t n = q.size();
  Matrix m = detail::matrix_of(q);
  if (!detail::propagate_all(c, n, m, nullptr))
    return out;
  const auto edge = detail::pick_branch(n, m);
  if (jobs <= 1 || !edge) {
    out = collect(m);
  } else {
    // One task per first-level branch; concatenated in branch order.
    std::vector<std::future<std::vector<Qcn>>> parts;
    for_each_base(m[edge->first * n + edge->second], [&](std::size_t k) {
      parts.push_back(std::async(std::launch::async, [&, k] {
        auto next = detail::branch(c, n, m, *edge, k);
        return next ? collect(*next) : std::vector<Qcn>{};
      }));
    });
    for (auto &part : parts) {
      auto found = part.get();
      for (auto &s : found) {
        if (out.size() == limit)
          break;
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

} // namespace qstr
