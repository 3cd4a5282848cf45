#include "mtf/coding.hpp"

#include <algorithm>
#include <string>

namespace mtf {

CodingSequence::CodingSequence(int d) : d_(d) {
  if (d < 1) throw InvalidArgument("number of types must be positive");
  values_.assign(d, std::vector<int>(d, 0));
  passage_.assign(d, std::vector<int>{0});
}

CodingSequence CodingSequence::from_increments(int d,
                                               const std::vector<std::vector<IntVec>>& increments) {
  CodingSequence x(d);
  if (static_cast<int>(increments.size()) != d)
    throw InvalidCoding("expected one path per type");
  for (int i = 0; i < d; ++i) {
    std::vector<int>& vals = x.values_[i];
    std::vector<int>& pass = x.passage_[i];
    vals.reserve((increments[i].size() + 1) * d);
    int level = 0;
    for (const IntVec& step : increments[i]) {
      if (static_cast<int>(step.size()) != d) throw InvalidCoding("increment of wrong size");
      for (int j = 0; j < d; ++j) {
        if (j == i && step[j] < -1)
          throw InvalidCoding("diagonal coordinate jumps down by more than one");
        if (j != i && step[j] < 0) throw InvalidCoding("off-diagonal coordinate decreases");
        vals.push_back(vals[vals.size() - d] + step[j]);
      }
      const int cur = vals[vals.size() - d + i];
      if (cur < level) {
        level = cur;
        pass.push_back(static_cast<int>(vals.size() / d) - 1);
      }
    }
  }
  return x;
}

IntVec CodingSequence::lengths() const {
  IntVec n(d_);
  for (int i = 0; i < d_; ++i) n[i] = length(i);
  return n;
}

IntVec CodingSequence::value(int i, int step) const {
  auto first = values_[i].begin() + static_cast<std::ptrdiff_t>(step) * d_;
  return IntVec(first, first + d_);
}

IntVec CodingSequence::increment(int i, int step) const {
  IntVec out(d_);
  for (int j = 0; j < d_; ++j) out[j] = value(i, j, step) - value(i, j, step - 1);
  return out;
}

std::vector<std::vector<IntVec>> CodingSequence::increments() const {
  std::vector<std::vector<IntVec>> out(d_);
  for (int i = 0; i < d_; ++i)
    for (int m = 1; m <= length(i); ++m) out[i].push_back(increment(i, m));
  return out;
}

int CodingSequence::first_passage(int i, int k) const {
  if (k < 0 || k > depth(i))
    throw LevelNotReached("level -" + std::to_string(k) + " not reached by path " +
                          std::to_string(i + 1));
  return passage_[i][k];
}

CodingSequence CodingSequence::prefix(const IntVec& n) const {
  std::vector<std::vector<IntVec>> inc(d_);
  for (int i = 0; i < d_; ++i) {
    if (n[i] < 0 || n[i] > length(i)) throw InvalidArgument("prefix longer than the path");
    for (int m = 1; m <= n[i]; ++m) inc[i].push_back(increment(i, m));
  }
  return from_increments(d_, inc);
}

CodingSequence encode(const TypedForest& f) {
  const int d = f.types();
  std::vector<std::vector<IntVec>> inc(d);
  for (Color i = 0; i < d; ++i) {
    for (int u : subforest_vertices(f, i)) {
      IntVec step = f.offspring(u);
      step[i] -= 1;
      inc[i].push_back(std::move(step));
    }
  }
  return CodingSequence::from_increments(d, inc);
}

int first_passage(const CodingSequence& x, int i, int k) { return x.first_passage(i, k); }

CodingSequence reduce_sequence(const CodingSequence& x) {
  const int d = x.types();
  std::vector<std::vector<IntVec>> inc(d);
  for (int i = 0; i < d; ++i) {
    for (int k = 1; k <= x.depth(i); ++k) {
      IntVec step(d);
      for (int j = 0; j < d; ++j)
        step[j] = x.value(i, j, x.first_passage(i, k)) - x.value(i, j, x.first_passage(i, k - 1));
      inc[i].push_back(std::move(step));
    }
  }
  return CodingSequence::from_increments(d, inc);
}

namespace {

void check_roots(const IntVec& r, int d) {
  if (static_cast<int>(r.size()) != d) throw InvalidArgument("root vector has wrong size");
  int total = 0;
  for (int v : r) {
    if (v < 0) throw InvalidArgument("negative root count");
    total += v;
  }
  if (total < 1) throw InvalidArgument("at least one root is required");
}

}  // namespace

bool is_solution(const IntVec& r, const CodingSequence& x, const IntVec& s) {
  const int d = x.types();
  for (int i = 0; i < d; ++i)
    if (s[i] < 0 || s[i] > x.length(i)) return false;
  for (int j = 0; j < d; ++j) {
    int total = r[j];
    for (int i = 0; i < d; ++i) total += x.value(i, j, s[i]);
    if (total != 0) return false;
  }
  return true;
}

std::optional<IntVec> smallest_solution(const IntVec& r, const CodingSequence& x) {
  const int d = x.types();
  check_roots(r, d);
  // v is nondecreasing and bounded by the depths, so every round but the
  // last raises sum(v) by at least one.
  int cap = 1;
  for (int i = 0; i < d; ++i) cap += x.length(i);
  IntVec v = r;
  IntVec k(d);
  for (int round = 0; round <= cap; ++round) {
    for (int j = 0; j < d; ++j) {
      if (v[j] > x.depth(j)) return std::nullopt;
      k[j] = x.first_passage(j, v[j]);
    }
    IntVec next = r;
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i)
        if (i != j) next[j] += x.value(i, j, k[i]);
    if (next == v) return k;
    v = std::move(next);
  }
  throw std::logic_error("smallest-solution iteration exceeded its round bound");
}

IntVec root_counts(int d, const RootTypeSequence& c) {
  IntVec r(d, 0);
  for (Color t : c) {
    if (t < 0 || t >= d) throw InvalidCoding("root type out of range");
    ++r[t];
  }
  return r;
}

TypedForest decode(const CodingSequence& x, const RootTypeSequence& c, const IntVec& r) {
  const int d = x.types();
  if (static_cast<int>(r.size()) != d) throw InvalidCoding("root vector has wrong size");
  if (root_counts(d, c) != r) throw InvalidCoding("root type sequence does not match root counts");
  if (c.empty()) {
    for (int i = 0; i < d; ++i)
      if (x.length(i) != 0) throw InvalidCoding("nonempty coding without roots");
    return TypedForest(d);
  }
  const std::optional<IntVec> n = smallest_solution(r, x);
  if (!n || *n != x.lengths()) throw InvalidCoding("length is not the smallest solution");

  // For each type, the local BFS child block of every subforest vertex and
  // the start position of every subtree.
  std::vector<std::vector<int>> child_start(d);
  std::vector<std::vector<int>> subtree_start(d);
  for (int i = 0; i < d; ++i) {
    const int len = x.length(i);
    child_start[i].resize(len);
    for (int k = 1; k <= x.depth(i); ++k) {
      const int begin = x.first_passage(i, k - 1);
      const int end = x.first_passage(i, k);
      subtree_start[i].push_back(begin);
      int next = begin + 1;
      for (int pos = begin; pos < end; ++pos) {
        child_start[i][pos] = next;
        next += x.value(i, i, pos + 1) - x.value(i, i, pos) + 1;
      }
    }
  }

  IntVec used(d, 0);
  auto take_subtree = [&](int j) {
    if (used[j] >= static_cast<int>(subtree_start[j].size()))
      throw InvalidCoding("not enough subtrees of type " + std::to_string(j + 1));
    return subtree_start[j][used[j]++];
  };

  std::vector<IntVec> offspring;
  offspring.reserve(sum(x.lengths()));
  struct Slot {
    int type;
    int pos;
  };
  std::vector<Slot> queue;
  for (Color root : c) {
    queue.clear();
    queue.push_back({root, take_subtree(root)});
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const Slot s = queue[h];
      IntVec p = x.increment(s.type, s.pos + 1);
      p[s.type] += 1;
      for (int j = 0; j < d; ++j) {
        for (int t = 0; t < p[j]; ++t) {
          if (j == s.type)
            queue.push_back({j, child_start[j][s.pos] + t});
          else
            queue.push_back({j, take_subtree(j)});
        }
      }
      offspring.push_back(std::move(p));
    }
  }
  for (int j = 0; j < d; ++j)
    if (used[j] != static_cast<int>(subtree_start[j].size()))
      throw InvalidCoding("unused subtrees of type " + std::to_string(j + 1));
  return TypedForest::from_offspring(d, c, offspring);
}

}  // namespace mtf
