#include "mtf/forest.hpp"

#include <algorithm>
#include <string>

namespace mtf {

TypedForest::TypedForest(int d) : d_(d) {
  if (d < 1) throw InvalidArgument("number of types must be positive");
}

TypedForest TypedForest::from_offspring(int d, std::span<const Color> root_colors,
                                        std::span<const IntVec> offspring) {
  TypedForest f(d);
  const std::size_t total = offspring.size();
  f.color_.assign(total, 0);
  f.parent_.assign(total, -1);
  f.first_child_.assign(total, 0);
  f.offspring_.assign(total * static_cast<std::size_t>(d), 0);
  f.tree_start_.reserve(root_colors.size());

  std::size_t next = 0;
  for (Color c : root_colors) {
    if (c < 0 || c >= d) throw InvalidForest("root color out of range");
    if (next >= total) throw InvalidForest("offspring sequence shorter than the forest");
    const std::size_t root = next++;
    f.tree_start_.push_back(static_cast<int>(root));
    f.color_[root] = c;
    for (std::size_t v = root; v < next; ++v) {
      const IntVec& p = offspring[v];
      if (static_cast<int>(p.size()) != d) throw InvalidForest("offspring vector of wrong size");
      f.first_child_[v] = static_cast<int>(next);
      for (Color j = 0; j < d; ++j) {
        if (p[j] < 0) throw InvalidForest("negative offspring count");
        f.offspring_[v * d + j] = p[j];
        for (int t = 0; t < p[j]; ++t) {
          if (next >= total) throw InvalidForest("offspring sequence shorter than the forest");
          f.color_[next] = j;
          f.parent_[next] = static_cast<int>(v);
          ++next;
        }
      }
    }
  }
  if (next != total) throw InvalidForest("offspring sequence longer than the forest");
  return f;
}

namespace {

void check_tree(int d, const TreeSpec& t) {
  if (t.color < 0 || t.color >= d) throw InvalidForest("color out of range");
  for (std::size_t k = 0; k < t.children.size(); ++k) {
    if (k > 0 && t.children[k].color < t.children[k - 1].color)
      throw InvalidForest("sibling colors must be nondecreasing");
    check_tree(d, t.children[k]);
  }
}

void sort_tree(TreeSpec& t) {
  std::stable_sort(t.children.begin(), t.children.end(),
                   [](const TreeSpec& a, const TreeSpec& b) { return a.color < b.color; });
  for (TreeSpec& c : t.children) sort_tree(c);
}

}  // namespace

TypedForest TypedForest::from_trees(int d, const std::vector<TreeSpec>& trees) {
  if (d < 1) throw InvalidArgument("number of types must be positive");
  RootTypeSequence roots;
  std::vector<IntVec> offspring;
  for (const TreeSpec& t : trees) {
    check_tree(d, t);
    roots.push_back(t.color);
    std::vector<const TreeSpec*> queue{&t};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      IntVec p(d, 0);
      for (const TreeSpec& c : queue[h]->children) {
        ++p[c.color];
        queue.push_back(&c);
      }
      offspring.push_back(std::move(p));
    }
  }
  return from_offspring(d, roots, offspring);
}

TypedForest TypedForest::normalized(int d, std::vector<TreeSpec> trees) {
  for (TreeSpec& t : trees) sort_tree(t);
  return from_trees(d, trees);
}

int TypedForest::child_count(int v) const {
  int n = 0;
  for (Color j = 0; j < d_; ++j) n += offspring(v, j);
  return n;
}

IntVec TypedForest::offspring(int v) const {
  auto first = offspring_.begin() + static_cast<std::ptrdiff_t>(v) * d_;
  return IntVec(first, first + d_);
}

int TypedForest::tree_end(int t) const {
  return t + 1 < tree_count() ? tree_start_[t + 1] : size();
}

RootTypeSequence TypedForest::root_types() const {
  RootTypeSequence c;
  for (int r : tree_start_) c.push_back(color_[r]);
  return c;
}

IntVec TypedForest::root_counts() const {
  IntVec r(d_, 0);
  for (int v : tree_start_) ++r[color_[v]];
  return r;
}

IntVec TypedForest::type_counts() const {
  IntVec n(d_, 0);
  for (Color c : color_) ++n[c];
  return n;
}

std::vector<TreeSpec> TypedForest::to_trees() const {
  // Children ids exceed parent ids, so filling specs from the last vertex
  // backwards assembles every subtree before its parent needs it.
  std::vector<TreeSpec> spec(color_.size());
  for (int v = size() - 1; v >= 0; --v) {
    spec[v].color = color_[v];
    const int n = child_count(v);
    spec[v].children.reserve(n);
    for (int c = first_child_[v]; c < first_child_[v] + n; ++c)
      spec[v].children.push_back(std::move(spec[c]));
  }
  std::vector<TreeSpec> trees;
  for (int r : tree_start_) trees.push_back(std::move(spec[r]));
  return trees;
}

std::vector<int> bfs_order(const TypedForest& f) {
  std::vector<int> order(f.size());
  for (int v = 0; v < f.size(); ++v) order[v] = v;
  return order;
}

std::vector<int> subtree_roots(const TypedForest& f, Color i) {
  std::vector<int> out;
  for (int v = 0; v < f.size(); ++v) {
    if (f.color(v) != i) continue;
    const int p = f.parent(v);
    if (p < 0 || f.color(p) != i) out.push_back(v);
  }
  return out;
}

namespace {

/// Offset of the first type-j child inside v's child block.
int child_offset(const TypedForest& f, int v, Color j) {
  int off = 0;
  for (Color c = 0; c < j; ++c) off += f.offspring(v, c);
  return off;
}

}  // namespace

std::vector<int> subforest_vertices(const TypedForest& f, Color i) {
  std::vector<int> out;
  out.reserve(f.size());
  for (int root : subtree_roots(f, i)) {
    std::size_t head = out.size();
    out.push_back(root);
    for (; head < out.size(); ++head) {
      const int u = out[head];
      const int first = f.first_child(u) + child_offset(f, u, i);
      for (int t = 0; t < f.offspring(u, i); ++t) out.push_back(first + t);
    }
  }
  return out;
}

TypedForest subforest(const TypedForest& f, Color i) {
  const std::vector<int> roots = subtree_roots(f, i);
  const std::vector<int> verts = subforest_vertices(f, i);
  std::vector<IntVec> offspring;
  offspring.reserve(verts.size());
  for (int u : verts) {
    IntVec p(f.types(), 0);
    p[i] = f.offspring(u, i);
    offspring.push_back(std::move(p));
  }
  const RootTypeSequence colors(roots.size(), i);
  return TypedForest::from_offspring(f.types(), colors, offspring);
}

TypedForest reduce(const TypedForest& f) {
  const int n = f.size();
  const int d = f.types();
  // owner[v] = id of the subtree root that v collapses into.
  std::vector<int> owner(n);
  for (int v = 0; v < n; ++v) {
    const int p = f.parent(v);
    owner[v] = (p >= 0 && f.color(p) == f.color(v)) ? owner[p] : v;
  }
  // Attached subtrees per collapsed vertex, in f's BFS order of their roots.
  std::vector<std::vector<int>> attached(n);
  for (int v = 0; v < n; ++v) {
    const int p = f.parent(v);
    if (p >= 0 && f.color(p) != f.color(v)) attached[owner[p]].push_back(v);
  }
  for (auto& list : attached)
    std::stable_sort(list.begin(), list.end(),
                     [&](int a, int b) { return f.color(a) < f.color(b); });

  std::vector<Color> roots;
  std::vector<IntVec> offspring;
  for (int t = 0; t < f.tree_count(); ++t) {
    const int root = f.tree_start(t);
    roots.push_back(f.color(root));
    std::vector<int> queue{root};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      IntVec p(d, 0);
      for (int w : attached[queue[h]]) {
        ++p[f.color(w)];
        queue.push_back(w);
      }
      offspring.push_back(std::move(p));
    }
  }
  return TypedForest::from_offspring(d, roots, offspring);
}

bool is_reduced(const TypedForest& f) {
  for (int v = 0; v < f.size(); ++v)
    if (f.offspring(v, f.color(v)) != 0) return false;
  return true;
}

IntMatrix edge_type_counts(const TypedForest& f) {
  IntMatrix k = IntMatrix::square(f.types());
  for (int v = 0; v < f.size(); ++v) {
    const int p = f.parent(v);
    if (p >= 0 && f.color(p) != f.color(v)) ++k(f.color(p), f.color(v));
  }
  return k;
}

}  // namespace mtf
