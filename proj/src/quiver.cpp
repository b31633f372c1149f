#include "jks/quiver.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace jks {

int Quiver::index_of(const std::string& name) const {
  const auto it = std::find(vertices.begin(), vertices.end(), name);
  if (it == vertices.end()) throw Error(ErrorKind::UnknownVertex, "unknown vertex '" + name + "'");
  return static_cast<int>(it - vertices.begin());
}

std::string Quiver::arrow_label(int arrow) const {
  const Arrow& a = arrows.at(arrow);
  return vertices.at(a.tail) + "->" + vertices.at(a.head);
}

Quiver Quiver::complete_bipartite(int l1, int l2) {
  if (l1 < 1 || l2 < 1) throw Error(ErrorKind::InvalidInput, "complete bipartite quiver needs l1, l2 >= 1");
  Quiver q;
  for (int i = 1; i <= l1; ++i) q.vertices.push_back("i" + std::to_string(i));
  for (int j = 1; j <= l2; ++j) q.vertices.push_back("j" + std::to_string(j));
  for (int i = 0; i < l1; ++i)
    for (int j = 0; j < l2; ++j) q.arrows.push_back({i, l1 + j});
  return q;
}

Quiver Quiver::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Quiver q;
  for (int v = 1; v <= n; ++v) q.vertices.push_back(std::to_string(v));
  for (const auto& [t, h] : edges) q.arrows.push_back({t, h});
  return q;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

bool is_connected(const Quiver& q) {
  if (q.vertex_count() <= 1) return true;
  UnionFind uf(q.vertex_count());
  int components = q.vertex_count();
  for (const auto& a : q.arrows)
    if (uf.unite(a.tail, a.head)) --components;
  return components == 1;
}

QuiverDiagnostics check_quiver(const Quiver& q, bool require_connected) {
  QuiverDiagnostics diag;
  const int n = q.vertex_count();
  for (int i = 0; i < q.arrow_count(); ++i) {
    const Arrow& a = q.arrows[i];
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n) {
      return {false, ErrorKind::UnknownVertex, "arrow " + std::to_string(i) + " references a missing vertex", {i}};
    }
    if (a.tail == a.head)
      return {false, ErrorKind::HasLoop, "loop at vertex '" + q.vertices[a.tail] + "'", {i}};
  }
  // Depth-first search for an oriented cycle.
  std::vector<std::vector<int>> out(n);
  for (const auto& a : q.arrows) out[a.tail].push_back(a.head);
  std::vector<int> state(n, 0);
  std::vector<int> stack;
  std::vector<int> cycle;
  std::function<bool(int)> dfs = [&](int v) {
    state[v] = 1;
    stack.push_back(v);
    for (int w : out[v]) {
      if (state[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        cycle.assign(it, stack.end());
        return true;
      }
      if (state[w] == 0 && dfs(w)) return true;
    }
    stack.pop_back();
    state[v] = 2;
    return false;
  };
  for (int v = 0; v < n; ++v) {
    if (state[v] == 0 && dfs(v)) {
      std::string names;
      for (int c : cycle) names += q.vertices[c] + "->";
      names += q.vertices[cycle.front()];
      return {false, ErrorKind::HasOrientedCycle, "oriented cycle " + names, cycle};
    }
  }
  if (require_connected && !is_connected(q))
    return {false, ErrorKind::Disconnected, "quiver is not connected", {}};
  return diag;
}

void validate_quiver(const Quiver& q, bool require_connected) {
  const auto diag = check_quiver(q, require_connected);
  if (!diag.ok) throw Error(diag.kind, diag.message);
}

ReducedQuiver reduced_quiver(const Quiver& q) {
  ReducedQuiver r;
  r.quiver.vertices = q.vertices;
  r.image.resize(q.arrows.size());
  for (int i = 0; i < q.arrow_count(); ++i) {
    const Arrow& a = q.arrows[i];
    const auto it = std::find(r.quiver.arrows.begin(), r.quiver.arrows.end(), a);
    int id;
    if (it == r.quiver.arrows.end()) {
      id = r.quiver.arrow_count();
      r.quiver.arrows.push_back(a);
      r.multiplicity.push_back(0);
      r.preimage.emplace_back();
    } else {
      id = static_cast<int>(it - r.quiver.arrows.begin());
    }
    ++r.multiplicity[id];
    r.preimage[id].push_back(i);
    r.image[i] = id;
  }
  return r;
}

int skew_euler_form(const Quiver& q, int a, int b) {
  if (a < 0 || a >= q.vertex_count() || b < 0 || b >= q.vertex_count())
    throw Error(ErrorKind::UnknownVertex, "vertex index out of range");
  int value = 0;
  for (const auto& arrow : q.arrows) {
    if (arrow.tail == b && arrow.head == a) ++value;
    if (arrow.tail == a && arrow.head == b) --value;
  }
  return value;
}

int skew_euler_form(const Quiver& q, const std::string& a, const std::string& b) {
  return skew_euler_form(q, q.index_of(a), q.index_of(b));
}

int total_dimension(const DimVector& d) { return std::accumulate(d.begin(), d.end(), 0); }

int moduli_dimension(const Quiver& q, const DimVector& d) {
  int value = 1 - total_dimension(d);
  for (const auto& a : q.arrows) value += d.at(a.tail) * d.at(a.head);
  return value;
}

void check_normalized(const Quiver& q, const DimVector& d, const Stability& theta) {
  if (static_cast<int>(d.size()) != q.vertex_count() || static_cast<int>(theta.size()) != q.vertex_count())
    throw Error(ErrorKind::InvalidInput, "dimension/stability vectors do not match the vertex count");
  for (int v : d)
    if (v < 0) throw Error(ErrorKind::InvalidInput, "negative dimension entry");
  Rational total = 0;
  for (std::size_t v = 0; v < d.size(); ++v) total += d[v] * theta[v];
  if (total != 0)
    throw Error(ErrorKind::NotNormalized, "stability is not normalized: sum d_v theta_v = " + to_string(total));
}

Quiver restrict_to_support(const Quiver& q, const DimVector& d, std::vector<int>* kept) {
  std::vector<int> index(q.vertex_count(), -1);
  Quiver r;
  std::vector<int> local;
  for (int v = 0; v < q.vertex_count(); ++v) {
    if (d.at(v) > 0) {
      index[v] = r.vertex_count();
      r.vertices.push_back(q.vertices[v]);
      local.push_back(v);
    }
  }
  for (const auto& a : q.arrows)
    if (index[a.tail] >= 0 && index[a.head] >= 0) r.arrows.push_back({index[a.tail], index[a.head]});
  if (kept) *kept = std::move(local);
  return r;
}

std::vector<SpanningTree> spanning_trees(const Quiver& qbar) {
  if (!is_connected(qbar)) throw Error(ErrorKind::Disconnected, "spanning trees need a connected quiver");
  const int n = qbar.vertex_count();
  const int m = qbar.arrow_count();
  std::vector<SpanningTree> trees;
  std::vector<int> chosen;
  // Lexicographic enumeration of (n-1)-subsets, pruning subsets that close a cycle.
  std::function<void(int)> extend = [&](int start) {
    if (static_cast<int>(chosen.size()) == n - 1) {
      trees.push_back({chosen, std::nullopt});
      return;
    }
    const int still_needed = n - 1 - static_cast<int>(chosen.size());
    for (int a = start; a <= m - still_needed; ++a) {
      UnionFind uf(n);
      bool acyclic = true;
      for (int c : chosen) uf.unite(qbar.arrows[c].tail, qbar.arrows[c].head);
      if (!uf.unite(qbar.arrows[a].tail, qbar.arrows[a].head)) acyclic = false;
      if (!acyclic) continue;
      chosen.push_back(a);
      extend(a + 1);
      chosen.pop_back();
    }
  };
  extend(0);
  return trees;
}

std::vector<Rational> tree_components(const Quiver& q, const SpanningTree& t, const Stability& theta) {
  const int n = q.vertex_count();
  if (static_cast<int>(theta.size()) != n)
    throw Error(ErrorKind::InvalidInput, "stability length differs from the vertex count");
  if (static_cast<int>(t.arrows.size()) != n - 1)
    throw Error(ErrorKind::NotATree, "a spanning tree has one arrow fewer than vertices");
  Rational total = 0;
  for (const auto& th : theta) total += th;
  if (total != 0) throw Error(ErrorKind::NotNormalized, "stability does not sum to zero on the tree");
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbour, position in t.arrows)
  for (std::size_t i = 0; i < t.arrows.size(); ++i) {
    const Arrow& a = q.arrows.at(t.arrows[i]);
    adj[a.tail].push_back({a.head, static_cast<int>(i)});
    adj[a.head].push_back({a.tail, static_cast<int>(i)});
  }
  std::vector<Rational> c(t.arrows.size());
  std::vector<bool> seen(n, false);
  // Subtree sums: for the edge joining parent p and child v, the head side sum is
  // theta(subtree v) if v is the head and -theta(subtree v) otherwise.
  std::function<Rational(int)> visit = [&](int v) {
    seen[v] = true;
    Rational s = theta[v];
    for (const auto& [w, pos] : adj[v]) {
      if (seen[w]) continue;
      const Rational sub = visit(w);
      c[pos] = q.arrows[t.arrows[pos]].head == w ? sub : Rational(-sub);
      s += sub;
    }
    return s;
  };
  if (n > 0) visit(t.root.value_or(0));
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw Error(ErrorKind::NotATree, "arrow set does not connect all vertices");
  return c;
}

std::vector<SpanningTree> stable_trees(const Quiver& qbar, const Stability& theta) {
  std::vector<SpanningTree> out;
  for (const auto& t : spanning_trees(qbar)) {
    const auto c = tree_components(qbar, t, theta);
    bool stable = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) {
        WallWitness w;
        w.context = "tree {";
        for (std::size_t k = 0; k < t.arrows.size(); ++k)
          w.context += (k ? "," : "") + qbar.arrow_label(t.arrows[k]);
        w.context += "} has zero component at arrow " + qbar.arrow_label(t.arrows[i]);
        w.point = theta;
        for (std::size_t k = 0; k < t.arrows.size(); ++k) {
          if (k == i) continue;
          std::vector<Rational> e(qbar.vertex_count(), Rational(0));
          const Arrow& a = qbar.arrows[t.arrows[k]];
          e[a.head] += 1;
          e[a.tail] -= 1;
          w.span.push_back(e);
          w.labels.push_back(qbar.arrow_label(t.arrows[k]));
        }
        throw NonRegularStabilityError("stability lies on a wall: " + w.context, w);
      }
      if (c[i] > 0) stable = false;
    }
    if (stable) out.push_back(t);
  }
  return out;
}

Rational weist_count(const Quiver& q, const Stability& theta) {
  const ReducedQuiver r = reduced_quiver(q);
  if (!is_connected(r.quiver)) return 0;
  Rational total = 0;
  for (const auto& t : stable_trees(r.quiver, theta)) {
    Rational product = 1;
    for (int a : t.arrows) product *= r.multiplicity[a];
    total += product;
  }
  return total;
}

std::vector<std::vector<int>> multiplicity_vectors(int n) {
  std::vector<std::vector<int>> out;
  if (n <= 0) return out;
  std::vector<int> m(n, 0);
  std::function<void(int, int)> fill = [&](int l, int remaining) {
    if (l > n) {
      if (remaining == 0) out.push_back(m);
      return;
    }
    for (int k = remaining / l; k >= 0; --k) {
      m[l - 1] = k;
      fill(l + 1, remaining - k * l);
    }
    m[l - 1] = 0;
  };
  fill(1, n);
  return out;
}

std::vector<AbelianizationTerm> abelianize(const Quiver& q, const DimVector& d, const Stability& zeta) {
  check_normalized(q, d, zeta);
  std::vector<int> support;
  for (int v = 0; v < q.vertex_count(); ++v)
    if (d[v] > 0) support.push_back(v);
  std::vector<std::vector<std::vector<int>>> choices;
  for (int v : support) choices.push_back(multiplicity_vectors(d[v]));

  Rational prefactor = 1;
  for (int v : support) prefactor *= factorial(d[v]);

  std::vector<AbelianizationTerm> terms;
  std::vector<std::size_t> pick(support.size(), 0);
  while (true) {
    AbelianizationTerm term;
    term.coefficient = prefactor;
    std::vector<std::vector<int>> blown(q.vertex_count());
    for (std::size_t s = 0; s < support.size(); ++s) {
      const int v = support[s];
      const auto& m = choices[s][pick[s]];
      term.multiplicities.push_back(m);
      for (int l = 1; l <= d[v]; ++l) {
        const int count = m[l - 1];
        if (count == 0) continue;
        // (1/m!) * ((-1)^{l-1} / l^2)^m
        term.coefficient *= jks::pow(Rational(l % 2 == 1 ? 1 : -1, l * l), count) / factorial(count);
        for (int k = 1; k <= count; ++k) {
          blown[v].push_back(term.quiver.vertex_count());
          term.quiver.vertices.push_back(d[v] == 1 ? q.vertices[v]
                                                   : q.vertices[v] + "#" + std::to_string(l) + "." +
                                                         std::to_string(k));
          term.origin.push_back(v);
          term.weight.push_back(l);
          term.stability.push_back(zeta[v] * l);
          term.dimension.push_back(1);
        }
      }
    }
    for (const auto& a : q.arrows) {
      for (int t : blown[a.tail])
        for (int h : blown[a.head]) {
          const int copies = term.weight[t] * term.weight[h];
          for (int c = 0; c < copies; ++c) term.quiver.arrows.push_back({t, h});
        }
    }
    terms.push_back(std::move(term));
    std::size_t s = support.size();
    while (s > 0) {
      --s;
      if (++pick[s] < choices[s].size()) break;
      pick[s] = 0;
      if (s == 0) return terms;
    }
    if (support.empty()) return terms;
  }
}

}  // namespace jks
