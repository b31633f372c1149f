#include "jks/quiver_jk.hpp"

#include "jks/parallel.hpp"
#include "jks/residue.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>

namespace jks {

RationalExpr build_ZQ(const Quiver& q, const DimVector& d, const Arrangement& a, SignMode mode) {
  int exponent = total_dimension(d) - 1;
  if (mode == SignMode::Mero) exponent += moduli_dimension(q, d);
  RationalExpr f(Rational(exponent % 2 == 0 ? 1 : -1));
  for (const auto& r : a.roots) {
    f *= RationalExpr::power(r.form, 1);
    f *= RationalExpr::power(r.form - LinForm(Rational(1)), -1);
  }
  for (const auto& w : a.weights) {
    const LinForm shifted = w.form + LinForm(w.rcharge);
    f *= RationalExpr::power(shifted - LinForm(Rational(1)), w.multiplicity);
    f *= RationalExpr::power(shifted, -w.multiplicity);
  }
  return f;
}

namespace {

RationalExpr translate(const RationalExpr& f, const std::vector<Rational>& x) {
  std::map<VarId, LinForm> images;
  for (std::size_t k = 0; k < x.size(); ++k) {
    LinForm img = LinForm::variable(static_cast<VarId>(k));
    img.set_constant(x[k]);
    images.emplace(static_cast<VarId>(k), img);
  }
  return f.substitute(images);
}

LinForm linear_part(LinForm f) {
  f.set_constant(0);
  return f;
}

}  // namespace

TreeExpansion jk_tree_expansion(const Quiver& q, const Stability& theta, const Arrangement& a, bool cross_check) {
  validate_quiver(q);
  const int n = q.vertex_count() - 1;
  if (!a.roots.empty() || a.dimension != n)
    throw Error(ErrorKind::InvalidInput, "tree expansion needs the abelian arrangement of the quiver");
  check_normalized(q, DimVector(q.vertex_count(), 1), theta);
  TreeExpansion out;
  out.value = 0;
  const ReducedQuiver r = reduced_quiver(q);
  if (!is_connected(r.quiver)) return out;
  stable_trees(r.quiver, theta);  // raises the wall witness for non-regular theta

  const DimVector ones(q.vertex_count(), 1);
  const RationalExpr f = build_ZQ(q, ones, a);
  const auto coords = a.coords();
  std::vector<std::vector<std::size_t>> weights_of(r.quiver.arrows.size());
  for (std::size_t w = 0; w < a.weights.size(); ++w) {
    const int reduced = a.split ? r.image.at(a.weights[w].source_arrow) : a.weights[w].source_arrow;
    weights_of.at(reduced).push_back(w);
  }

  for (const auto& t : spanning_trees(r.quiver)) {
    const auto c = tree_components(r.quiver, t, theta);
    const bool stable = std::all_of(c.begin(), c.end(), [](const Rational& x) { return x < 0; });
    std::vector<std::size_t> pick(t.arrows.size(), 0);
    while (true) {
      TreeTerm term;
      term.tree = t;
      term.components = c;
      term.indicator = stable ? 1 : 0;
      for (std::size_t i = 0; i < t.arrows.size(); ++i) term.lift.push_back(weights_of[t.arrows[i]][pick[i]]);
      out.terms.push_back(std::move(term));
      std::size_t i = t.arrows.size();
      bool done = true;
      while (i > 0) {
        --i;
        if (++pick[i] < weights_of[t.arrows[i]].size()) {
          done = false;
          break;
        }
        pick[i] = 0;
      }
      if (done) break;
    }
  }

  const std::size_t hyperplanes = a.hyperplane_count();
  const auto locals = parallel_map(out.terms.size(), [&](std::size_t k) {
    const TreeTerm& term = out.terms[k];
    std::pair<std::vector<Rational>, Rational> result;
    if (n == 0) {
      result.second = f.scalar();
      return result;
    }
    RMatrix A(n, n);
    RVector b(n);
    std::vector<LinForm> basis;
    for (int i = 0; i < n; ++i) {
      const LinForm h = a.hyperplane(term.lift[i]);
      A.row(i) = a.direction(term.lift[i]).transpose();
      b(i) = -h.constant();
      basis.push_back(linear_part(h));
    }
    const auto x = solve<Rational>(A, b);
    if (!x) throw std::logic_error("tree weights are not a basis");
    result.first.assign(x->data(), x->data() + n);
    std::map<VarId, Rational> point;
    for (int i = 0; i < n; ++i) point[i] = result.first[i];
    std::size_t active = 0;
    for (std::size_t h = 0; h < hyperplanes; ++h)
      if (a.hyperplane(h).evaluate(point) == 0) ++active;
    if (active != static_cast<std::size_t>(n))
      throw Error(ErrorKind::DegenerateRCharges, "a tree point lies on a further hyperplane");
    // At a basis point the function only has poles on the coordinate hyperplanes, so the
    // residue order is irrelevant; the sign makes the value independent of the basis order.
    const Rational det = determinant<Rational>(A);
    const Rational value = iterated_residue(change_vars_linear(translate(f, result.first), basis, coords), coords);
    result.second = det > 0 ? value : Rational(-value);
    return result;
  });
  for (std::size_t k = 0; k < out.terms.size(); ++k) {
    out.terms[k].location = locals[k].first;
    out.terms[k].local_value = locals[k].second;
    if (out.terms[k].indicator) out.value += locals[k].second;
  }

  if (cross_check) {
    const Rational global = jk_global_theta(q, ones, theta, a);
    if (global != out.value)
      throw std::logic_error("tree expansion " + to_string(out.value) + " differs from global JK " +
                             to_string(global));
  }
  return out;
}

Rational jk_global_theta(const Quiver& q, const DimVector& d, const Stability& theta, const Arrangement& a) {
  check_normalized(q, d, theta);
  const auto points = singular_points(a);
  const RVector zeta = perturbed_zeta(a, points, theta, &q);
  return jk_global(build_ZQ(q, d, a), a, zeta);
}

namespace {

template <class Eval>
AbelianJk sum_terms(const Quiver& q, const DimVector& d, const Stability& zeta, Eval&& eval) {
  validate_quiver(q);
  AbelianJk out;
  out.value = 0;
  const auto terms = abelianize(q, d, zeta);
  const auto values = parallel_map(terms.size(), [&](std::size_t k) -> Rational {
    const AbelianizationTerm& term = terms[k];
    if (!is_connected(term.quiver)) return 0;
    try {
      return eval(term);
    } catch (const NonRegularStabilityError& e) {
      WallWitness w = e.witness();
      w.context = "abelianization term " + std::to_string(k + 1) + ": " + w.context;
      throw NonRegularStabilityError(std::string(w.context), w);
    }
  });
  for (std::size_t k = 0; k < terms.size(); ++k) {
    out.value += terms[k].coefficient * values[k];
    out.terms.push_back({terms[k], values[k]});
  }
  return out;
}

}  // namespace

AbelianJk jk_ab(const Quiver& q, const DimVector& d, const Stability& zeta, const RChargeSpec& rbar,
                const Rational& lambda, bool split) {
  return sum_terms(q, d, zeta, [&](const AbelianizationTerm& term) {
    const Arrangement a =
        scale_rcharges(build_arrangement(term.quiver, term.dimension, rbar, std::nullopt, split), lambda);
    return jk_tree_expansion(term.quiver, term.stability, a).value;
  });
}

AbelianJk jk_ab_infinity(const Quiver& q, const DimVector& d, const Stability& zeta) {
  return sum_terms(q, d, zeta,
                   [&](const AbelianizationTerm& term) { return weist_count(term.quiver, term.stability); });
}

LambdaSweep lambda_sweep(const Quiver& q, const DimVector& d, const Stability& zeta, const RChargeSpec& rbar,
                         const std::vector<Rational>& lambdas) {
  LambdaSweep out;
  out.limit = jk_ab_infinity(q, d, zeta).value;
  for (const auto& lambda : lambdas) {
    const Rational value = jk_ab(q, d, zeta, rbar, lambda).value;
    out.rows.push_back({lambda, value, abs(value - out.limit)});
  }
  return out;
}

Rational wt_residue(const Quiver& tree, const std::vector<int>& multiplicities, int root) {
  const int n = tree.vertex_count();
  if (root < 0 || root >= n) throw Error(ErrorKind::NotATree, "root is not a vertex");
  if (tree.arrow_count() != n - 1 || !is_connected(tree))
    throw Error(ErrorKind::NotATree, "arrow set is not a spanning tree");
  if (static_cast<int>(multiplicities.size()) != tree.arrow_count())
    throw Error(ErrorKind::InvalidInput, "one multiplicity per arrow is required");
  // w_root = w0 (variable 0); v_alpha = w_head - w_tail (variable 1 + alpha).
  std::vector<LinForm> w(n);
  std::vector<int> depth(n, -1);
  std::vector<int> child(tree.arrow_count(), -1);  // endpoint farther from the root
  depth[root] = 0;
  w[root] = LinForm::variable(0);
  std::queue<int> frontier;
  frontier.push(root);
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int a = 0; a < tree.arrow_count(); ++a) {
      const Arrow& ar = tree.arrows[a];
      const LinForm edge = LinForm::variable(1 + a);
      int next = -1;
      if (ar.tail == v && depth[ar.head] < 0) {
        next = ar.head;
        w[next] = w[v] + edge;
      } else if (ar.head == v && depth[ar.tail] < 0) {
        next = ar.tail;
        w[next] = w[v] - edge;
      }
      if (next < 0) continue;
      depth[next] = depth[v] + 1;
      child[a] = next;
      frontier.push(next);
    }
  }
  RationalExpr f(Rational(1));
  for (int a = 0; a < tree.arrow_count(); ++a) {
    const Arrow& ar = tree.arrows[a];
    f *= Rational(multiplicities[a]);
    f *= RationalExpr::power(w[ar.tail], 1);
    f *= RationalExpr::power(w[ar.head], -1);
    f *= RationalExpr::power(LinForm::variable(1 + a), -1);
  }
  std::vector<int> order(tree.arrow_count());
  for (int a = 0; a < tree.arrow_count(); ++a) order[a] = a;
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return depth[child[x]] > depth[child[y]]; });
  for (int a : order) f = residue_step(f, 1 + a);
  if (!f.is_constant()) throw std::logic_error("W_T residue still depends on w0: " + f.to_string());
  return f.scalar();
}

}  // namespace jks
