#include "jks/arrangement.hpp"

#include "jks/parallel.hpp"
#include "jks/residue.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace jks {

std::vector<VarId> Arrangement::coords() const {
  std::vector<VarId> out(coordinates.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<VarId>(k);
  return out;
}

LinForm Arrangement::hyperplane(std::size_t h) const {
  if (h < weights.size()) return weights[h].form + LinForm(weights[h].rcharge);
  return roots.at(h - weights.size()).form - LinForm(Rational(1));
}

RVector Arrangement::direction(std::size_t h) const {
  const LinForm f = hyperplane(h);
  RVector v(dimension);
  for (int k = 0; k < dimension; ++k) v(k) = f.coefficient(k);
  return v;
}

std::string Arrangement::hyperplane_label(std::size_t h, const Quiver& q) const {
  if (h < weights.size()) {
    const Weight& w = weights[h];
    std::string s = "weight[" + std::to_string(w.source_arrow) + "]";
    if (split && w.source_arrow < q.arrow_count()) s = "weight(" + q.arrow_label(w.source_arrow) + ")";
    return s + "(" + std::to_string(w.tail_index + 1) + "," + std::to_string(w.head_index + 1) + ")";
  }
  const Root& r = roots.at(h - weights.size());
  return "root(" + q.vertices.at(r.vertex) + "," + std::to_string(r.i + 1) + "," + std::to_string(r.j + 1) + ")";
}

std::vector<Rational> sample_rcharges(std::uint64_t seed, std::size_t count, int attempt) {
  std::mt19937_64 gen(seed);
  const Integer denominator = Integer(1) << 31;
  std::vector<Rational> out(count);
  for (int a = 0; a <= attempt; ++a)
    for (std::size_t i = 0; i < count; ++i) out[i] = Rational(Integer((gen() >> 33) + 1), denominator);
  return out;
}

namespace {

Arrangement assemble(const Quiver& q, const DimVector& d, const std::vector<Rational>& rvalues,
                     const Coordinate& reference, bool split) {
  Arrangement a;
  a.reference = reference;
  a.split = split;
  a.arrow_rcharges = rvalues;
  std::map<std::pair<int, int>, VarId> index;
  for (int v = 0; v < q.vertex_count(); ++v) {
    for (int k = 0; k < d[v]; ++k) {
      if (v == reference.vertex && k == reference.index) continue;
      index[{v, k}] = static_cast<VarId>(a.coordinates.size());
      a.coordinates.push_back({v, k});
    }
  }
  a.dimension = static_cast<int>(a.coordinates.size());
  const auto u = [&](int v, int k) {
    const auto it = index.find({v, k});
    return it == index.end() ? LinForm() : LinForm::variable(it->second);
  };
  if (split) {
    for (int arrow = 0; arrow < q.arrow_count(); ++arrow) {
      const Arrow& ar = q.arrows[arrow];
      for (int i = 0; i < d[ar.tail]; ++i)
        for (int j = 0; j < d[ar.head]; ++j)
          a.weights.push_back({u(ar.head, j) - u(ar.tail, i), 1, rvalues.at(arrow), arrow, i, j});
    }
  } else {
    const ReducedQuiver r = reduced_quiver(q);
    for (int arrow = 0; arrow < r.quiver.arrow_count(); ++arrow) {
      const Arrow& ar = r.quiver.arrows[arrow];
      for (int i = 0; i < d[ar.tail]; ++i)
        for (int j = 0; j < d[ar.head]; ++j)
          a.weights.push_back(
              {u(ar.head, j) - u(ar.tail, i), r.multiplicity[arrow], rvalues.at(arrow), arrow, i, j});
    }
  }
  for (int v = 0; v < q.vertex_count(); ++v)
    for (int i = 0; i < d[v]; ++i)
      for (int j = 0; j < d[v]; ++j)
        if (i != j) a.roots.push_back({u(v, i) - u(v, j), v, i, j});
  return a;
}

}  // namespace

Arrangement build_arrangement(const Quiver& q, const DimVector& d, const RChargeSpec& rcharges,
                              std::optional<Coordinate> reference, bool split) {
  validate_quiver(q);
  if (static_cast<int>(d.size()) != q.vertex_count())
    throw Error(ErrorKind::InvalidInput, "dimension vector length differs from the vertex count");
  Coordinate ref{-1, 0};
  if (reference) {
    ref = *reference;
  } else {
    for (int v = 0; v < q.vertex_count(); ++v)
      if (d[v] > 0) ref = {v, 0};
  }
  if (ref.vertex < 0 || ref.vertex >= q.vertex_count() || ref.index < 0 || ref.index >= d[ref.vertex])
    throw Error(ErrorKind::InvalidInput, "reference coordinate does not exist");
  const std::size_t count = split ? q.arrows.size() : reduced_quiver(q).quiver.arrows.size();
  if (!rcharges.seed) {
    if (rcharges.values.size() != count)
      throw Error(ErrorKind::InvalidInput, "expected " + std::to_string(count) + " R-charges, got " +
                                               std::to_string(rcharges.values.size()));
    return assemble(q, d, rcharges.values, ref, split);
  }
  for (int attempt = 0; attempt < 32; ++attempt) {
    Arrangement a = assemble(q, d, sample_rcharges(*rcharges.seed, count, attempt), ref, split);
    try {
      singular_points(a);
      return a;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateRCharges) throw;
    }
  }
  throw Error(ErrorKind::DegenerateRCharges, "no non-degenerate R-charges after 32 samples");
}

Arrangement scale_rcharges(Arrangement a, const Rational& lambda) {
  for (auto& w : a.weights) w.rcharge *= lambda;
  for (auto& r : a.arrow_rcharges) r *= lambda;
  return a;
}

namespace {

bool proportional(const LinForm& a, const LinForm& b) {
  if (a.is_constant() || b.is_constant()) return a == b;
  return a.normalized().second == b.normalized().second;
}

}  // namespace

std::vector<SingularPoint> singular_points(const Arrangement& a) {
  const int n = a.dimension;
  const std::size_t m = a.hyperplane_count();
  if (n == 0) return {SingularPoint{{}, {}}};
  std::vector<LinForm> forms(m);
  std::vector<RVector> dirs(m);
  for (std::size_t h = 0; h < m; ++h) {
    forms[h] = a.hyperplane(h);
    dirs[h] = a.direction(h);
  }
  for (std::size_t h1 = 0; h1 < m; ++h1)
    for (std::size_t h2 = h1 + 1; h2 < m; ++h2)
      if (proportional(forms[h1], forms[h2]))
        throw Error(ErrorKind::DegenerateRCharges,
                    "hyperplanes " + std::to_string(h1) + " and " + std::to_string(h2) + " coincide");

  std::map<std::vector<Rational>, SingularPoint> found;
  std::vector<std::size_t> chosen;
  RMatrix rows(0, n);
  std::function<void(std::size_t)> extend = [&](std::size_t start) {
    if (static_cast<int>(chosen.size()) == n) {
      RMatrix A(n, n);
      RVector b(n);
      for (int r = 0; r < n; ++r) {
        A.row(r) = dirs[chosen[r]].transpose();
        b(r) = -forms[chosen[r]].constant();
      }
      const auto x = solve<Rational>(A, b);
      std::vector<Rational> loc(x->data(), x->data() + n);
      if (found.count(loc)) return;
      std::map<VarId, Rational> point;
      for (int k = 0; k < n; ++k) point[k] = loc[k];
      SingularPoint p{loc, {}};
      for (std::size_t h = 0; h < m; ++h)
        if (forms[h].evaluate(point) == 0) p.active.push_back(h);
      if (a.roots.empty() && static_cast<int>(p.active.size()) > n)
        throw Error(ErrorKind::DegenerateRCharges,
                    "more than " + std::to_string(n) + " hyperplanes meet at one point");
      found.emplace(loc, std::move(p));
      return;
    }
    for (std::size_t h = start; h + (n - chosen.size()) <= m; ++h) {
      if (in_row_span<Rational>(rows, dirs[h])) continue;
      RMatrix grown(rows.rows() + 1, n);
      if (rows.rows() > 0) grown.topRows(rows.rows()) = rows;
      grown.row(rows.rows()) = dirs[h].transpose();
      std::swap(rows, grown);
      chosen.push_back(h);
      extend(h + 1);
      chosen.pop_back();
      std::swap(rows, grown);
    }
  };
  extend(0);
  std::vector<SingularPoint> out;
  out.reserve(found.size());
  for (auto& [loc, p] : found) out.push_back(std::move(p));
  return out;
}

RVector lift_stability(const Arrangement& a, const Stability& theta) {
  RVector z(a.dimension);
  for (int k = 0; k < a.dimension; ++k) z(k) = theta.at(a.coordinates[k].vertex);
  return z;
}

namespace {

RMatrix rows_of(const std::vector<RVector>& vs, int n) {
  RMatrix m(static_cast<Eigen::Index>(vs.size()), n);
  for (std::size_t i = 0; i < vs.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vs[i].transpose();
  return m;
}

std::vector<RVector> subset_sums(const std::vector<RVector>& s) {
  std::vector<RVector> out;
  std::set<std::vector<Rational>> seen;
  const std::size_t count = s.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << count); ++mask) {
    RVector v = RVector::Zero(s.empty() ? 0 : s[0].size());
    for (std::size_t i = 0; i < count; ++i)
      if (mask & (std::size_t{1} << i)) v += s[i];
    std::vector<Rational> key(v.data(), v.data() + v.size());
    if (seen.insert(key).second) out.push_back(v);
  }
  return out;
}

}  // namespace

Regularity regularity(const RVector& zeta, const std::vector<RVector>& s, RegularityMode mode) {
  const int n = static_cast<int>(zeta.size());
  const std::vector<RVector> cand = mode == RegularityMode::Sum ? subset_sums(s) : s;
  Regularity result;
  if (n == 0) return result;
  // zeta lies in the span of some (n-1)-subset iff it lies in the span of an independent
  // subset of size <= n-1 (pad with further elements otherwise).
  std::vector<RVector> chosen;
  std::function<bool(std::size_t)> search = [&](std::size_t start) {
    const RMatrix rows = rows_of(chosen, n);
    if (in_row_span<Rational>(rows, zeta)) {
      result.regular = false;
      result.witness = chosen;
      return true;
    }
    if (static_cast<int>(chosen.size()) == n - 1) return false;
    for (std::size_t i = start; i < cand.size(); ++i) {
      if (in_row_span<Rational>(rows, cand[i])) continue;
      chosen.push_back(cand[i]);
      if (search(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  search(0);
  return result;
}

std::vector<RVector> directions_of(const std::vector<LinForm>& forms, const std::vector<VarId>& coords) {
  std::vector<RVector> out;
  for (const auto& f : forms) {
    RVector v(static_cast<Eigen::Index>(coords.size()));
    for (std::size_t k = 0; k < coords.size(); ++k) v(static_cast<Eigen::Index>(k)) = f.coefficient(coords[k]);
    out.push_back(v);
  }
  return out;
}

namespace {

Rational volume_of(const RMatrix& dmu, int n) {
  if (dmu.size() == 0) return 1;
  if (dmu.rows() != n || dmu.cols() != n) throw Error(ErrorKind::InvalidInput, "dmu must be n x n");
  const Rational det = determinant<Rational>(dmu);
  if (det == 0) throw Error(ErrorKind::SingularBasis, "dmu generators are dependent");
  return det;
}

}  // namespace

std::vector<Flag> enumerate_flags(const std::vector<RVector>& activeset, const RVector& zeta, const RMatrix& dmu) {
  const int n = static_cast<int>(zeta.size());
  const Rational vol = volume_of(dmu, n);
  std::vector<Flag> flags;
  std::vector<std::vector<int>> closures;  // A cap F_j for the current partial flag
  std::function<void()> extend = [&]() {
    const int depth = static_cast<int>(closures.size());
    const std::vector<int> current = depth ? closures.back() : std::vector<int>{};
    if (depth == n) {
      Flag f;
      std::vector<int> prev;
      RVector kappa = RVector::Zero(n);
      for (const auto& cl : closures) {
        std::vector<int> step;
        for (int i : cl)
          if (!std::binary_search(prev.begin(), prev.end(), i)) step.push_back(i);
        for (int i : step) kappa += activeset[i];
        f.steps.push_back(step);
        f.basis.push_back(step.front());
        f.kappa.push_back(kappa);
        prev = cl;
      }
      const RMatrix K = rows_of(f.kappa, n);
      const Rational det = determinant<Rational>(K);
      f.nu = det == 0 ? 0 : ((det / vol) > 0 ? 1 : -1);
      if (f.nu != 0) {
        const auto c = solve<Rational>(RMatrix(K.transpose()), zeta);
        const bool closed = std::all_of(c->data(), c->data() + n, [](const Rational& x) { return x >= 0; });
        f.contributes = closed && std::all_of(c->data(), c->data() + n, [](const Rational& x) { return x > 0; });
        // On the boundary of a kappa-cone the flag sum depends on the side zeta is pushed to.
        if (closed && !f.contributes)
          throw Error(ErrorKind::NotSumRegular, "zeta lies on the boundary of a flag cone");
      }
      flags.push_back(std::move(f));
      return;
    }
    std::vector<RVector> span_rows;
    for (int i : current) span_rows.push_back(activeset[i]);
    std::set<std::vector<int>> next;
    for (int a = 0; a < static_cast<int>(activeset.size()); ++a) {
      if (std::binary_search(current.begin(), current.end(), a)) continue;
      std::vector<RVector> rows = span_rows;
      rows.push_back(activeset[a]);
      const RMatrix R = rows_of(rows, n);
      std::vector<int> closure;
      for (int b = 0; b < static_cast<int>(activeset.size()); ++b)
        if (in_row_span<Rational>(R, activeset[b])) closure.push_back(b);
      next.insert(closure);
    }
    for (const auto& cl : next) {
      closures.push_back(cl);
      extend();
      closures.pop_back();
    }
  };
  extend();
  return flags;
}

Rational flag_residue(const RationalExpr& f, const Flag& flag, const std::vector<LinForm>& activeset,
                      const std::vector<VarId>& coords, const RMatrix& dmu) {
  const int n = static_cast<int>(coords.size());
  const Rational vol = volume_of(dmu, n);
  std::vector<LinForm> gamma;
  for (int i : flag.basis) gamma.push_back(activeset.at(i));
  const RMatrix G = rows_of(directions_of(gamma, coords), n);
  const Rational det = determinant<Rational>(G);
  if (det == 0) throw Error(ErrorKind::SingularBasis, "flag basis is degenerate");
  gamma.back() *= vol / det;
  return iterated_residue(change_vars_linear(f, gamma, coords), coords) * vol;
}

Rational jk_zeta(const RationalExpr& f, const std::vector<LinForm>& activeset, const RVector& zeta,
                 const std::vector<VarId>& coords, const RMatrix& dmu) {
  const auto flags = enumerate_flags(directions_of(activeset, coords), zeta, dmu);
  Rational total = 0;
  for (const auto& flag : flags)
    if (flag.contributes) total += flag.nu * flag_residue(f, flag, activeset, coords, dmu);
  return total;
}

namespace {

// Components of zeta in the basis (rows of B).
std::optional<RVector> components(const RMatrix& B, const RVector& zeta) {
  return solve<Rational>(RMatrix(B.transpose()), zeta);
}

}  // namespace

Rational jk_basis(const RationalExpr& f, const std::vector<LinForm>& basis, const RVector& zeta,
                  const std::vector<VarId>& coords) {
  const int n = static_cast<int>(coords.size());
  if (static_cast<int>(basis.size()) != n) throw Error(ErrorKind::SingularBasis, "basis has the wrong size");
  const RMatrix B = rows_of(directions_of(basis, coords), n);
  const auto c = components(B, zeta);
  if (!c) throw Error(ErrorKind::SingularBasis, "basis is linearly dependent");
  for (int i = 0; i < n; ++i) {
    if ((*c)(i) == 0) throw Error(ErrorKind::NotSumRegular, "zeta has a zero component");
    for (int j = i + 1; j < n; ++j)
      if ((*c)(i) == (*c)(j)) throw Error(ErrorKind::NotSumRegular, "zeta has equal components");
  }
  for (int i = 0; i < n; ++i)
    if ((*c)(i) < 0) return 0;
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return (*c)(a) > (*c)(b); });
  std::vector<LinForm> ordered;
  for (int i : order) ordered.push_back(basis[i]);
  const Rational det = determinant<Rational>(rows_of(directions_of(ordered, coords), n));
  const Rational value = iterated_residue(change_vars_linear(f, ordered, coords), coords);
  return det > 0 ? value : Rational(-value);
}

namespace {

LinForm linear_part(LinForm f) {
  f.set_constant(0);
  return f;
}

RationalExpr translate(const RationalExpr& f, const std::vector<Rational>& x) {
  std::map<VarId, LinForm> images;
  for (std::size_t k = 0; k < x.size(); ++k) {
    LinForm img = LinForm::variable(static_cast<VarId>(k));
    img.set_constant(x[k]);
    images.emplace(static_cast<VarId>(k), img);
  }
  return f.substitute(images);
}

}  // namespace

Rational jk_global(const RationalExpr& f, const Arrangement& a, const RVector& zeta) {
  const auto points = singular_points(a);
  const auto coords = a.coords();
  const int n = a.dimension;
  if (n == 0) return f.scalar();
  const auto local = parallel_map(points.size(), [&](std::size_t i) -> Rational {
    const SingularPoint& p = points[i];
    std::vector<LinForm> active;
    for (std::size_t h : p.active) active.push_back(linear_part(a.hyperplane(h)));
    const RationalExpr g = translate(f, p.location);
    if (static_cast<int>(active.size()) == n) return jk_basis(g, active, zeta, coords);
    return jk_zeta(g, active, zeta, coords);
  });
  Rational total = 0;
  for (const auto& v : local) total += v;
  return total;
}

RVector perturbed_zeta(const Arrangement& a, const std::vector<SingularPoint>& points, const Stability& theta,
                       const Quiver* q) {
  const int n = a.dimension;
  const RVector base = -lift_stability(a, theta);
  if (n == 0) return base;
  struct Local {
    std::vector<RMatrix> bases;
    bool is_basis;
    std::vector<RVector> vectors;
  };
  std::vector<Local> locals;
  Rational delta = -1;
  for (const auto& p : points) {
    Local loc;
    loc.is_basis = static_cast<int>(p.active.size()) == n;
    for (std::size_t h : p.active) loc.vectors.push_back(a.direction(h));
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> choose = [&](std::size_t start) {
      if (static_cast<int>(pick.size()) == n) {
        RMatrix B(n, n);
        for (int r = 0; r < n; ++r) B.row(r) = loc.vectors[pick[r]].transpose();
        const auto c = components(B, base);
        if (!c) return;
        for (int i = 0; i < n; ++i) {
          if ((*c)(i) == 0) {
            WallWitness w;
            w.context = "lifted stability lies on a wall of the arrangement";
            w.point.assign(base.data(), base.data() + n);
            for (int r = 0; r < n; ++r) {
              if (r == i) continue;
              const RVector& v = loc.vectors[pick[r]];
              w.span.emplace_back(v.data(), v.data() + n);
              w.labels.push_back(q ? a.hyperplane_label(p.active[pick[r]], *q)
                                   : "hyperplane " + std::to_string(p.active[pick[r]]));
            }
            throw NonRegularStabilityError(std::string(w.context), w);
          }
          const Rational ai = abs((*c)(i));
          if (delta < 0 || ai < delta) delta = ai;
          for (int j = i + 1; j < n; ++j) {
            const Rational gap = abs((*c)(i) - (*c)(j));
            if (gap != 0 && gap < delta) delta = gap;
          }
        }
        loc.bases.push_back(B);
        return;
      }
      for (std::size_t i = start; i < loc.vectors.size(); ++i) {
        pick.push_back(i);
        choose(i + 1);
        pick.pop_back();
      }
    };
    choose(0);
    locals.push_back(std::move(loc));
  }
  if (delta < 0) return base;
  const int primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (int b : primes) {
    RVector dir(n);
    Rational power = 1;
    for (int k = 0; k < n; ++k) {
      dir(k) = power;
      power *= b;
    }
    Rational spread = 0;
    for (const auto& loc : locals)
      for (const auto& B : loc.bases) {
        const auto c = components(B, dir);
        for (int i = 0; i < n; ++i) {
          spread = std::max(spread, Rational(abs((*c)(i))));
          for (int j = i + 1; j < n; ++j) spread = std::max(spread, Rational(abs((*c)(i) - (*c)(j))));
        }
      }
    const Rational eps = delta / (spread * 2 * Rational(Integer(1) << 40));
    const RVector zeta = base + dir * eps;
    bool ok = true;
    for (const auto& loc : locals) {
      for (const auto& B : loc.bases) {
        const auto c0 = components(B, base);
        const auto c1 = components(B, zeta);
        for (int i = 0; i < n && ok; ++i) {
          if ((*c0)(i).sign() != (*c1)(i).sign()) ok = false;
          if (loc.is_basis)
            for (int j = i + 1; j < n; ++j)
              if ((*c1)(i) == (*c1)(j)) ok = false;
        }
      }
      if (ok && !loc.is_basis) ok = regularity(zeta, loc.vectors, RegularityMode::Sum).regular;
      if (!ok) break;
    }
    if (ok) return zeta;
  }
  throw Error(ErrorKind::NotSumRegular, "could not perturb the stability to a sum-regular point");
}

}  // namespace jks
