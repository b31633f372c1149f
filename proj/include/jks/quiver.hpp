#pragma once

#include "jks/errors.hpp"
#include "jks/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jks {

struct Arrow {
  int tail = 0;
  int head = 0;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

// Vertices are indexed 0..n-1 in the order of `vertices`; arrows reference those indices.
struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int arrow_count() const { return static_cast<int>(arrows.size()); }
  int index_of(const std::string& name) const;  // throws UnknownVertex
  std::string arrow_label(int arrow) const;

  // Sources i1..i{l1}, sinks j1..j{l2}, one arrow i -> j for every pair (sources outermost).
  static Quiver complete_bipartite(int l1, int l2);
  // Vertices 1..n named by number; arrows given as 0-based index pairs.
  static Quiver from_edges(int n, const std::vector<std::pair<int, int>>& edges);
};

using DimVector = std::vector<int>;
using Stability = std::vector<Rational>;

struct QuiverDiagnostics {
  bool ok = true;
  ErrorKind kind = ErrorKind::ValidationError;
  std::string message;
  std::vector<int> witness;  // offending arrow (loop) or vertex cycle
};

QuiverDiagnostics check_quiver(const Quiver& q, bool require_connected = false);
// Throws HasLoop / HasOrientedCycle / Disconnected.
void validate_quiver(const Quiver& q, bool require_connected = false);
bool is_connected(const Quiver& q);

struct ReducedQuiver {
  Quiver quiver;
  std::vector<int> multiplicity;          // per reduced arrow
  std::vector<std::vector<int>> preimage;  // reduced arrow -> original arrows
  std::vector<int> image;                  // original arrow -> reduced arrow
};

ReducedQuiver reduced_quiver(const Quiver& q);

// <a,b> = #(b -> a) - #(a -> b).
int skew_euler_form(const Quiver& q, int a, int b);
int skew_euler_form(const Quiver& q, const std::string& a, const std::string& b);

// D = sum_arrows d_t d_h - |d| + 1.
int moduli_dimension(const Quiver& q, const DimVector& d);
int total_dimension(const DimVector& d);

// Throws NotNormalized unless sum_v d_v theta_v = 0.
void check_normalized(const Quiver& q, const DimVector& d, const Stability& theta);

// Full subquiver on {v : d_v > 0}; `kept` maps new vertex indices to old ones.
Quiver restrict_to_support(const Quiver& q, const DimVector& d, std::vector<int>* kept = nullptr);

struct SpanningTree {
  std::vector<int> arrows;  // sorted arrow ids of the quiver it was taken from
  std::optional<int> root;
  friend bool operator==(const SpanningTree&, const SpanningTree&) = default;
};

// All spanning trees, arrow sets in lexicographic order. Throws Disconnected.
std::vector<SpanningTree> spanning_trees(const Quiver& qbar);

// c_alpha with theta = sum c_alpha (e_head - e_tail), in the order of t.arrows.
// Throws NotNormalized if theta does not sum to zero.
std::vector<Rational> tree_components(const Quiver& q, const SpanningTree& t, const Stability& theta);

// Trees with every component negative. Throws NonRegularStabilityError if some component is 0.
std::vector<SpanningTree> stable_trees(const Quiver& qbar, const Stability& theta);

// Sum over stable trees of the reduced quiver of the product of arrow multiplicities.
// A disconnected quiver has no stable abelian representation and yields 0.
Rational weist_count(const Quiver& q, const Stability& theta);

struct AbelianizationTerm {
  Quiver quiver;
  DimVector dimension;
  Stability stability;
  Rational coefficient;
  // multiplicities[v][l-1] = m_{v,l} for the original vertices in support order.
  std::vector<std::vector<int>> multiplicities;
  std::vector<int> origin;  // blown-up vertex -> original vertex
  std::vector<int> weight;  // blown-up vertex -> l
};

std::vector<AbelianizationTerm> abelianize(const Quiver& q, const DimVector& d, const Stability& zeta);

// Multiplicity vectors m with sum_l l*m_l = n, in lexicographically decreasing order of m.
std::vector<std::vector<int>> multiplicity_vectors(int n);

}  // namespace jks
