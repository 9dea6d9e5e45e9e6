#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace dsfm {

/// Ground-set element, 0-based internally (files and CLI output are 1-based).
using Element = std::int32_t;

enum class Family {
  edge_cut,             ///< w·[exactly one endpoint in S]
  hyperedge_cut,        ///< w·[S splits the support]
  concave_cardinality,  ///< w·|S∩S_r|·(|S_r| − |S∩S_r|)
  table,                ///< explicit 2^|S_r| value table
  edge_set,             ///< disjoint union of weighted edge cuts
};

std::string_view family_name(Family f);

struct WeightedEdge {
  Element u;
  Element v;
  double weight;
};

/// A normalized submodular set function F_r with explicit support S_r.
///
/// All local operations address the support in sorted element order: local
/// index j is the j-th smallest element of S_r. Values outside the support
/// never influence F.
class SubmodularComponent {
 public:
  static SubmodularComponent edge(Element u, Element v, double weight = 1.0);
  static SubmodularComponent hyperedge(std::vector<Element> vertices,
                                       double weight = 1.0);
  static SubmodularComponent concave_cardinality(std::vector<Element> region,
                                                 double weight = 1.0);
  /// `values[mask]` is F of the subset whose bit j selects `elements[j]`
  /// (elements in the listed order, not necessarily sorted). Values are
  /// multiplied by `weight`. Requires F(∅) = 0, |support| ≤ 12, and passes an
  /// exhaustive submodularity check.
  static SubmodularComponent table(std::vector<Element> elements,
                                   std::vector<double> values,
                                   double weight = 1.0);
  /// Union of pairwise disjoint edges.
  static SubmodularComponent edge_set(std::vector<WeightedEdge> edges);

  Family family() const { return family_; }
  std::span<const Element> support() const { return support_; }
  std::size_t size() const { return support_.size(); }
  /// Edge / hyperedge / concave weight; 1 for tables and edge sets.
  double weight() const { return weight_; }
  bool integer_valued() const { return integer_valued_; }

  /// Position of `e` in the support, or -1.
  int local_index(Element e) const;

  /// F(set ∩ S_r) for a set of global elements (any order, duplicates ok).
  double evaluate(std::span<const Element> set) const;
  /// F of the local subset with member[j] != 0.
  double evaluate_local(std::span<const char> member) const;
  /// F of a local bitmask; requires size() ≤ 62.
  double evaluate_mask(std::uint64_t mask) const;

  /// Edmonds' greedy vertex of the base polytope maximizing ⟨y, x⟩. Ties in
  /// x are broken by ascending element index. `x` and `out` are local.
  void greedy_vertex(std::span<const double> x, std::span<double> out) const;
  std::vector<double> greedy_vertex(std::span<const double> x) const;
  /// Lovász extension f(x) = max_{y∈B} ⟨y, x⟩ (local x).
  double lovasz(std::span<const double> x) const;

  /// Minimizes F(In ∪ S) − F(In) − v(S) over S ⊆ Free, where state[j] is
  /// 0 (excluded), 1 (In) or 2 (Free). On return `chosen[j]` is 1 for
  /// elements of the minimizing S. Ties prefer smaller sets.
  double minimize_restricted(std::span<const char> state,
                             std::span<const double> v,
                             std::vector<char>& chosen) const;

  /// Copy with every value multiplied by `factor` > 0.
  SubmodularComponent scaled(double factor) const;

  /// Cardinality profile g(k) for edge, hyperedge and concave families.
  std::span<const double> cardinality_profile() const { return card_; }
  /// Edges in local indices (edge_set only).
  struct LocalEdge {
    int a;
    int b;
    double weight;
  };
  std::span<const LocalEdge> local_edges() const { return edges_; }
  /// Value table indexed by sorted-order local mask (table only).
  std::span<const double> table_values() const { return table_; }

 private:
  SubmodularComponent() = default;
  void finalize();

  Family family_ = Family::edge_cut;
  std::vector<Element> support_;
  double weight_ = 1.0;
  bool integer_valued_ = false;
  std::vector<double> card_;
  std::vector<LocalEdge> edges_;
  std::vector<double> table_;
};

/// Exhaustive check of F(S∪{i}) − F(S) ≥ F(S∪{i,j}) − F(S∪{j}) over all
/// S and i ≠ j ∉ S, which is equivalent to the pairwise definition.
/// Exact comparison for integer-valued functions, 1e-9 otherwise.
bool check_submodular(const SubmodularComponent& f);

/// Two-query incidence test on the ground set [n]: false iff F({i}) = 0 and
/// F([n]) = F([n]∖{i}).
bool detect_incidence(const SubmodularComponent& f, Element i, int n);

/// Largest violation of y ∈ B(F): max(−min_S (F(S) − y(S)), |y(S_r) − F(S_r)|).
double base_polytope_violation(const SubmodularComponent& f,
                               std::span<const double> y);

}  // namespace dsfm
