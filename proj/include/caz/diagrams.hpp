#pragma once

#include <functional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "caz/model.hpp"

namespace caz {

using BigInt = boost::multiprecision::cpp_int;
using Alphas = std::vector<int>;

/// A perfect matching from unbarred slots to barred slots. Slots are
/// numbered label by label: label j owns alphas[j] consecutive slots on each
/// side. match[u] is the barred slot joined to unbarred slot u; no edge may
/// join two slots of the same label.
struct Diagram {
  Alphas alphas;
  std::vector<int> match;

  int p() const { return static_cast<int>(alphas.size()); }
  int label_of(int slot) const;
  /// edge_counts[i][j] = number of edges from unbarred label i to barred label j.
  std::vector<std::vector<int>> edge_counts() const;
  nlohmann::json to_json() const;
};

/// Default cap on sum(alphas) for explicit enumeration.
inline constexpr int kDiagramCap = 14;

/// Visits every admissible matching exactly once. Throws CapExceeded when
/// sum(alphas) > cap. Labels with alpha = 0 carry no slots.
void for_each_diagram(const Alphas& alphas, const std::function<void(const Diagram&)>& visit,
                      int cap = kDiagramCap);
std::vector<Diagram> enumerate_diagrams(const Alphas& alphas, int cap = kDiagramCap);

/// Multiplicity matrix n[i][j] (edges from label i to barred label j) with
/// zero diagonal, row sums and column sums alpha, and the number of
/// diagrams realizing it: prod_i alpha_i! prod_j alpha_j! / prod n_ij!.
struct ContingencyTable {
  std::vector<std::vector<int>> n;
  BigInt diagrams;
};
void for_each_table(const Alphas& alphas, const std::function<void(const ContingencyTable&)>& visit);

/// |Gamma(alphas)| from the contingency tables (no enumeration cap).
BigInt count_diagrams(const Alphas& alphas);

/// prod over edges rho(t_i, t_j) for unbarred label i and barred label j.
Complex diagram_value(const Diagram& d, std::span<const Complex> points, const ModelSpec& kernel);

/// E prod_j :|w(t_j)|^{2 alpha_j}: = sum over Gamma of the diagram values,
/// summed per contingency table.
double wick_moment(const Alphas& alphas, std::span<const Complex> points, const ModelSpec& kernel);
/// Same sum by explicit enumeration of every diagram (cross-check).
double wick_moment_enumerated(const Alphas& alphas, std::span<const Complex> points, const ModelSpec& kernel,
                              int cap = kDiagramCap);

/// Label-contracted structure: components of the graph on labels with an
/// edge i - j whenever some slot of i is matched to a slot of j-bar or the
/// reverse. Regular iff every component has exactly two labels.
struct Classification {
  bool regular = false;
  std::vector<std::vector<int>> components;
  /// beta per component pair (regular diagrams only): the common alpha.
  std::vector<int> betas;
  /// prod (beta_k!)^2 for regular diagrams: the number of diagrams sharing
  /// this reduced diagram.
  BigInt reduced_multiplicity;
};
Classification classify(const Diagram& d);
/// Regularity depends only on the multiplicity matrix.
bool table_is_regular(const std::vector<std::vector<int>>& n);

/// Number of regular diagrams in Gamma(alphas), from the tables.
BigInt count_regular_diagrams(const Alphas& alphas);
/// The same number assembled from pair partitions of the labels:
/// sum over pairings of prod over pairs [alpha_i = alpha_j] (alpha_i!)^2.
BigInt regular_count_by_gluing(const Alphas& alphas);

/// All partitions of {0..p-1} into pairs, by explicit recursion.
std::vector<std::vector<std::pair<int, int>>> pair_partitions(int p);
/// (p - 1)!! for even p, 0 for odd p.
BigInt double_factorial_odd(int p);

/// Discrete polynomial radial functional Z = sum_t mu(t) Theta(t) phi(|w(t)|)
/// with phi(|zeta|) = sum_{alpha=0}^{m} c[alpha] / alpha! :|zeta|^{2 alpha}:.
struct DiscreteFunctional {
  std::vector<double> c;        // c[alpha], alpha = 0..m
  std::vector<Complex> points;  // t
  std::vector<double> weights;  // mu(t) Theta(t)
};

/// E Z^p summed over index tuples and Wick diagrams.
double exact_moment(const DiscreteFunctional& f, int p, const ModelSpec& kernel);

/// :|zeta|^{2 alpha}: = (-1)^alpha alpha! L_alpha(|zeta|^2).
double wick_power(double abs_sq, int alpha);
/// phi(|zeta|) for the functional's coefficients.
double radial_polynomial(const DiscreteFunctional& f, double abs_sq);

struct IrregularBound {
  double lhs = 0.0;        // sum over T^p of prod mu(t_j) |V_gamma(t)|
  double sup_row = 0.0;    // sup_s sum_t |rho(s, t)| mu(t)
  int components = 0;      // k, components of the simple label graph
  double rhs_tree = 0.0;   // sup_row^{p-k} mu(T)^k
  double rhs_half = 0.0;   // sup_row^{p/2} mu(T)^{p/2}
  bool holds = false;      // lhs <= rhs_tree (up to rounding)
};
/// Tree-deletion bound for an irregular diagram on a discrete measure.
/// Throws std::invalid_argument for regular diagrams.
IrregularBound irregular_bound_check(const Diagram& d, std::span<const Complex> points,
                                     std::span<const double> weights, const ModelSpec& kernel);

}  // namespace caz
