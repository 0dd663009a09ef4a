#include "caz/diagrams.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "caz/quadrature.hpp"

namespace caz {

namespace {

std::vector<int> offsets_of(const Alphas& alphas) {
  std::vector<int> offsets(alphas.size() + 1, 0);
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    if (alphas[j] < 0) throw std::invalid_argument("alphas must be non-negative");
    offsets[j + 1] = offsets[j] + alphas[j];
  }
  return offsets;
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double factorial_double(int n) { return std::exp(std::lgamma(n + 1.0)); }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

// Components of the label graph with an edge wherever linked(i, j).
template <class Linked>
std::vector<std::vector<int>> label_components(int p, Linked&& linked) {
  UnionFind uf(p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (i != j && linked(i, j)) uf.unite(i, j);
    }
  }
  std::vector<std::vector<int>> components;
  std::vector<int> index(static_cast<std::size_t>(p), -1);
  for (int i = 0; i < p; ++i) {
    const int root = uf.find(i);
    if (index[static_cast<std::size_t>(root)] < 0) {
      index[static_cast<std::size_t>(root)] = static_cast<int>(components.size());
      components.emplace_back();
    }
    components[static_cast<std::size_t>(index[static_cast<std::size_t>(root)])].push_back(i);
  }
  return components;
}

using RhoMatrix = std::vector<std::vector<Complex>>;

RhoMatrix rho_matrix(std::span<const Complex> points, const ModelSpec& kernel) {
  const std::size_t n = points.size();
  RhoMatrix m(n, std::vector<Complex>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = rho(kernel, points[i], points[j]);
  }
  return m;
}

// Sum over tables of multiplicity * prod rho(t_i, t_j)^{n_ij}, where rho is
// indexed by label.
Complex wick_sum(const Alphas& alphas, const RhoMatrix& rho_by_label) {
  Complex total = 0.0;
  for_each_table(alphas, [&](const ContingencyTable& table) {
    Complex value = static_cast<double>(table.diagrams);
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      for (std::size_t j = 0; j < alphas.size(); ++j) {
        if (table.n[i][j] > 0) value *= std::pow(rho_by_label[i][j], table.n[i][j]);
      }
    }
    total += value;
  });
  return total;
}

}  // namespace

int Diagram::label_of(int slot) const {
  int offset = 0;
  for (int j = 0; j < p(); ++j) {
    offset += alphas[static_cast<std::size_t>(j)];
    if (slot < offset) return j;
  }
  throw std::out_of_range("slot index out of range");
}

std::vector<std::vector<int>> Diagram::edge_counts() const {
  std::vector<std::vector<int>> n(alphas.size(), std::vector<int>(alphas.size(), 0));
  for (std::size_t u = 0; u < match.size(); ++u) {
    ++n[static_cast<std::size_t>(label_of(static_cast<int>(u)))][static_cast<std::size_t>(label_of(match[u]))];
  }
  return n;
}

nlohmann::json Diagram::to_json() const {
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t u = 0; u < match.size(); ++u) {
    edges.push_back({{"from", label_of(static_cast<int>(u)) + 1}, {"to_bar", label_of(match[u]) + 1},
                     {"slot", u}, {"bar_slot", match[u]}});
  }
  return {{"alphas", alphas}, {"edges", edges}};
}

void for_each_diagram(const Alphas& alphas, const std::function<void(const Diagram&)>& visit, int cap) {
  const std::vector<int> offsets = offsets_of(alphas);
  const int slots = offsets.back();
  if (slots > cap) {
    throw CapExceeded("diagram enumeration: sum of alphas " + std::to_string(slots) + " exceeds cap " +
                      std::to_string(cap));
  }
  std::vector<int> label(static_cast<std::size_t>(slots));
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    for (int s = offsets[j]; s < offsets[j + 1]; ++s) label[static_cast<std::size_t>(s)] = static_cast<int>(j);
  }
  Diagram d{alphas, std::vector<int>(static_cast<std::size_t>(slots), -1)};
  std::vector<bool> used(static_cast<std::size_t>(slots), false);
  std::function<void(int)> assign = [&](int u) {
    if (u == slots) {
      visit(d);
      return;
    }
    for (int b = 0; b < slots; ++b) {
      if (used[static_cast<std::size_t>(b)] || label[static_cast<std::size_t>(b)] == label[static_cast<std::size_t>(u)]) {
        continue;
      }
      used[static_cast<std::size_t>(b)] = true;
      d.match[static_cast<std::size_t>(u)] = b;
      assign(u + 1);
      used[static_cast<std::size_t>(b)] = false;
    }
  };
  assign(0);
}

std::vector<Diagram> enumerate_diagrams(const Alphas& alphas, int cap) {
  std::vector<Diagram> out;
  for_each_diagram(alphas, [&](const Diagram& d) { out.push_back(d); }, cap);
  return out;
}

void for_each_table(const Alphas& alphas, const std::function<void(const ContingencyTable&)>& visit) {
  offsets_of(alphas);
  const int p = static_cast<int>(alphas.size());
  BigInt numerator = 1;
  for (int a : alphas) numerator *= factorial(a) * factorial(a);
  ContingencyTable table{std::vector<std::vector<int>>(alphas.size(), std::vector<int>(alphas.size(), 0)), 0};
  std::vector<int> column_left(alphas.begin(), alphas.end());
  // Fill row i, column j; `row_left` is what row i still needs.
  std::function<void(int, int, int)> fill = [&](int i, int j, int row_left) {
    if (i == p) {
      BigInt denominator = 1;
      for (const auto& row : table.n) {
        for (int v : row) denominator *= factorial(v);
      }
      table.diagrams = numerator / denominator;
      visit(table);
      return;
    }
    if (j == p) {
      if (row_left == 0) fill(i + 1, 0, i + 1 < p ? alphas[static_cast<std::size_t>(i + 1)] : 0);
      return;
    }
    if (i == j) {
      fill(i, j + 1, row_left);
      return;
    }
    // Remaining capacity in later columns must be able to absorb the row.
    int later = 0;
    for (int k = j + 1; k < p; ++k) {
      if (k != i) later += column_left[static_cast<std::size_t>(k)];
    }
    const int hi = std::min(row_left, column_left[static_cast<std::size_t>(j)]);
    const int lo = std::max(0, row_left - later);
    for (int v = lo; v <= hi; ++v) {
      table.n[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      column_left[static_cast<std::size_t>(j)] -= v;
      fill(i, j + 1, row_left - v);
      column_left[static_cast<std::size_t>(j)] += v;
    }
    table.n[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 0;
  };
  if (p == 0) return;
  fill(0, 0, alphas[0]);
}

BigInt count_diagrams(const Alphas& alphas) {
  BigInt total = 0;
  for_each_table(alphas, [&](const ContingencyTable& t) { total += t.diagrams; });
  return total;
}

Complex diagram_value(const Diagram& d, std::span<const Complex> points, const ModelSpec& kernel) {
  if (static_cast<int>(points.size()) != d.p()) throw std::invalid_argument("diagram_value: need one point per label");
  Complex value = 1.0;
  for (std::size_t u = 0; u < d.match.size(); ++u) {
    const int i = d.label_of(static_cast<int>(u));
    const int j = d.label_of(d.match[u]);
    value *= rho(kernel, points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
  }
  return value;
}

double wick_moment(const Alphas& alphas, std::span<const Complex> points, const ModelSpec& kernel) {
  if (points.size() != alphas.size()) throw std::invalid_argument("wick_moment: need one point per label");
  return wick_sum(alphas, rho_matrix(points, kernel)).real();
}

double wick_moment_enumerated(const Alphas& alphas, std::span<const Complex> points, const ModelSpec& kernel,
                              int cap) {
  if (points.size() != alphas.size()) throw std::invalid_argument("wick_moment: need one point per label");
  Complex total = 0.0;
  for_each_diagram(alphas, [&](const Diagram& d) { total += diagram_value(d, points, kernel); }, cap);
  return total.real();
}

bool table_is_regular(const std::vector<std::vector<int>>& n) {
  const int p = static_cast<int>(n.size());
  const auto components = label_components(p, [&](int i, int j) {
    return n[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] > 0;
  });
  return std::all_of(components.begin(), components.end(), [](const auto& c) { return c.size() == 2; });
}

Classification classify(const Diagram& d) {
  const auto n = d.edge_counts();
  Classification c;
  c.components = label_components(d.p(), [&](int i, int j) {
    return n[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] > 0;
  });
  c.regular = std::all_of(c.components.begin(), c.components.end(), [](const auto& comp) { return comp.size() == 2; });
  c.reduced_multiplicity = 0;
  if (c.regular) {
    c.reduced_multiplicity = 1;
    for (const auto& comp : c.components) {
      const int beta = d.alphas[static_cast<std::size_t>(comp[0])];
      c.betas.push_back(beta);
      c.reduced_multiplicity *= factorial(beta) * factorial(beta);
    }
  }
  return c;
}

BigInt count_regular_diagrams(const Alphas& alphas) {
  BigInt total = 0;
  for_each_table(alphas, [&](const ContingencyTable& t) {
    if (table_is_regular(t.n)) total += t.diagrams;
  });
  return total;
}

std::vector<std::vector<std::pair<int, int>>> pair_partitions(int p) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (p < 0 || p % 2 != 0) return out;
  std::vector<std::pair<int, int>> current;
  std::vector<bool> used(static_cast<std::size_t>(p), false);
  std::function<void()> recurse = [&] {
    int first = -1;
    for (int i = 0; i < p; ++i) {
      if (!used[static_cast<std::size_t>(i)]) {
        first = i;
        break;
      }
    }
    if (first < 0) {
      out.push_back(current);
      return;
    }
    used[static_cast<std::size_t>(first)] = true;
    for (int j = first + 1; j < p; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      used[static_cast<std::size_t>(j)] = true;
      current.emplace_back(first, j);
      recurse();
      current.pop_back();
      used[static_cast<std::size_t>(j)] = false;
    }
    used[static_cast<std::size_t>(first)] = false;
  };
  recurse();
  return out;
}

BigInt double_factorial_odd(int p) {
  if (p < 0 || p % 2 != 0) return 0;
  BigInt r = 1;
  for (int k = p - 1; k > 1; k -= 2) r *= k;
  return r;
}

BigInt regular_count_by_gluing(const Alphas& alphas) {
  BigInt total = 0;
  for (const auto& pairing : pair_partitions(static_cast<int>(alphas.size()))) {
    BigInt term = 1;
    for (auto [a, b] : pairing) {
      const int x = alphas[static_cast<std::size_t>(a)];
      if (x != alphas[static_cast<std::size_t>(b)]) {
        term = 0;
        break;
      }
      term *= factorial(x) * factorial(x);
    }
    total += term;
  }
  return total;
}

double wick_power(double abs_sq, int alpha) {
  if (alpha < 0) throw std::invalid_argument("wick_power: alpha must be non-negative");
  double prev = 1.0;
  double cur = 1.0 - abs_sq;
  if (alpha == 0) return 1.0;
  for (int k = 1; k < alpha; ++k) {
    const double next = ((2.0 * k + 1.0 - abs_sq) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return (alpha % 2 == 0 ? 1.0 : -1.0) * factorial_double(alpha) * cur;
}

double radial_polynomial(const DiscreteFunctional& f, double abs_sq) {
  double sum = 0.0;
  for (std::size_t a = 0; a < f.c.size(); ++a) {
    if (f.c[a] != 0.0) sum += f.c[a] / factorial_double(static_cast<int>(a)) * wick_power(abs_sq, static_cast<int>(a));
  }
  return sum;
}

double exact_moment(const DiscreteFunctional& f, int p, const ModelSpec& kernel) {
  if (p < 1) throw std::invalid_argument("exact_moment: p must be positive");
  if (f.points.size() != f.weights.size()) throw std::invalid_argument("exact_moment: weights must match points");
  const int n = static_cast<int>(f.points.size());
  const int m = static_cast<int>(f.c.size()) - 1;
  if (m < 0) return 0.0;
  if (std::pow(static_cast<double>(n) * (m + 1), p) > 1e8) {
    throw CapExceeded("exact_moment: (|T| (m + 1))^p exceeds 1e8 index tuples");
  }
  const RhoMatrix rho_all = rho_matrix(f.points, kernel);

  std::vector<int> t(static_cast<std::size_t>(p), 0);
  std::vector<int> alpha(static_cast<std::size_t>(p), 0);
  CompensatedSum total;
  // Loop over index tuples t in T^p, then over alpha in {0..m}^p.
  auto next_tuple = [](std::vector<int>& v, int base) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (++v[k] < base) return true;
      v[k] = 0;
    }
    return false;
  };
  do {
    double weight = 1.0;
    for (int k = 0; k < p; ++k) weight *= f.weights[static_cast<std::size_t>(t[static_cast<std::size_t>(k)])];
    if (weight == 0.0) continue;
    std::fill(alpha.begin(), alpha.end(), 0);
    do {
      double coeff = weight;
      Alphas active;
      std::vector<int> active_points;
      for (int k = 0; k < p; ++k) {
        const int a = alpha[static_cast<std::size_t>(k)];
        coeff *= f.c[static_cast<std::size_t>(a)] / factorial_double(a);
        if (a > 0) {
          active.push_back(a);
          active_points.push_back(t[static_cast<std::size_t>(k)]);
        }
      }
      if (coeff == 0.0) continue;
      if (active.empty()) {
        total.add(coeff);
        continue;
      }
      if (active.size() == 1) continue;  // E :|w|^{2 alpha}: = 0
      RhoMatrix sub(active.size(), std::vector<Complex>(active.size()));
      for (std::size_t i = 0; i < active.size(); ++i) {
        for (std::size_t j = 0; j < active.size(); ++j) {
          sub[i][j] = rho_all[static_cast<std::size_t>(active_points[i])][static_cast<std::size_t>(active_points[j])];
        }
      }
      total.add(coeff * wick_sum(active, sub).real());
    } while (next_tuple(alpha, m + 1));
  } while (next_tuple(t, n));
  return total.value();
}

IrregularBound irregular_bound_check(const Diagram& d, std::span<const Complex> points,
                                     std::span<const double> weights, const ModelSpec& kernel) {
  if (points.size() != weights.size()) throw std::invalid_argument("irregular_bound_check: weights must match points");
  const Classification cls = classify(d);
  if (cls.regular) throw std::invalid_argument("irregular_bound_check needs an irregular diagram");
  const int p = d.p();
  const int n = static_cast<int>(points.size());
  const auto counts = d.edge_counts();

  std::vector<std::vector<double>> abs_rho_m(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      abs_rho_m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          abs_rho(kernel, points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
    }
  }
  // Edge multiplicity between labels a < b, both directions together.
  std::vector<std::vector<int>> mult(static_cast<std::size_t>(p), std::vector<int>(static_cast<std::size_t>(p), 0));
  for (int a = 0; a < p; ++a) {
    for (int b = 0; b < p; ++b) {
      if (a != b) {
        mult[static_cast<std::size_t>(std::min(a, b))][static_cast<std::size_t>(std::max(a, b))] +=
            counts[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      }
    }
  }
  auto factor = [&](int a, int b, int ta, int tb) {
    const int e = mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    return e == 0 ? 1.0 : std::pow(abs_rho_m[static_cast<std::size_t>(ta)][static_cast<std::size_t>(tb)], e);
  };

  std::vector<int> t(static_cast<std::size_t>(p), 0);
  std::function<double(int, double)> sum_from = [&](int label, double partial) -> double {
    if (label == p) return partial;
    double s = 0.0;
    for (int x = 0; x < n; ++x) {
      double v = partial * weights[static_cast<std::size_t>(x)];
      for (int a = 0; a < label && v != 0.0; ++a) v *= factor(a, label, t[static_cast<std::size_t>(a)], x);
      if (v == 0.0) continue;
      t[static_cast<std::size_t>(label)] = x;
      s += sum_from(label + 1, v);
    }
    return s;
  };

  IrregularBound r;
  r.lhs = sum_from(0, 1.0);
  const double total_mass = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (int s = 0; s < n; ++s) {
    double row = 0.0;
    for (int x = 0; x < n; ++x) row += abs_rho_m[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)] * weights[static_cast<std::size_t>(x)];
    r.sup_row = std::max(r.sup_row, row);
  }
  r.components = static_cast<int>(cls.components.size());
  r.rhs_tree = std::pow(r.sup_row, p - r.components) * std::pow(total_mass, r.components);
  r.rhs_half = std::pow(r.sup_row * total_mass, 0.5 * p);
  r.holds = r.lhs <= r.rhs_tree * (1.0 + 1e-12);
  return r;
}

}  // namespace caz
