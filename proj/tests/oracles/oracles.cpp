#include "oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <random>
#include <unordered_set>

namespace weylchar::oracle {

Complex to_complex(const Cyclotomic& c) {
  const int n = c.conductor();
  Complex sum = 0;
  const auto& coeffs = c.coefficients();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / n;
    sum += coeffs[k].get_d() * Complex(std::cos(angle), std::sin(angle));
  }
  return sum;
}

namespace {

/// Classes by conjugating with every element, identity class first.
std::vector<std::vector<int>> classes_by_conjugation(const FiniteGroup& g, std::vector<int>& class_of) {
  const int n = g.order();
  std::vector<std::vector<int>> classes;
  class_of.assign(static_cast<std::size_t>(n), -1);
  auto add_class = [&](int x) {
    std::vector<int> members;
    for (int h = 0; h < n; ++h) {
      const int y = g.multiply(g.multiply(h, x), g.inverse(h));
      if (class_of[static_cast<std::size_t>(y)] < 0) {
        class_of[static_cast<std::size_t>(y)] = static_cast<int>(classes.size());
        members.push_back(y);
      }
    }
    std::sort(members.begin(), members.end());
    classes.push_back(members);
  };
  add_class(g.identity());
  for (int x = 0; x < n; ++x)
    if (class_of[static_cast<std::size_t>(x)] < 0) add_class(x);
  return classes;
}

}  // namespace

NumericTable burnside_table(const FiniteGroup& g) {
  const int n = g.order();
  NumericTable t;
  std::vector<int> class_of;
  t.classes = classes_by_conjugation(g, class_of);
  const auto r = static_cast<Eigen::Index>(t.classes.size());

  // c[j](l, k) = #{(x, y) in C_j x C_l : xy = z_k}
  std::vector<Eigen::MatrixXd> c(static_cast<std::size_t>(r), Eigen::MatrixXd::Zero(r, r));
  for (Eigen::Index j = 0; j < r; ++j)
    for (int x : t.classes[static_cast<std::size_t>(j)])
      for (Eigen::Index l = 0; l < r; ++l)
        for (int y : t.classes[static_cast<std::size_t>(l)]) {
          const int k = class_of[static_cast<std::size_t>(g.multiply(x, y))];
          if (t.classes[static_cast<std::size_t>(k)][0] == g.multiply(x, y)) c[static_cast<std::size_t>(j)](l, k) += 1;
        }

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coef(0.5, 1.5);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(r, r);
  for (auto& m : c) a += coef(rng) * m;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a);
  const Eigen::MatrixXcd vecs = solver.eigenvectors();
  for (Eigen::Index e = 0; e < r; ++e) {
    Eigen::VectorXcd omega = vecs.col(e) / vecs(0, e);
    double norm = 0;
    for (Eigen::Index k = 0; k < r; ++k)
      norm += std::norm(omega(k)) / static_cast<double>(t.classes[static_cast<std::size_t>(k)].size());
    const double degree = std::sqrt(n / norm);
    std::vector<Complex> row;
    for (Eigen::Index k = 0; k < r; ++k)
      row.push_back(omega(k) * degree / static_cast<double>(t.classes[static_cast<std::size_t>(k)].size()));
    t.rows.push_back(row);
  }
  return t;
}

double orthogonality_defect(const NumericTable& t, int group_order) {
  double worst = 0;
  const std::size_t r = t.rows.size();
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      Complex rows = 0;
      Complex cols = 0;
      for (std::size_t k = 0; k < r; ++k) {
        rows += static_cast<double>(t.classes[k].size()) * t.rows[a][k] * std::conj(t.rows[b][k]);
        cols += t.rows[k][a] * std::conj(t.rows[k][b]);
      }
      rows /= static_cast<double>(group_order);
      const double col_expected = a == b ? static_cast<double>(group_order) / static_cast<double>(t.classes[a].size()) : 0.0;
      worst = std::max({worst, std::abs(rows - (a == b ? 1.0 : 0.0)), std::abs(cols - col_expected)});
    }
  return worst;
}

bool tables_agree(const CharacterTable& exact, const NumericTable& numeric, double tol) {
  if (exact.irreducibles.size() != numeric.rows.size()) return false;
  const std::size_t r = numeric.rows.size();
  std::vector<std::size_t> column(r);
  for (std::size_t k = 0; k < r; ++k)
    column[k] = static_cast<std::size_t>(exact.class_of[static_cast<std::size_t>(numeric.classes[k][0])]);
  std::vector<bool> used(r, false);
  for (const auto& row : exact.irreducibles) {
    bool found = false;
    for (std::size_t e = 0; e < r && !found; ++e) {
      if (used[e]) continue;
      bool same = true;
      for (std::size_t k = 0; k < r && same; ++k) same = std::abs(to_complex(row[column[k]]) - numeric.rows[e][k]) < tol;
      if (same) used[e] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

namespace {

/// Distinct values of sums of d roots of unity of order m.
std::vector<Cyclotomic> root_sums(int d, int m) {
  std::vector<Cyclotomic> out;
  std::unordered_set<Cyclotomic> seen;
  std::vector<int> k(static_cast<std::size_t>(d), 0);
  while (true) {
    Cyclotomic v;
    for (int e : k) v += Cyclotomic::root_of_unity(m, e);
    if (seen.insert(v).second) out.push_back(v);
    int pos = d - 1;
    while (pos >= 0 && k[static_cast<std::size_t>(pos)] == m - 1) --pos;
    if (pos < 0) break;
    const int next = k[static_cast<std::size_t>(pos)] + 1;
    for (int q = pos; q < d; ++q) k[static_cast<std::size_t>(q)] = next;
  }
  return out;
}

}  // namespace

ExactTable exhaustive_table(const FiniteGroup& g) {
  const int n = g.order();
  ExactTable t;
  std::vector<int> class_of;
  t.classes = classes_by_conjugation(g, class_of);
  const std::size_t r = t.classes.size();
  // c[j][l][k] = #{(x, y) in C_j x C_l : xy = z_k}
  std::vector<std::vector<std::vector<int>>> c(r, std::vector<std::vector<int>>(r, std::vector<int>(r, 0)));
  for (std::size_t j = 0; j < r; ++j)
    for (int x : t.classes[j])
      for (std::size_t l = 0; l < r; ++l)
        for (int y : t.classes[l]) {
          const int z = g.multiply(x, y);
          const auto k = static_cast<std::size_t>(class_of[static_cast<std::size_t>(z)]);
          if (t.classes[k][0] == z) ++c[j][l][k];
        }

  for (int d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    std::vector<std::vector<Cyclotomic>> options(r);
    options[0] = {Cyclotomic(d)};
    for (std::size_t k = 1; k < r; ++k) options[k] = root_sums(d, g.element_order(t.classes[k][0]));
    std::vector<std::size_t> pick(r, 0);
    while (true) {
      std::vector<Cyclotomic> chi(r);
      for (std::size_t k = 0; k < r; ++k) chi[k] = options[k][pick[k]];
      Cyclotomic norm;
      for (std::size_t k = 0; k < r; ++k) norm += Cyclotomic(static_cast<long>(t.classes[k].size())) * chi[k] * chi[k].conjugate();
      if (norm == Cyclotomic(n)) {
        std::vector<Cyclotomic> omega(r);
        for (std::size_t k = 0; k < r; ++k)
          omega[k] = Cyclotomic(make_rational(static_cast<long>(t.classes[k].size()), d)) * chi[k];
        bool central = true;
        for (std::size_t j = 0; j < r && central; ++j)
          for (std::size_t l = j; l < r && central; ++l) {
            Cyclotomic rhs;
            for (std::size_t k = 0; k < r; ++k)
              if (c[j][l][k] != 0) rhs += Cyclotomic(c[j][l][k]) * omega[k];
            central = omega[j] * omega[l] == rhs;
          }
        if (central) t.rows.push_back(chi);
      }
      std::size_t pos = 0;
      while (pos < r && ++pick[pos] == options[pos].size()) pick[pos++] = 0;
      if (pos == r) break;
    }
  }
  return t;
}

bool tables_agree(const CharacterTable& exact, const ExactTable& oracle) {
  if (exact.irreducibles.size() != oracle.rows.size()) return false;
  const std::size_t r = oracle.rows.size();
  std::vector<std::size_t> column(r);
  for (std::size_t k = 0; k < r; ++k)
    column[k] = static_cast<std::size_t>(exact.class_of[static_cast<std::size_t>(oracle.classes[k][0])]);
  for (const auto& row : oracle.rows) {
    std::vector<Cyclotomic> mapped(r);
    for (std::size_t k = 0; k < r; ++k) mapped[column[k]] = row[k];
    if (std::find(exact.irreducibles.begin(), exact.irreducibles.end(), mapped) == exact.irreducibles.end()) return false;
  }
  return true;
}

std::unordered_map<WeylElement, int, WeylElementHash> bfs_lengths(const AffineDatum& datum, int max_length) {
  std::unordered_map<WeylElement, int, WeylElementHash> dist;
  std::deque<WeylElement> queue{datum.identity()};
  dist.emplace(datum.identity(), 0);
  while (!queue.empty()) {
    const WeylElement w = queue.front();
    queue.pop_front();
    const int d = dist.at(w);
    if (d == max_length) continue;
    for (int i = 0; i < datum.node_count(); ++i) {
      WeylElement next = datum.multiply(w, datum.generator(i));
      if (dist.emplace(next, d + 1).second) queue.push_back(std::move(next));
    }
  }
  return dist;
}

std::vector<WeylElement> parabolic_closure(const AffineDatum& datum, const NodeSet& j) {
  std::vector<WeylElement> out{datum.identity()};
  std::unordered_set<WeylElement, WeylElementHash> seen{datum.identity()};
  for (std::size_t k = 0; k < out.size(); ++k)
    for (int i : j.elements()) {
      WeylElement next = datum.multiply(out[k], datum.generator(i));
      if (seen.insert(next).second) out.push_back(std::move(next));
    }
  return out;
}

std::vector<WeylElement> double_coset(const AffineDatum& datum, const std::vector<WeylElement>& wj,
                                      const WeylElement& x) {
  std::vector<WeylElement> out;
  std::unordered_set<WeylElement, WeylElementHash> seen;
  for (const auto& a : wj)
    for (const auto& b : wj) {
      WeylElement y = datum.multiply(datum.multiply(a, x), b);
      if (seen.insert(y).second) out.push_back(std::move(y));
    }
  return out;
}

}  // namespace weylchar::oracle
