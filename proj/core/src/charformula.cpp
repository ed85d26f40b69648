#include "weylchar/charformula.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "weylchar/error.hpp"

namespace weylchar {

namespace {

CycMatrix power(const CycMatrix& m, int k) {
  CycMatrix result = CycMatrix::identity(m.rows());
  for (int i = 0; i < k; ++i) result = result * m;
  return result;
}

bool is_shape(const CycMatrix& m, std::size_t d) { return m.rows() == d && m.cols() == d; }

void require_integer(const Cyclotomic& value, const std::string& what) {
  if (!value.as_integer()) throw MathError(what + " is not an integer: " + value.to_string());
}

std::string node_name(int i) { return "M" + std::to_string(i); }

}  // namespace

RepReport validate_rep(const RepData& rep) {
  RepReport report;
  auto fail = [&](std::string relation, std::string detail) {
    report.violations.push_back({std::move(relation), std::move(detail)});
  };
  const std::size_t d = rep.dimension;
  const int n = rep.datum.node_count();
  if (d == 0) fail("dimension", "dimension must be positive");
  std::set<int> usable;
  for (const auto& [node, m] : rep.generators) {
    if (node < 0 || node >= n) {
      fail("generator " + std::to_string(node), "node is not in the datum");
    } else if (!is_shape(m, d)) {
      fail("generator " + std::to_string(node), "matrix is " + std::to_string(m.rows()) + "x" +
                                                    std::to_string(m.cols()) + ", expected " + std::to_string(d) +
                                                    "x" + std::to_string(d));
    } else {
      usable.insert(node);
    }
  }
  for (int i = 0; i < n; ++i)
    if (rep.generators.count(i) == 0) fail("generator " + std::to_string(i), "missing");
  if (d == 0) return report;
  const CycMatrix id = CycMatrix::identity(d);
  for (int i : usable) {
    if (!(power(rep.generators.at(i), 2) == id)) fail(node_name(i) + "^2 = 1", "generator does not square to 1");
  }
  for (int i : usable)
    for (int j : usable) {
      if (j <= i) continue;
      const int m = rep.datum.bond(i, j);
      if (m == 0) continue;
      if (!(power(rep.generators.at(i) * rep.generators.at(j), m) == id)) {
        fail("(" + node_name(i) + "*" + node_name(j) + ")^" + std::to_string(m) + " = 1", "braid relation fails");
      }
    }
  if (!rep.omega.empty()) {
    const auto omegas = rep.datum.omega_group();
    for (const auto& [k, m] : rep.omega) {
      const std::string name = "omega " + std::to_string(k);
      if (k < 0 || k >= static_cast<int>(omegas.size())) {
        fail(name, "index outside Omega of order " + std::to_string(omegas.size()));
        continue;
      }
      if (!is_shape(m, d)) {
        fail(name, "matrix has the wrong shape");
        continue;
      }
      const auto action = rep.datum.omega_action_on_nodes(omegas[static_cast<std::size_t>(k)]);
      for (int i : usable) {
        const int target = action[static_cast<std::size_t>(i)];
        if (usable.count(target) == 0) continue;
        if (!(m * rep.generators.at(i) == rep.generators.at(target) * m)) {
          fail("W" + std::to_string(k) + "*" + node_name(i) + "*W" + std::to_string(k) + "^-1 = " + node_name(target),
               "Omega matrix does not intertwine the generators");
        }
      }
    }
  }
  return report;
}

CycMatrix rep_matrix(const RepData& rep, const WeylElement& w) {
  if (w.datum_id() != rep.datum.id()) throw DataError("representation and element belong to different datums");
  const ReducedWord rw = rep.datum.reduced_word(w);
  CycMatrix m = CycMatrix::identity(rep.dimension);
  for (int i : rw.word) {
    auto it = rep.generators.find(i);
    if (it == rep.generators.end()) throw DataError("representation has no matrix for node " + std::to_string(i));
    m = m * it->second;
  }
  if (!(rw.omega == rep.datum.identity())) {
    const auto omegas = rep.datum.omega_group();
    const auto pos = std::find(omegas.begin(), omegas.end(), rw.omega) - omegas.begin();
    auto it = rep.omega.find(static_cast<int>(pos));
    if (it == rep.omega.end()) throw DataError("representation has no matrix for Omega element " + std::to_string(pos));
    m = m * it->second;
  }
  return m;
}

Cyclotomic tau(const RepData& rep, const WeylElement& w) {
  if (w.datum_id() != rep.datum.id()) throw DataError("representation and class belong to different datums");
  if (!rep.datum.element_order(w)) throw DataError("tau is only defined on finite-order elements");
  Cyclotomic value = rep_matrix(rep, w).trace();
  require_integer(value, "trace of " + word_to_string(rep.datum.reduced_word(w).word));
  return value;
}

Cyclotomic tau(const RepData& rep, const FiniteOrderClass& c) { return tau(rep, c.anchor); }

RepData direct_sum(const RepData& a, const RepData& b) {
  if (a.datum.id() != b.datum.id()) throw DataError("direct sum of representations of different datums");
  RepData s{a.datum, a.dimension + b.dimension, {}, {}};
  auto block = [&](const CycMatrix& x, const CycMatrix& y) {
    CycMatrix m(s.dimension, s.dimension);
    for (std::size_t i = 0; i < a.dimension; ++i)
      for (std::size_t j = 0; j < a.dimension; ++j) m(i, j) = x(i, j);
    for (std::size_t i = 0; i < b.dimension; ++i)
      for (std::size_t j = 0; j < b.dimension; ++j) m(a.dimension + i, a.dimension + j) = y(i, j);
    return m;
  };
  for (const auto& [node, m] : a.generators)
    if (b.generators.count(node) != 0) s.generators.emplace(node, block(m, b.generators.at(node)));
  for (const auto& [k, m] : a.omega)
    if (b.omega.count(k) != 0) s.omega.emplace(k, block(m, b.omega.at(k)));
  return s;
}

ClassFunctionVector tau_vector(const RepData& rep, const std::vector<FiniteOrderClass>& classes) {
  ClassFunctionVector out{classes, {}};
  for (const auto& c : classes) out.values.push_back(tau(rep, c));
  return out;
}

void validate_assignment(const SphericalAssignment& sa) {
  std::set<MPair> seen;
  for (const auto& p : sa.mprime) {
    if (!sa.gamma.index_of(p)) throw DataError("M' pair is not in M(Gamma)");
    if (!seen.insert(p).second) throw DataError("M' lists " + sa.gamma.pair_name(p) + " twice");
    auto it = sa.reps.find(p);
    if (it == sa.reps.end()) throw DataError("no representation supplied for " + sa.gamma.pair_name(p));
    if (it->second.datum.id() != sa.reps.begin()->second.datum.id()) {
      throw DataError("representations in the assignment use different datums");
    }
  }
}

std::vector<Cyclotomic> phi_coefficients(const SphericalAssignment& sa, const MPair& v) {
  if (!sa.gamma.index_of(v)) throw DataError("pair is not in M(Gamma)");
  std::vector<Cyclotomic> out;
  for (const auto& p : sa.mprime) out.push_back(fourier_entry(sa.gamma, v, p));
  return out;
}

ClassFunctionVector phi_fourier(const SphericalAssignment& sa, const MPair& v,
                                const std::vector<FiniteOrderClass>& classes) {
  validate_assignment(sa);
  const auto coeffs = phi_coefficients(sa, v);
  ClassFunctionVector out{classes, {}};
  for (std::size_t k = 0; k < classes.size(); ++k) {
    Cyclotomic value;
    for (std::size_t c = 0; c < sa.mprime.size(); ++c) value += coeffs[c] * tau(sa.reps.at(sa.mprime[c]), classes[k]);
    require_integer(value, "phi" + sa.gamma.pair_name(v) + " on class " + std::to_string(k) + " (" +
                               word_to_string(classes[k].min_rep_word) + ")");
    out.values.push_back(std::move(value));
  }
  return out;
}

VanishingResult vanishing_test(const AffineDatum& datum, const NodeSet& j, const NodeSet& h) {
  const NodeSet all = datum.all_nodes();
  for (const NodeSet* s : {&j, &h}) {
    if (!s->is_subset_of(all) || *s == all) throw DataError("J and H must be proper subsets of the nodes");
  }
  VanishingResult result;
  const auto omegas = datum.omega_group();
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    const auto action = datum.omega_action_on_nodes(omegas[k]);
    NodeSet image;
    NodeSet preimage;
    for (int i : h.elements()) image.insert(action[static_cast<std::size_t>(i)]);
    for (int i = 0; i < datum.node_count(); ++i)
      if (h.contains(action[static_cast<std::size_t>(i)])) preimage.insert(i);
    if (j.is_subset_of(image)) result.witnesses.push_back({k, omegas[k], action, image, preimage});
  }
  result.vanishes = result.witnesses.empty();
  return result;
}

Cyclotomic phi_multiplicity(const std::vector<int>& d, const WeylElement& w, const FamilyData& fd) {
  Cyclotomic sum;
  for (int irr : d) sum += multiplicity_in_RW(irr, w, fd);
  require_integer(sum, "sum of multiplicities");
  return sum;
}

namespace {

std::string row_string(const std::vector<Cyclotomic>& row) {
  std::string s = "(";
  for (std::size_t k = 0; k < row.size(); ++k) s += (k ? ", " : "") + row[k].to_string();
  return s + ")";
}

}  // namespace

G2Report verify_g2(const MSet& gamma, const G2Expected& expected, const std::map<std::string, RepData>* reps,
                   const std::vector<FiniteOrderClass>* classes) {
  G2Report report;
  report.fourier = fourier_matrix(gamma);
  const std::size_t n = gamma.size();
  const std::size_t labels = expected.labels.size();
  const std::size_t cols = expected.columns.size();
  if (expected.rows.size() != labels) throw DataError("expected table has a row count different from its labels");
  for (const auto& row : expected.rows)
    if (row.size() != cols) throw DataError("expected table row has the wrong number of columns");
  if (labels != n) {
    report.diff.push_back("M(Gamma) has " + std::to_string(n) + " pairs but the table has " + std::to_string(labels) +
                          " rows");
    return report;
  }

  // Replace values by small integer ids so the search compares ints.
  std::vector<Cyclotomic> values;
  auto id_of = [&](const Cyclotomic& c, bool insert) -> int {
    for (std::size_t k = 0; k < values.size(); ++k)
      if (values[k] == c) return static_cast<int>(k);
    if (!insert) return -1;
    values.push_back(c);
    return static_cast<int>(values.size() - 1);
  };
  std::vector<std::vector<int>> f(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) f[a][b] = id_of(report.fourier(a, b), true);
  std::vector<std::vector<int>> want(labels, std::vector<int>(cols));
  for (std::size_t l = 0; l < labels; ++l)
    for (std::size_t c = 0; c < cols; ++c) want[l][c] = id_of(Cyclotomic(expected.rows[l][c]), false);

  std::vector<bool> row_ever_matched(labels, false);
  std::vector<std::size_t> mprime(cols);
  std::vector<bool> used_col(n, false);
  std::vector<std::size_t> assignment(labels);
  std::vector<bool> used_row(n, false);
  std::vector<std::vector<std::size_t>> candidates(labels);

  auto record = [&]() {
    G2Solution s;
    for (std::size_t l = 0; l < labels; ++l) s.assignment.push_back(gamma.pairs()[assignment[l]]);
    for (std::size_t c = 0; c < cols; ++c) s.mprime.push_back(gamma.pairs()[mprime[c]]);
    report.solutions.push_back(std::move(s));
  };
  auto assign = [&](auto&& self, std::size_t l) -> void {
    if (l == labels) {
      record();
      return;
    }
    for (std::size_t v : candidates[l]) {
      if (used_row[v]) continue;
      used_row[v] = true;
      assignment[l] = v;
      self(self, l + 1);
      used_row[v] = false;
    }
  };
  auto choose = [&](auto&& self, std::size_t c) -> void {
    if (c == cols) {
      for (std::size_t l = 0; l < labels; ++l) {
        candidates[l].clear();
        for (std::size_t v = 0; v < n; ++v) {
          bool match = true;
          for (std::size_t k = 0; k < cols && match; ++k) match = f[v][mprime[k]] == want[l][k];
          if (match) candidates[l].push_back(v);
        }
        if (!candidates[l].empty()) row_ever_matched[l] = true;
      }
      assign(assign, 0);
      return;
    }
    for (std::size_t m = 0; m < n; ++m) {
      if (used_col[m]) continue;
      used_col[m] = true;
      mprime[c] = m;
      self(self, c + 1);
      used_col[m] = false;
    }
  };
  choose(choose, 0);
  std::sort(report.solutions.begin(), report.solutions.end());

  if (report.solutions.empty()) {
    for (std::size_t l = 0; l < labels; ++l) {
      std::vector<Cyclotomic> row;
      for (const auto& q : expected.rows[l]) row.emplace_back(q);
      report.diff.push_back(expected.labels[l] + ": expected " + row_string(row) +
                            (row_ever_matched[l] ? " (matched by some row for some M')" : " (matched by no row)"));
    }
    return report;
  }
  report.chosen = report.solutions.front();

  const auto swap_a = std::find(expected.labels.begin(), expected.labels.end(), expected.swappable.first);
  const auto swap_b = std::find(expected.labels.begin(), expected.labels.end(), expected.swappable.second);
  const bool has_swap = swap_a != expected.labels.end() && swap_b != expected.labels.end();
  const auto sa = static_cast<std::size_t>(swap_a - expected.labels.begin());
  const auto sb = static_cast<std::size_t>(swap_b - expected.labels.begin());
  auto swapped = [&](G2Solution s) {
    if (has_swap) std::swap(s.assignment[sa], s.assignment[sb]);
    return s;
  };
  report.swappable_rows_equal = has_swap && expected.rows[sa] == expected.rows[sb];

  std::map<std::vector<MPair>, std::vector<G2Solution>> by_mprime;
  for (const auto& s : report.solutions) by_mprime[s.mprime].push_back(s);
  report.mprime_choices = by_mprime.size();
  report.unique_up_to_swap = true;
  for (const auto& [m, list] : by_mprime) {
    for (const auto& s : list)
      if (!(s == list.front() || s == swapped(list.front()))) report.unique_up_to_swap = false;
  }

  // Automorphisms of the Fourier matrix, by brute force over permutations.
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::size_t>> automorphisms;
  do {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b) ok = f[perm[a]][perm[b]] == f[a][b];
    if (ok) automorphisms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  report.automorphism_count = automorphisms.size();

  std::set<G2Solution> orbit;
  auto apply = [&](const std::vector<std::size_t>& p, const G2Solution& s) {
    G2Solution t;
    for (const auto& x : s.assignment) t.assignment.push_back(gamma.pairs()[p[*gamma.index_of(x)]]);
    for (const auto& x : s.mprime) t.mprime.push_back(gamma.pairs()[p[*gamma.index_of(x)]]);
    return t;
  };
  for (const auto& p : automorphisms) {
    orbit.insert(apply(p, *report.chosen));
    orbit.insert(apply(p, swapped(*report.chosen)));
  }
  report.single_orbit = std::all_of(report.solutions.begin(), report.solutions.end(),
                                    [&](const G2Solution& s) { return orbit.count(s) != 0; });

  if (reps != nullptr && classes != nullptr) {
    report.integral = true;
    for (std::size_t l = 0; l < labels; ++l) {
      std::vector<Cyclotomic> row;
      for (const auto& c : *classes) {
        Cyclotomic value;
        for (std::size_t k = 0; k < cols; ++k) {
          auto it = reps->find(expected.columns[k]);
          if (it == reps->end()) throw DataError("no representation supplied for column " + expected.columns[k]);
          value += Cyclotomic(expected.rows[l][k]) * tau(it->second, c);
        }
        if (!value.as_integer()) {
          report.integral = false;
          report.integrality_failures.push_back(expected.labels[l] + " on class " + word_to_string(c.min_rep_word) +
                                                ": " + value.to_string());
        }
        row.push_back(std::move(value));
      }
      report.phi_values.emplace(expected.labels[l], std::move(row));
    }
  }
  return report;
}

}  // namespace weylchar
