#pragma once

// Reference computations for the test suites. Each one takes a different
// route from the library code it checks: floating-point Burnside instead of
// modular Dixon-Schneider, breadth-first search instead of root counting,
// explicit double cosets instead of descent-based reduction.

#include <complex>
#include <unordered_map>
#include <vector>

#include "weylchar/coxeter.hpp"
#include "weylchar/finite_groups.hpp"
#include "weylchar/scalar.hpp"

namespace weylchar::oracle {

using Complex = std::complex<double>;

Complex to_complex(const Cyclotomic& c);

struct NumericTable {
  std::vector<std::vector<int>> classes;  // element lists, identity class first
  std::vector<std::vector<Complex>> rows;
};

/// Classes by brute-force conjugation and characters as common eigenvectors
/// of the class-multiplication matrices, in double precision.
NumericTable burnside_table(const FiniteGroup& g);

/// Max deviation from both orthogonality relations, checked exhaustively.
double orthogonality_defect(const NumericTable& t, int group_order);

struct ExactTable {
  std::vector<std::vector<int>> classes;
  std::vector<std::vector<Cyclotomic>> rows;
};

/// Exhaustive search: at each class, every sum of chi(1) roots of unity of
/// the element's order; keeps the vectors of norm one whose central
/// characters satisfy the class-multiplication equations. Small groups only.
ExactTable exhaustive_table(const FiniteGroup& g);

/// True iff the exact tables coincide up to a permutation of rows.
bool tables_agree(const CharacterTable& exact, const ExactTable& oracle);

/// True iff the exact table equals the numeric one up to a permutation of
/// rows, within tol. Classes are matched through their elements.
bool tables_agree(const CharacterTable& exact, const NumericTable& numeric, double tol = 1e-8);

/// Word length in the generators s_i of W', by breadth-first search.
std::unordered_map<WeylElement, int, WeylElementHash> bfs_lengths(const AffineDatum& datum, int max_length);

/// W_J by closure under the generators of J.
std::vector<WeylElement> parabolic_closure(const AffineDatum& datum, const NodeSet& j);

/// The set W_J x W_J, listed without repetition.
std::vector<WeylElement> double_coset(const AffineDatum& datum, const std::vector<WeylElement>& wj,
                                      const WeylElement& x);

}  // namespace weylchar::oracle
