#pragma once

// Class functions tau_A on finite-order classes, phi_V assembled from the
// Fourier matrix or from multiplicities, the Omega vanishing test, and the
// G2 subregular verification driver.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weylchar/coxeter.hpp"
#include "weylchar/fourier.hpp"
#include "weylchar/matrix.hpp"
#include "weylchar/scalar.hpp"
#include "weylchar/torus_classes.hpp"

namespace weylchar {

using CycMatrix = Matrix<Cyclotomic>;

/// A representation of W' (optionally of W) given by the images of the
/// generators s_i and, optionally, of the elements of Omega.
struct RepData {
  AffineDatum datum;
  std::size_t dimension = 0;
  std::map<int, CycMatrix> generators;  // node -> matrix
  std::map<int, CycMatrix> omega;       // index into datum.omega_group() -> matrix
};

struct RepViolation {
  std::string relation;  // e.g. "(M1*M2)^6 = 1"
  std::string detail;
};

struct RepReport {
  std::vector<RepViolation> violations;

  bool valid() const { return violations.empty(); }
};

/// Checks shapes, s_i^2 = 1, the braid relations and Omega compatibility.
RepReport validate_rep(const RepData& rep);

/// Image of w: the product along its reduced word, times the Omega matrix of
/// its length-zero tail. Throws DataError if that Omega matrix is missing.
CycMatrix rep_matrix(const RepData& rep, const WeylElement& w);

/// tr(w, A) for a finite-order element. Throws MathError unless the trace is
/// a rational integer, DataError on a datum mismatch.
Cyclotomic tau(const RepData& rep, const WeylElement& w);
Cyclotomic tau(const RepData& rep, const FiniteOrderClass& c);

RepData direct_sum(const RepData& a, const RepData& b);

struct ClassFunctionVector {
  std::vector<FiniteOrderClass> classes;
  std::vector<Cyclotomic> values;
};

ClassFunctionVector tau_vector(const RepData& rep, const std::vector<FiniteOrderClass>& classes);

/// M'(Gamma) together with a representation A_{y',r'} for each of its pairs.
struct SphericalAssignment {
  MSet gamma;
  std::vector<MPair> mprime;
  std::map<MPair, RepData> reps;
};

/// Checks mprime lies in M(Gamma), is duplicate-free, has a rep per pair and
/// that all reps share one datum. Throws DataError.
void validate_assignment(const SphericalAssignment& sa);

/// The coefficients {v, m'} for m' in sa.mprime.
std::vector<Cyclotomic> phi_coefficients(const SphericalAssignment& sa, const MPair& v);

/// phi_V = sum over M' of {v, m'} tau_{A_m'}, per class. Throws MathError
/// naming the class if a value is not an integer.
ClassFunctionVector phi_fourier(const SphericalAssignment& sa, const MPair& v,
                                const std::vector<FiniteOrderClass>& classes);

struct VanishingWitness {
  std::size_t omega_index = 0;
  WeylElement omega;
  std::vector<int> node_action;
  NodeSet image;     // omega(H), which contains J
  NodeSet preimage;  // omega^{-1}(H)
};

struct VanishingResult {
  bool vanishes = true;
  std::vector<VanishingWitness> witnesses;
};

/// vanishes iff no omega in Omega has J inside omega(H). J and H must be
/// proper subsets of the nodes (DataError otherwise).
VanishingResult vanishing_test(const AffineDatum& datum, const NodeSet& j, const NodeSet& h);

/// sum over D_i of (D_i : R_w). Throws MathError if not an integer.
Cyclotomic phi_multiplicity(const std::vector<int>& d, const WeylElement& w, const FamilyData& fd);

/// The expected G2 coefficient table: one row per label over the four
/// columns A, A', A'', A'''.
struct G2Expected {
  std::vector<std::string> columns;
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> rows;
  /// Labels whose rows coincide and may be exchanged.
  std::pair<std::string, std::string> swappable;
};

struct G2Solution {
  std::vector<MPair> assignment;  // per label
  std::vector<MPair> mprime;      // per column

  auto operator<=>(const G2Solution&) const = default;
};

struct G2Report {
  Matrix<Cyclotomic> fourier;
  std::vector<G2Solution> solutions;  // all matches, sorted
  std::optional<G2Solution> chosen;   // the smallest solution
  std::size_t mprime_choices = 0;     // distinct ordered M' admitting a match
  bool unique_up_to_swap = false;     // for every such M'
  bool swappable_rows_equal = false;
  std::size_t automorphism_count = 0;
  /// All solutions form one orbit under matrix automorphisms and the swap.
  bool single_orbit = false;
  std::vector<std::string> diff;  // when nothing matches: closest rows
  /// Integrality of the eight phi on every class, when reps were supplied.
  std::optional<bool> integral;
  std::vector<std::string> integrality_failures;
  std::map<std::string, std::vector<Cyclotomic>> phi_values;  // label -> per class

  bool ok() const {
    return chosen.has_value() && unique_up_to_swap && swappable_rows_equal && integral.value_or(true);
  }
};

/// Searches for an assignment of the pairs of M(Gamma) to the labels and an
/// ordered 4-element M' reproducing the expected table exactly. With reps
/// (column label -> representation) also checks integrality on classes.
G2Report verify_g2(const MSet& gamma, const G2Expected& expected,
                   const std::map<std::string, RepData>* reps = nullptr,
                   const std::vector<FiniteOrderClass>* classes = nullptr);

}  // namespace weylchar
