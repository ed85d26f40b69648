#pragma once

// The set M(Gamma) of pairs (y, r), the nonabelian Fourier transform matrix
// on it, family data for Irr(W_H) and the multiplicity pairing (E : R_w).

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "weylchar/coxeter.hpp"
#include "weylchar/finite_groups.hpp"
#include "weylchar/matrix.hpp"
#include "weylchar/scalar.hpp"

namespace weylchar {

/// (y, r): y a class index of Gamma, r an index into Irr(Z(y)).
struct MPair {
  int y = 0;
  int r = 0;

  auto operator<=>(const MPair&) const = default;
};

struct CentralizerData {
  Subgroup subgroup;  // Z(y) for the class representative y
  CharacterTable table;
};

/// Optional human names for classes and centralizer characters.
struct MSetNames {
  std::map<int, std::string> class_names;                  // class index -> name
  std::map<int, std::vector<std::string>> character_names;  // class index -> names by irr index
};

class MSet {
 public:
  /// Pairs in canonical order (class index, centralizer-character index).
  static MSet build(FiniteGroup gamma, MSetNames names = {}, int max_order = 2000);

  const FiniteGroup& gamma() const { return gamma_; }
  const std::vector<MPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  const CentralizerData& centralizer(int y) const { return centralizers_[static_cast<std::size_t>(y)]; }

  std::string class_name(int y) const;
  std::string character_name(int y, int r) const;
  /// "(g3,w)".
  std::string pair_name(const MPair& p) const;
  std::optional<std::size_t> index_of(const MPair& p) const;
  /// Accepts "(y,r)" or "y,r" with names or indices.
  std::optional<MPair> parse_pair(std::string_view text) const;
  /// Looks up a class by name or decimal index.
  std::optional<int> find_class(std::string_view name) const;
  /// Looks up a centralizer character by name or decimal index.
  std::optional<int> find_character(int y, std::string_view name) const;

 private:
  FiniteGroup gamma_;
  std::vector<MPair> pairs_;
  std::vector<CentralizerData> centralizers_;
  MSetNames names_;
};

/// {(x,sigma),(y,tau)} = (|Z(x)||Z(y)|)^-1 sum over g with x and g y g^-1
/// commuting of conj(sigma(g y g^-1)) tau(g^-1 x g).
Cyclotomic fourier_entry(const MSet& m, const MPair& a, const MPair& b);

/// Rows and columns follow m.pairs().
Matrix<Cyclotomic> fourier_matrix(const MSet& m);

/// The finite group W_H as a table, with elements labelled by reduced words.
struct ParabolicTable {
  AffineDatum datum;
  NodeSet nodes;
  std::vector<WeylElement> elements;
  std::unordered_map<WeylElement, int, WeylElementHash> index;
  FiniteGroup group;

  int index_of(const WeylElement& w) const;
};

ParabolicTable make_parabolic_table(const AffineDatum& datum, const NodeSet& nodes);

struct FamilyMember {
  MPair pair;
  int sign = 1;
};

struct Family {
  MSet gamma;
  std::map<int, FamilyMember> members;  // irr index of W_H -> pair
};

struct FamilyData {
  ParabolicTable weyl;
  CharacterTable weyl_table;
  std::vector<Family> families;

  /// Index of the family containing the irreducible, if any.
  std::optional<std::size_t> family_of(int irr) const;
};

/// Checks members are valid irr indices, families are disjoint and pairs
/// within a family distinct. Throws DataError.
void validate_family_data(const FamilyData& fd);

/// (E : R_w) = sum over phi in E's family of phi(w) * sign * {x_E, x_phi}.
/// Throws DataError if E is not covered or w is not in W_H.
Cyclotomic multiplicity_in_RW(int irr, const WeylElement& w, const FamilyData& fd);

/// The same pairing as a row of the Fourier matrix applied to the vector of
/// phi(w) over M(Gamma). Used as an independent evaluation order.
Cyclotomic multiplicity_by_matrix(int irr, const WeylElement& w, const FamilyData& fd);

}  // namespace weylchar
