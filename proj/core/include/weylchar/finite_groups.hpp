#pragma once

// Finite groups given by a multiplication table, with conjugacy classes,
// centralizers and exact character tables (Dixon-Schneider over F_p, lifted
// to cyclotomic integers).

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "weylchar/scalar.hpp"

namespace weylchar {

class FiniteGroup;

struct Subgroup;

struct ConjugacyClass {
  int representative = 0;  // smallest element index in the class
  std::vector<int> elements;

  std::size_t size() const { return elements.size(); }
};

/// A finite group on the element indices 0..n-1. Validated on construction.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  /// mult[a][b] is the index of the product a*b. Throws DataError if the
  /// table is not a group (associativity is checked exhaustively for n <= 64
  /// and on a fixed pseudo-random sample of triples above that).
  static FiniteGroup from_table(std::vector<std::vector<int>> mult, std::vector<std::string> labels = {});
  /// Closure of the given permutations of {0..d-1}; elements are ordered
  /// breadth-first from the identity and (p*q)(x) = p(q(x)).
  static FiniteGroup from_permutations(const std::vector<std::vector<int>>& generators);
  static FiniteGroup cyclic(int n);

  int order() const { return static_cast<int>(mult_.size()); }
  int identity() const { return identity_; }
  int multiply(int a, int b) const { return mult_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  int conjugate(int g, int x) const { return multiply(multiply(g, x), inverse(g)); }
  int power(int a, long k) const;
  int element_order(int a) const;
  int exponent() const;
  const std::vector<std::vector<int>>& table() const { return mult_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int a) const { return labels_[static_cast<std::size_t>(a)]; }
  /// Index of the element with this label, or -1.
  int find_label(const std::string& label) const;
  bool is_abelian() const;

  /// Identity class first, the rest ordered by smallest element index.
  const std::vector<ConjugacyClass>& conjugacy_classes() const;
  /// Class index of every element.
  const std::vector<int>& class_of() const;

  Subgroup centralizer(int x) const;

 private:
  std::vector<std::vector<int>> mult_;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
  int identity_ = 0;
  std::shared_ptr<const std::vector<ConjugacyClass>> classes_;
  std::shared_ptr<const std::vector<int>> class_of_;
};

/// A subgroup as its own table plus the inclusion into the parent.
struct Subgroup {
  FiniteGroup group;
  std::vector<int> embedding;  // subgroup index -> parent index, ascending
  std::map<int, int> local_index;  // parent index -> subgroup index
};

struct ClassInfo {
  int representative = 0;
  std::size_t size = 0;
  int element_order = 1;
};

class CharacterTable {
 public:
  std::size_t group_order = 0;
  std::vector<ClassInfo> classes;
  /// Rows are irreducible characters, columns classes. Rows are ordered by
  /// degree, then lexicographically by values, each value compared by
  /// conductor ascending and then coefficients descending (so the trivial
  /// character is first).
  std::vector<std::vector<Cyclotomic>> irreducibles;
  /// For each prime p dividing the order: class of x^p for each class of x.
  std::map<int, std::vector<int>> power_map;
  std::vector<int> class_of;  // element -> class

  std::size_t class_count() const { return classes.size(); }
  const Cyclotomic& value(std::size_t chi, int element) const {
    return irreducibles[chi][static_cast<std::size_t>(class_of[static_cast<std::size_t>(element)])];
  }
  Cyclotomic degree(std::size_t chi) const { return irreducibles[chi][0]; }
};

/// Sorts rows into the canonical order documented on CharacterTable.
void sort_character_rows(std::vector<std::vector<Cyclotomic>>& rows);

/// Class sizes, power maps and class_of for a group, without characters.
CharacterTable class_data(const FiniteGroup& group);

/// Dixon-Schneider. Throws DataError if the order exceeds max_order.
CharacterTable character_table(const FiniteGroup& group, int max_order = 2000);

/// sum_c |c| a(c) conj(b(c)) / |G|.
Cyclotomic inner_product(const CharacterTable& table, const std::vector<Cyclotomic>& a,
                         const std::vector<Cyclotomic>& b);

}  // namespace weylchar
