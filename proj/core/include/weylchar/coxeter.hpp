#pragma once

// Extended affine Weyl groups W = W' x| Omega realized as P^v x| W_fin
// (or Q^v x| W_fin for the simply connected lattice), acting on the coweight
// space by v -> w(v) + lambda. Node 0 is the affine node; node i >= 1 is the
// i-th simple root of the finite system.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace weylchar {

using IntMatrix = std::vector<std::vector<int>>;
using IntVector = std::vector<int>;

/// Which lattice of translations W contains: the coweight lattice gives the
/// extended group (adjoint G), the coroot lattice gives W = W'.
enum class TranslationLattice { coweight, coroot };

/// A set of affine Dynkin nodes, used for the parahoric labels J and H.
class NodeSet {
 public:
  NodeSet() = default;
  NodeSet(std::initializer_list<int> nodes);
  static NodeSet from_mask(std::uint32_t mask);
  /// Accepts "0,1", "{0,1}", "" or "{}".
  static NodeSet parse(std::string_view text);

  bool contains(int node) const;
  void insert(int node);
  std::size_t size() const;
  bool empty() const { return mask_ == 0; }
  std::uint32_t mask() const { return mask_; }
  std::vector<int> elements() const;
  bool is_subset_of(const NodeSet& other) const { return (mask_ & ~other.mask_) == 0; }

  /// "{0,1}".
  std::string to_string() const;

  auto operator<=>(const NodeSet&) const = default;

 private:
  std::uint32_t mask_ = 0;
};

/// A word in the generators s_i, i in the node set.
using Word = std::vector<int>;

/// "s0s1s0"; the empty word prints as "e".
std::string word_to_string(const Word& word);
/// Accepts "s0s1", "0 1", "0,1" and "e".
Word parse_word(std::string_view text);

/// An element t_lambda * w of W. The translation is in fundamental-coweight
/// coordinates (lambda_i = <alpha_i, lambda>); the finite part is the integer
/// matrix of w on the same coordinates.
class WeylElement {
 public:
  WeylElement() = default;

  const IntVector& translation() const { return translation_; }
  /// Row-major rank x rank matrix.
  const IntVector& finite_part() const { return finite_; }
  std::uint64_t datum_id() const { return datum_id_; }
  int rank() const { return rank_; }

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.datum_id_ == b.datum_id_ && a.translation_ == b.translation_ && a.finite_ == b.finite_;
  }

  std::size_t hash() const;

 private:
  friend class AffineDatum;
  std::uint64_t datum_id_ = 0;
  int rank_ = 0;
  IntVector translation_;
  IntVector finite_;
  IntVector finite_inv_;
};

struct WeylElementHash {
  std::size_t operator()(const WeylElement& x) const noexcept { return x.hash(); }
};

struct ReducedWord {
  Word word;
  WeylElement omega;  // length-zero tail: element = s_{word[0]} ... s_{word[k-1]} * omega
};

enum class Side { left, right };

/// A finite Cartan datum with its affine extension, plus every group
/// operation on the resulting extended affine Weyl group. Immutable; copies
/// share state. The parabolic cache is internally synchronized.
class AffineDatum {
 public:
  /// cartan[i][j] = <alpha_i^v, alpha_j>. Must be irreducible of finite type.
  static AffineDatum from_cartan(std::string name, const IntMatrix& cartan,
                                 TranslationLattice lattice = TranslationLattice::coweight,
                                 std::string type_label = "");
  /// Type strings "A1".."A8", "B2".."B8", "C2".."C8", "D4".."D8", "E6".."E8",
  /// "F4", "G2" (Bourbaki numbering).
  static AffineDatum from_type(std::string name, std::string_view type,
                               TranslationLattice lattice = TranslationLattice::coweight);
  /// "a1aff", "a2aff", "c2aff", "g2aff", or any "<type>aff".
  static AffineDatum builtin(std::string_view name);
  static std::vector<std::string> builtin_names();
  static IntMatrix cartan_matrix_of_type(std::string_view type);

  const std::string& name() const;
  const std::string& type_label() const;
  TranslationLattice lattice() const;
  std::uint64_t id() const;

  int rank() const;
  int node_count() const;
  NodeSet all_nodes() const;
  const IntMatrix& finite_cartan() const;
  const IntMatrix& affine_cartan() const;
  /// Order of s_i s_j; 0 encodes infinity. bond(i, i) = 1.
  int bond(int i, int j) const;
  /// Positive roots in simple-root coordinates, ordered by height.
  const IntMatrix& positive_roots() const;
  const IntVector& highest_root() const;
  /// Coroot of the highest root in fundamental-coweight coordinates.
  const IntVector& highest_coroot() const;
  /// True iff the principal submatrix of the affine Cartan matrix on H is of
  /// finite type, i.e. W_H is finite.
  bool is_finite_type(const NodeSet& nodes) const;

  WeylElement identity() const;
  WeylElement generator(int node) const;
  WeylElement translation(const IntVector& coweight) const;
  WeylElement multiply(const WeylElement& a, const WeylElement& b) const;
  WeylElement inverse(const WeylElement& a) const;
  /// g a g^{-1}.
  WeylElement conjugate(const WeylElement& g, const WeylElement& a) const;
  WeylElement from_word(const Word& word) const;
  WeylElement from_word(const Word& word, const WeylElement& omega) const;
  /// The finite part alone, as an element of W_fin.
  WeylElement finite_projection(const WeylElement& a) const;

  /// Iwahori-Matsumoto length: the number of affine root hyperplanes
  /// separating the base alcove from its image.
  int length(const WeylElement& a) const;
  NodeSet descents(const WeylElement& a, Side side) const;
  /// Strips the smallest-index left descent until a length-zero element
  /// remains.
  ReducedWord reduced_word(const WeylElement& a) const;
  /// Membership in W' (translation in the coroot lattice).
  bool in_affine_subgroup(const WeylElement& a) const;
  /// nullopt for elements of infinite order.
  std::optional<int> element_order(const WeylElement& a) const;
  /// Characteristic polynomial of the finite part, constant term first.
  std::vector<long> characteristic_polynomial(const WeylElement& a) const;

  /// The length-zero subgroup Omega, identity first.
  std::vector<WeylElement> omega_group() const;
  /// Permutation p with omega s_i omega^{-1} = s_{p[i]}.
  std::vector<int> omega_action_on_nodes(const WeylElement& omega) const;

  /// The finite group W_H in breadth-first order. Throws DataError unless
  /// H is a proper subset of the nodes with W_H finite.
  const std::vector<WeylElement>& parabolic_elements(const NodeSet& nodes) const;
  bool in_parabolic(const WeylElement& a, const NodeSet& nodes) const;

  WeylElement min_double_coset_rep(const WeylElement& w, const NodeSet& nodes) const;
  /// True iff w W_J w^{-1} = W_J.
  bool normalizes(const WeylElement& w, const NodeSet& nodes) const;
  /// Minimal-length representatives of the good (W_J, W_J)-double cosets,
  /// i.e. those inside N W_J, up to the given length; sorted canonically.
  std::vector<WeylElement> good_coset_reps(const NodeSet& nodes, int max_length) const;

  /// All elements of W (include_omega) or W' of length <= max_length, sorted
  /// by (length, reduced word, omega).
  std::vector<WeylElement> elements_up_to_length(int max_length, bool include_omega) const;

  /// Total order: (length, reduced word, omega tail coordinates).
  bool canonical_less(const WeylElement& a, const WeylElement& b) const;

 private:
  struct Impl;
  explicit AffineDatum(std::shared_ptr<Impl> impl);
  void check_same(const WeylElement& a) const;
  WeylElement make(IntVector translation, IntVector finite, IntVector finite_inv) const;

  std::shared_ptr<Impl> impl_;
};

}  // namespace weylchar

template <>
struct std::hash<weylchar::WeylElement> {
  std::size_t operator()(const weylchar::WeylElement& x) const noexcept { return x.hash(); }
};
