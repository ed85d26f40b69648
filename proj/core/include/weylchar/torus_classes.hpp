#pragma once

// Conjugacy classes of finite-order elements of W' with elliptic anchors.
// W'-conjugacy is decided by invariants (necessary conditions) plus a bounded
// conjugator search (sufficient), so every verdict records how it was reached.

#include <optional>
#include <string>
#include <vector>

#include "weylchar/coxeter.hpp"

namespace weylchar {

/// True iff w has no nonzero fixed vector on span{alpha_j : j in H}.
/// Throws DataError if w is not in W_H.
bool is_elliptic(const AffineDatum& datum, const WeylElement& w, const NodeSet& nodes);

struct ClassOfParabolic {
  WeylElement representative;  // canonically smallest element of the class
  std::size_t size = 0;
};

/// Conjugacy classes of the finite group W_H, in canonical order of their
/// representatives.
std::vector<ClassOfParabolic> parabolic_classes(const AffineDatum& datum, const NodeSet& nodes);

/// The classes of W_H that are elliptic in W_H.
std::vector<ClassOfParabolic> elliptic_classes(const AffineDatum& datum, const NodeSet& nodes);

enum class ConjugacyVerdict {
  proven_conjugate,        // an explicit conjugator was found
  proven_distinct,         // separated by an invariant
  not_found_within_bound,  // no conjugator up to the length bound; not a proof
};

std::string to_string(ConjugacyVerdict v);

struct ConjugacyResult {
  ConjugacyVerdict verdict = ConjugacyVerdict::not_found_within_bound;
  std::optional<WeylElement> conjugator;  // g with g a g^{-1} = b, when proven

  bool conjugate() const { return verdict == ConjugacyVerdict::proven_conjugate; }
};

/// Searches W' for g with length(g) <= search_length and g a g^{-1} = b,
/// after screening by element order and the W_fin-class of the finite parts.
/// Throws DataError for infinite-order input.
ConjugacyResult conjugate_in_affine_subgroup(const AffineDatum& datum, const WeylElement& a,
                                             const WeylElement& b, int search_length);

/// Index of the W_fin-conjugacy class of the finite part of a.
int finite_class_index(const AffineDatum& datum, const WeylElement& a);

struct AnchorCandidate {
  NodeSet nodes;
  WeylElement element;
};

struct FiniteOrderClass {
  NodeSet anchor_nodes;
  WeylElement anchor;
  int order = 1;
  /// Characteristic polynomial of the finite part, constant term first.
  std::vector<long> linear_class_invariant;
  Word min_rep_word;
  int finite_class = 0;
  /// Every parabolic anchor fused into this class.
  std::vector<AnchorCandidate> anchors;
  /// Distinct elements of the class: anchors plus their conjugates by the
  /// simple reflections.
  std::vector<WeylElement> representatives;
  /// Indices (in the final ordering) of classes sharing all invariants with
  /// this one whose non-conjugacy was not proven.
  std::vector<std::size_t> unresolved_with;
};

/// Collects elliptic classes of every W_H, H a proper subset of the nodes,
/// and fuses those found W'-conjugate. Ordered by (order, invariant,
/// min_rep_word).
std::vector<FiniteOrderClass> enumerate_finite_order_classes(const AffineDatum& datum, int search_length);

/// Index of the class containing w, using the same bounded search; nullopt
/// if no class is proven to contain it.
std::optional<std::size_t> locate_class(const AffineDatum& datum, const std::vector<FiniteOrderClass>& classes,
                                        const WeylElement& w, int search_length);

}  // namespace weylchar
