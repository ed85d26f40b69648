#include "weylchar/torus_classes.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "weylchar/error.hpp"
#include "weylchar/matrix.hpp"
#include "weylchar/scalar.hpp"

namespace weylchar {

bool is_elliptic(const AffineDatum& datum, const WeylElement& w, const NodeSet& nodes) {
  if (!datum.in_parabolic(w, nodes)) {
    throw DataError("element is not in the parabolic subgroup W_" + nodes.to_string());
  }
  if (nodes.empty()) return true;
  const auto basis = nodes.elements();
  const std::size_t n = basis.size();
  std::vector<std::size_t> position(static_cast<std::size_t>(datum.node_count()), n);
  for (std::size_t k = 0; k < n; ++k) position[static_cast<std::size_t>(basis[k])] = k;

  // s_j(alpha_k) = alpha_k - a_{jk} alpha_j on the span of {alpha_k : k in H}.
  Matrix<Rational> m = Matrix<Rational>::identity(n);
  for (int j : datum.reduced_word(w).word) {
    const std::size_t pj = position[static_cast<std::size_t>(j)];
    if (pj == n) throw DataError("reduced word leaves the parabolic subgroup");
    Matrix<Rational> s = Matrix<Rational>::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
      s(pj, k) -= datum.affine_cartan()[static_cast<std::size_t>(j)][static_cast<std::size_t>(basis[k])];
    }
    m = m * s;
  }
  Matrix<Rational> fixed = Matrix<Rational>::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) fixed(i, k) -= m(i, k);
  return determinant(fixed) != 0;
}

std::vector<ClassOfParabolic> parabolic_classes(const AffineDatum& datum, const NodeSet& nodes) {
  const auto& elems = datum.parabolic_elements(nodes);
  std::unordered_map<WeylElement, std::size_t, WeylElementHash> index;
  for (std::size_t k = 0; k < elems.size(); ++k) index.emplace(elems[k], k);
  std::vector<bool> done(elems.size(), false);
  const auto gens = nodes.elements();
  std::vector<ClassOfParabolic> out;
  for (std::size_t start = 0; start < elems.size(); ++start) {
    if (done[start]) continue;
    std::vector<std::size_t> orbit{start};
    done[start] = true;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (int j : gens) {
        const WeylElement s = datum.generator(j);
        const WeylElement c = datum.multiply(datum.multiply(s, elems[orbit[k]]), s);
        const std::size_t idx = index.at(c);
        if (!done[idx]) {
          done[idx] = true;
          orbit.push_back(idx);
        }
      }
    }
    WeylElement rep = elems[orbit.front()];
    for (std::size_t idx : orbit)
      if (datum.canonical_less(elems[idx], rep)) rep = elems[idx];
    out.push_back({rep, orbit.size()});
  }
  std::sort(out.begin(), out.end(), [&](const ClassOfParabolic& a, const ClassOfParabolic& b) {
    return datum.canonical_less(a.representative, b.representative);
  });
  return out;
}

std::vector<ClassOfParabolic> elliptic_classes(const AffineDatum& datum, const NodeSet& nodes) {
  std::vector<ClassOfParabolic> out;
  for (auto& c : parabolic_classes(datum, nodes))
    if (is_elliptic(datum, c.representative, nodes)) out.push_back(std::move(c));
  return out;
}

std::string to_string(ConjugacyVerdict v) {
  switch (v) {
    case ConjugacyVerdict::proven_conjugate: return "proven-conjugate";
    case ConjugacyVerdict::proven_distinct: return "proven-distinct";
    case ConjugacyVerdict::not_found_within_bound: return "not-found-within-bound";
  }
  return "unknown";
}

namespace {

struct FiniteClassMap {
  std::unordered_map<WeylElement, int, WeylElementHash> class_of;
};

const FiniteClassMap& finite_classes(const AffineDatum& datum) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::shared_ptr<const FiniteClassMap>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(datum.id());
    if (it != cache.end()) return *it->second;
  }
  NodeSet finite_nodes;
  for (int i = 1; i < datum.node_count(); ++i) finite_nodes.insert(i);
  auto map = std::make_shared<FiniteClassMap>();
  const auto& elems = datum.parabolic_elements(finite_nodes);
  int next = 0;
  for (const auto& x : elems) {
    if (map->class_of.count(x) != 0) continue;
    std::vector<WeylElement> orbit{x};
    map->class_of.emplace(x, next);
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (int j : finite_nodes.elements()) {
        const WeylElement s = datum.generator(j);
        WeylElement c = datum.multiply(datum.multiply(s, orbit[k]), s);
        if (map->class_of.emplace(c, next).second) orbit.push_back(std::move(c));
      }
    }
    ++next;
  }
  std::lock_guard lock(mutex);
  return *cache.emplace(datum.id(), std::move(map)).first->second;
}

int finite_order_or_throw(const AffineDatum& datum, const WeylElement& a) {
  const auto order = datum.element_order(a);
  if (!order) throw DataError("element has infinite order");
  return *order;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

int finite_class_index(const AffineDatum& datum, const WeylElement& a) {
  return finite_classes(datum).class_of.at(datum.finite_projection(a));
}

ConjugacyResult conjugate_in_affine_subgroup(const AffineDatum& datum, const WeylElement& a, const WeylElement& b,
                                             int search_length) {
  const int order_a = finite_order_or_throw(datum, a);
  const int order_b = finite_order_or_throw(datum, b);
  ConjugacyResult result;
  if (order_a != order_b || finite_class_index(datum, a) != finite_class_index(datum, b)) {
    result.verdict = ConjugacyVerdict::proven_distinct;
    return result;
  }
  for (const auto& g : datum.elements_up_to_length(search_length, false)) {
    if (datum.conjugate(g, a) == b) {
      result.verdict = ConjugacyVerdict::proven_conjugate;
      result.conjugator = g;
      return result;
    }
  }
  result.verdict = ConjugacyVerdict::not_found_within_bound;
  return result;
}

std::vector<FiniteOrderClass> enumerate_finite_order_classes(const AffineDatum& datum, int search_length) {
  struct Candidate {
    NodeSet nodes;
    WeylElement element;
    int order;
    int finite_class;
    std::vector<long> charpoly;
  };
  std::vector<NodeSet> subsets;
  const std::uint32_t full = datum.all_nodes().mask();
  for (std::uint32_t mask = 0; mask < full; ++mask) subsets.push_back(NodeSet::from_mask(mask));
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](const NodeSet& a, const NodeSet& b) { return a.size() < b.size(); });

  std::vector<Candidate> candidates;
  for (const auto& nodes : subsets) {
    if (!datum.is_finite_type(nodes)) continue;
    for (const auto& cls : elliptic_classes(datum, nodes)) {
      const WeylElement& w = cls.representative;
      candidates.push_back({nodes, w, finite_order_or_throw(datum, w), finite_class_index(datum, w),
                            datum.characteristic_polynomial(w)});
    }
  }

  std::vector<std::size_t> parent(candidates.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  const auto ball = datum.elements_up_to_length(search_length, false);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool any_partner = false;
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (candidates[j].order == candidates[i].order && candidates[j].finite_class == candidates[i].finite_class &&
          find(i) != find(j)) {
        any_partner = true;
      }
    }
    if (!any_partner) continue;
    std::unordered_set<WeylElement, WeylElementHash> conjugates;
    for (const auto& g : ball) conjugates.insert(datum.conjugate(g, candidates[i].element));
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (candidates[j].order != candidates[i].order || candidates[j].finite_class != candidates[i].finite_class) {
        continue;
      }
      if (conjugates.count(candidates[j].element) != 0) parent[find(j)] = find(i);
    }
  }

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < candidates.size(); ++i) groups[find(i)].push_back(i);

  std::vector<FiniteOrderClass> classes;
  for (const auto& [root, members] : groups) {
    FiniteOrderClass cls;
    const Candidate& first = candidates[members.front()];
    cls.anchor_nodes = first.nodes;
    cls.anchor = first.element;
    cls.order = first.order;
    cls.linear_class_invariant = first.charpoly;
    cls.finite_class = first.finite_class;
    std::unordered_set<WeylElement, WeylElementHash> seen;
    for (std::size_t idx : members) {
      cls.anchors.push_back({candidates[idx].nodes, candidates[idx].element});
      if (seen.insert(candidates[idx].element).second) cls.representatives.push_back(candidates[idx].element);
    }
    for (std::size_t idx : members) {
      for (int i = 0; i < datum.node_count(); ++i) {
        const WeylElement s = datum.generator(i);
        WeylElement c = datum.multiply(datum.multiply(s, candidates[idx].element), s);
        if (seen.insert(c).second) cls.representatives.push_back(std::move(c));
      }
    }
    cls.min_rep_word = datum.reduced_word(cls.representatives.front()).word;
    for (const auto& r : cls.representatives) {
      Word w = datum.reduced_word(r).word;
      if (shortlex_less(w, cls.min_rep_word)) cls.min_rep_word = std::move(w);
    }
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end(), [](const FiniteOrderClass& a, const FiniteOrderClass& b) {
    if (a.order != b.order) return a.order < b.order;
    if (a.linear_class_invariant != b.linear_class_invariant) return a.linear_class_invariant < b.linear_class_invariant;
    return shortlex_less(a.min_rep_word, b.min_rep_word);
  });
  for (std::size_t p = 0; p < classes.size(); ++p)
    for (std::size_t q = 0; q < classes.size(); ++q)
      if (p != q && classes[p].order == classes[q].order && classes[p].finite_class == classes[q].finite_class) {
        classes[p].unresolved_with.push_back(q);
      }
  return classes;
}

std::optional<std::size_t> locate_class(const AffineDatum& datum, const std::vector<FiniteOrderClass>& classes,
                                        const WeylElement& w, int search_length) {
  const int order = finite_order_or_throw(datum, w);
  const int fin = finite_class_index(datum, w);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (classes[k].order != order || classes[k].finite_class != fin) continue;
    for (const auto& r : classes[k].representatives)
      if (r == w) return k;
  }
  const auto ball = datum.elements_up_to_length(search_length, false);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (classes[k].order != order || classes[k].finite_class != fin) continue;
    for (const auto& g : ball)
      if (datum.conjugate(g, classes[k].anchor) == w) return k;
  }
  return std::nullopt;
}

}  // namespace weylchar
