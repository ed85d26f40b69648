#include "weylchar/coxeter.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "weylchar/error.hpp"
#include "weylchar/matrix.hpp"
#include "weylchar/scalar.hpp"

namespace weylchar {

// ---------------------------------------------------------------- NodeSet

NodeSet::NodeSet(std::initializer_list<int> nodes) {
  for (int n : nodes) insert(n);
}

NodeSet NodeSet::from_mask(std::uint32_t mask) {
  NodeSet s;
  s.mask_ = mask;
  return s;
}

NodeSet NodeSet::parse(std::string_view text) {
  NodeSet s;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || value < 0 || value >= 32) {
      throw DataError("invalid node label '" + token + "'");
    }
    s.insert(value);
    token.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      token += c;
    } else if (c == ',' || c == ' ' || c == '{' || c == '}') {
      flush();
    } else {
      throw DataError("invalid node set '" + std::string(text) + "'");
    }
  }
  flush();
  return s;
}

bool NodeSet::contains(int node) const { return node >= 0 && node < 32 && ((mask_ >> node) & 1U) != 0; }

void NodeSet::insert(int node) {
  if (node < 0 || node >= 32) throw DataError("node index out of range: " + std::to_string(node));
  mask_ |= 1U << node;
}

std::size_t NodeSet::size() const { return static_cast<std::size_t>(__builtin_popcount(mask_)); }

std::vector<int> NodeSet::elements() const {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

std::string NodeSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int i : elements()) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

std::string word_to_string(const Word& word) {
  if (word.empty()) return "e";
  std::string out;
  for (int i : word) out += "s" + std::to_string(i);
  return out;
}

Word parse_word(std::string_view text) {
  Word word;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    word.push_back(std::stoi(token));
    token.clear();
  };
  std::string trimmed(text);
  trimmed.erase(std::remove_if(trimmed.begin(), trimmed.end(), [](unsigned char c) { return std::isspace(c); }),
                trimmed.end());
  if (trimmed == "e" || trimmed.empty()) return word;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      token += c;
    } else if (c == 's' || c == ',' || c == ' ') {
      flush();
    } else {
      throw DataError("invalid word '" + std::string(text) + "'");
    }
  }
  flush();
  return word;
}

// ------------------------------------------------------------ WeylElement

std::size_t WeylElement::hash() const {
  std::size_t h = datum_id_;
  for (int v : translation_) h = h * 1000003U ^ static_cast<std::size_t>(v + 7919);
  for (int v : finite_) h = h * 1000003U ^ static_cast<std::size_t>(v + 104729);
  return h;
}

// ------------------------------------------------------------ AffineDatum

struct AffineDatum::Impl {
  std::uint64_t id = 0;
  std::string name;
  std::string type_label;
  TranslationLattice lattice = TranslationLattice::coweight;
  int rank = 0;
  IntMatrix cartan;
  IntMatrix affine_cartan;
  IntMatrix bonds;
  IntMatrix positive_roots;
  IntVector highest_root;
  IntVector highest_coroot;
  Matrix<Rational> coroot_coords;  // (C^T)^{-1}: coweight coords -> coroot coords
  std::vector<WeylElement> generators;
  std::vector<WeylElement> omega;

  mutable std::mutex cache_mutex;
  mutable std::map<std::uint32_t, std::vector<WeylElement>> parabolic_cache;
  mutable std::map<std::uint32_t, std::unordered_set<WeylElement, WeylElementHash>> parabolic_sets;
};

namespace {

std::atomic<std::uint64_t> next_datum_id{1};

IntVector mat_vec(const IntVector& m, const IntVector& v, int r) {
  IntVector out(static_cast<std::size_t>(r), 0);
  for (int i = 0; i < r; ++i) {
    long s = 0;
    for (int j = 0; j < r; ++j) s += static_cast<long>(m[static_cast<std::size_t>(i * r + j)]) * v[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = static_cast<int>(s);
  }
  return out;
}

IntVector mat_mat(const IntVector& a, const IntVector& b, int r) {
  IntVector out(static_cast<std::size_t>(r * r), 0);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      const int aik = a[static_cast<std::size_t>(i * r + k)];
      if (aik == 0) continue;
      for (int j = 0; j < r; ++j)
        out[static_cast<std::size_t>(i * r + j)] += aik * b[static_cast<std::size_t>(k * r + j)];
    }
  return out;
}

IntVector identity_matrix(int r) {
  IntVector m(static_cast<std::size_t>(r * r), 0);
  for (int i = 0; i < r; ++i) m[static_cast<std::size_t>(i * r + i)] = 1;
  return m;
}

bool is_positive_root(const IntVector& v) {
  bool nonzero = false;
  for (int c : v) {
    if (c < 0) return false;
    if (c != 0) nonzero = true;
  }
  return nonzero;
}

/// Positive definiteness of a symmetrizable generalized Cartan matrix.
bool cartan_is_finite_type(const IntMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return true;
  for (const auto& row : a)
    if (row.size() != n) return false;
  std::vector<std::optional<Rational>> d(n);
  for (std::size_t start = 0; start < n; ++start) {
    if (d[start]) continue;
    d[start] = Rational(1);
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || (a[i][j] == 0 && a[j][i] == 0)) continue;
        if (a[i][j] == 0 || a[j][i] == 0) return false;
        const Rational dj = *d[i] * make_rational(a[i][j], a[j][i]);
        if (!d[j]) {
          d[j] = dj;
          queue.push_back(j);
        } else if (*d[j] != dj) {
          return false;
        }
      }
    }
  }
  Matrix<Rational> b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = *d[i] * a[i][j];
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<Rational> minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = b(i, j);
    if (determinant(minor) <= 0) return false;
  }
  return true;
}

bool is_connected(const IntMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < n; ++j)
      if (!seen[j] && a[i][j] != 0) {
        seen[j] = true;
        queue.push_back(j);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

int bond_from_product(int product) {
  switch (product) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return 0;
  }
}

}  // namespace

IntMatrix AffineDatum::cartan_matrix_of_type(std::string_view type) {
  if (type.size() < 2) throw DataError("unknown Cartan type '" + std::string(type) + "'");
  const char family = static_cast<char>(std::toupper(static_cast<unsigned char>(type[0])));
  int n = 0;
  try {
    n = std::stoi(std::string(type.substr(1)));
  } catch (const std::exception&) {
    throw DataError("unknown Cartan type '" + std::string(type) + "'");
  }
  auto chain = [](int r) {
    IntMatrix c(static_cast<std::size_t>(r), IntVector(static_cast<std::size_t>(r), 0));
    for (int i = 0; i < r; ++i) {
      c[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
      if (i + 1 < r) {
        c[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)] = -1;
        c[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] = -1;
      }
    }
    return c;
  };
  auto bad = [&] { return DataError("unsupported Cartan type '" + std::string(type) + "'"); };
  switch (family) {
    case 'A':
      if (n < 1 || n > 8) throw bad();
      return chain(n);
    case 'B': {
      if (n < 2 || n > 8) throw bad();
      auto c = chain(n);
      c[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 2)] = -2;
      return c;
    }
    case 'C': {
      if (n < 2 || n > 8) throw bad();
      auto c = chain(n);
      c[static_cast<std::size_t>(n - 2)][static_cast<std::size_t>(n - 1)] = -2;
      return c;
    }
    case 'D': {
      if (n < 4 || n > 8) throw bad();
      auto c = chain(n);
      const auto last = static_cast<std::size_t>(n - 1);
      const auto prev = static_cast<std::size_t>(n - 2);
      const auto branch = static_cast<std::size_t>(n - 3);
      c[prev][last] = c[last][prev] = 0;
      c[branch][last] = c[last][branch] = -1;
      return c;
    }
    case 'E': {
      if (n < 6 || n > 8) throw bad();
      // Bourbaki: 1-3-4-5-...-n chain, node 2 attached to node 4.
      IntMatrix c(static_cast<std::size_t>(n), IntVector(static_cast<std::size_t>(n), 0));
      auto link = [&](int i, int j) {
        c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = -1;
        c[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = -1;
      };
      for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
      link(1, 3);
      link(2, 4);
      for (int i = 3; i < n; ++i) link(i, i + 1);
      return c;
    }
    case 'F':
      if (n != 4) throw bad();
      return {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}};
    case 'G':
      if (n != 2) throw bad();
      // alpha_1 long, alpha_2 short.
      return {{2, -1}, {-3, 2}};
    default:
      throw bad();
  }
}

AffineDatum::AffineDatum(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

AffineDatum AffineDatum::from_cartan(std::string name, const IntMatrix& cartan, TranslationLattice lattice,
                                     std::string type_label) {
  const int r = static_cast<int>(cartan.size());
  if (r == 0) throw DataError("empty Cartan matrix");
  if (r > 8) throw DataError("Cartan matrix rank above 8 is out of range");
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(cartan[static_cast<std::size_t>(i)].size()) != r) throw DataError("Cartan matrix is not square");
    if (cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] != 2) {
      throw DataError("Cartan matrix diagonal entry " + std::to_string(i) + " is not 2");
    }
    for (int j = 0; j < r; ++j) {
      const int aij = cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (i != j && aij > 0) throw DataError("Cartan matrix has a positive off-diagonal entry");
    }
  }
  if (!cartan_is_finite_type(cartan)) throw DataError("Cartan matrix is not of finite type");
  if (!is_connected(cartan)) throw DataError("reducible Cartan matrices are not supported");

  auto impl = std::make_shared<Impl>();
  impl->id = next_datum_id.fetch_add(1);
  impl->name = std::move(name);
  impl->type_label = type_label.empty() ? "custom" : std::move(type_label);
  impl->lattice = lattice;
  impl->rank = r;
  impl->cartan = cartan;
  const auto ur = static_cast<std::size_t>(r);

  // Positive roots with their coroots, by closure under simple reflections.
  std::map<IntVector, IntVector> coroot_of;
  std::deque<IntVector> queue;
  for (int i = 0; i < r; ++i) {
    IntVector root(ur, 0);
    root[static_cast<std::size_t>(i)] = 1;
    coroot_of[root] = cartan[static_cast<std::size_t>(i)];
    queue.push_back(root);
  }
  while (!queue.empty()) {
    const IntVector beta = queue.front();
    queue.pop_front();
    const IntVector beta_co = coroot_of[beta];
    for (int j = 0; j < r; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      int pairing = 0;  // <alpha_j^v, beta>
      for (std::size_t m = 0; m < ur; ++m) pairing += beta[m] * cartan[uj][m];
      IntVector image = beta;
      image[uj] -= pairing;
      if (!is_positive_root(image) || coroot_of.count(image) != 0) continue;
      IntVector image_co = beta_co;
      const int coeff = beta_co[uj];  // <alpha_j, beta^v>
      for (std::size_t m = 0; m < ur; ++m) image_co[m] -= coeff * cartan[uj][m];
      coroot_of[image] = image_co;
      queue.push_back(image);
    }
    if (coroot_of.size() > 200) throw DataError("root system too large");
  }
  for (const auto& [root, co] : coroot_of) impl->positive_roots.push_back(root);
  auto height = [](const IntVector& v) {
    int h = 0;
    for (int c : v) h += c;
    return h;
  };
  std::stable_sort(impl->positive_roots.begin(), impl->positive_roots.end(),
                   [&](const IntVector& a, const IntVector& b) { return height(a) < height(b); });
  impl->highest_root = impl->positive_roots.back();
  impl->highest_coroot = coroot_of[impl->highest_root];

  // Affine Cartan matrix, node 0 = alpha_0 = -theta + delta.
  impl->affine_cartan.assign(ur + 1, IntVector(ur + 1, 0));
  impl->affine_cartan[0][0] = 2;
  for (std::size_t j = 0; j < ur; ++j) {
    impl->affine_cartan[0][j + 1] = -impl->highest_coroot[j];
    int pairing = 0;
    for (std::size_t m = 0; m < ur; ++m) pairing += impl->highest_root[m] * cartan[j][m];
    impl->affine_cartan[j + 1][0] = -pairing;
    for (std::size_t k = 0; k < ur; ++k) impl->affine_cartan[j + 1][k + 1] = cartan[j][k];
  }
  impl->bonds.assign(ur + 1, IntVector(ur + 1, 1));
  for (std::size_t i = 0; i <= ur; ++i)
    for (std::size_t j = 0; j <= ur; ++j)
      if (i != j) impl->bonds[i][j] = bond_from_product(impl->affine_cartan[i][j] * impl->affine_cartan[j][i]);

  Matrix<Rational> ct(ur, ur);
  for (std::size_t i = 0; i < ur; ++i)
    for (std::size_t j = 0; j < ur; ++j) ct(i, j) = cartan[j][i];
  // Invert C^T by Gauss-Jordan.
  Matrix<Rational> inv = Matrix<Rational>::identity(ur);
  for (std::size_t col = 0; col < ur; ++col) {
    std::size_t piv = col;
    while (ct(piv, col) == 0) ++piv;
    for (std::size_t j = 0; j < ur; ++j) {
      std::swap(ct(piv, j), ct(col, j));
      std::swap(inv(piv, j), inv(col, j));
    }
    const Rational p = ct(col, col);
    for (std::size_t j = 0; j < ur; ++j) {
      ct(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t row = 0; row < ur; ++row) {
      if (row == col || ct(row, col) == 0) continue;
      const Rational f = ct(row, col);
      for (std::size_t j = 0; j < ur; ++j) {
        ct(row, j) -= f * ct(col, j);
        inv(row, j) -= f * inv(col, j);
      }
    }
  }
  impl->coroot_coords = inv;

  AffineDatum datum(impl);
  // Generators: s_0 = t_{theta^v} s_theta, s_i the simple reflections.
  {
    IntVector m = identity_matrix(r);
    for (std::size_t k = 0; k < ur; ++k)
      for (std::size_t j = 0; j < ur; ++j) m[k * ur + j] -= impl->highest_coroot[k] * impl->highest_root[j];
    impl->generators.push_back(datum.make(impl->highest_coroot, m, m));
  }
  for (std::size_t i = 0; i < ur; ++i) {
    IntVector m = identity_matrix(r);
    for (std::size_t k = 0; k < ur; ++k) m[k * ur + i] -= cartan[i][k];
    impl->generators.push_back(datum.make(IntVector(ur, 0), m, m));
  }

  // Omega: length-zero parts of the fundamental coweight translations.
  std::vector<WeylElement> omega{datum.identity()};
  if (lattice == TranslationLattice::coweight) {
    std::vector<WeylElement> gens;
    for (std::size_t j = 0; j < ur; ++j) {
      IntVector e(ur, 0);
      e[j] = 1;
      WeylElement x = datum.translation(e);
      while (datum.length(x) > 0) {
        const auto d = datum.descents(x, Side::left).elements();
        x = datum.multiply(datum.generator(d.front()), x);
      }
      gens.push_back(x);
    }
    for (std::size_t k = 0; k < omega.size(); ++k) {
      for (const auto& g : gens) {
        WeylElement y = datum.multiply(omega[k], g);
        if (std::find(omega.begin(), omega.end(), y) == omega.end()) omega.push_back(y);
      }
    }
  }
  std::sort(omega.begin(), omega.end(), [&](const WeylElement& a, const WeylElement& b) {
    return datum.omega_action_on_nodes(a) < datum.omega_action_on_nodes(b);
  });
  impl->omega = omega;
  return datum;
}

AffineDatum AffineDatum::from_type(std::string name, std::string_view type, TranslationLattice lattice) {
  std::string label(type);
  if (!label.empty()) label[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
  return from_cartan(std::move(name), cartan_matrix_of_type(label), lattice, label);
}

AffineDatum AffineDatum::builtin(std::string_view name) {
  const std::string s(name);
  if (s.size() < 5 || s.substr(s.size() - 3) != "aff") throw DataError("unknown built-in datum '" + s + "'");
  // One shared instance per name, so elements built from separate lookups
  // belong to the same datum.
  static std::mutex mutex;
  static std::map<std::string, AffineDatum> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(s);
  if (it == cache.end()) it = cache.emplace(s, from_type(s, s.substr(0, s.size() - 3))).first;
  return it->second;
}

std::vector<std::string> AffineDatum::builtin_names() { return {"a1aff", "a2aff", "c2aff", "g2aff"}; }

const std::string& AffineDatum::name() const { return impl_->name; }
const std::string& AffineDatum::type_label() const { return impl_->type_label; }
TranslationLattice AffineDatum::lattice() const { return impl_->lattice; }
std::uint64_t AffineDatum::id() const { return impl_->id; }
int AffineDatum::rank() const { return impl_->rank; }
int AffineDatum::node_count() const { return impl_->rank + 1; }
NodeSet AffineDatum::all_nodes() const { return NodeSet::from_mask((1U << node_count()) - 1U); }
const IntMatrix& AffineDatum::finite_cartan() const { return impl_->cartan; }
const IntMatrix& AffineDatum::affine_cartan() const { return impl_->affine_cartan; }
const IntMatrix& AffineDatum::positive_roots() const { return impl_->positive_roots; }
const IntVector& AffineDatum::highest_root() const { return impl_->highest_root; }
const IntVector& AffineDatum::highest_coroot() const { return impl_->highest_coroot; }

int AffineDatum::bond(int i, int j) const {
  if (i < 0 || j < 0 || i >= node_count() || j >= node_count()) throw DataError("node out of range");
  return impl_->bonds[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

bool AffineDatum::is_finite_type(const NodeSet& nodes) const {
  if (!nodes.is_subset_of(all_nodes())) return false;
  const auto elems = nodes.elements();
  IntMatrix sub(elems.size(), IntVector(elems.size(), 0));
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j)
      sub[i][j] = impl_->affine_cartan[static_cast<std::size_t>(elems[i])][static_cast<std::size_t>(elems[j])];
  return cartan_is_finite_type(sub);
}

WeylElement AffineDatum::make(IntVector translation, IntVector finite, IntVector finite_inv) const {
  WeylElement x;
  x.datum_id_ = impl_->id;
  x.rank_ = impl_->rank;
  x.translation_ = std::move(translation);
  x.finite_ = std::move(finite);
  x.finite_inv_ = std::move(finite_inv);
  return x;
}

void AffineDatum::check_same(const WeylElement& a) const {
  if (a.datum_id_ != impl_->id) throw DataError("Weyl group element belongs to a different datum");
}

WeylElement AffineDatum::identity() const {
  const int r = impl_->rank;
  return make(IntVector(static_cast<std::size_t>(r), 0), identity_matrix(r), identity_matrix(r));
}

WeylElement AffineDatum::generator(int node) const {
  if (node < 0 || node >= node_count()) throw DataError("generator index out of range: " + std::to_string(node));
  return impl_->generators[static_cast<std::size_t>(node)];
}

WeylElement AffineDatum::translation(const IntVector& coweight) const {
  if (static_cast<int>(coweight.size()) != impl_->rank) throw DataError("translation vector has wrong rank");
  WeylElement x = make(coweight, identity_matrix(impl_->rank), identity_matrix(impl_->rank));
  if (impl_->lattice == TranslationLattice::coroot && !in_affine_subgroup(x)) {
    throw DataError("translation is not in the coroot lattice of this datum");
  }
  return x;
}

WeylElement AffineDatum::multiply(const WeylElement& a, const WeylElement& b) const {
  check_same(a);
  check_same(b);
  const int r = impl_->rank;
  IntVector t = mat_vec(a.finite_, b.translation_, r);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += a.translation_[i];
  return make(std::move(t), mat_mat(a.finite_, b.finite_, r), mat_mat(b.finite_inv_, a.finite_inv_, r));
}

WeylElement AffineDatum::inverse(const WeylElement& a) const {
  check_same(a);
  IntVector t = mat_vec(a.finite_inv_, a.translation_, impl_->rank);
  for (int& v : t) v = -v;
  return make(std::move(t), a.finite_inv_, a.finite_);
}

WeylElement AffineDatum::conjugate(const WeylElement& g, const WeylElement& a) const {
  return multiply(multiply(g, a), inverse(g));
}

WeylElement AffineDatum::from_word(const Word& word) const {
  WeylElement x = identity();
  for (int i : word) x = multiply(x, generator(i));
  return x;
}

WeylElement AffineDatum::from_word(const Word& word, const WeylElement& omega) const {
  return multiply(from_word(word), omega);
}

WeylElement AffineDatum::finite_projection(const WeylElement& a) const {
  check_same(a);
  return make(IntVector(static_cast<std::size_t>(impl_->rank), 0), a.finite_, a.finite_inv_);
}

int AffineDatum::length(const WeylElement& a) const {
  check_same(a);
  const int r = impl_->rank;
  int total = 0;
  IntVector pulled(static_cast<std::size_t>(r));
  for (const auto& root : impl_->positive_roots) {
    // w^{-1} alpha = M^T alpha in simple-root coordinates.
    int pairing = 0;
    for (int j = 0; j < r; ++j) {
      int s = 0;
      for (int i = 0; i < r; ++i) s += a.finite_[static_cast<std::size_t>(i * r + j)] * root[static_cast<std::size_t>(i)];
      pulled[static_cast<std::size_t>(j)] = s;
      pairing += root[static_cast<std::size_t>(j)] * a.translation_[static_cast<std::size_t>(j)];
    }
    total += is_positive_root(pulled) ? std::abs(pairing) : std::abs(pairing - 1);
  }
  return total;
}

NodeSet AffineDatum::descents(const WeylElement& a, Side side) const {
  check_same(a);
  if (side == Side::right) return descents(inverse(a), Side::left);
  // i is a left descent iff a^{-1}(alpha_i) is a negative affine root, where
  // a^{-1} sends alpha + k to w^{-1} alpha + (<alpha, lambda> + k).
  const int r = impl_->rank;
  const auto ur = static_cast<std::size_t>(r);
  NodeSet out;
  auto pulled_sign = [&](const IntVector& root) {
    IntVector pulled(ur, 0);
    for (std::size_t j = 0; j < ur; ++j)
      for (std::size_t i = 0; i < ur; ++i) pulled[j] += a.finite_[i * ur + j] * root[i];
    return is_positive_root(pulled) ? 1 : -1;
  };
  {
    int theta_pairing = 0;
    for (std::size_t j = 0; j < ur; ++j) theta_pairing += impl_->highest_root[j] * a.translation_[j];
    const int constant = 1 - theta_pairing;
    if (constant < 0 || (constant == 0 && pulled_sign(impl_->highest_root) > 0)) out.insert(0);
  }
  for (std::size_t i = 0; i < ur; ++i) {
    const int constant = a.translation_[i];
    IntVector simple(ur, 0);
    simple[i] = 1;
    if (constant < 0 || (constant == 0 && pulled_sign(simple) < 0)) out.insert(static_cast<int>(i) + 1);
  }
  return out;
}

ReducedWord AffineDatum::reduced_word(const WeylElement& a) const {
  check_same(a);
  ReducedWord out;
  WeylElement x = a;
  while (true) {
    const NodeSet d = descents(x, Side::left);
    if (d.empty()) break;
    const int i = d.elements().front();
    out.word.push_back(i);
    x = multiply(generator(i), x);
  }
  out.omega = x;
  return out;
}

bool AffineDatum::in_affine_subgroup(const WeylElement& a) const {
  check_same(a);
  const auto ur = static_cast<std::size_t>(impl_->rank);
  for (std::size_t i = 0; i < ur; ++i) {
    Rational c(0);
    for (std::size_t j = 0; j < ur; ++j) c += impl_->coroot_coords(i, j) * a.translation_[j];
    if (c.get_den() != 1) return false;
  }
  return true;
}

std::optional<int> AffineDatum::element_order(const WeylElement& a) const {
  check_same(a);
  const int r = impl_->rank;
  const IntVector id = identity_matrix(r);
  IntVector power = a.finite_;
  int k = 1;
  while (power != id) {
    power = mat_mat(power, a.finite_, r);
    if (++k > 1000) throw MathError("finite part of unexpectedly large order");
  }
  WeylElement x = identity();
  for (int i = 0; i < k; ++i) x = multiply(x, a);
  if (x == identity()) return k;
  return std::nullopt;
}

std::vector<long> AffineDatum::characteristic_polynomial(const WeylElement& a) const {
  check_same(a);
  // Faddeev-LeVerrier; all divisions are exact for integer matrices.
  const int n = impl_->rank;
  const auto un = static_cast<std::size_t>(n);
  std::vector<long> coeff(un + 1, 0);
  coeff[un] = 1;
  std::vector<long> m(un * un, 0);
  for (int k = 1; k <= n; ++k) {
    // m <- A m + c_{n-k+1} I
    std::vector<long> am(un * un, 0);
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t l = 0; l < un; ++l)
        for (std::size_t j = 0; j < un; ++j) am[i * un + j] += a.finite_[i * un + l] * m[l * un + j];
    for (std::size_t i = 0; i < un; ++i) am[i * un + i] += coeff[un - static_cast<std::size_t>(k) + 1];
    m = std::move(am);
    long tr = 0;
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t l = 0; l < un; ++l) tr += a.finite_[i * un + l] * m[l * un + i];
    coeff[un - static_cast<std::size_t>(k)] = -tr / k;
  }
  return coeff;
}

std::vector<WeylElement> AffineDatum::omega_group() const { return impl_->omega; }

std::vector<int> AffineDatum::omega_action_on_nodes(const WeylElement& omega) const {
  check_same(omega);
  const WeylElement inv = inverse(omega);
  std::vector<int> perm;
  for (int i = 0; i < node_count(); ++i) {
    const WeylElement c = multiply(multiply(omega, generator(i)), inv);
    int image = -1;
    for (int j = 0; j < node_count(); ++j)
      if (impl_->generators[static_cast<std::size_t>(j)] == c) image = j;
    if (image < 0) throw DataError("element does not normalize the generating reflections");
    perm.push_back(image);
  }
  return perm;
}

const std::vector<WeylElement>& AffineDatum::parabolic_elements(const NodeSet& nodes) const {
  if (!nodes.is_subset_of(all_nodes())) throw DataError("node set " + nodes.to_string() + " has unknown nodes");
  if (nodes == all_nodes()) throw DataError("W_H for H = all nodes is infinite");
  {
    std::lock_guard lock(impl_->cache_mutex);
    auto it = impl_->parabolic_cache.find(nodes.mask());
    if (it != impl_->parabolic_cache.end()) return it->second;
  }
  if (!is_finite_type(nodes)) throw DataError("parabolic subgroup for " + nodes.to_string() + " is infinite");
  std::vector<WeylElement> elems{identity()};
  std::unordered_set<WeylElement, WeylElementHash> seen{identity()};
  const auto gens = nodes.elements();
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (int j : gens) {
      WeylElement y = multiply(elems[k], generator(j));
      if (seen.insert(y).second) elems.push_back(y);
    }
    if (elems.size() > 200000) throw DataError("parabolic subgroup too large");
  }
  std::lock_guard lock(impl_->cache_mutex);
  impl_->parabolic_sets.emplace(nodes.mask(), std::move(seen));
  return impl_->parabolic_cache.emplace(nodes.mask(), std::move(elems)).first->second;
}

bool AffineDatum::in_parabolic(const WeylElement& a, const NodeSet& nodes) const {
  check_same(a);
  parabolic_elements(nodes);
  std::lock_guard lock(impl_->cache_mutex);
  return impl_->parabolic_sets.at(nodes.mask()).count(a) != 0;
}

WeylElement AffineDatum::min_double_coset_rep(const WeylElement& w, const NodeSet& nodes) const {
  check_same(w);
  WeylElement x = w;
  while (true) {
    const NodeSet left = NodeSet::from_mask(descents(x, Side::left).mask() & nodes.mask());
    if (!left.empty()) {
      x = multiply(generator(left.elements().front()), x);
      continue;
    }
    const NodeSet right = NodeSet::from_mask(descents(x, Side::right).mask() & nodes.mask());
    if (!right.empty()) {
      x = multiply(x, generator(right.elements().front()));
      continue;
    }
    return x;
  }
}

bool AffineDatum::normalizes(const WeylElement& w, const NodeSet& nodes) const {
  check_same(w);
  if (nodes.empty()) return true;
  const WeylElement inv = inverse(w);
  for (int j : nodes.elements()) {
    if (!in_parabolic(multiply(multiply(w, generator(j)), inv), nodes)) return false;
  }
  return true;
}

bool AffineDatum::canonical_less(const WeylElement& a, const WeylElement& b) const {
  const int la = length(a);
  const int lb = length(b);
  if (la != lb) return la < lb;
  const auto ra = reduced_word(a);
  const auto rb = reduced_word(b);
  if (ra.word != rb.word) return ra.word < rb.word;
  if (ra.omega.translation() != rb.omega.translation()) return ra.omega.translation() < rb.omega.translation();
  return ra.omega.finite_part() < rb.omega.finite_part();
}

std::vector<WeylElement> AffineDatum::elements_up_to_length(int max_length, bool include_omega) const {
  std::vector<WeylElement> ball{identity()};
  std::unordered_set<WeylElement, WeylElementHash> seen{identity()};
  std::vector<WeylElement> frontier{identity()};
  for (int len = 0; len < max_length; ++len) {
    std::vector<WeylElement> next;
    for (const auto& x : frontier) {
      for (int i = 0; i < node_count(); ++i) {
        WeylElement y = multiply(generator(i), x);
        if (length(y) != len + 1) continue;
        if (seen.insert(y).second) next.push_back(y);
      }
    }
    ball.insert(ball.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  if (include_omega && impl_->omega.size() > 1) {
    std::vector<WeylElement> all;
    for (const auto& x : ball)
      for (const auto& w : impl_->omega) all.push_back(multiply(x, w));
    ball = std::move(all);
  }
  // Sort by precomputed keys.
  struct Keyed {
    int length;
    Word word;
    IntVector omega_t;
    IntVector omega_f;
    std::size_t index;
  };
  std::vector<Keyed> keys;
  keys.reserve(ball.size());
  for (std::size_t k = 0; k < ball.size(); ++k) {
    auto rw = reduced_word(ball[k]);
    keys.push_back({static_cast<int>(rw.word.size()), std::move(rw.word), rw.omega.translation(),
                    rw.omega.finite_part(), k});
  }
  std::sort(keys.begin(), keys.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.length, a.word, a.omega_t, a.omega_f) < std::tie(b.length, b.word, b.omega_t, b.omega_f);
  });
  std::vector<WeylElement> out;
  out.reserve(ball.size());
  for (const auto& k : keys) out.push_back(ball[k.index]);
  return out;
}

std::vector<WeylElement> AffineDatum::good_coset_reps(const NodeSet& nodes, int max_length) const {
  if (!nodes.is_subset_of(all_nodes()) || nodes == all_nodes()) {
    throw DataError("good cosets need a proper subset J of the nodes");
  }
  std::vector<WeylElement> out;
  for (const auto& w : elements_up_to_length(max_length, true)) {
    if ((descents(w, Side::left).mask() & nodes.mask()) != 0) continue;
    if ((descents(w, Side::right).mask() & nodes.mask()) != 0) continue;
    if (normalizes(w, nodes)) out.push_back(w);
  }
  return out;
}

}  // namespace weylchar
