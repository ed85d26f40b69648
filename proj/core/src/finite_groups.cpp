#include "weylchar/finite_groups.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "weylchar/error.hpp"

namespace weylchar {

namespace {

std::vector<ConjugacyClass> compute_classes(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  std::vector<ConjugacyClass> classes;
  auto add_class = [&](int start) {
    ConjugacyClass c;
    std::set<int> members;
    for (int h = 0; h < n; ++h) members.insert(g.conjugate(h, start));
    c.elements.assign(members.begin(), members.end());
    c.representative = c.elements.front();
    for (int x : c.elements) owner[static_cast<std::size_t>(x)] = static_cast<int>(classes.size());
    classes.push_back(std::move(c));
  };
  add_class(g.identity());
  for (int x = 0; x < n; ++x)
    if (owner[static_cast<std::size_t>(x)] < 0) add_class(x);
  return classes;
}

using u64 = std::uint64_t;

u64 pow_mod(u64 base, u64 exp, u64 mod) {
  u64 result = 1;
  base %= mod;
  while (exp > 0) {
    if (exp & 1U) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1U;
  }
  return result;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a % p, p - 2, p); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

u64 primitive_root(u64 p) {
  if (p == 2) return 1;
  const auto factors = prime_factors(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (u64 q : factors)
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw MathError("no primitive root found");
}

using Vec = std::vector<u64>;

/// Reduced row echelon form of the rows; returns pivot columns.
std::vector<std::size_t> rref(std::vector<Vec>& rows, u64 p) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[r]);
    const u64 inv = inv_mod(rows[r][c], p);
    for (auto& v : rows[r]) v = v * inv % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const u64 f = rows[i][c];
      for (std::size_t k = 0; k < cols; ++k) rows[i][k] = (rows[i][k] + (p - f) * rows[r][k]) % p;
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

/// Basis of the null space of a square matrix (row-major d x d) mod p.
std::vector<Vec> null_space(std::vector<Vec> m, u64 p) {
  const std::size_t d = m.size();
  const auto pivots = rref(m, p);
  std::vector<bool> is_pivot(d, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < d; ++free) {
    if (is_pivot[free]) continue;
    Vec v(d, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (p - m[i][free]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Characteristic polynomial by Faddeev-LeVerrier mod p (needs p > d).
Vec charpoly_mod(const std::vector<Vec>& a, u64 p) {
  const std::size_t n = a.size();
  Vec coeff(n + 1, 0);
  coeff[n] = 1;
  std::vector<Vec> m(n, Vec(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Vec> am(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (a[i][l] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) am[i][j] = (am[i][j] + a[i][l] * m[l][j]) % p;
      }
    for (std::size_t i = 0; i < n; ++i) am[i][i] = (am[i][i] + coeff[n - k + 1]) % p;
    m = std::move(am);
    u64 tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr = (tr + a[i][l] * m[l][i]) % p;
    coeff[n - k] = (p - tr * inv_mod(k, p) % p) % p;
  }
  return coeff;
}

bool value_less(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor() != b.conductor()) return a.conductor() < b.conductor();
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  for (std::size_t k = 0; k < ca.size(); ++k) {
    const int c = cmp(ca[k], cb[k]);
    if (c != 0) return c > 0;
  }
  return false;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> mult, std::vector<std::string> labels) {
  const int n = static_cast<int>(mult.size());
  if (n == 0) throw DataError("group table is empty");
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(mult[static_cast<std::size_t>(a)].size()) != n) {
      throw DataError("group table row " + std::to_string(a) + " has the wrong length");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int b = 0; b < n; ++b) {
      const int v = mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (v < 0 || v >= n) throw DataError("group table entry out of range at [" + std::to_string(a) + "][" +
                                           std::to_string(b) + "]");
      if (seen[static_cast<std::size_t>(v)]) throw DataError("group table row " + std::to_string(a) + " repeats an element");
      seen[static_cast<std::size_t>(v)] = true;
    }
  }
  for (int b = 0; b < n; ++b) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int a = 0; a < n; ++a) {
      const int v = mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (seen[static_cast<std::size_t>(v)]) throw DataError("group table column " + std::to_string(b) + " repeats an element");
      seen[static_cast<std::size_t>(v)] = true;
    }
  }
  FiniteGroup g;
  g.mult_ = std::move(mult);
  g.identity_ = -1;
  for (int e = 0; e < n && g.identity_ < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = g.multiply(e, x) == x && g.multiply(x, e) == x;
    if (ok) g.identity_ = e;
  }
  if (g.identity_ < 0) throw DataError("group table has no identity element");
  g.inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (g.multiply(a, b) == g.identity_) g.inverse_[static_cast<std::size_t>(a)] = b;
    if (g.multiply(g.inverse(a), a) != g.identity_) throw DataError("element " + std::to_string(a) + " has no two-sided inverse");
  }
  auto check = [&](int a, int b, int c) {
    if (g.multiply(g.multiply(a, b), c) != g.multiply(a, g.multiply(b, c))) {
      throw DataError("group table is not associative at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                      std::to_string(c) + ")");
    }
  };
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check(a, b, c);
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < 20000; ++t) check(pick(rng), pick(rng), pick(rng));
  }
  if (labels.empty()) {
    for (int a = 0; a < n; ++a) labels.push_back(std::to_string(a));
  }
  if (static_cast<int>(labels.size()) != n) throw DataError("group labels do not match the order");
  if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size()) {
    throw DataError("group labels are not unique");
  }
  g.labels_ = std::move(labels);
  auto classes = compute_classes(g);
  auto owner = std::make_shared<std::vector<int>>(static_cast<std::size_t>(n), 0);
  for (std::size_t k = 0; k < classes.size(); ++k)
    for (int x : classes[k].elements) (*owner)[static_cast<std::size_t>(x)] = static_cast<int>(k);
  g.classes_ = std::make_shared<const std::vector<ConjugacyClass>>(std::move(classes));
  g.class_of_ = std::move(owner);
  return g;
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& generators) {
  if (generators.empty()) throw DataError("permutation group needs at least one generator");
  const std::size_t degree = generators.front().size();
  for (const auto& g : generators) {
    if (g.size() != degree) throw DataError("permutation generators have different degrees");
    std::vector<int> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < degree; ++i)
      if (sorted[i] != static_cast<int>(i)) throw DataError("generator is not a permutation of 0..d-1");
  }
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(degree);
    for (std::size_t i = 0; i < degree; ++i) r[i] = p[static_cast<std::size_t>(q[i])];
    return r;
  };
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (const auto& g : generators) {
      auto y = compose(elems[k], g);
      if (index.emplace(y, static_cast<int>(elems.size())).second) elems.push_back(std::move(y));
    }
    if (elems.size() > 100000) throw DataError("permutation group too large");
  }
  std::vector<std::vector<int>> mult(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) mult[a][b] = index.at(compose(elems[a], elems[b]));
  return from_table(std::move(mult));
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw DataError("cyclic group of non-positive order");
  std::vector<std::vector<int>> mult(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  return from_table(std::move(mult));
}

int FiniteGroup::power(int a, long k) const {
  if (k < 0) return power(inverse(a), -k);
  int result = identity_;
  for (long i = 0; i < k; ++i) result = multiply(result, a);
  return result;
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != identity_; x = multiply(x, a)) ++k;
  return k;
}

int FiniteGroup::exponent() const {
  int e = 1;
  for (int a = 0; a < order(); ++a) e = std::lcm(e, element_order(a));
  return e;
}

int FiniteGroup::find_label(const std::string& label) const {
  for (std::size_t a = 0; a < labels_.size(); ++a)
    if (labels_[a] == label) return static_cast<int>(a);
  return -1;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < order(); ++b)
      if (multiply(a, b) != multiply(b, a)) return false;
  return true;
}

const std::vector<ConjugacyClass>& FiniteGroup::conjugacy_classes() const { return *classes_; }

const std::vector<int>& FiniteGroup::class_of() const { return *class_of_; }

Subgroup FiniteGroup::centralizer(int x) const {
  Subgroup sub;
  for (int g = 0; g < order(); ++g)
    if (multiply(g, x) == multiply(x, g)) sub.embedding.push_back(g);
  for (std::size_t k = 0; k < sub.embedding.size(); ++k) sub.local_index[sub.embedding[k]] = static_cast<int>(k);
  const std::size_t m = sub.embedding.size();
  std::vector<std::vector<int>> mult(m, std::vector<int>(m));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < m; ++a) {
    labels.push_back(label(sub.embedding[a]));
    for (std::size_t b = 0; b < m; ++b) mult[a][b] = sub.local_index.at(multiply(sub.embedding[a], sub.embedding[b]));
  }
  sub.group = from_table(std::move(mult), std::move(labels));
  return sub;
}

void sort_character_rows(std::vector<std::vector<Cyclotomic>>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const std::vector<Cyclotomic>& a, const std::vector<Cyclotomic>& b) {
    const Rational da = *a.front().as_rational();
    const Rational db = *b.front().as_rational();
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), value_less);
  });
}

CharacterTable class_data(const FiniteGroup& group) {
  CharacterTable t;
  t.group_order = static_cast<std::size_t>(group.order());
  for (const auto& c : group.conjugacy_classes()) {
    t.classes.push_back({c.representative, c.size(), group.element_order(c.representative)});
  }
  t.class_of = group.class_of();
  for (u64 p : prime_factors(static_cast<u64>(group.order()))) {
    std::vector<int> map;
    for (const auto& c : t.classes)
      map.push_back(t.class_of[static_cast<std::size_t>(group.power(c.representative, static_cast<long>(p)))]);
    t.power_map.emplace(static_cast<int>(p), std::move(map));
  }
  return t;
}

CharacterTable character_table(const FiniteGroup& group, int max_order) {
  const int n = group.order();
  if (n > max_order) {
    throw DataError("group order " + std::to_string(n) + " exceeds the character table bound " + std::to_string(max_order));
  }
  CharacterTable table = class_data(group);
  const std::size_t h = table.classes.size();
  const auto& classes = group.conjugacy_classes();
  const auto& class_of = table.class_of;
  const int e = group.exponent();

  u64 p = static_cast<u64>(e) + 1;
  while (p <= static_cast<u64>(n) || !is_prime(p)) p += static_cast<u64>(e);

  // Class multiplication coefficients: M_j[k][l] = #{x in C_j : x^{-1} z_l in C_k}.
  std::vector<std::vector<Vec>> class_matrix(h, std::vector<Vec>(h, Vec(h, 0)));
  for (std::size_t l = 0; l < h; ++l) {
    const int z = classes[l].representative;
    for (std::size_t j = 0; j < h; ++j)
      for (int x : classes[j].elements) {
        const auto k = static_cast<std::size_t>(class_of[static_cast<std::size_t>(group.multiply(group.inverse(x), z))]);
        class_matrix[j][k][l] += 1;
      }
  }

  // Common eigenspaces; each subspace is kept as an RREF basis.
  std::vector<std::vector<Vec>> spaces;
  {
    std::vector<Vec> full;
    for (std::size_t i = 0; i < h; ++i) {
      Vec v(h, 0);
      v[i] = 1;
      full.push_back(std::move(v));
    }
    spaces.push_back(std::move(full));
  }
  for (std::size_t j = 1; j < h; ++j) {
    bool all_split = std::all_of(spaces.begin(), spaces.end(), [](const auto& s) { return s.size() == 1; });
    if (all_split) break;
    std::vector<std::vector<Vec>> next;
    for (auto& basis : spaces) {
      if (basis.size() == 1) {
        next.push_back(std::move(basis));
        continue;
      }
      const auto pivots = rref(basis, p);
      const std::size_t d = basis.size();
      // X[a][i] = coordinate a of M_j applied to basis vector i.
      std::vector<Vec> x(d, Vec(d, 0));
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t a = 0; a < d; ++a) {
          const std::size_t row = pivots[a];
          u64 s = 0;
          for (std::size_t col = 0; col < h; ++col) s = (s + class_matrix[j][row][col] * basis[i][col]) % p;
          x[a][i] = s;
        }
      }
      const Vec poly = charpoly_mod(x, p);
      std::vector<u64> roots;
      for (u64 lambda = 0; lambda < p; ++lambda) {
        u64 acc = 0;
        for (std::size_t k = poly.size(); k-- > 0;) acc = (acc * lambda + poly[k]) % p;
        if (acc == 0) roots.push_back(lambda);
      }
      if (roots.size() == 1) {
        next.push_back(std::move(basis));
        continue;
      }
      std::size_t total = 0;
      for (u64 lambda : roots) {
        std::vector<Vec> shifted = x;
        for (std::size_t a = 0; a < d; ++a) shifted[a][a] = (shifted[a][a] + p - lambda) % p;
        std::vector<Vec> sub;
        for (const auto& c : null_space(shifted, p)) {
          Vec v(h, 0);
          for (std::size_t a = 0; a < d; ++a)
            for (std::size_t col = 0; col < h; ++col) v[col] = (v[col] + c[a] * basis[a][col]) % p;
          sub.push_back(std::move(v));
        }
        total += sub.size();
        next.push_back(std::move(sub));
      }
      if (total != d) throw MathError("class matrix is not diagonalizable mod p");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != h) throw MathError("Dixon-Schneider failed to split the class algebra");

  const u64 root = primitive_root(p);
  const u64 zeta_e = pow_mod(root, (p - 1) / static_cast<u64>(e), p);
  std::vector<std::vector<Cyclotomic>> rows;
  int degree_square_sum = 0;
  for (const auto& space : spaces) {
    Vec v = space.front();
    const u64 norm = inv_mod(v[0], p);
    for (auto& c : v) c = c * norm % p;
    u64 s = 0;
    for (std::size_t k = 0; k < h; ++k) {
      const auto inv_class =
          static_cast<std::size_t>(class_of[static_cast<std::size_t>(group.inverse(classes[k].representative))]);
      s = (s + v[k] * v[inv_class] % p * inv_mod(classes[k].size(), p)) % p;
    }
    const u64 target = static_cast<u64>(n) % p * inv_mod(s, p) % p;
    int degree = 0;
    for (int d = 1; d * d <= n; ++d)
      if (static_cast<u64>(d) * static_cast<u64>(d) % p == target) degree = d;
    if (degree == 0) throw MathError("could not recover a character degree");
    degree_square_sum += degree * degree;
    Vec chi(h);
    for (std::size_t k = 0; k < h; ++k) chi[k] = v[k] * static_cast<u64>(degree) % p * inv_mod(classes[k].size(), p) % p;

    std::vector<Cyclotomic> row;
    for (std::size_t k = 0; k < h; ++k) {
      const int g = classes[k].representative;
      const int o = table.classes[k].element_order;
      const u64 zeta_o = pow_mod(zeta_e, static_cast<u64>(e / o), p);
      std::vector<u64> power_values(static_cast<std::size_t>(o));
      int x = group.identity();
      for (int j = 0; j < o; ++j) {
        power_values[static_cast<std::size_t>(j)] = chi[static_cast<std::size_t>(class_of[static_cast<std::size_t>(x)])];
        x = group.multiply(x, g);
      }
      std::vector<Rational> mult(static_cast<std::size_t>(o));
      long count = 0;
      for (int t = 0; t < o; ++t) {
        u64 acc = 0;
        const u64 step = pow_mod(inv_mod(zeta_o, p), static_cast<u64>(t), p);
        u64 w = 1;
        for (int j = 0; j < o; ++j) {
          acc = (acc + power_values[static_cast<std::size_t>(j)] * w) % p;
          w = w * step % p;
        }
        acc = acc * inv_mod(static_cast<u64>(o), p) % p;
        if (acc > static_cast<u64>(degree)) throw MathError("eigenvalue multiplicity out of range in Dixon lift");
        mult[static_cast<std::size_t>(t)] = static_cast<long>(acc);
        count += static_cast<long>(acc);
      }
      if (count != degree) throw MathError("eigenvalue multiplicities do not sum to the degree");
      row.push_back(Cyclotomic::from_powers(o, mult));
    }
    rows.push_back(std::move(row));
  }
  if (degree_square_sum != n) throw MathError("character degrees do not satisfy sum of squares = |G|");
  sort_character_rows(rows);
  table.irreducibles = std::move(rows);
  return table;
}

Cyclotomic inner_product(const CharacterTable& table, const std::vector<Cyclotomic>& a,
                         const std::vector<Cyclotomic>& b) {
  Cyclotomic sum;
  for (std::size_t k = 0; k < table.classes.size(); ++k) {
    sum += Cyclotomic(static_cast<long>(table.classes[k].size)) * a[k] * b[k].conjugate();
  }
  return sum * Cyclotomic(make_rational(1, static_cast<long>(table.group_order)));
}

}  // namespace weylchar
