#include "weylchar/fourier.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "weylchar/error.hpp"

namespace weylchar {

namespace {

std::optional<int> parse_index(std::string_view s) {
  int value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

MSet MSet::build(FiniteGroup gamma, MSetNames names, int max_order) {
  MSet m;
  m.gamma_ = std::move(gamma);
  m.names_ = std::move(names);
  const auto& classes = m.gamma_.conjugacy_classes();
  for (std::size_t y = 0; y < classes.size(); ++y) {
    CentralizerData data;
    data.subgroup = m.gamma_.centralizer(classes[y].representative);
    data.table = character_table(data.subgroup.group, max_order);
    for (std::size_t r = 0; r < data.table.irreducibles.size(); ++r)
      m.pairs_.push_back({static_cast<int>(y), static_cast<int>(r)});
    m.centralizers_.push_back(std::move(data));
  }
  for (const auto& [y, list] : m.names_.character_names) {
    if (y < 0 || y >= static_cast<int>(classes.size())) throw DataError("character names given for an unknown class");
    if (list.size() != m.centralizers_[static_cast<std::size_t>(y)].table.irreducibles.size()) {
      throw DataError("class " + m.class_name(y) + " needs " +
                      std::to_string(m.centralizers_[static_cast<std::size_t>(y)].table.irreducibles.size()) +
                      " centralizer character names");
    }
  }
  return m;
}

std::string MSet::class_name(int y) const {
  auto it = names_.class_names.find(y);
  if (it != names_.class_names.end()) return it->second;
  return gamma_.label(gamma_.conjugacy_classes()[static_cast<std::size_t>(y)].representative);
}

std::string MSet::character_name(int y, int r) const {
  auto it = names_.character_names.find(y);
  if (it != names_.character_names.end()) return it->second[static_cast<std::size_t>(r)];
  return std::to_string(r);
}

std::string MSet::pair_name(const MPair& p) const {
  return "(" + class_name(p.y) + "," + character_name(p.y, p.r) + ")";
}

std::optional<std::size_t> MSet::index_of(const MPair& p) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
  if (it == pairs_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - pairs_.begin());
}

std::optional<int> MSet::find_class(std::string_view name) const {
  name = trim(name);
  const int count = static_cast<int>(gamma_.conjugacy_classes().size());
  for (int y = 0; y < count; ++y)
    if (class_name(y) == name) return y;
  if (auto k = parse_index(name); k && *k >= 0 && *k < count) return k;
  return std::nullopt;
}

std::optional<int> MSet::find_character(int y, std::string_view name) const {
  name = trim(name);
  const int count = static_cast<int>(centralizer(y).table.irreducibles.size());
  for (int r = 0; r < count; ++r)
    if (character_name(y, r) == name) return r;
  if (auto k = parse_index(name); k && *k >= 0 && *k < count) return k;
  return std::nullopt;
}

std::optional<MPair> MSet::parse_pair(std::string_view text) const {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') text = text.substr(1, text.size() - 2);
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  auto y = find_class(text.substr(0, comma));
  if (!y) return std::nullopt;
  auto r = find_character(*y, text.substr(comma + 1));
  if (!r) return std::nullopt;
  return MPair{*y, *r};
}

Cyclotomic fourier_entry(const MSet& m, const MPair& a, const MPair& b) {
  const FiniteGroup& g = m.gamma();
  const auto& classes = g.conjugacy_classes();
  const int x = classes[static_cast<std::size_t>(a.y)].representative;
  const int y = classes[static_cast<std::size_t>(b.y)].representative;
  const CentralizerData& zx = m.centralizer(a.y);
  const CentralizerData& zy = m.centralizer(b.y);
  Cyclotomic sum;
  for (int h = 0; h < g.order(); ++h) {
    const int hyh = g.conjugate(h, y);
    if (g.multiply(x, hyh) != g.multiply(hyh, x)) continue;
    const int hxh = g.conjugate(g.inverse(h), x);
    const Cyclotomic& sigma = zx.table.value(static_cast<std::size_t>(a.r), zx.subgroup.local_index.at(hyh));
    const Cyclotomic& tau = zy.table.value(static_cast<std::size_t>(b.r), zy.subgroup.local_index.at(hxh));
    sum += sigma.conjugate() * tau;
  }
  const long denom = static_cast<long>(zx.subgroup.embedding.size() * zy.subgroup.embedding.size());
  return sum * Cyclotomic(make_rational(1, denom));
}

Matrix<Cyclotomic> fourier_matrix(const MSet& m) {
  const std::size_t n = m.size();
  Matrix<Cyclotomic> f(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f(i, j) = fourier_entry(m, m.pairs()[i], m.pairs()[j]);
  return f;
}

int ParabolicTable::index_of(const WeylElement& w) const {
  auto it = index.find(w);
  if (it == index.end()) throw DataError("element is not in the parabolic subgroup W_" + nodes.to_string());
  return it->second;
}

ParabolicTable make_parabolic_table(const AffineDatum& datum, const NodeSet& nodes) {
  ParabolicTable t{datum, nodes, datum.parabolic_elements(nodes), {}, {}};
  for (std::size_t k = 0; k < t.elements.size(); ++k) t.index.emplace(t.elements[k], static_cast<int>(k));
  const std::size_t n = t.elements.size();
  std::vector<std::vector<int>> mult(n, std::vector<int>(n));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back(word_to_string(datum.reduced_word(t.elements[a]).word));
    for (std::size_t b = 0; b < n; ++b) mult[a][b] = t.index.at(datum.multiply(t.elements[a], t.elements[b]));
  }
  t.group = FiniteGroup::from_table(std::move(mult), std::move(labels));
  return t;
}

std::optional<std::size_t> FamilyData::family_of(int irr) const {
  for (std::size_t f = 0; f < families.size(); ++f)
    if (families[f].members.count(irr) != 0) return f;
  return std::nullopt;
}

void validate_family_data(const FamilyData& fd) {
  std::set<int> seen;
  const int count = static_cast<int>(fd.weyl_table.irreducibles.size());
  for (std::size_t f = 0; f < fd.families.size(); ++f) {
    std::set<MPair> pairs;
    for (const auto& [irr, member] : fd.families[f].members) {
      const std::string where = "families[" + std::to_string(f) + "] member " + std::to_string(irr);
      if (irr < 0 || irr >= count) throw DataError(where + ": not an irreducible index of W_H");
      if (!seen.insert(irr).second) throw DataError(where + ": irreducible appears in two families");
      if (!fd.families[f].gamma.index_of(member.pair)) throw DataError(where + ": pair is not in M(Gamma)");
      if (!pairs.insert(member.pair).second) throw DataError(where + ": pair used twice");
      if (member.sign != 1 && member.sign != -1) throw DataError(where + ": sign must be 1 or -1");
    }
  }
}

namespace {

const Family& covering_family(int irr, const FamilyData& fd) {
  auto f = fd.family_of(irr);
  if (!f) throw DataError("irreducible " + std::to_string(irr) + " of W_H is not covered by the family data");
  return fd.families[*f];
}

}  // namespace

Cyclotomic multiplicity_in_RW(int irr, const WeylElement& w, const FamilyData& fd) {
  const Family& family = covering_family(irr, fd);
  const int element = fd.weyl.index_of(w);
  const FamilyMember& e = family.members.at(irr);
  Cyclotomic sum;
  for (const auto& [phi, member] : family.members) {
    const Cyclotomic entry = fourier_entry(family.gamma, e.pair, member.pair);
    sum += fd.weyl_table.value(static_cast<std::size_t>(phi), element) * Cyclotomic(static_cast<long>(member.sign)) *
           entry;
  }
  return sum * Cyclotomic(static_cast<long>(e.sign));
}

Cyclotomic multiplicity_by_matrix(int irr, const WeylElement& w, const FamilyData& fd) {
  const Family& family = covering_family(irr, fd);
  const int element = fd.weyl.index_of(w);
  const std::size_t n = family.gamma.size();
  Matrix<Cyclotomic> values(n, 1);
  for (const auto& [phi, member] : family.members) {
    values(*family.gamma.index_of(member.pair), 0) =
        fd.weyl_table.value(static_cast<std::size_t>(phi), element) * Cyclotomic(static_cast<long>(member.sign));
  }
  const Matrix<Cyclotomic> product = fourier_matrix(family.gamma) * values;
  const FamilyMember& e = family.members.at(irr);
  return product(*family.gamma.index_of(e.pair), 0) * Cyclotomic(static_cast<long>(e.sign));
}

}  // namespace weylchar
