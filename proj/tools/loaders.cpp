#include <fstream>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "weylchar/error.hpp"

namespace weylchar::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

[[noreturn]] void schema_error(const fs::path& file, const std::string& pointer, const std::string& what) {
  throw DataError(file.string() + ": " + (pointer.empty() ? "/" : pointer) + ": " + what);
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": not a JSON document: " + e.what());
  }
}

const json& require(const json& obj, const std::string& key, const fs::path& file, const std::string& pointer) {
  if (!obj.is_object()) schema_error(file, pointer, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(file, pointer, "missing key '" + key + "'");
  return *it;
}

int as_int(const json& v, const fs::path& file, const std::string& pointer) {
  if (!v.is_number_integer()) schema_error(file, pointer, "expected an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const fs::path& file, const std::string& pointer) {
  if (!v.is_string()) schema_error(file, pointer, "expected a string");
  return v.get<std::string>();
}

/// Integers or scalar-literal strings.
Cyclotomic as_scalar(const json& v, const fs::path& file, const std::string& pointer) {
  if (v.is_number_integer()) return Cyclotomic(v.get<long>());
  if (v.is_string()) {
    try {
      return Cyclotomic::parse(v.get<std::string>());
    } catch (const DataError& e) {
      schema_error(file, pointer, e.what());
    }
  }
  schema_error(file, pointer, "expected an integer or a scalar literal string");
}

std::vector<std::vector<int>> int_matrix(const json& v, const fs::path& file, const std::string& pointer) {
  if (!v.is_array()) schema_error(file, pointer, "expected an array of arrays");
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string row_ptr = pointer + "/" + std::to_string(i);
    if (!v[i].is_array()) schema_error(file, row_ptr, "expected an array");
    std::vector<int> row;
    for (std::size_t j = 0; j < v[i].size(); ++j) row.push_back(as_int(v[i][j], file, row_ptr + "/" + std::to_string(j)));
    out.push_back(std::move(row));
  }
  return out;
}

CycMatrix scalar_matrix(const json& v, std::size_t d, const fs::path& file, const std::string& pointer,
                        const std::string& what) {
  if (!v.is_array() || v.size() != d) schema_error(file, pointer, what + " is not a " + std::to_string(d) + "x" +
                                                                      std::to_string(d) + " matrix");
  CycMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::string row_ptr = pointer + "/" + std::to_string(i);
    if (!v[i].is_array() || v[i].size() != d) schema_error(file, row_ptr, what + " is not square");
    for (std::size_t j = 0; j < d; ++j) m(i, j) = as_scalar(v[i][j], file, row_ptr + "/" + std::to_string(j));
  }
  return m;
}

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

}  // namespace

fs::path Loader::resolve(const std::string& path, const fs::path& base) const {
  const fs::path p(path);
  if (p.is_absolute()) return p;
  std::vector<fs::path> candidates;
  if (!base.empty()) candidates.push_back(base / p);
  candidates.push_back(p);
  candidates.push_back(data_dir_ / p);
  for (const auto& c : candidates)
    if (fs::exists(c)) return c;
  throw DataError("cannot find data file '" + path + "'");
}

AffineDatum Loader::datum(const std::string& name_or_path, const fs::path& base) const {
  auto cached = datums_.find(name_or_path);
  if (cached != datums_.end()) return cached->second;
  const bool looks_like_file = name_or_path.find('/') != std::string::npos ||
                               name_or_path.find(".json") != std::string::npos;
  if (!looks_like_file) {
    AffineDatum d = AffineDatum::builtin(name_or_path);
    datums_.emplace(name_or_path, d);
    return d;
  }
  const fs::path file = resolve(name_or_path, base);
  const json doc = read_json(file);
  const std::string name = as_string(require(doc, "name", file, ""), file, "/name");
  if (doc.contains("affine") && !(doc["affine"].is_boolean() && doc["affine"].get<bool>())) {
    schema_error(file, "/affine", "only affine datums are supported");
  }
  TranslationLattice lattice = TranslationLattice::coweight;
  if (doc.contains("lattice")) {
    const std::string l = as_string(doc["lattice"], file, "/lattice");
    if (l == "coroot") lattice = TranslationLattice::coroot;
    else if (l != "coweight") schema_error(file, "/lattice", "expected \"coweight\" or \"coroot\"");
  }
  const json& type = require(doc, "type", file, "");
  AffineDatum d = [&] {
    try {
      if (type.is_string()) return AffineDatum::from_type(name, type.get<std::string>(), lattice);
      return AffineDatum::from_cartan(name, int_matrix(require(type, "cartan", file, "/type"), file, "/type/cartan"),
                                      lattice);
    } catch (const DataError& e) {
      schema_error(file, "/type", e.what());
    }
  }();
  datums_.emplace(name_or_path, d);
  return d;
}

MSet Loader::group(const std::string& path, const fs::path& base) const {
  const fs::path file = resolve(path, base);
  const json doc = read_json(file);
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    const json& l = doc["labels"];
    if (!l.is_array()) schema_error(file, "/labels", "expected an array of strings");
    for (std::size_t k = 0; k < l.size(); ++k) labels.push_back(as_string(l[k], file, "/labels/" + std::to_string(k)));
  }
  FiniteGroup g;
  try {
    if (doc.contains("mult")) {
      auto mult = int_matrix(doc["mult"], file, "/mult");
      if (doc.contains("order") && as_int(doc["order"], file, "/order") != static_cast<int>(mult.size())) {
        schema_error(file, "/order", "does not match the table size");
      }
      g = FiniteGroup::from_table(std::move(mult), labels);
    } else if (doc.contains("perm_gens")) {
      auto gens = int_matrix(doc["perm_gens"], file, "/perm_gens");
      const bool one_based = doc.value("one_based", false);
      if (one_based)
        for (auto& gen : gens)
          for (auto& x : gen) --x;
      g = FiniteGroup::from_permutations(gens);
      if (!labels.empty()) {
        if (labels.size() != static_cast<std::size_t>(g.order())) schema_error(file, "/labels", "wrong number of labels");
        g = FiniteGroup::from_table(g.table(), labels);
      }
      if (doc.contains("order") && as_int(doc["order"], file, "/order") != g.order()) {
        schema_error(file, "/order", "does not match the generated group");
      }
    } else {
      schema_error(file, "", "expected 'mult' or 'perm_gens'");
    }
  } catch (const DataError& e) {
    const std::string what = e.what();
    if (what.rfind(file.string(), 0) == 0) throw;
    schema_error(file, "", what);
  }

  // Names are keyed by the label of any element of the class.
  MSetNames names;
  auto class_of_label = [&](const std::string& label, const std::string& pointer) {
    const int x = g.find_label(label);
    if (x < 0) schema_error(file, pointer, "no element labelled '" + label + "'");
    return g.class_of()[static_cast<std::size_t>(x)];
  };
  if (doc.contains("class_names")) {
    for (const auto& [label, name] : doc["class_names"].items()) {
      const std::string ptr = "/class_names/" + escape_pointer(label);
      names.class_names[class_of_label(label, ptr)] = as_string(name, file, ptr);
    }
  }
  std::map<std::string, int> by_name;
  for (int y = 0; y < static_cast<int>(g.conjugacy_classes().size()); ++y) {
    auto it = names.class_names.find(y);
    by_name[it != names.class_names.end() ? it->second : g.label(g.conjugacy_classes()[static_cast<std::size_t>(y)].representative)] = y;
  }
  if (doc.contains("character_names")) {
    for (const auto& [key, list] : doc["character_names"].items()) {
      const std::string ptr = "/character_names/" + escape_pointer(key);
      const int y = by_name.count(key) != 0 ? by_name[key] : class_of_label(key, ptr);
      if (!list.is_array()) schema_error(file, ptr, "expected an array of names");
      std::vector<std::string> v;
      for (std::size_t k = 0; k < list.size(); ++k) v.push_back(as_string(list[k], file, ptr + "/" + std::to_string(k)));
      names.character_names[y] = std::move(v);
    }
  }
  try {
    return MSet::build(std::move(g), std::move(names));
  } catch (const DataError& e) {
    schema_error(file, "", e.what());
  }
}

RepData Loader::rep(const std::string& path, const fs::path& base) const {
  const fs::path file = resolve(path, base);
  const json doc = read_json(file);
  RepData rep{datum(as_string(require(doc, "datum", file, ""), file, "/datum"), file.parent_path()), 0, {}, {}};
  const int d = as_int(require(doc, "dimension", file, ""), file, "/dimension");
  if (d < 1) schema_error(file, "/dimension", "must be positive");
  rep.dimension = static_cast<std::size_t>(d);
  const json& gens = require(doc, "generators", file, "");
  if (!gens.is_object()) schema_error(file, "/generators", "expected an object keyed by node");
  for (const auto& [key, m] : gens.items()) {
    const std::string ptr = "/generators/" + escape_pointer(key);
    int node = -1;
    try {
      std::size_t used = 0;
      node = std::stoi(key, &used);
      if (used != key.size()) node = -1;
    } catch (const std::exception&) {
      node = -1;
    }
    if (node < 0) schema_error(file, ptr, "generator keys must be node numbers");
    rep.generators.emplace(node, scalar_matrix(m, rep.dimension, file, ptr, "generator " + key));
  }
  if (doc.contains("omega")) {
    for (const auto& [key, m] : doc["omega"].items()) {
      const std::string ptr = "/omega/" + escape_pointer(key);
      int k = -1;
      try {
        k = std::stoi(key);
      } catch (const std::exception&) {
        schema_error(file, ptr, "omega keys must be indices into Omega");
      }
      rep.omega.emplace(k, scalar_matrix(m, rep.dimension, file, ptr, "omega " + key));
    }
  }
  const RepReport report = validate_rep(rep);
  if (!report.valid()) {
    std::string msg = "invalid representation:";
    for (const auto& v : report.violations) msg += "\n  " + v.relation + ": " + v.detail;
    schema_error(file, "", msg);
  }
  return rep;
}

FamilyData Loader::family(const std::string& path) const {
  const fs::path file = resolve(path);
  const json doc = read_json(file);
  const std::string weyl = as_string(require(doc, "weyl", file, ""), file, "/weyl");
  const auto hash = weyl.find('#');
  if (hash == std::string::npos) schema_error(file, "/weyl", "expected \"<datum>#<H>\"");
  const AffineDatum d = datum(weyl.substr(0, hash), file.parent_path());
  NodeSet h;
  try {
    h = NodeSet::parse(weyl.substr(hash + 1));
  } catch (const DataError& e) {
    schema_error(file, "/weyl", e.what());
  }
  FamilyData fd{make_parabolic_table(d, h), {}, {}};
  fd.weyl_table = character_table(fd.weyl.group);
  const json& fams = require(doc, "families", file, "");
  if (!fams.is_array()) schema_error(file, "/families", "expected an array");
  for (std::size_t f = 0; f < fams.size(); ++f) {
    const std::string fptr = "/families/" + std::to_string(f);
    Family fam{group(as_string(require(fams[f], "gamma", file, fptr), file, fptr + "/gamma"), file.parent_path()), {}};
    const json& members = require(fams[f], "members", file, fptr);
    if (!members.is_object()) schema_error(file, fptr + "/members", "expected an object");
    for (const auto& [key, value] : members.items()) {
      const std::string mptr = fptr + "/members/" + escape_pointer(key);
      int irr = -1;
      try {
        irr = std::stoi(key);
      } catch (const std::exception&) {
        schema_error(file, mptr, "member keys must be irreducible indices of W_H");
      }
      if (!value.is_array() || value.size() < 2 || value.size() > 3) {
        schema_error(file, mptr, "expected [class, character] or [class, character, sign]");
      }
      auto text = [&](const json& v, const std::string& ptr) {
        return v.is_number_integer() ? std::to_string(v.get<int>()) : as_string(v, file, ptr);
      };
      const auto y = fam.gamma.find_class(text(value[0], mptr + "/0"));
      if (!y) schema_error(file, mptr + "/0", "unknown class");
      const auto r = fam.gamma.find_character(*y, text(value[1], mptr + "/1"));
      if (!r) schema_error(file, mptr + "/1", "unknown centralizer character");
      FamilyMember member{{*y, *r}, 1};
      if (value.size() == 3) member.sign = as_int(value[2], file, mptr + "/2");
      fam.members.emplace(irr, member);
    }
    fd.families.push_back(std::move(fam));
  }
  try {
    validate_family_data(fd);
  } catch (const DataError& e) {
    schema_error(file, "/families", e.what());
  }
  return fd;
}

SphericalAssignment Loader::assignment(const std::string& path, const std::string& gamma_override) const {
  const fs::path file = resolve(path);
  const json doc = read_json(file);
  SphericalAssignment sa{gamma_override.empty()
                             ? group(as_string(require(doc, "gamma", file, ""), file, "/gamma"), file.parent_path())
                             : group(gamma_override),
                         {},
                         {}};
  const json& mprime = require(doc, "mprime", file, "");
  if (!mprime.is_array()) schema_error(file, "/mprime", "expected an array of {pair, rep}");
  for (std::size_t k = 0; k < mprime.size(); ++k) {
    const std::string ptr = "/mprime/" + std::to_string(k);
    const std::string pair_text = as_string(require(mprime[k], "pair", file, ptr), file, ptr + "/pair");
    const auto pair = sa.gamma.parse_pair(pair_text);
    if (!pair) schema_error(file, ptr + "/pair", "'" + pair_text + "' is not a pair of M(Gamma)");
    sa.mprime.push_back(*pair);
    sa.reps.emplace(*pair, rep(as_string(require(mprime[k], "rep", file, ptr), file, ptr + "/rep"), file.parent_path()));
  }
  try {
    validate_assignment(sa);
  } catch (const DataError& e) {
    schema_error(file, "/mprime", e.what());
  }
  return sa;
}

G2Expected Loader::expected(const std::string& path, std::string* gamma_path) const {
  const fs::path file = resolve(path);
  const json doc = read_json(file);
  G2Expected e;
  const json& cols = require(doc, "columns", file, "");
  if (!cols.is_array()) schema_error(file, "/columns", "expected an array");
  for (std::size_t k = 0; k < cols.size(); ++k) e.columns.push_back(as_string(cols[k], file, "/columns/" + std::to_string(k)));
  const json& rows = require(doc, "rows", file, "");
  if (!rows.is_array()) schema_error(file, "/rows", "expected an array");
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::string ptr = "/rows/" + std::to_string(k);
    e.labels.push_back(as_string(require(rows[k], "label", file, ptr), file, ptr + "/label"));
    const json& coeffs = require(rows[k], "coefficients", file, ptr);
    if (!coeffs.is_array() || coeffs.size() != e.columns.size()) {
      schema_error(file, ptr + "/coefficients", "expected one coefficient per column");
    }
    std::vector<Rational> row;
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
      const std::string cptr = ptr + "/coefficients/" + std::to_string(c);
      const auto q = as_scalar(coeffs[c], file, cptr).as_rational();
      if (!q) schema_error(file, cptr, "coefficient must be rational");
      row.push_back(*q);
    }
    e.rows.push_back(std::move(row));
  }
  if (doc.contains("swappable")) {
    const json& s = doc["swappable"];
    if (!s.is_array() || s.size() != 2) schema_error(file, "/swappable", "expected two labels");
    e.swappable = {as_string(s[0], file, "/swappable/0"), as_string(s[1], file, "/swappable/1")};
  }
  if (gamma_path != nullptr) {
    *gamma_path = resolve(as_string(require(doc, "gamma", file, ""), file, "/gamma"), file.parent_path()).string();
  }
  return e;
}

DataObject load_data_file(const Loader& loader, const std::string& path, DataKind kind) {
  switch (kind) {
    case DataKind::datum: return loader.datum(path);
    case DataKind::group: return loader.group(path);
    case DataKind::rep: return loader.rep(path);
    case DataKind::family: return loader.family(path);
    case DataKind::assignment: return loader.assignment(path);
  }
  throw DataError("unknown data kind");
}

}  // namespace weylchar::cli
