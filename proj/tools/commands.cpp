#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "cli.hpp"
#include "json.hpp"
#include "weylchar/error.hpp"
#include "weylchar/torus_classes.hpp"

#ifndef WEYLCHAR_DEFAULT_DATA_DIR
#define WEYLCHAR_DEFAULT_DATA_DIR "data"
#endif

namespace weylchar::cli {

namespace {

using ojson = nlohmann::ordered_json;

/// Fixed-width ASCII table; columns separated by two spaces.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : rows_{std::move(header)} {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render() const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (width.size() <= c) width.push_back(0);
        width[c] = std::max(width[c], r[c].size());
      }
    std::string out;
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t c = 0; c < r.size(); ++c) {
        line += r[c];
        if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
      }
      out += line + "\n";
    }
    return out;
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

struct Output {
  ojson json;
  std::string table;
};

struct Globals {
  std::string format = "table";
  std::string output;
  int search_length = 12;
  std::string data_dir = WEYLCHAR_DEFAULT_DATA_DIR;
};

std::string polynomial_string(const std::vector<long>& coeffs) {
  std::string out;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const long c = coeffs[k];
    if (c == 0) continue;
    std::string term;
    const long a = c < 0 ? -c : c;
    if (k == 0 || a != 1) term += std::to_string(a);
    if (k >= 1) term += "x";
    if (k >= 2) term += "^" + std::to_string(k);
    if (out.empty()) out = (c < 0 ? "-" : "") + term;
    else out += (c < 0 ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

std::string action_string(const std::vector<int>& action) {
  std::string s;
  for (std::size_t i = 0; i < action.size(); ++i) s += (i ? " " : "") + std::to_string(action[i]);
  return s;
}

ojson nodes_json(const NodeSet& s) { return s.elements(); }

// datum show -----------------------------------------------------------------

Output datum_show(const Loader& loader, const std::string& name) {
  const AffineDatum d = loader.datum(name);
  Output out;
  const auto omegas = d.omega_group();
  ojson j;
  j["name"] = d.name();
  if (d.type_label().empty()) j["type"] = {{"cartan", d.finite_cartan()}};
  else j["type"] = d.type_label();
  j["affine"] = true;
  j["lattice"] = d.lattice() == TranslationLattice::coweight ? "coweight" : "coroot";
  j["nodes"] = nodes_json(d.all_nodes());
  j["finite_cartan"] = d.finite_cartan();
  j["affine_cartan"] = d.affine_cartan();
  ojson bonds = ojson::array();
  std::ostringstream t;
  t << "datum " << d.name() << " (type " << (d.type_label().empty() ? "custom" : d.type_label()) << ", lattice "
    << j["lattice"].get<std::string>() << ")\n";
  t << "nodes " << d.all_nodes().to_string() << "\n";
  t << "bonds\n";
  for (int a = 0; a < d.node_count(); ++a)
    for (int b = a + 1; b < d.node_count(); ++b) {
      const int m = d.bond(a, b);
      bonds.push_back({{"i", a}, {"j", b}, {"m", m == 0 ? ojson("inf") : ojson(m)}});
      t << "  m(" << a << "," << b << ")=" << (m == 0 ? std::string("inf") : std::to_string(m)) << "\n";
    }
  j["bonds"] = bonds;
  j["omega_order"] = omegas.size();
  ojson actions = ojson::array();
  t << "|Omega| = " << omegas.size() << "\n";
  t << "Omega action on nodes\n";
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    const auto action = d.omega_action_on_nodes(omegas[k]);
    actions.push_back(action);
    t << "  omega" << k << ": " << action_string(action) << "\n";
  }
  j["omega_action"] = actions;
  out.json = j;
  out.table = t.str();
  return out;
}

// classes --------------------------------------------------------------------

Output classes_cmd(const Loader& loader, const std::string& datum_name, int search_length) {
  const AffineDatum d = loader.datum(datum_name);
  const auto classes = enumerate_finite_order_classes(d, search_length);
  Output out;
  ojson list = ojson::array();
  Table table({"#", "order", "anchor H", "anchor word", "char poly", "min word", "anchors", "verdict"});
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto& c = classes[k];
    ojson anchors = ojson::array();
    for (const auto& a : c.anchors) {
      anchors.push_back({{"H", a.nodes.to_string()}, {"word", word_to_string(d.reduced_word(a.element).word)}});
    }
    std::string verdict = "distinct-by-invariants";
    if (!c.unresolved_with.empty()) {
      verdict = "not-found-within-bound vs";
      for (auto other : c.unresolved_with) verdict += " #" + std::to_string(other);
    }
    list.push_back({{"index", k},
                    {"order", c.order},
                    {"anchor_H", c.anchor_nodes.to_string()},
                    {"anchor_word", word_to_string(d.reduced_word(c.anchor).word)},
                    {"invariant", c.linear_class_invariant},
                    {"min_rep_word", word_to_string(c.min_rep_word)},
                    {"elliptic", is_elliptic(d, c.anchor, c.anchor_nodes)},
                    {"anchors", anchors},
                    {"verdict", {{"distinct_by_invariants", c.unresolved_with.empty()},
                                 {"not_found_within_bound", c.unresolved_with}}}});
    table.add({std::to_string(k), std::to_string(c.order), c.anchor_nodes.to_string(),
               word_to_string(d.reduced_word(c.anchor).word), polynomial_string(c.linear_class_invariant),
               word_to_string(c.min_rep_word), std::to_string(c.anchors.size()), verdict});
  }
  out.json = {{"datum", d.name()}, {"search_length", search_length}, {"classes", list}};
  out.table = "finite-order classes of " + d.name() + " (search length " + std::to_string(search_length) + ")\n" +
              table.render();
  return out;
}

// chartable ------------------------------------------------------------------

Output chartable_output(const FiniteGroup& g, const CharacterTable& t, const std::string& title) {
  Output out;
  std::vector<std::string> header{"class"};
  std::vector<std::string> sizes{"size"};
  std::vector<std::string> orders{"order"};
  ojson classes = ojson::array();
  for (const auto& c : t.classes) {
    header.push_back(g.label(c.representative));
    sizes.push_back(std::to_string(c.size));
    orders.push_back(std::to_string(c.element_order));
    classes.push_back({{"representative", g.label(c.representative)}, {"size", c.size}, {"order", c.element_order}});
  }
  Table table(header);
  table.add(sizes);
  table.add(orders);
  ojson rows = ojson::array();
  for (std::size_t r = 0; r < t.irreducibles.size(); ++r) {
    std::vector<std::string> row{"chi" + std::to_string(r)};
    ojson jrow = ojson::array();
    for (const auto& v : t.irreducibles[r]) {
      row.push_back(v.to_string());
      jrow.push_back(v.to_string());
    }
    table.add(row);
    rows.push_back(jrow);
  }
  ojson power = ojson::object();
  for (const auto& [p, map] : t.power_map) power[std::to_string(p)] = map;
  out.json = {{"group", title}, {"order", t.group_order}, {"classes", classes}, {"irreducibles", rows},
              {"power_maps", power}};
  out.table = title + ": order " + std::to_string(t.group_order) + ", " + std::to_string(t.classes.size()) +
              " classes\n" + table.render();
  return out;
}

// fourier --------------------------------------------------------------------

Output fourier_cmd(const Loader& loader, const std::string& group_path) {
  const MSet m = loader.group(group_path);
  const auto f = fourier_matrix(m);
  Output out;
  std::vector<std::string> header{""};
  ojson pairs = ojson::array();
  for (const auto& p : m.pairs()) {
    header.push_back(m.pair_name(p));
    pairs.push_back({{"name", m.pair_name(p)}, {"class", p.y}, {"character", p.r}});
  }
  Table table(header);
  ojson matrix = ojson::array();
  for (std::size_t a = 0; a < m.size(); ++a) {
    std::vector<std::string> row{m.pair_name(m.pairs()[a])};
    ojson jrow = ojson::array();
    for (std::size_t b = 0; b < m.size(); ++b) {
      row.push_back(f(a, b).to_string());
      jrow.push_back(f(a, b).to_string());
    }
    table.add(row);
    matrix.push_back(jrow);
  }
  out.json = {{"group", group_path}, {"pairs", pairs}, {"matrix", matrix}};
  out.table = "Fourier matrix on M(Gamma), " + std::to_string(m.size()) + " pairs\n" + table.render();
  return out;
}

// tau / phi ------------------------------------------------------------------

Output class_values(const AffineDatum& d, const std::vector<FiniteOrderClass>& classes,
                    const std::vector<Cyclotomic>& values, const std::string& title, ojson head) {
  Output out;
  Table table({"#", "order", "anchor H", "min word", "value"});
  ojson list = ojson::array();
  for (std::size_t k = 0; k < classes.size(); ++k) {
    table.add({std::to_string(k), std::to_string(classes[k].order), classes[k].anchor_nodes.to_string(),
               word_to_string(classes[k].min_rep_word), values[k].to_string()});
    list.push_back({{"index", k},
                    {"order", classes[k].order},
                    {"anchor_H", classes[k].anchor_nodes.to_string()},
                    {"min_rep_word", word_to_string(classes[k].min_rep_word)},
                    {"value", values[k].to_string()}});
  }
  head["datum"] = d.name();
  head["values"] = list;
  out.json = head;
  out.table = title + "\n" + table.render();
  return out;
}

Output tau_cmd(const Loader& loader, const std::string& datum_name, const std::string& rep_path, int search_length) {
  const RepData rep = loader.rep(rep_path);
  if (!datum_name.empty() && loader.datum(datum_name).id() != rep.datum.id()) {
    throw DataError("representation is for datum '" + rep.datum.name() + "', not '" + datum_name + "'");
  }
  const auto classes = enumerate_finite_order_classes(rep.datum, search_length);
  const auto v = tau_vector(rep, classes);
  return class_values(rep.datum, classes, v.values,
                      "tau of " + rep_path + " (dimension " + std::to_string(rep.dimension) + ")",
                      {{"rep", rep_path}, {"dimension", rep.dimension}, {"search_length", search_length}});
}

Output phi_cmd(const Loader& loader, const std::string& assignment_path, const std::string& gamma_path,
               const std::string& pair_text, int search_length) {
  const SphericalAssignment sa = loader.assignment(assignment_path, gamma_path);
  const auto v = sa.gamma.parse_pair(pair_text);
  if (!v) throw UsageError("'" + pair_text + "' is not a pair of M(Gamma)");
  const AffineDatum d = sa.reps.begin()->second.datum;
  const auto classes = enumerate_finite_order_classes(d, search_length);
  const auto phi = phi_fourier(sa, *v, classes);
  const auto coeffs = phi_coefficients(sa, *v);
  ojson terms = ojson::array();
  std::string formula;
  for (std::size_t k = 0; k < sa.mprime.size(); ++k) {
    terms.push_back({{"pair", sa.gamma.pair_name(sa.mprime[k])}, {"coefficient", coeffs[k].to_string()}});
    formula += (k ? " + " : "") + std::string("(") + coeffs[k].to_string() + ")*tau" + sa.gamma.pair_name(sa.mprime[k]);
  }
  return class_values(d, classes, phi.values, "phi" + sa.gamma.pair_name(*v) + " = " + formula,
                      {{"v", sa.gamma.pair_name(*v)}, {"terms", terms}, {"search_length", search_length}});
}

// vanishing ------------------------------------------------------------------

Output vanishing_cmd(const Loader& loader, const std::string& datum_name, const std::string& j_text,
                     const std::string& h_text) {
  const AffineDatum d = loader.datum(datum_name);
  const NodeSet j = NodeSet::parse(j_text);
  const NodeSet h = NodeSet::parse(h_text);
  const auto result = vanishing_test(d, j, h);
  Output out;
  ojson witnesses = ojson::array();
  std::ostringstream t;
  t << "J = " << j.to_string() << ", H = " << h.to_string() << " in " << d.name() << "\n";
  t << "vanishes: " << (result.vanishes ? "yes" : "no") << "\n";
  Table table({"omega", "node action", "omega(H)", "omega^-1(H)"});
  for (const auto& w : result.witnesses) {
    witnesses.push_back({{"omega", w.omega_index},
                         {"node_action", w.node_action},
                         {"omega_H", w.image.to_string()},
                         {"omega_inverse_H", w.preimage.to_string()}});
    table.add({"omega" + std::to_string(w.omega_index), action_string(w.node_action), w.image.to_string(),
               w.preimage.to_string()});
  }
  if (!result.witnesses.empty()) t << "witnesses\n" << table.render();
  out.json = {{"datum", d.name()}, {"J", j.to_string()}, {"H", h.to_string()}, {"vanishes", result.vanishes},
              {"witnesses", witnesses}};
  out.table = t.str();
  return out;
}

// multiplicity ---------------------------------------------------------------

Output multiplicity_cmd(const Loader& loader, const std::string& family_path, const std::string& word_text,
                        const std::string& irr_text) {
  const FamilyData fd = loader.family(family_path);
  const WeylElement w = fd.weyl.datum.from_word(parse_word(word_text));
  std::vector<int> irrs;
  if (irr_text.empty()) {
    for (const auto& fam : fd.families)
      for (const auto& [irr, member] : fam.members) irrs.push_back(irr);
    std::sort(irrs.begin(), irrs.end());
  } else {
    std::stringstream ss(irr_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        irrs.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw UsageError("--irr expects comma-separated irreducible indices");
      }
    }
  }
  Output out;
  Table table({"E", "pair", "(E:R_w)", "via matrix"});
  ojson rows = ojson::array();
  for (int irr : irrs) {
    const Cyclotomic direct = multiplicity_in_RW(irr, w, fd);
    const Cyclotomic by_matrix = multiplicity_by_matrix(irr, w, fd);
    if (!(direct == by_matrix)) {
      throw MathError("evaluation orders disagree for irreducible " + std::to_string(irr) + ": " + direct.to_string() +
                      " vs " + by_matrix.to_string());
    }
    const auto& fam = fd.families[*fd.family_of(irr)];
    const std::string pair = fam.gamma.pair_name(fam.members.at(irr).pair);
    table.add({std::to_string(irr), pair, direct.to_string(), by_matrix.to_string()});
    rows.push_back({{"irr", irr}, {"pair", pair}, {"multiplicity", direct.to_string()}});
  }
  const Cyclotomic total = phi_multiplicity(irrs, w, fd);
  const std::string word = word_to_string(fd.weyl.datum.reduced_word(w).word);
  out.json = {{"weyl", fd.weyl.datum.name() + "#" + fd.weyl.nodes.to_string()},
              {"w", word},
              {"multiplicities", rows},
              {"sum", total.to_string()}};
  out.table = "multiplicities in R_w, w = " + word + "\n" + table.render() + "sum over D: " + total.to_string() + "\n";
  return out;
}

// verify-g2 ------------------------------------------------------------------

std::string row_text(const std::vector<Cyclotomic>& row) {
  std::string s;
  for (std::size_t k = 0; k < row.size(); ++k) s += (k ? " " : "") + row[k].to_string();
  return s;
}

Output verify_g2_cmd(const Loader& loader, const std::string& expected_path, const std::string& group_override,
                     const std::vector<std::string>& rep_specs, int search_length, bool* ok) {
  std::string gamma_path;
  const G2Expected expected = loader.expected(expected_path, &gamma_path);
  if (!group_override.empty()) gamma_path = group_override;
  const MSet m = loader.group(gamma_path);

  std::map<std::string, RepData> reps;
  for (const auto& spec : rep_specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw UsageError("--rep expects COLUMN=FILE, got '" + spec + "'");
    reps.emplace(spec.substr(0, eq), loader.rep(spec.substr(eq + 1)));
  }
  std::vector<FiniteOrderClass> classes;
  if (!reps.empty()) classes = enumerate_finite_order_classes(reps.begin()->second.datum, search_length);
  const G2Report r = verify_g2(m, expected, reps.empty() ? nullptr : &reps, reps.empty() ? nullptr : &classes);
  *ok = r.ok();

  Output out;
  std::ostringstream t;
  ojson j;
  j["gamma"] = std::filesystem::path(gamma_path).filename().string();
  ojson pairs = ojson::array();
  for (const auto& p : m.pairs()) pairs.push_back(m.pair_name(p));
  j["pairs"] = pairs;
  ojson matrix = ojson::array();
  for (std::size_t a = 0; a < m.size(); ++a) {
    ojson row = ojson::array();
    for (std::size_t b = 0; b < m.size(); ++b) row.push_back(r.fourier(a, b).to_string());
    matrix.push_back(row);
  }
  j["fourier_matrix"] = matrix;
  t << "M(Gamma): " << m.size() << " pairs, Fourier matrix from the defining sum\n";

  if (r.chosen) {
    ojson mprime = ojson::array();
    std::string columns;
    for (std::size_t c = 0; c < expected.columns.size(); ++c) {
      mprime.push_back({{"column", expected.columns[c]}, {"pair", m.pair_name(r.chosen->mprime[c])}});
      columns += (c ? ", " : "") + expected.columns[c] + " = " + m.pair_name(r.chosen->mprime[c]);
    }
    j["mprime"] = mprime;
    t << "M': " << columns << "\n";
    Table table({"label", "pair", "coefficients", "expected", "match"});
    ojson rows = ojson::array();
    for (std::size_t l = 0; l < expected.labels.size(); ++l) {
      const MPair v = r.chosen->assignment[l];
      const std::size_t vi = *m.index_of(v);
      std::vector<Cyclotomic> got;
      std::vector<Cyclotomic> want;
      for (std::size_t c = 0; c < expected.columns.size(); ++c) {
        got.push_back(r.fourier(vi, *m.index_of(r.chosen->mprime[c])));
        want.emplace_back(expected.rows[l][c]);
      }
      const bool match = got == want;
      table.add({expected.labels[l], m.pair_name(v), row_text(got), row_text(want), match ? "yes" : "NO"});
      ojson g = ojson::array();
      for (const auto& x : got) g.push_back(x.to_string());
      rows.push_back({{"label", expected.labels[l]}, {"pair", m.pair_name(v)}, {"coefficients", g}, {"match", match}});
    }
    j["rows"] = rows;
    t << table.render();
  } else {
    t << "no assignment reproduces the expected table\n";
    for (const auto& line : r.diff) t << "  " << line << "\n";
    j["diff"] = r.diff;
  }
  const std::string swap = expected.swappable.first + "/" + expected.swappable.second;
  j["solutions"] = r.solutions.size();
  j["mprime_choices"] = r.mprime_choices;
  j["unique_up_to_swap_per_mprime"] = r.unique_up_to_swap;
  j["swappable_rows_equal"] = r.swappable_rows_equal;
  j["automorphisms"] = r.automorphism_count;
  j["single_orbit"] = r.single_orbit;
  t << "matching (assignment, ordered M') pairs: " << r.solutions.size() << " over " << r.mprime_choices
    << " choices of M'\n";
  t << "unique up to the " << swap << " swap for each M': " << (r.unique_up_to_swap ? "yes" : "no") << "\n";
  t << "phi_" << expected.swappable.first << " = phi_" << expected.swappable.second << ": "
    << (r.swappable_rows_equal ? "yes" : "no") << "\n";
  t << "automorphisms of the Fourier matrix: " << r.automorphism_count
    << "; all matches in one orbit (with the swap): " << (r.single_orbit ? "yes" : "no") << "\n";
  if (r.integral) {
    j["integral"] = *r.integral;
    j["integrality_failures"] = r.integrality_failures;
    t << "integrality on " << classes.size() << " classes: " << (*r.integral ? "yes" : "no") << "\n";
    for (const auto& f : r.integrality_failures) t << "  " << f << "\n";
  }
  j["status"] = r.ok() ? "ok" : "mismatch";
  t << "status: " << (r.ok() ? "ok" : "mismatch") << "\n";
  out.json = j;
  out.table = t.str();
  return out;
}

}  // namespace

RunReport parse_and_dispatch(int argc, const char* const* argv) {
  RunReport report;
  CLI::App app{"Exact affine Weyl group, character table and Fourier transform computations", "weylchar"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--output", g.output, "Write output to this file");
  app.add_option("--search-length", g.search_length, "Conjugator search bound")->check(CLI::Range(0, 64));
  app.add_option("--data-dir", g.data_dir, "Directory holding the shipped data files");

  auto* datum = app.add_subcommand("datum", "Affine datum queries");
  datum->require_subcommand(1);
  auto* show = datum->add_subcommand("show", "Nodes, bonds and Omega of a datum");
  std::string datum_name;
  show->add_option("datum", datum_name, "Built-in name or datum file")->required();

  auto* classes = app.add_subcommand("classes", "Finite-order classes of W' with elliptic anchors");
  classes->add_option("--datum", datum_name, "Built-in name or datum file")->required();

  auto* chartable = app.add_subcommand("chartable", "Character table of a group file or a parabolic W_H");
  std::string group_path;
  std::string h_text;
  chartable->add_option("--group", group_path, "Group file");
  chartable->add_option("--datum", datum_name, "Datum for W_H");
  chartable->add_option("--H", h_text, "Node subset for W_H");

  auto* fourier = app.add_subcommand("fourier", "Nonabelian Fourier matrix on M(Gamma)");
  fourier->add_option("--group", group_path, "Group file")->required();

  auto* tau = app.add_subcommand("tau", "The class function tau_A on finite-order classes");
  std::string rep_path;
  tau->add_option("--datum", datum_name, "Expected datum of the representation");
  tau->add_option("--rep", rep_path, "Representation file")->required();

  auto* phi = app.add_subcommand("phi", "phi_V from the Fourier matrix and an assignment");
  std::string assignment_path;
  std::string pair_text;
  phi->add_option("--assignment", assignment_path, "Assignment file")->required();
  phi->add_option("--gamma", group_path, "Group file overriding the assignment's");
  phi->add_option("--v", pair_text, "Pair of M(Gamma), e.g. \"(1,eps)\"")->required();

  auto* vanishing = app.add_subcommand("vanishing", "Omega vanishing test for (J, H)");
  std::string j_text;
  vanishing->add_option("--datum", datum_name, "Built-in name or datum file")->required();
  vanishing->add_option("--J", j_text, "Node subset J")->required();
  vanishing->add_option("--H", h_text, "Node subset H")->required();

  auto* multiplicity = app.add_subcommand("multiplicity", "Multiplicities (E : R_w) from family data");
  std::string family_path;
  std::string word_text;
  std::string irr_text;
  multiplicity->add_option("--family", family_path, "Family file")->required();
  multiplicity->add_option("--w", word_text, "Element of W_H as a word, e.g. s1s2")->required();
  multiplicity->add_option("--irr", irr_text, "Comma-separated irreducible indices D (default: all covered)");

  auto* verify = app.add_subcommand("verify-g2", "Verify the G2 subregular coefficient table");
  std::string expected_path = "g2_expected.json";
  std::vector<std::string> rep_specs;
  verify->add_option("--expected", expected_path, "Expected-table file");
  verify->add_option("--group", group_path, "Group file overriding the expected file's");
  verify->add_option("--rep", rep_specs, "COLUMN=FILE representation for the integrality check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    report.payload = app.help();
    return report;
  } catch (const CLI::ParseError& e) {
    report.status = Status::error;
    report.exit_code = 2;
    report.diagnostics.push_back(std::string("usage error: ") + e.what());
    return report;
  }
  report.output_path = g.output;

  try {
    const Loader loader(g.data_dir);
    Output out;
    bool ok = true;
    if (show->parsed()) {
      out = datum_show(loader, datum_name);
    } else if (classes->parsed()) {
      out = classes_cmd(loader, datum_name, g.search_length);
    } else if (chartable->parsed()) {
      if (!group_path.empty() == !h_text.empty()) throw UsageError("chartable needs exactly one of --group or --H");
      if (!group_path.empty()) {
        const MSet m = loader.group(group_path);
        out = chartable_output(m.gamma(), character_table(m.gamma()), group_path);
      } else {
        if (datum_name.empty()) throw UsageError("--H needs --datum");
        const auto t = make_parabolic_table(loader.datum(datum_name), NodeSet::parse(h_text));
        out = chartable_output(t.group, character_table(t.group), datum_name + "#" + t.nodes.to_string());
      }
    } else if (fourier->parsed()) {
      out = fourier_cmd(loader, group_path);
    } else if (tau->parsed()) {
      out = tau_cmd(loader, datum_name, rep_path, g.search_length);
    } else if (phi->parsed()) {
      out = phi_cmd(loader, assignment_path, group_path, pair_text, g.search_length);
    } else if (vanishing->parsed()) {
      out = vanishing_cmd(loader, datum_name, j_text, h_text);
    } else if (multiplicity->parsed()) {
      out = multiplicity_cmd(loader, family_path, word_text, irr_text);
    } else if (verify->parsed()) {
      out = verify_g2_cmd(loader, expected_path, group_path, rep_specs, g.search_length, &ok);
    } else {
      throw UsageError("no subcommand given");
    }
    report.payload = g.format == "json" ? out.json.dump(2) + "\n" : out.table;
    if (!ok) {
      report.status = Status::mismatch;
      report.exit_code = 4;
      report.diagnostics.push_back("verification failed");
    }
  } catch (const UsageError& e) {
    report = {Status::error, 2, "", {std::string("usage error: ") + e.what()}, ""};
  } catch (const DataError& e) {
    report = {Status::error, 3, "", {std::string("data error: ") + e.what()}, ""};
  } catch (const MathError& e) {
    report = {Status::mismatch, 4, "", {std::string("assertion failed: ") + e.what()}, ""};
  } catch (const std::exception& e) {
    report = {Status::error, 3, "", {std::string("error: ") + e.what()}, ""};
  }
  return report;
}

}  // namespace weylchar::cli
