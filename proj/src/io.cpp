#include "mwb/io.hpp"

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace mwb {

namespace {

std::string where(const std::string& path) { return path.empty() ? "(root)" : path; }

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ValidationError(where(path) + ": " + message);
}

std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string item(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void expect_keys(const Json& j, const std::string& path, std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) fail(path, "expected an object");
  std::set<std::string> known;
  for (const char* k : required) {
    known.insert(k);
    if (!j.contains(k)) fail(path, std::string("missing key \"") + k + "\"");
  }
  for (const char* k : optional) known.insert(k);
  for (const auto& [k, v] : j.items()) {
    if (!known.contains(k)) fail(path, "unknown key \"" + k + "\"");
  }
}

void expect_kind(const Json& j, std::initializer_list<const char*> kinds) {
  const Json& k = j.at("kind");
  if (k.is_string()) {
    for (const char* want : kinds)
      if (k.get<std::string>() == want) return;
  }
  std::string list;
  for (const char* want : kinds) list += std::string(list.empty() ? "" : " or ") + "\"" + want + "\"";
  fail("kind", "expected " + list);
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

std::size_t index(const Json& j, const std::string& path, std::size_t bound) {
  const long v = integer(j, path);
  if (v < 0 || static_cast<std::size_t>(v) >= bound) {
    fail(path, "index " + std::to_string(v) + " out of range [0, " + std::to_string(bound) + ")");
  }
  return static_cast<std::size_t>(v);
}

std::string string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Rational rational(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a rational as a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

std::size_t generator(const GradedSpace& space, const Json& j, const std::string& path) {
  const std::string name = string(j, path);
  const auto i = space.index_of(name);
  if (!i) fail(path, "unknown generator \"" + name + "\"");
  return *i;
}

SparseVector coefficients(const GradedSpace& space, const Json& j, const std::string& path) {
  SparseVector out;
  array(j, path);
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string p = item(path, t);
    const Json& term = j[t];
    if (!term.is_array() || term.size() != 2) fail(p, "expected [name, \"p/q\"]");
    const std::size_t i = generator(space, term[0], item(p, 0));
    const Rational c = rational(term[1], item(p, 1));
    if (is_zero(c)) fail(item(p, 1), "zero coefficient");
    if (!out.emplace(i, c).second) fail(p, "repeated generator \"" + space[i].name + "\"");
  }
  return out;
}

Json coefficients_json(const GradedSpace& space, const SparseVector& v) {
  Json out = Json::array();
  for (const auto& [i, c] : v) out.push_back(Json::array({space[i].name, to_string(c)}));
  return out;
}

/// Sparse square matrix from [[i, j, "p/q"], ...].
SparseMatrix entries(const Json& j, const std::string& path, std::size_t n) {
  SparseMatrix m(n, n);
  array(j, path);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string p = item(path, t);
    const Json& e = j[t];
    if (!e.is_array() || e.size() != 3) fail(p, "expected [i, j, \"p/q\"]");
    const std::size_t r = index(e[0], item(p, 0), n);
    const std::size_t c = index(e[1], item(p, 1), n);
    const Rational v = rational(e[2], item(p, 2));
    if (is_zero(v)) fail(item(p, 2), "zero entry");
    if (!seen.emplace(r, c).second) fail(p, "repeated entry");
    m.set(r, c, v);
  }
  return m;
}

Json entries_json(const SparseMatrix& m) {
  std::map<std::pair<std::size_t, std::size_t>, Rational> sorted;
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.column(c)) sorted[{r, c}] = v;
  Json out = Json::array();
  for (const auto& [rc, v] : sorted) out.push_back(Json::array({rc.first, rc.second, to_string(v)}));
  return out;
}

struct DegreeRun {
  int degree;
  std::size_t multiplicity;
};

std::vector<DegreeRun> degree_runs(const Json& j, const std::string& path) {
  std::vector<DegreeRun> out;
  array(j, path);
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string p = item(path, t);
    expect_keys(j[t], p, {"degree", "multiplicity"});
    const long d = integer(j[t]["degree"], child(p, "degree"));
    const long m = integer(j[t]["multiplicity"], child(p, "multiplicity"));
    if (m < 1) fail(child(p, "multiplicity"), "multiplicity must be positive");
    out.push_back({static_cast<int>(d), static_cast<std::size_t>(m)});
  }
  return out;
}

Json degree_runs_json(const GradedSpace& space) {
  Json out = Json::array();
  for (std::size_t i = 0; i < space.size();) {
    std::size_t k = i;
    while (k < space.size() && space[k].degree == space[i].degree) ++k;
    out.push_back({{"degree", space[i].degree}, {"multiplicity", k - i}});
    i = k;
  }
  return out;
}

}  // namespace

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

InputFile load_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  InputFile out{path, buffer.str(), {}};
  try {
    out.json = Json::parse(out.bytes);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path + ": malformed JSON at byte " + std::to_string(e.byte));
  }
  return out;
}

AssociativeAlgebra parse_algebra(const Json& j) {
  expect_keys(j, "", {"kind", "basis", "unit", "products"});
  expect_kind(j, {"associative-algebra"});
  std::vector<std::string> names;
  const Json& basis = array(j["basis"], "basis");
  for (std::size_t i = 0; i < basis.size(); ++i) names.push_back(string(basis[i], item("basis", i)));
  const std::size_t n = names.size();
  const Json& unit = array(j["unit"], "unit");
  if (unit.size() != n) fail("unit", "expected " + std::to_string(n) + " coordinates");
  SparseVector u;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational c = rational(unit[i], item("unit", i));
    if (!is_zero(c)) u[i] = c;
  }
  std::vector<AssociativeAlgebra::Constant> constants;
  const Json& products = array(j["products"], "products");
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  for (std::size_t t = 0; t < products.size(); ++t) {
    const std::string p = item("products", t);
    const Json& e = products[t];
    if (!e.is_array() || e.size() != 4) fail(p, "expected [i, j, k, \"p/q\"]");
    const std::size_t a = index(e[0], item(p, 0), n);
    const std::size_t b = index(e[1], item(p, 1), n);
    const std::size_t c = index(e[2], item(p, 2), n);
    const Rational v = rational(e[3], item(p, 3));
    if (is_zero(v)) fail(item(p, 3), "zero structure constant");
    if (!seen.emplace(a, b, c).second) fail(p, "repeated structure constant");
    constants.push_back({a, b, c, v});
  }
  return AssociativeAlgebra(std::move(names), std::move(u), constants);
}

Json to_json(const AssociativeAlgebra& a) {
  Json unit = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    auto it = a.unit().find(i);
    unit.push_back(it == a.unit().end() ? std::string("0") : to_string(it->second));
  }
  Json products = Json::array();
  for (const auto& c : a.constants()) products.push_back(Json::array({c.i, c.j, c.k, to_string(c.value)}));
  Json out;
  out["kind"] = "associative-algebra";
  out["basis"] = a.names();
  out["unit"] = unit;
  out["products"] = products;
  return out;
}

LInftyFile parse_linfty(const Json& j) {
  expect_keys(j, "", {"kind", "generators"}, {"differential", "brackets"});
  expect_kind(j, {"linfty", "dgla"});
  std::vector<Generator> gens;
  const Json& g = array(j["generators"], "generators");
  for (std::size_t t = 0; t < g.size(); ++t) {
    const std::string p = item("generators", t);
    expect_keys(g[t], p, {"name", "degree"});
    gens.push_back({string(g[t]["name"], child(p, "name")), static_cast<int>(integer(g[t]["degree"], child(p, "degree")))});
  }
  GradedSpace space(std::move(gens));
  std::map<std::size_t, SparseVector> d;
  if (j.contains("differential")) {
    const Json& dj = array(j["differential"], "differential");
    for (std::size_t t = 0; t < dj.size(); ++t) {
      const std::string p = item("differential", t);
      expect_keys(dj[t], p, {"input", "value"});
      const std::size_t i = generator(space, dj[t]["input"], child(p, "input"));
      if (d.contains(i)) fail(child(p, "input"), "differential given twice on \"" + space[i].name + "\"");
      d[i] = coefficients(space, dj[t]["value"], child(p, "value"));
    }
  }
  std::vector<BracketEntry> brackets;
  if (j.contains("brackets")) {
    const Json& bj = array(j["brackets"], "brackets");
    for (std::size_t t = 0; t < bj.size(); ++t) {
      const std::string p = item("brackets", t);
      expect_keys(bj[t], p, {"inputs", "value"});
      const Json& in = array(bj[t]["inputs"], child(p, "inputs"));
      BracketEntry e;
      for (std::size_t k = 0; k < in.size(); ++k) e.inputs.push_back(generator(space, in[k], item(child(p, "inputs"), k)));
      if (e.inputs.size() < 2) fail(child(p, "inputs"), "a bracket needs at least two inputs");
      e.value = coefficients(space, bj[t]["value"], child(p, "value"));
      brackets.push_back(std::move(e));
    }
  }
  LInftyFile out;
  out.kind = j["kind"].get<std::string>();
  out.structure = out.kind == "dgla" ? LInftyStructure::from_dgla(space, d, brackets)
                                     : LInftyStructure(space, d, brackets);
  return out;
}

Json to_json(const LInftyFile& file) {
  const auto& g = file.structure;
  const auto& space = g.space();
  Json gens = Json::array();
  for (const auto& x : space.generators()) gens.push_back({{"name", x.name}, {"degree", x.degree}});
  Json d = Json::array();
  for (const auto& [i, v] : g.differential()) {
    d.push_back({{"input", space[i].name}, {"value", coefficients_json(space, v)}});
  }
  Json b = Json::array();
  for (const auto& [arity, table] : g.brackets()) {
    for (const auto& [inputs, v] : table) {
      Json names = Json::array();
      for (auto i : inputs) names.push_back(space[i].name);
      b.push_back({{"inputs", names}, {"value", coefficients_json(space, v)}});
    }
  }
  Json out;
  out["kind"] = file.kind;
  out["generators"] = gens;
  out["differential"] = d;
  out["brackets"] = b;
  return out;
}

PairedSpace parse_paired_space(const Json& j) {
  expect_keys(j, "", {"kind", "generators", "pairing_degree", "pairing"});
  expect_kind(j, {"paired-space"});
  std::vector<Generator> gens;
  for (const auto& run : degree_runs(j["generators"], "generators")) {
    for (std::size_t k = 0; k < run.multiplicity; ++k) gens.push_back({"v" + std::to_string(gens.size() + 1), run.degree});
  }
  const int degree = static_cast<int>(integer(j["pairing_degree"], "pairing_degree"));
  SparseMatrix q = entries(j["pairing"], "pairing", gens.size());
  return PairedSpace(GradedSpace(std::move(gens)), std::move(q), degree);
}

Json to_json(const PairedSpace& space) {
  Json out;
  out["kind"] = "paired-space";
  out["generators"] = degree_runs_json(space.space());
  out["pairing_degree"] = space.degree();
  out["pairing"] = entries_json(space.pairing());
  return out;
}

ManifoldFile parse_manifold(const Json& j) {
  expect_keys(j, "", {"kind", "n", "homology", "pairing"}, {"parallelizable"});
  expect_kind(j, {"manifold"});
  const long n = integer(j["n"], "n");
  bool parallelizable = true;
  if (j.contains("parallelizable")) {
    if (!j["parallelizable"].is_boolean()) fail("parallelizable", "expected true or false");
    parallelizable = j["parallelizable"].get<bool>();
  }
  std::vector<Generator> gens;
  std::set<int> degrees;
  const auto runs = degree_runs(j["homology"], "homology");
  for (std::size_t t = 0; t < runs.size(); ++t) {
    const auto& run = runs[t];
    if (!degrees.insert(run.degree).second) fail(item("homology", t), "degree listed twice");
    for (std::size_t k = 0; k < run.multiplicity; ++k) {
      std::string name = "h" + std::to_string(-run.degree);
      if (run.multiplicity > 1) name += "_" + std::to_string(k + 1);
      gens.push_back({name, run.degree});
    }
  }
  SparseMatrix p = entries(j["pairing"], "pairing", gens.size());
  return {ManifoldData(static_cast<int>(n), GradedSpace(std::move(gens)), std::move(p)), parallelizable};
}

Json to_json(const ManifoldFile& file) {
  const auto& h = file.manifold.homology();
  Json out;
  out["kind"] = "manifold";
  out["n"] = file.manifold.n();
  out["parallelizable"] = file.parallelizable;
  out["homology"] = degree_runs_json(h.space());
  out["pairing"] = entries_json(h.pairing());
  return out;
}

std::string RunReport::to_text() const {
  std::ostringstream out;
  out << "command: " << command << "\n";
  for (const auto& [path, digest] : inputs) out << "input: " << path << " sha256=" << digest << "\n";
  out << "status: " << status << "\n";
  if (!conventions.empty()) {
    out << "conventions:\n";
    for (const auto& [k, v] : conventions) out << "  " << k << ": " << v << "\n";
  }
  if (!results.empty()) {
    out << "results:\n";
    for (const auto& [k, v] : results) out << "  " << k << ": " << v << "\n";
  }
  for (const auto& t : tables) {
    out << "table " << t.title << ":\n";
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
    for (const auto& row : t.rows)
      for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
    auto line = [&](const std::vector<std::string>& cells) {
      std::string text = " ";
      for (std::size_t c = 0; c < cells.size(); ++c) {
        text += " " + cells[c];
        if (c + 1 < cells.size()) text += std::string(width[c] - cells[c].size(), ' ');
      }
      text.erase(text.find_last_not_of(' ') + 1);
      out << text << "\n";
    };
    line(t.columns);
    for (const auto& row : t.rows) line(row);
  }
  for (const auto& n : notes) out << "note: " << n << "\n";
  if (wall_ms) out << "wall time: " << std::fixed << std::setprecision(1) << *wall_ms << " ms\n";
  return out.str();
}

Json RunReport::to_json() const {
  Json out;
  out["command"] = command;
  Json in = Json::array();
  for (const auto& [path, digest] : inputs) in.push_back({{"path", path}, {"sha256", digest}});
  out["inputs"] = in;
  out["status"] = status;
  Json conv = Json::object();
  for (const auto& [k, v] : conventions) conv[k] = v;
  out["conventions"] = conv;
  Json res = Json::object();
  for (const auto& [k, v] : results) res[k] = v;
  out["results"] = res;
  Json tabs = Json::array();
  for (const auto& t : tables) tabs.push_back({{"title", t.title}, {"columns", t.columns}, {"rows", t.rows}});
  out["tables"] = tabs;
  out["notes"] = notes;
  if (wall_ms) out["wall_ms"] = *wall_ms;
  return out;
}

}  // namespace mwb
