#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "mwb/curvature.hpp"
#include "mwb/hochschild.hpp"
#include "mwb/io.hpp"
#include "mwb/linfty.hpp"
#include "mwb/operad_complex.hpp"
#include "mwb/tree.hpp"

namespace mwb::cli {

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return out.str();
}

namespace {

struct Outcome {
  RunReport report;
  int code = kExitOk;
};

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

const InputFile& load(RunReport& report, std::vector<InputFile>& files, const std::string& path) {
  files.push_back(load_input(path));
  report.inputs.emplace_back(path, sha256_hex(files.back().bytes));
  return files.back();
}

void guard(std::size_t value, std::size_t limit, const std::string& what, const std::string& flag) {
  if (value > limit) {
    throw ValidationError(what + " " + std::to_string(value) + " exceeds the limit " + std::to_string(limit) +
                          " (raise " + flag + ")");
  }
}

LeafSet leaf_set(std::size_t arity, const std::string& leaves) {
  if (!leaves.empty()) {
    std::istringstream in(leaves);
    LeafSet out;
    for (std::string l; in >> l;) out.push_back(l);
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw ValidationError("--leaves repeats a label");
    return out;
  }
  if (arity == 0) throw ValidationError("give --arity or --leaves");
  return numbered_leaves(arity);
}

ReportTable homology_table(const std::string& title, const std::vector<DegreeHomology>& h) {
  ReportTable t{title, {"degree", "space dim", "rank in", "rank out", "dim", "truncated"}, {}};
  for (const auto& d : h) {
    t.rows.push_back({std::to_string(d.degree), std::to_string(d.space_dim), std::to_string(d.rank_in),
                      std::to_string(d.rank_out), std::to_string(d.dim), d.truncation_affected ? "yes" : ""});
  }
  return t;
}

std::pair<std::size_t, std::vector<std::string>> summarize(const std::vector<DegreeHomology>& h) {
  std::size_t total = 0;
  std::vector<std::string> nonzero;
  for (const auto& d : h) {
    if (d.truncation_affected) continue;
    total += d.dim;
    if (d.dim) nonzero.push_back(std::to_string(d.degree));
  }
  return {total, nonzero};
}

std::string render(const SparseVector& v, const std::vector<std::string>& labels) {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& [i, c] : v) out += (out.empty() ? "" : " + ") + ("(" + to_string(c) + ")" + labels.at(i));
  return out;
}

ShiftConvention parse_convention(const std::string& s) {
  if (s == "arity-dimension") return ShiftConvention::kArityTimesDimension;
  if (s == "incidence") return ShiftConvention::kIncidenceStatement;
  throw ValidationError("unknown shift convention \"" + s + "\" (arity-dimension or incidence)");
}

struct Limits {
  std::size_t max_leaves = 7;
  std::size_t max_arity = 7;
  std::size_t max_cutoff = 12;
  std::size_t max_basis = 200000;
  std::size_t max_chain_dim = 1000000;
};

// ---- trees ----

Outcome trees_enumerate(std::size_t arity, const std::string& leaves, std::optional<std::size_t> edges,
                        const Limits& lim) {
  Outcome o;
  const LeafSet l = leaf_set(arity, leaves);
  guard(l.size(), lim.max_leaves, "leaf count", "--max-leaves");
  if (l.size() < 2) throw ValidationError("need at least two leaves");
  o.report.results.emplace_back("leaves", join(l, " "));
  ReportTable t{"trees", {"internal edges", "tree"}, {}};
  std::size_t total = 0;
  for (std::size_t k = 0; k + 2 <= l.size(); ++k) {
    if (edges && *edges != k) continue;
    const auto trees = enumerate_trees(l, k);
    o.report.results.emplace_back("trees with " + std::to_string(k) + " internal edges", std::to_string(trees.size()));
    total += trees.size();
    for (const auto& tr : trees) t.rows.push_back({std::to_string(k), to_string(tr)});
  }
  if (edges && *edges + 2 > l.size()) throw ValidationError("--edges must be at most leaves - 2");
  o.report.results.emplace_back("total", std::to_string(total));
  o.report.tables.push_back(std::move(t));
  return o;
}

Outcome trees_compose(const std::string& upper, const std::string& at, const std::string& lower) {
  Outcome o;
  const Tree u = parse_tree(upper);
  const Tree w = parse_tree(lower);
  const auto c = compose_oriented(u, at, w);
  o.report.conventions.emplace_back("orientation", "edges listed as (upper, lower, grafting edge)");
  o.report.results.emplace_back("composite", to_string(c.tree));
  o.report.results.emplace_back("orientation sign", std::to_string(c.sign));
  o.report.results.emplace_back("internal edges", std::to_string(c.tree.edge_count()));
  return o;
}

// ---- loperad ----

LComplex l_complex(std::size_t arity, int shift, const std::string& convention, const Limits& lim) {
  guard(arity, lim.max_arity, "arity", "--max-arity");
  if (arity < 2) throw ValidationError("--arity must be at least 2");
  LComplex L = LComplex::build(arity);
  if (shift != 0) L = L.shifted(shift, parse_convention(convention));
  return L;
}

void l_conventions(RunReport& r, const LComplex& L) {
  r.conventions.emplace_back("grading", "cohomological; trees with k internal edges in degree 2 - s + k - shift");
  r.conventions.emplace_back("orientation", "Det of internal edges; the new edge of a splitting comes first");
  r.results.emplace_back("degree shift", std::to_string(L.degree_shift()));
  r.results.emplace_back("sign twist power", std::to_string(L.sign_power()));
}

Outcome loperad_build(std::size_t arity, int shift, const std::string& convention, const Limits& lim) {
  Outcome o;
  const LComplex L = l_complex(arity, shift, convention, lim);
  l_conventions(o.report, L);
  const auto& c = L.complex();
  ReportTable t{"spaces", {"degree", "internal edges", "dim"}, {}};
  for (int d = c.lowest(); d <= c.highest(); ++d) {
    t.rows.push_back({std::to_string(d), std::to_string(d - L.degree_of(0)), std::to_string(c.dim(d))});
  }
  o.report.tables.push_back(std::move(t));
  if (const auto w = verify_square_zero(c)) {
    o.report.status = "failure";
    o.report.results.emplace_back("d^2 = 0", "no");
    o.report.notes.push_back("d^2 is nonzero on " + w->basis_label + " in degree " + std::to_string(w->degree));
    o.code = kExitFailure;
  } else {
    o.report.results.emplace_back("d^2 = 0", "yes");
  }
  return o;
}

Outcome loperad_homology(std::size_t arity, int shift, const std::string& convention, const Limits& lim) {
  Outcome o;
  const LComplex L = l_complex(arity, shift, convention, lim);
  l_conventions(o.report, L);
  const auto h = homology_dims(L.complex());
  const auto [total, nonzero] = summarize(h);
  o.report.results.emplace_back("nonzero degrees", nonzero.empty() ? "none" : join(nonzero, ", "));
  o.report.results.emplace_back("total dimension", std::to_string(total));
  o.report.tables.push_back(homology_table("homology", h));
  return o;
}

// ---- fm ----

Outcome fm_strata(std::size_t arity, const std::string& leaves, int n, const Limits& lim) {
  Outcome o;
  const LeafSet l = leaf_set(arity, leaves);
  guard(l.size(), lim.max_leaves, "leaf count", "--max-leaves");
  if (l.size() < 2) throw ValidationError("need at least two leaves");
  if (n < 1) throw ValidationError("--dimension must be at least 1");
  o.report.conventions.emplace_back("strata", "one stratum per tree; codimension = number of internal edges");
  ReportTable t{"strata", {"tree", "internal edges", "dim", "codim"}, {}};
  std::size_t count = 0;
  for (std::size_t k = 0; k + 2 <= l.size(); ++k) {
    for (const auto& tr : enumerate_trees(l, k)) {
      const auto s = stratum(tr, n);
      t.rows.push_back({to_string(tr), std::to_string(k), std::to_string(s.dim), std::to_string(s.codim)});
      ++count;
    }
  }
  o.report.results.emplace_back("ambient dimension", std::to_string(n));
  o.report.results.emplace_back("top stratum dimension", std::to_string(stratum_dim(Tree::star(l), n)));
  o.report.results.emplace_back("strata", std::to_string(count));
  o.report.tables.push_back(std::move(t));
  return o;
}

Outcome fm_incidence(const std::string& tree, const std::string& other, int n, const Limits& lim) {
  Outcome o;
  const Tree t = parse_tree(tree);
  guard(t.leaves().size(), lim.max_leaves, "leaf count", "--max-leaves");
  if (n < 1) throw ValidationError("--dimension must be at least 1");
  o.report.conventions.emplace_back("incidence", "a stratum of codim c+1 lies in the closure of one of codim c "
                                                 "iff its tree is a single edge splitting");
  o.report.results.emplace_back("tree", to_string(t));
  o.report.results.emplace_back("codim", std::to_string(stratum_codim(t)));
  if (!other.empty()) {
    const Tree u = parse_tree(other);
    o.report.results.emplace_back("other", to_string(u));
    o.report.results.emplace_back("other codim", std::to_string(stratum_codim(u)));
    o.report.results.emplace_back("incident", yes_no(incidence(t, u)));
    return o;
  }
  ReportTable tab{"boundary strata", {"tree", "sign", "new edge", "dim", "codim"}, {}};
  for (const auto& s : splittings(t)) {
    const auto st = stratum(s.tree, n);
    tab.rows.push_back({to_string(s.tree), std::to_string(s.sign), "{" + join(s.new_edge, " ") + "}",
                        std::to_string(st.dim), std::to_string(st.codim)});
  }
  o.report.results.emplace_back("boundary strata", std::to_string(tab.rows.size()));
  o.report.tables.push_back(std::move(tab));
  return o;
}

// ---- ce ----

Outcome ce_homology(const std::string& lie, const std::string& algebra, std::size_t cutoff, const Limits& lim) {
  Outcome o;
  std::vector<InputFile> files;
  if (lie.empty() == algebra.empty()) throw ValidationError("give exactly one of --lie or --algebra");
  LInftyStructure g;
  std::string kind;
  if (!lie.empty()) {
    auto f = parse_linfty(load(o.report, files, lie).json);
    g = std::move(f.structure);
    kind = f.kind;
  } else {
    g = LInftyStructure::from_associative(parse_algebra(load(o.report, files, algebra).json));
    kind = "commutator";
  }
  const auto letters = g.ce_letters();
  bool all_odd = true;
  for (const auto& x : letters.generators()) all_odd = all_odd && x.odd();
  std::size_t k = cutoff;
  if (k == 0) k = all_odd ? std::max<std::size_t>(letters.size(), 1) : letters.size() + 2;
  guard(k, lim.max_cutoff, "cutoff", "--max-cutoff");
  o.report.conventions.emplace_back("grading", "cohomological; the letter s·x has degree |x| - 1, so Λ^k of a Lie "
                                               "algebra in degree 0 sits in degree -k");
  o.report.conventions.emplace_back("structure", kind);
  o.report.results.emplace_back("word-length cutoff", std::to_string(k));
  if (kind == "linfty") {
    if (const auto w = check_linfty(g, k)) {
      o.report.status = "failure";
      o.report.results.emplace_back("d_tot^2 = 0", "no");
      o.report.notes.push_back("d_tot^2 is nonzero on " + w->basis_label + " in degree " + std::to_string(w->degree));
      o.code = kExitFailure;
      return o;
    }
    o.report.results.emplace_back("d_tot^2 = 0", "yes");
  }
  const auto ce = ce_complex(g, k);
  std::size_t size = 0;
  for (const auto& [d, list] : ce.basis.by_degree) size += list.size();
  guard(size, lim.max_basis, "CE basis size", "--max-basis");
  const auto h = homology_dims(ce.complex);
  const auto [total, nonzero] = summarize(h);
  o.report.results.emplace_back("nonzero degrees", nonzero.empty() ? "none" : join(nonzero, ", "));
  o.report.results.emplace_back("total dimension", std::to_string(total));
  o.report.tables.push_back(homology_table("homology", h));
  return o;
}

// ---- hochschild / trace ----

AssociativeAlgebra algebra_input(RunReport& r, std::vector<InputFile>& files, const std::string& path) {
  if (path.empty()) throw ValidationError("--algebra is required");
  return parse_algebra(load(r, files, path).json);
}

void chain_guard(const AssociativeAlgebra& a, std::size_t max_degree, const Limits& lim) {
  const double dim = std::pow(static_cast<double>(a.dim()), static_cast<double>(max_degree + 1));
  if (dim > static_cast<double>(lim.max_chain_dim)) {
    throw ValidationError("degree " + std::to_string(max_degree) + " chain space of dimension " +
                          std::to_string(static_cast<long long>(dim)) + " exceeds the limit " +
                          std::to_string(lim.max_chain_dim) + " (raise --max-chain-dim)");
  }
}

void hochschild_conventions(RunReport& r, HochschildVariant v) {
  r.conventions.emplace_back("variant", to_string(v));
  r.conventions.emplace_back("grading", "C_m = A^⊗(m+1) stored in cohomological degree -m; b has the "
                                        "wrap-around term (-1)^m a_m a_0 ⊗ … ⊗ a_(m-1)");
  if (v == HochschildVariant::kCyclicQuotient) {
    r.conventions.emplace_back("quotient", "C_m / (1 - t) with t(a_0⊗…⊗a_m) = (-1)^m a_m⊗a_0⊗…⊗a_(m-1)");
  }
}

Outcome hochschild(const std::string& path, std::size_t max_degree, const std::string& variant, const Limits& lim) {
  Outcome o;
  std::vector<InputFile> files;
  const auto a = algebra_input(o.report, files, path);
  const auto v = parse_variant(variant);
  if (max_degree < 1) throw ValidationError("--max-degree must be at least 1");
  chain_guard(a, max_degree, lim);
  hochschild_conventions(o.report, v);
  const auto h = hochschild_homology(a, max_degree, v);
  std::vector<std::string> dims;
  for (auto it = h.rbegin(); it != h.rend(); ++it)
    if (!it->truncation_affected) dims.push_back(std::to_string(it->dim));
  o.report.results.emplace_back("dims for m = 0.." + std::to_string(max_degree - 1), join(dims, ", "));
  o.report.tables.push_back(homology_table("homology", h));
  return o;
}

std::string verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::kProportional:
      return "proportional";
    case VerdictKind::kVacuous:
      return "vacuous";
    case VerdictKind::kFailure:
      return "failure";
  }
  return "failure";
}

void certificate_section(RunReport& r, const AssociativeAlgebra& a, const TraceCertificate& cert) {
  r.conventions.emplace_back("certificate", "b∘ε_k = r_k ε_(k-1)∘d_CE on Λ^k A, ε_k(a_1∧…∧a_k) = Σ sgn(σ) "
                                            "a_σ(1)⊗…⊗a_σ(k) in degree k-1; c_1 = 1, c_k = c_(k-1)/r_k");
  ReportTable t{"verdicts", {"k", "verdict", "ratio"}, {}};
  const HochschildComplex target(a, cert.max_k == 0 ? 1 : cert.max_k - 1, cert.variant);
  for (const auto& d : cert.degrees) {
    t.rows.push_back({std::to_string(d.k), verdict_name(d.kind), d.kind == VerdictKind::kFailure ? "-" : to_string(d.ratio)});
    if (d.witness) {
      std::vector<std::string> labels;
      for (const auto& tensor : target.basis(d.k - 2)) {
        std::vector<std::string> parts;
        for (auto i : tensor) parts.push_back(a.names()[i]);
        labels.push_back(join(parts, "⊗"));
      }
      r.notes.push_back("k=" + std::to_string(d.k) + " witness " + d.witness->wedge + ": b∘ε = " +
                        render(d.witness->boundary_image, labels) + "; ε∘d_CE = " + render(d.witness->ce_image, labels));
    }
  }
  r.tables.push_back(std::move(t));
  r.results.emplace_back("certified", yes_no(cert.success));
  if (cert.success) {
    std::vector<std::string> c;
    for (std::size_t i = 0; i < cert.normalization.size(); ++i)
      c.push_back("c_" + std::to_string(i + 1) + " = " + to_string(cert.normalization[i]));
    r.results.emplace_back("normalization", join(c, ", "));
  } else if (const auto* f = cert.first_failure()) {
    r.results.emplace_back("first failure", "k = " + std::to_string(f->k));
  }
}

struct Certified {
  Outcome outcome;
  std::optional<AssociativeAlgebra> algebra;
  TraceCertificate certificate;
};

Certified certified(const std::string& path, std::size_t max_k, const std::string& variant, const Limits& lim) {
  Certified c;
  std::vector<InputFile> files;
  c.algebra.emplace(algebra_input(c.outcome.report, files, path));
  const auto v = parse_variant(variant);
  if (max_k < 2) throw ValidationError("--max-degree must be at least 2");
  chain_guard(*c.algebra, max_k, lim);
  hochschild_conventions(c.outcome.report, v);
  c.certificate = certify_chain_map(*c.algebra, max_k, v);
  certificate_section(c.outcome.report, *c.algebra, c.certificate);
  if (!c.certificate.success) {
    c.outcome.report.status = "failure";
    c.outcome.code = kExitFailure;
  }
  return c;
}

Outcome trace_certify(const std::string& path, std::size_t max_k, const std::string& variant, const Limits& lim) {
  return certified(path, max_k, variant, lim).outcome;
}

Outcome trace_induced(const std::string& path, std::size_t max_k, const std::string& variant, const Limits& lim) {
  Certified c = certified(path, max_k, variant, lim);
  Outcome& o = c.outcome;
  if (const auto* f = c.certificate.first_failure()) {
    o.report.notes.push_back("induced map refused: the certificate fails at k = " + std::to_string(f->k));
    return o;
  }
  ReportTable t{"induced maps", {"k", "source dim", "target dim", "rank"}, {}};
  for (const auto& m : induced_homology_map(*c.algebra, c.certificate)) {
    t.rows.push_back({std::to_string(m.k), std::to_string(m.source_dim), std::to_string(m.target_dim),
                      std::to_string(m.rank)});
  }
  o.report.conventions.emplace_back("induced map", "H_k(CE) -> H_(k-1)(target) induced by c_k ε_k");
  o.report.tables.push_back(std::move(t));
  return o;
}

// ---- weyl ----

Outcome weyl_verify(int n, const std::string& vpath, const std::string& mpath, const CurvatureOptions& opts) {
  Outcome o;
  std::vector<InputFile> files;
  if (vpath.empty() || mpath.empty()) throw ValidationError("--v and --manifold are required");
  const auto V = parse_paired_space(load(o.report, files, vpath).json);
  const auto M = parse_manifold(load(o.report, files, mpath).json);
  if (M.manifold.n() != n) {
    throw ValidationError("--n " + std::to_string(n) + " disagrees with the manifold file (n = " +
                          std::to_string(M.manifold.n()) + ")");
  }
  const auto r = verify_one_dimensional(V, M.manifold, opts);
  o.report.conventions = r.conventions;
  o.report.results.emplace_back("total dimension", std::to_string(r.total_dim));
  std::vector<std::string> loc;
  for (int d : r.nonzero_degrees) loc.push_back(std::to_string(d) + " (homological " + std::to_string(-d) + ")");
  o.report.results.emplace_back("degree location", loc.empty() ? "none" : join(loc, ", "));
  o.report.results.emplace_back("status", to_string(r.status));
  o.report.results.emplace_back("regime", to_string(r.regime));
  if (r.cutoff) {
    o.report.results.emplace_back("word-length cutoff", std::to_string(*r.cutoff));
  } else {
    o.report.results.emplace_back("window", "[" + std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
  }
  o.report.results.emplace_back("curvature", r.omega);
  ReportTable gens{"W generators", {"name", "degree", "parity"}, {}};
  for (const auto& g : r.W.space().generators())
    gens.rows.push_back({g.name, std::to_string(g.degree), g.odd() ? "odd" : "even"});
  o.report.tables.push_back(std::move(gens));
  o.report.tables.push_back(homology_table("cohomology", r.homology));
  o.report.notes.push_back(r.status_detail);
  o.report.notes.push_back(M.parallelizable ? "parallelizability: assumed as recorded in the manifold file"
                                            : "manifold file marks it non-parallelizable; only the pairing data enters");
  if (!r.one_dimensional()) {
    o.report.status = "failure";
    o.code = kExitFailure;
  }
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with tree complexes, CE and Hochschild chains, and curvature models.\n"
               "MWB_THREADS sets the worker count for per-degree parallelism (default 1)."};
  app.name("mwb");
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false, timing = false;
  Limits lim;
  app.add_flag("--json", json, "Emit the machine-readable report");
  app.add_flag("--timing", timing, "Include wall time in the report");
  app.add_option("--max-leaves", lim.max_leaves, "Leaf-count guard")->capture_default_str();
  app.add_option("--max-arity", lim.max_arity, "Arity guard for tree complexes")->capture_default_str();
  app.add_option("--max-cutoff", lim.max_cutoff, "CE word-length guard")->capture_default_str();
  app.add_option("--max-basis", lim.max_basis, "Monomial basis guard")->capture_default_str();
  app.add_option("--max-chain-dim", lim.max_chain_dim, "Hochschild chain dimension guard")->capture_default_str();

  std::function<Outcome()> action;
  std::size_t arity = 0;
  std::string leaves, tree, other, upper, lower, at, lie, algebra, variant = "standard", convention = "arity-dimension";
  std::string vfile, mfile;
  std::optional<std::size_t> edges;
  std::size_t cutoff = 0, max_degree = 0;
  int shift = 0, dimension = 1, n = 1;
  CurvatureOptions copts;
  bool no_regrade = false;

  auto* trees = app.add_subcommand("trees", "Tree enumeration and grafting")->require_subcommand(1);
  auto* te = trees->add_subcommand("enumerate", "List trees by number of internal edges");
  te->add_option("--arity", arity, "Leaves 1..s");
  te->add_option("--leaves", leaves, "Whitespace-separated leaf labels");
  te->add_option("--edges", edges, "Only trees with this many internal edges");
  te->callback([&] { action = [&] { return trees_enumerate(arity, leaves, edges, lim); }; });
  auto* tc = trees->add_subcommand("compose", "Graft --lower onto leaf --at of --upper");
  tc->add_option("--upper", upper, "Upper tree")->required();
  tc->add_option("--at", at, "Leaf of the upper tree")->required();
  tc->add_option("--lower", lower, "Lower tree")->required();
  tc->callback([&] { action = [&] { return trees_compose(upper, at, lower); }; });

  auto* lop = app.add_subcommand("loperad", "The tree complexes L(s)")->require_subcommand(1);
  for (auto* sub : {lop->add_subcommand("build", "Spaces and the d^2 = 0 check"),
                    lop->add_subcommand("homology", "Homology per degree")}) {
    sub->add_option("--arity", arity, "Arity s")->required();
    sub->add_option("--shift", shift, "Ambient dimension n for the shifted component (0 for none)");
    sub->add_option("--convention", convention, "arity-dimension or incidence")->capture_default_str();
    const bool build = sub->get_name() == "build";
    sub->callback([&, build] {
      action = [&, build] {
        return build ? loperad_build(arity, shift, convention, lim) : loperad_homology(arity, shift, convention, lim);
      };
    });
  }

  auto* fm = app.add_subcommand("fm", "Fulton-MacPherson strata")->require_subcommand(1);
  auto* fs = fm->add_subcommand("strata", "Every stratum with dimension and codimension");
  fs->add_option("--arity", arity, "Leaves 1..s");
  fs->add_option("--leaves", leaves, "Whitespace-separated leaf labels");
  fs->add_option("--dimension", dimension, "Ambient dimension n")->capture_default_str();
  fs->callback([&] { action = [&] { return fm_strata(arity, leaves, dimension, lim); }; });
  auto* fi = fm->add_subcommand("incidence", "Boundary strata of a stratum, or one incidence test");
  fi->add_option("--tree", tree, "Tree of the stratum")->required();
  fi->add_option("--other", other, "Second tree to test");
  fi->add_option("--dimension", dimension, "Ambient dimension n")->capture_default_str();
  fi->callback([&] { action = [&] { return fm_incidence(tree, other, dimension, lim); }; });

  auto* ce = app.add_subcommand("ce", "Chevalley-Eilenberg complexes")->require_subcommand(1);
  auto* ch = ce->add_subcommand("homology", "CE homology of an L∞ algebra or of a commutator Lie algebra");
  ch->add_option("--lie", lie, "L∞ or DG Lie file");
  ch->add_option("--algebra", algebra, "Associative algebra file (commutator bracket)");
  ch->add_option("--cutoff", cutoff, "Word-length cutoff (0 picks a default)");
  ch->callback([&] { action = [&] { return ce_homology(lie, algebra, cutoff, lim); }; });

  auto* hh = app.add_subcommand("hochschild", "Hochschild complexes")->require_subcommand(1);
  auto* hhh = hh->add_subcommand("homology", "HH_m for m below --max-degree");
  hhh->add_option("--algebra", algebra, "Associative algebra file")->required();
  hhh->add_option("--max-degree", max_degree, "Top chain degree (flagged)")->default_val(4);
  hhh->add_option("--variant", variant, "standard or cyclic-quotient")->capture_default_str();
  hhh->callback([&] { action = [&] { return hochschild(algebra, max_degree, variant, lim); }; });

  auto* tr = app.add_subcommand("trace", "Antisymmetrization chain-map certificates")->require_subcommand(1);
  for (auto* sub : {tr->add_subcommand("certify", "Decide b∘ε_k ∝ ε_(k-1)∘d_CE for k = 2..K"),
                    tr->add_subcommand("induced", "Ranks of the induced maps on homology")}) {
    sub->add_option("--algebra", algebra, "Associative algebra file")->required();
    sub->add_option("--max-degree", max_degree, "K")->default_val(3);
    sub->add_option("--variant", variant, "standard or cyclic-quotient")->capture_default_str();
    const bool certify = sub->get_name() == "certify";
    sub->callback([&, certify] {
      action = [&, certify] {
        return certify ? trace_certify(algebra, max_degree, variant, lim)
                       : trace_induced(algebra, max_degree, variant, lim);
      };
    });
  }

  auto* weyl = app.add_subcommand("weyl", "Curvature model of the n-Weyl algebra")->require_subcommand(1);
  auto* wv = weyl->add_subcommand("verify", "Total cohomology of multiplication by the curvature");
  wv->add_option("--n", n, "Manifold dimension")->required();
  wv->add_option("--v", vfile, "Paired space V")->required();
  wv->add_option("--manifold", mfile, "Manifold file")->required();
  wv->add_option("--cutoff", copts.cutoff, "Word-length cutoff for the fallback (0 picks 2·dim W + 2)");
  wv->add_option("--extra-even", copts.extra_even_letters, "Window reach beyond one even letter per generator")
      ->capture_default_str();
  wv->add_flag("--no-regrade", no_regrade, "Never regrade; mixed even degrees then use the cutoff");
  wv->callback([&] {
    action = [&] {
      copts.allow_regrading = !no_regrade;
      copts.max_basis = lim.max_basis;
      return weyl_verify(n, vfile, mfile, copts);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = action();
    o.report.command = "mwb " + join(args, " ");
    if (timing) {
      o.report.wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    out << (json ? dump(o.report.to_json()) : o.report.to_text());
    return o.code;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace mwb::cli
