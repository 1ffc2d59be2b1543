#include "mwb/associative_algebra.hpp"

#include <set>

namespace mwb {

namespace {

SparseVector product_in(const std::vector<std::vector<SparseVector>>& table, const SparseVector& x,
                        const SparseVector& y) {
  SparseVector out;
  for (const auto& [i, a] : x) {
    for (const auto& [j, b] : y) axpy(out, a * b, table[i][j]);
  }
  return out;
}

SparseVector basis_vector(std::size_t i) { return SparseVector{{i, Rational(1)}}; }

}  // namespace

std::optional<AssociativityWitness> find_associativity_failure(std::size_t dim,
                                                              const std::vector<std::vector<SparseVector>>& table) {
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t k = 0; k < dim; ++k) {
        SparseVector left = product_in(table, table[i][j], basis_vector(k));
        SparseVector right = product_in(table, basis_vector(i), table[j][k]);
        if (left != right) return AssociativityWitness{{i, j, k}, std::move(left), std::move(right)};
      }
    }
  }
  return std::nullopt;
}

AssociativeAlgebra::AssociativeAlgebra(std::vector<std::string> names, SparseVector unit,
                                       const std::vector<Constant>& constants)
    : names_(std::move(names)), unit_(std::move(unit)) {
  const std::size_t n = names_.size();
  if (n == 0) throw ValidationError("algebra must have positive dimension");
  std::set<std::string> seen;
  for (const auto& s : names_) {
    if (s.empty() || !seen.insert(s).second) throw ValidationError("basis names must be unique and non-empty");
  }
  for (auto it = unit_.begin(); it != unit_.end();) {
    if (it->first >= n) throw ValidationError("unit coordinate out of range");
    it = mwb::is_zero(it->second) ? unit_.erase(it) : std::next(it);
  }
  table_.assign(n, std::vector<SparseVector>(n));
  std::set<std::array<std::size_t, 3>> given;
  for (const auto& c : constants) {
    if (c.i >= n || c.j >= n || c.k >= n) throw ValidationError("structure constant index out of range");
    if (!given.insert({c.i, c.j, c.k}).second) {
      throw ValidationError("structure constant (" + std::to_string(c.i) + ", " + std::to_string(c.j) + ", " +
                            std::to_string(c.k) + ") given twice");
    }
    axpy(table_[c.i][c.j], c.value, basis_vector(c.k));
  }
  if (auto w = find_associativity_failure(n, table_)) {
    throw ValidationError("associativity fails on basis triple (" + names_[w->triple[0]] + ", " + names_[w->triple[1]] +
                          ", " + names_[w->triple[2]] + ")");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (multiply(unit_, basis_vector(i)) != basis_vector(i) || multiply(basis_vector(i), unit_) != basis_vector(i)) {
      throw ValidationError("unit law fails on basis element " + names_[i]);
    }
  }
}

SparseVector AssociativeAlgebra::multiply(const SparseVector& x, const SparseVector& y) const {
  return product_in(table_, x, y);
}

SparseVector AssociativeAlgebra::commutator(const SparseVector& x, const SparseVector& y) const {
  SparseVector out = multiply(x, y);
  axpy(out, Rational(-1), multiply(y, x));
  return out;
}

bool AssociativeAlgebra::is_commutative() const {
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = i + 1; j < dim(); ++j) {
      if (table_[i][j] != table_[j][i]) return false;
    }
  }
  return true;
}

std::vector<AssociativeAlgebra::Constant> AssociativeAlgebra::constants() const {
  std::vector<Constant> out;
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) {
      for (const auto& [k, v] : table_[i][j]) out.push_back({i, j, k, v});
    }
  }
  return out;
}

AssociativeAlgebra AssociativeAlgebra::change_basis(const SparseMatrix& p, std::vector<std::string> names) const {
  const std::size_t n = dim();
  if (p.rows() != n || p.cols() != n) throw ValidationError("basis change matrix has the wrong shape");
  if (rank(p) != n) throw ValidationError("basis change matrix is singular");
  if (names.size() != n) throw ValidationError("basis change needs one name per basis vector");
  auto to_new = [&](const SparseVector& old_coords) {
    auto x = solve(p, old_coords);
    return *x;
  };
  std::vector<Constant> constants;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (const auto& [k, v] : to_new(multiply(p.column(a), p.column(b)))) constants.push_back({a, b, k, v});
    }
  }
  return AssociativeAlgebra(std::move(names), to_new(unit_), constants);
}

AssociativeAlgebra ground_field() { return AssociativeAlgebra({"1"}, {{0, Rational(1)}}, {{0, 0, 0, Rational(1)}}); }

AssociativeAlgebra truncated_polynomial(std::size_t k) {
  if (k == 0) throw ValidationError("Q[x]/(x^k) needs k >= 1");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) names.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
  std::vector<AssociativeAlgebra::Constant> c;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; i + j < k; ++j) c.push_back({i, j, i + j, Rational(1)});
  }
  return AssociativeAlgebra(std::move(names), {{0, Rational(1)}}, c);
}

AssociativeAlgebra matrix_algebra(std::size_t n) {
  if (n == 0) throw ValidationError("M_n needs n >= 1");
  std::vector<std::string> names;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) names.push_back("E" + std::to_string(r + 1) + std::to_string(s + 1));
  }
  std::vector<AssociativeAlgebra::Constant> c;
  // E_rs E_uv = δ_su E_rv
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t v = 0; v < n; ++v) c.push_back({r * n + s, s * n + v, r * n + v, Rational(1)});
    }
  }
  SparseVector unit;
  for (std::size_t r = 0; r < n; ++r) unit[r * n + r] = Rational(1);
  return AssociativeAlgebra(std::move(names), unit, c);
}

AssociativeAlgebra upper_triangular_2x2() {
  // E11 E11 = E11, E11 E12 = E12, E12 E22 = E12, E22 E22 = E22
  return AssociativeAlgebra({"E11", "E12", "E22"}, {{0, Rational(1)}, {2, Rational(1)}},
                            {{0, 0, 0, Rational(1)}, {0, 1, 1, Rational(1)}, {1, 2, 1, Rational(1)}, {2, 2, 2, Rational(1)}});
}

}  // namespace mwb
