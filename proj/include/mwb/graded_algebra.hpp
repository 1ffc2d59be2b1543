#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mwb/chain_complex.hpp"

namespace mwb {

struct Generator {
  std::string name;
  int degree = 0;  // cohomological
  bool odd() const { return degree % 2 != 0; }
};

/// Finite graded space given by named homogeneous basis vectors.
class GradedSpace {
 public:
  GradedSpace() = default;
  /// Names must be unique and non-empty.
  explicit GradedSpace(std::vector<Generator> generators);

  std::size_t size() const { return generators_.size(); }
  const Generator& operator[](std::size_t i) const { return generators_[i]; }
  const std::vector<Generator>& generators() const { return generators_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  /// Degrees negated; names suffixed with "^".
  GradedSpace dual() const;
  /// W[k]: every degree lowered by k.
  GradedSpace shifted(int k) const;

 private:
  std::vector<Generator> generators_;
};

/// Exponent vector over the generators of a fixed space; odd exponents are 0 or 1.
/// The canonical word lists generators in index order.
struct Monomial {
  std::vector<unsigned> exponents;

  std::size_t word_length() const;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct AlgebraElement {
  std::map<Monomial, Rational> terms;

  bool is_zero() const { return terms.empty(); }
  void add(const Monomial& m, const Rational& c);
  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
};

AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator*(const Rational& c, const AlgebraElement& x);

/// Per-degree monomial bases in deterministic order (word length, then exponents).
struct SymmetricBasis {
  std::map<int, std::vector<Monomial>> by_degree;
  std::optional<std::size_t> cutoff;  // word-length bound when one was used

  std::size_t dim(int degree) const;
};

/// Free graded-commutative algebra S*(W) with Koszul signs from the cohomological grading.
class FreeAlgebra {
 public:
  explicit FreeAlgebra(GradedSpace space);

  const GradedSpace& space() const { return space_; }
  Monomial unit_monomial() const;
  AlgebraElement one() const;
  AlgebraElement generator(const std::string& name) const;
  AlgebraElement generator(std::size_t index) const;

  int degree(const Monomial& m) const;
  /// Product of two canonical words with its normalizing sign; 0 when an odd generator repeats.
  int monomial_product(const Monomial& a, const Monomial& b, Monomial& out) const;
  AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) const;
  /// The common degree of all terms; nullopt for 0 or an inhomogeneous element.
  std::optional<int> homogeneous_degree(const AlgebraElement& x) const;

  /// Graded derivation of degree `degree` extended from its values on generators.
  AlgebraElement derivation(int degree, const std::map<std::size_t, AlgebraElement>& on_generators,
                            const AlgebraElement& x) const;

  /// All monomials of word length <= cutoff.
  SymmetricBasis basis_up_to_length(std::size_t cutoff) const;
  /// All monomials whose degree lies in [lo, hi]. Needs every even generator
  /// to have nonzero degree, all of one sign; an optional cutoff lifts that requirement.
  SymmetricBasis basis_in_window(int lo, int hi, std::optional<std::size_t> cutoff = std::nullopt) const;

  std::string to_string(const Monomial& m) const;
  std::string to_string(const AlgebraElement& x) const;

 private:
  GradedSpace space_;
};

/// x ↦ ω·x between consecutive degrees of `basis`. ω must be homogeneous of degree +1.
/// Products leaving the basis are dropped and their source degree is flagged.
ChainComplex multiplication_operator(const FreeAlgebra& algebra, const AlgebraElement& omega,
                                     const SymmetricBasis& basis);

}  // namespace mwb
