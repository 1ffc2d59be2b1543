#include "mwb/chain_complex.hpp"

#include <cstdlib>
#include <future>
#include <string>

namespace mwb {

namespace {

std::string describe_witness(const SquareZeroWitness& w) {
  return "d^2 != 0 on basis vector " + std::to_string(w.basis_index) + " (" + w.basis_label + ") of degree " +
         std::to_string(w.degree) + ": image has " + std::to_string(w.image.size()) + " nonzero entries";
}

const std::vector<std::string> kEmptyBasis;

}  // namespace

SquareZeroError::SquareZeroError(SquareZeroWitness witness)
    : std::runtime_error(describe_witness(witness)), witness_(std::move(witness)) {}

ChainComplex::ChainComplex(int lowest, std::vector<std::vector<std::string>> bases,
                           std::vector<SparseMatrix> differentials, Verification verification)
    : lowest_(lowest), bases_(std::move(bases)), differentials_(std::move(differentials)) {
  const std::size_t expected = bases_.empty() ? 0 : bases_.size() - 1;
  if (differentials_.size() != expected) {
    throw ValidationError("chain complex with " + std::to_string(bases_.size()) + " degrees needs " +
                          std::to_string(expected) + " differentials, got " +
                          std::to_string(differentials_.size()));
  }
  for (std::size_t i = 0; i < differentials_.size(); ++i) {
    const auto& d = differentials_[i];
    if (d.cols() != bases_[i].size() || d.rows() != bases_[i + 1].size()) {
      throw ValidationError("differential from degree " + std::to_string(lowest_ + static_cast<int>(i)) +
                            " has shape " + std::to_string(d.rows()) + "x" + std::to_string(d.cols()) +
                            ", expected " + std::to_string(bases_[i + 1].size()) + "x" +
                            std::to_string(bases_[i].size()));
    }
  }
  if (verification == Verification::kImmediate) {
    if (auto witness = verify_square_zero(*this)) throw SquareZeroError(std::move(*witness));
  }
}

std::size_t ChainComplex::dim(int degree) const { return in_range(degree) ? bases_[degree - lowest_].size() : 0; }

const std::vector<std::string>& ChainComplex::basis(int degree) const {
  return in_range(degree) ? bases_[degree - lowest_] : kEmptyBasis;
}

SparseMatrix ChainComplex::differential(int degree) const {
  if (in_range(degree) && in_range(degree + 1)) return differentials_[degree - lowest_];
  return SparseMatrix(dim(degree + 1), dim(degree));
}

ChainComplex& ChainComplex::mark_truncated_below(bool value) {
  truncated_below_ = value;
  return *this;
}

ChainComplex& ChainComplex::mark_truncated_above(bool value) {
  truncated_above_ = value;
  return *this;
}

ChainComplex& ChainComplex::flag_degree(int degree) {
  flagged_.insert(degree);
  return *this;
}

bool ChainComplex::truncation_affected(int degree) const {
  if (flagged_.contains(degree)) return true;
  if (empty()) return false;
  return (truncated_below_ && degree == lowest()) || (truncated_above_ && degree == highest());
}

ChainComplex ChainComplex::shifted(int offset) const {
  ChainComplex out = *this;
  out.lowest_ += offset;
  out.flagged_.clear();
  for (int d : flagged_) out.flagged_.insert(d + offset);
  return out;
}

ChainComplex ChainComplex::with_flipped_entry(int degree, std::size_t row, std::size_t col) const {
  if (!in_range(degree) || !in_range(degree + 1)) throw ValidationError("no stored differential at that degree");
  std::vector<SparseMatrix> diffs = differentials_;
  SparseMatrix& d = diffs[degree - lowest_];
  d.set(row, col, -d.at(row, col));
  ChainComplex out(lowest_, bases_, std::move(diffs), Verification::kDeferred);
  out.truncated_below_ = truncated_below_;
  out.truncated_above_ = truncated_above_;
  out.flagged_ = flagged_;
  return out;
}

std::optional<SquareZeroWitness> verify_square_zero(const ChainComplex& complex) {
  if (complex.empty()) return std::nullopt;
  for (int degree = complex.lowest(); degree + 2 <= complex.highest(); ++degree) {
    const SparseMatrix first = complex.differential(degree);
    const SparseMatrix second = complex.differential(degree + 1);
    for (std::size_t j = 0; j < first.cols(); ++j) {
      SparseVector image = second.apply(first.column(j));
      if (!image.empty()) {
        return SquareZeroWitness{degree, j, complex.basis(degree)[j], std::move(image)};
      }
    }
  }
  return std::nullopt;
}

unsigned worker_threads() {
  if (const char* env = std::getenv("MWB_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1 && n <= 256) return static_cast<unsigned>(n);
  }
  return 1;
}

std::vector<DegreeHomology> homology_dims(const ChainComplex& complex, PivotOrder order) {
  if (auto witness = verify_square_zero(complex)) throw SquareZeroError(std::move(*witness));
  std::vector<DegreeHomology> out;
  if (complex.empty()) return out;

  // ranks[i] = rank of d: C^(lowest+i) -> C^(lowest+i+1)
  const int count = complex.highest() - complex.lowest() + 1;
  std::vector<std::size_t> ranks(static_cast<std::size_t>(count), 0);
  const unsigned threads = worker_threads();
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) ranks[i] = rank(complex.differential(complex.lowest() + i), order);
  } else {
    std::vector<std::future<std::size_t>> jobs;
    for (int i = 0; i < count; ++i) {
      jobs.push_back(std::async(std::launch::async, [&complex, order, i] {
        return rank(complex.differential(complex.lowest() + i), order);
      }));
    }
    for (int i = 0; i < count; ++i) ranks[i] = jobs[i].get();
  }

  for (int i = 0; i < count; ++i) {
    const int degree = complex.lowest() + i;
    DegreeHomology h;
    h.degree = degree;
    h.space_dim = complex.dim(degree);
    h.rank_out = ranks[i];
    h.rank_in = i > 0 ? ranks[i - 1] : 0;
    h.dim = h.space_dim - h.rank_out - h.rank_in;
    h.truncation_affected = complex.truncation_affected(degree);
    out.push_back(h);
  }
  return out;
}

std::size_t total_dimension(const std::vector<DegreeHomology>& homology) {
  std::size_t total = 0;
  for (const auto& h : homology) total += h.dim;
  return total;
}

}  // namespace mwb
