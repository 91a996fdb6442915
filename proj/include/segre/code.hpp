// The linear codes attached to the rank-1 flag model.
//
// A square matrix M evaluates at a flag (x, xi) to Tr((x*xi) * M) = xi*M*x;
// running over all flags in system order this gives a codeword.  Scalar
// matrices evaluate to zero on the incident (Lambda1) system, so distinct
// codewords correspond to matrices modulo <I>; we iterate the canonical
// representative space (see RepSpace) to enumerate each codeword exactly once.
//
// Weights never need the codeword itself: with theta(M) = number of left
// eigenvector points of M (see eigen_profile), the Lambda1 weight is
//
//   wt(M) = q^{n-1} * (q^{n+1}-1)/(q-1) - q^{n-1} * theta(M),
//
// which is what weight_formula computes; exhaustive/sampled spectra use it,
// and the direct encoding is kept around as a cross-check.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "segre/field.hpp"
#include "segre/flags.hpp"
#include "segre/matrix.hpp"

namespace segre {

struct CodeSummary {
    std::uint64_t N, k, d, w_second, w_max;
    std::uint32_t q;
    int n;
};

struct SegreSummary {
    std::uint64_t N, k, d;
};

// (q^m - 1) / (q - 1).
std::uint64_t geom_sum(std::uint32_t q, std::uint32_t m);

// Closed-form parameters of the incident-pair (Lambda1) code.
CodeSummary code_params(int n, const Field& f);
// Closed-form parameters of the full rank-1 (Lambda) code.
SegreSummary segre_code_params(int n, const Field& f);

// Basis of the codeword representative space, in the order generator-matrix
// rows use it:
//  - char does not divide n+1: unit matrices E_ij (i != j) row-major, then
//    the diagonal differences E_ii - E_{i+1,i+1} for i = 0..n-1
//  - char divides n+1:         unit matrices E_ij, (i,j) != (0,0), row-major
std::vector<Matrix> coset_basis(int n, const Field& f);
// All unit matrices E_ij row-major (basis used by the Lambda system).
std::vector<Matrix> full_basis(int n, const Field& f);

// k x N matrix whose row j is the codeword of basis matrix j.  Throws
// std::logic_error if the rank is not full (construction bug).
Matrix generator_matrix(const FlagSystem& sys);

struct Codeword {
    std::vector<Fe> values; // one per flag, in system order
    Matrix source;          // canonical coset representative (Lambda1), M itself (Lambda)
};

Codeword encode(const Matrix& M, const FlagSystem& sys);
// Allocation-free variant for sweeps; resizes `values` to sys.size().
void encode_into(const Matrix& M, const FlagSystem& sys, std::vector<Fe>& values);

std::uint64_t hamming_weight(const std::vector<Fe>& values);

// Lambda1 weight of the codeword of M via the eigenvector-point count;
// returns 0 exactly on scalar matrices.
std::uint64_t weight_formula(const Matrix& M);

// Canonical representatives of M_{n+1}(GF(q)) modulo <I>, indexed by base-q
// digit vectors over the k free coordinates (row-major cell order, digit 0 =
// least significant = first free cell):
//  - char does not divide n+1: free cells are all but (n,n); the (n,n) entry
//    is set to make the trace zero
//  - char divides n+1:         free cells are all but (0,0); that entry is 0
class RepSpace {
public:
    RepSpace(int n, const Field& f);

    std::uint32_t dim() const { return k_; }                  // = n^2 + 2n
    std::uint64_t size() const;                               // q^k, throws if > 2^63
    std::uint64_t projective_size() const;                    // (q^k - 1)/(q - 1)

    void fill(std::uint64_t index, Matrix& M) const;          // M preallocated (n+1)x(n+1)
    Matrix matrix_at(std::uint64_t index) const;
    // Same, from k explicit digits (digit c = value of free cell c).
    void fill_from_digits(const Fe* digits, Matrix& M) const;

    // Representative with first nonzero free cell scaled to 1: one per line
    // <M, I>, i.e. one per hyperplane section of the code's dual geometry.
    void fill_projective(std::uint64_t pindex, Matrix& M) const;
    Matrix projective_at(std::uint64_t pindex) const;

    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& free_cells() const { return free_; }

private:
    int n_;
    const Field* f_;
    std::uint32_t k_;
    bool char_divides_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> free_;
};

using Profile = std::vector<std::uint32_t>;

std::string profile_to_string(const Profile& p); // "(1,2)", "()" for empty

enum class SpectrumMode { Formula, Exhaustive, Sampled };

struct SpectrumReport {
    SpectrumMode mode;
    std::vector<std::uint64_t> weights;                    // sorted distinct, 0 included
    std::map<std::uint64_t, std::uint64_t> counts;         // weight -> multiplicity (not Formula mode)
    std::vector<std::pair<Profile, std::uint64_t>> profiles; // Formula mode: profile -> weight
};

// Weight list from the eigenspace-profile census: all nondecreasing tuples
// (g_1, ..., g_t), 1 <= t <= q, sum <= n+1, except the scalar-only profile
// (n+1) which no non-scalar matrix attains; the empty tuple (no eigenvalues)
// is included and lands on w_max.
SpectrumReport theoretical_weight_list(int n, const Field& f);

// Full census over the representative space (multiplicities sum to q^k,
// weight 0 appearing exactly once).  Requires q^k <= 2^25.
SpectrumReport exhaustive_spectrum(int n, const Field& f, unsigned threads = 1);

// Seeded sample of the representative space; multiplicities sum to
// sample_size.  Samples are drawn on one LCG stream regardless of threads.
SpectrumReport sampled_spectrum(int n, const Field& f, std::uint64_t sample_size,
                                std::uint64_t seed, unsigned threads = 1);

// Splits [0, total) into contiguous chunks and runs fn(worker, lo, hi) on
// each, merging nothing: callers own per-worker accumulators.  Results must
// not depend on the partition; workers = 0 is treated as 1.
void parallel_ranges(std::uint64_t total, unsigned workers,
                     const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn);

} // namespace segre
