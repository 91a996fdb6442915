// Structural analysis of the incident-pair code: minimality of the code,
// geometric classification of codewords, the quasi-singular hyperplane
// construction, and the action of PGL on codewords.
//
// Minimality comes with three independent oracles so they can be played
// against each other:
//   cutting sets        — every hyperplane section of the projective system
//                         spans the hyperplane (rank k-1)
//   graph connectivity  — the collinearity graph induced on the complement
//                         of every hyperplane section is connected
//   pairwise supports   — no nonzero codeword's support contains another
//                         projectively distinct codeword's support
// The pairwise oracle is the definition; the first two are the geometric
// criteria.  Note the classical w_min/w_max sufficient condition is useless
// here (the ratio test fails for this family), which is what makes the
// geometric proofs worth checking numerically.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "segre/code.hpp"
#include "segre/field.hpp"
#include "segre/flags.hpp"
#include "segre/matrix.hpp"

namespace segre {

enum class WeightClass { Zero, Minimum, SecondLowest, Maximum, Intermediate };

enum class GeometricTag {
    QuasiSingularNonsingular, // coset holds a rank-1 matrix of nonzero trace
    Singular,                 // coset holds a nonzero rank-1 matrix of trace 0
    SpreadType,               // no eigenvalues, quadratic minimal polynomial
    NoEigenvalueNonSpread,    // no eigenvalues, minimal polynomial degree > 2
    Plain                     // none of the above (generic intermediate weight)
};

const char* to_string(WeightClass k);
const char* to_string(GeometricTag t);

struct CodewordClass {
    WeightClass kind;
    GeometricTag tag;
    std::uint64_t weight;
    std::uint64_t theta;
    bool has_witness = false;      // rank-1 factorization found
    std::vector<Fe> witness_point; // canonical x with coset rep ~ x * xi
    std::vector<Fe> witness_hyp;   // canonical xi
};

// Classifies the codeword of M (order n+1 matrix) in the Lambda1 code.
CodewordClass classify(const Matrix& M);

enum class MinimalityMethod { CuttingSet, GraphConnectivity, PairwiseSupport };

struct MinimalityReport {
    MinimalityMethod method;
    bool minimal;
    std::uint64_t checked;              // hyperplanes (first two) or word pairs
    std::vector<std::string> witnesses; // failure descriptions, empty when minimal
};

// Cutting-set oracle over every hyperplane section of the code; hyperplanes
// are enumerated as projective representatives of the coset space.  Requires
// at most 2^22 of them, otherwise throws std::length_error (use the pairwise
// oracle on a sample instead).
MinimalityReport is_minimal_cutting_set(const FlagSystem& sys, unsigned threads = 1);

// Connectivity of the collinearity graph induced on the support of encode(M)
// (equivalently, on the complement of M's hyperplane section).
bool complement_connected(const FlagSystem& sys, const Matrix& M);

// The connectivity oracle swept over every hyperplane section; same cap as
// the cutting-set oracle.
MinimalityReport connectivity_minimality(const FlagSystem& sys, unsigned threads = 1);

// Definition-level oracle on an explicit generator matrix: enumerates all
// (q^k - 1)/(q - 1) projective codewords and tests support containment for
// every ordered pair.  Requires q^k <= 2^16.
MinimalityReport pairwise_support_minimality(const Matrix& G);
// Same, on the code of a flag system.
MinimalityReport pairwise_support_minimality(const FlagSystem& sys);

// Flags collinear with the pencil of p and A: the set M_p u M_A together
// with everything collinear to it.  Returns sorted flag indices.  This is
// the quasi-singular hyperplane H_{p,A}; it coincides with the hyperplane
// section of the rank-1 matrix p*A (checked exhaustively in the tests).
std::vector<std::uint32_t> quasi_singular_hyperplane(const FlagSystem& sys,
                                                     std::uint32_t point, std::uint32_t hyp);

// Verifies that conjugation by g permutes codewords the way the flag action
// says: with (pi, s) = flag_permutation(g),
//
//   encode(g^{-1} M g)[i] = s_i * encode(M)[pi(i)]   for every position i.
//
// Over GF(2) every s_i is 1 and this is the plain permutation identity.
bool automorphism_check(const FlagSystem& sys, const Matrix& g, const Matrix& M);

struct Fraction {
    std::uint64_t num, den; // reduced
};

struct AbRatio {
    Fraction ratio; // w_max / w_min
    Fraction bound; // q / (q-1)
    int cmp;        // -1, 0, +1: ratio vs bound (exact rational comparison)
};

AbRatio ab_ratio(int n, const Field& f);

// ---- verification bundles (the `verify` command) -------------------------

struct CheckResult {
    std::string name;
    bool pass;
    std::vector<std::pair<std::string, std::uint64_t>> counters;
    std::vector<std::string> witnesses;
};

CheckResult check_minimality(const FlagSystem& sys, unsigned threads = 1);
CheckResult check_weights(int n, const Field& f, std::uint64_t seed, unsigned threads = 1);
CheckResult check_identities(const FlagSystem& sys, std::uint64_t seed);
CheckResult check_automorphism(const FlagSystem& sys, std::uint64_t seed, unsigned pairs = 100);
CheckResult check_classification(int n, const Field& f, unsigned threads = 1);

} // namespace segre
