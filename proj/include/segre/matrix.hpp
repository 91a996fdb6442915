// Dense matrices over GF(q), row-major, with the linear algebra needed for
// the flag-geometry codes: rank / kernels, eigenspace profiles, coset
// representatives modulo scalar matrices, and the spread criterion.
//
// Convention used throughout: eigenvectors are LEFT eigenvectors, i.e. row
// vectors xi with xi * M = lambda * xi, and kernels are left kernels
// { xi : xi * M = 0 } unless said otherwise.  This matches the geometry,
// where hyperplanes act from the left.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "segre/field.hpp"

namespace segre {

class Matrix {
public:
    Matrix() : f_(nullptr), rows_(0), cols_(0) {}
    Matrix(const Field& f, std::uint32_t rows, std::uint32_t cols)
        : f_(&f), rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0) {}

    static Matrix identity(const Field& f, std::uint32_t n);
    // Elementary matrix with a single 1 in position (i, j), 0-based.
    static Matrix unit(const Field& f, std::uint32_t n, std::uint32_t i, std::uint32_t j);
    // Companion matrix of a monic polynomial (coefficients ascending, the
    // leading 1 included): subdiagonal 1s, last column -c_0 .. -c_{m-1}.
    static Matrix companion(const Field& f, const std::vector<Fe>& monic);

    const Field& field() const { return *f_; }
    std::uint32_t rows() const { return rows_; }
    std::uint32_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Fe operator()(std::uint32_t i, std::uint32_t j) const { return a_[std::size_t(i) * cols_ + j]; }
    Fe& operator()(std::uint32_t i, std::uint32_t j) { return a_[std::size_t(i) * cols_ + j]; }
    const std::vector<Fe>& data() const { return a_; }
    std::vector<Fe>& data() { return a_; }

    bool operator==(const Matrix& o) const;

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix scaled(Fe c) const;
    Matrix transposed() const;

    Fe trace() const;
    bool is_zero() const;
    // True iff M = c*I for some c (including c = 0).
    bool is_scalar() const;

    std::uint32_t rank() const;
    Matrix inverse() const; // throws std::domain_error if singular

    std::string to_string() const; // [r0; r1; ...] with comma-separated codes

private:
    const Field* f_;
    std::uint32_t rows_, cols_;
    std::vector<Fe> a_;

    void check_same_shape(const Matrix& o) const;
};

// row * M (row vector of length M.rows()).
std::vector<Fe> row_times_matrix(const std::vector<Fe>& row, const Matrix& M);
// M * col.
std::vector<Fe> matrix_times_col(const Matrix& M, const std::vector<Fe>& col);

// Incremental row-space accumulator: feed vectors, watch the rank grow.
// Rows are kept reduced with leading 1s, so insertion is deterministic.
class RowSpan {
public:
    RowSpan(const Field& f, std::uint32_t len) : f_(&f), len_(len) {}

    // Returns true if v was independent of what came before.
    bool insert(std::vector<Fe> v);
    std::uint32_t rank() const { return std::uint32_t(rows_.size()); }
    void clear() { rows_.clear(); leads_.clear(); }

private:
    const Field* f_;
    std::uint32_t len_;
    std::vector<std::vector<Fe>> rows_;
    std::vector<std::uint32_t> leads_;
};

// dim { xi : xi * M = 0 } = rows - rank.
std::uint32_t left_kernel_dim(const Matrix& M);
// Rows form a reduced-echelon basis of the left kernel.
Matrix left_kernel_basis(const Matrix& M);

// Saturation form f(A, B) = Tr(A * B); the nondegenerate bilinear form the
// duality of the construction runs through.
Fe saturation_form(const Matrix& A, const Matrix& B);

// Left eigenspace structure over the base field only.
//
// dims:           eigenspace dimensions g_1 <= ... <= g_t (ties broken by
//                 eigenvalue code so the report is deterministic)
// eigenvalues:    matching eigenvalues
// nu:             sum of (q^{g_i} - 1) = number of nonzero left eigenvectors
// theta:          nu / (q - 1)         = number of eigenvector points
// diagonalizable: sum g_i = order
struct EigenProfile {
    std::vector<std::uint32_t> dims;
    std::vector<Fe> eigenvalues;
    std::uint64_t nu = 0;
    std::uint64_t theta = 0;
    bool diagonalizable = false;
};

EigenProfile eigen_profile(const Matrix& M);

// g^{-1} * M * g.  Throws std::domain_error if g is singular.
Matrix conjugate(const Matrix& M, const Matrix& g);

// Canonical representative of M modulo scalar matrices <I>:
//  - char(F) does not divide the order: the trace-zero element of M + <I>
//  - char(F) divides the order:         the element with zero (0,0) entry
// Idempotent; two matrices get equal representatives iff they differ by a
// scalar matrix.
Matrix canonical_coset_rep(const Matrix& M);

// Degree of the minimal polynomial of M.
std::uint32_t min_poly_degree(const Matrix& M);

// True iff M has no eigenvalue in GF(q) and every nonzero vector x satisfies
// M^2 x in <x, Mx> (equivalently, the right translates live on a spread of
// lines).  Checked directly on one representative per projective point.
bool spread_criterion(const Matrix& M);

// File format: header "rows cols p e", then `rows` lines of `cols` integer
// element codes, whitespace-separated.  Round-trips bit-exactly.
void write_matrix(std::ostream& os, const Matrix& M);
Matrix read_matrix(std::istream& is);
Matrix load_matrix_file(const std::string& path);
void save_matrix_file(const std::string& path, const Matrix& M);

} // namespace segre
