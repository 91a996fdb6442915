#include "segre/matrix.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace segre {

Matrix Matrix::identity(const Field& f, std::uint32_t n) {
    Matrix m(f, n, n);
    for (std::uint32_t i = 0; i < n; i++) m(i, i) = 1;
    return m;
}

Matrix Matrix::unit(const Field& f, std::uint32_t n, std::uint32_t i, std::uint32_t j) {
    Matrix m(f, n, n);
    m(i, j) = 1;
    return m;
}

Matrix Matrix::companion(const Field& f, const std::vector<Fe>& monic) {
    if (monic.size() < 2 || monic.back() != 1)
        throw std::invalid_argument("companion: need a monic polynomial of degree >= 1");
    std::uint32_t m = std::uint32_t(monic.size()) - 1;
    Matrix C(f, m, m);
    for (std::uint32_t i = 0; i + 1 < m; i++) C(i + 1, i) = 1;
    for (std::uint32_t i = 0; i < m; i++) C(i, m - 1) = f.neg(monic[i]);
    return C;
}

void Matrix::check_same_shape(const Matrix& o) const {
    if (!f_ || !o.f_ || !f_->same_as(*o.f_))
        throw std::invalid_argument("matrix operands over different fields");
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix shape mismatch");
}

bool Matrix::operator==(const Matrix& o) const {
    return f_ && o.f_ && f_->same_as(*o.f_) && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Matrix Matrix::operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(*f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); i++) r.a_[i] = f_->add(a_[i], o.a_[i]);
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(*f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); i++) r.a_[i] = f_->sub(a_[i], o.a_[i]);
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (!f_ || !o.f_ || !f_->same_as(*o.f_))
        throw std::invalid_argument("matrix operands over different fields");
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch in product");
    Matrix r(*f_, rows_, o.cols_);
    for (std::uint32_t i = 0; i < rows_; i++)
        for (std::uint32_t k = 0; k < cols_; k++) {
            Fe aik = (*this)(i, k);
            if (aik == 0) continue;
            for (std::uint32_t j = 0; j < o.cols_; j++)
                r(i, j) = f_->add(r(i, j), f_->mul(aik, o(k, j)));
        }
    return r;
}

Matrix Matrix::scaled(Fe c) const {
    Matrix r(*f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); i++) r.a_[i] = f_->mul(a_[i], c);
    return r;
}

Matrix Matrix::transposed() const {
    Matrix r(*f_, cols_, rows_);
    for (std::uint32_t i = 0; i < rows_; i++)
        for (std::uint32_t j = 0; j < cols_; j++) r(j, i) = (*this)(i, j);
    return r;
}

Fe Matrix::trace() const {
    if (!square()) throw std::invalid_argument("trace of a non-square matrix");
    Fe t = 0;
    for (std::uint32_t i = 0; i < rows_; i++) t = f_->add(t, (*this)(i, i));
    return t;
}

bool Matrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](Fe x) { return x == 0; });
}

bool Matrix::is_scalar() const {
    if (!square()) return false;
    Fe c = (*this)(0, 0);
    for (std::uint32_t i = 0; i < rows_; i++)
        for (std::uint32_t j = 0; j < cols_; j++)
            if ((*this)(i, j) != (i == j ? c : Fe(0))) return false;
    return true;
}

namespace {

// In-place reduced row echelon form; returns pivot column per pivot row.
// Pivot choice is the first row with a nonzero entry in the scan column, so
// the result is deterministic.
std::vector<std::uint32_t> rref_in_place(const Field& f, std::vector<Fe>& a,
                                         std::uint32_t rows, std::uint32_t cols) {
    std::vector<std::uint32_t> pivots;
    std::uint32_t r = 0;
    for (std::uint32_t c = 0; c < cols && r < rows; c++) {
        std::uint32_t sel = r;
        while (sel < rows && a[std::size_t(sel) * cols + c] == 0) sel++;
        if (sel == rows) continue;
        if (sel != r)
            for (std::uint32_t j = 0; j < cols; j++)
                std::swap(a[std::size_t(sel) * cols + j], a[std::size_t(r) * cols + j]);
        Fe piv = a[std::size_t(r) * cols + c];
        if (piv != 1) {
            Fe pi = f.inv(piv);
            for (std::uint32_t j = c; j < cols; j++)
                a[std::size_t(r) * cols + j] = f.mul(a[std::size_t(r) * cols + j], pi);
        }
        for (std::uint32_t i = 0; i < rows; i++) {
            if (i == r) continue;
            Fe factor = a[std::size_t(i) * cols + c];
            if (factor == 0) continue;
            for (std::uint32_t j = c; j < cols; j++)
                a[std::size_t(i) * cols + j] =
                    f.sub(a[std::size_t(i) * cols + j], f.mul(factor, a[std::size_t(r) * cols + j]));
        }
        pivots.push_back(c);
        r++;
    }
    return pivots;
}

} // namespace

std::uint32_t Matrix::rank() const {
    std::vector<Fe> work = a_;
    return std::uint32_t(rref_in_place(*f_, work, rows_, cols_).size());
}

Matrix Matrix::inverse() const {
    if (!square()) throw std::invalid_argument("inverse of a non-square matrix");
    std::uint32_t n = rows_;
    std::vector<Fe> aug(std::size_t(n) * 2 * n, 0);
    for (std::uint32_t i = 0; i < n; i++) {
        for (std::uint32_t j = 0; j < n; j++) aug[std::size_t(i) * 2 * n + j] = (*this)(i, j);
        aug[std::size_t(i) * 2 * n + n + i] = 1;
    }
    auto pivots = rref_in_place(*f_, aug, n, 2 * n);
    if (pivots.size() != n || pivots.back() >= n)
        throw std::domain_error("matrix is singular");
    Matrix r(*f_, n, n);
    for (std::uint32_t i = 0; i < n; i++)
        for (std::uint32_t j = 0; j < n; j++) r(i, j) = aug[std::size_t(i) * 2 * n + n + j];
    return r;
}

std::vector<Fe> row_times_matrix(const std::vector<Fe>& row, const Matrix& M) {
    if (row.size() != M.rows()) throw std::invalid_argument("row * M shape mismatch");
    const Field& f = M.field();
    std::vector<Fe> out(M.cols(), 0);
    for (std::uint32_t i = 0; i < M.rows(); i++) {
        Fe ri = row[i];
        if (ri == 0) continue;
        for (std::uint32_t j = 0; j < M.cols(); j++)
            out[j] = f.add(out[j], f.mul(ri, M(i, j)));
    }
    return out;
}

std::vector<Fe> matrix_times_col(const Matrix& M, const std::vector<Fe>& col) {
    if (col.size() != M.cols()) throw std::invalid_argument("M * col shape mismatch");
    const Field& f = M.field();
    std::vector<Fe> out(M.rows(), 0);
    for (std::uint32_t i = 0; i < M.rows(); i++) {
        Fe acc = 0;
        for (std::uint32_t j = 0; j < M.cols(); j++) acc = f.add(acc, f.mul(M(i, j), col[j]));
        out[i] = acc;
    }
    return out;
}

std::uint32_t left_kernel_dim(const Matrix& M) {
    return M.rows() - M.rank();
}

Matrix left_kernel_basis(const Matrix& M) {
    // xi * M = 0  <=>  M^T xi^T = 0: read the right kernel off the RREF of M^T.
    const Field& f = M.field();
    Matrix t = M.transposed();
    std::vector<Fe> work = t.data();
    auto pivots = rref_in_place(f, work, t.rows(), t.cols());
    std::vector<bool> is_pivot(t.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;

    std::uint32_t dim = t.cols() - std::uint32_t(pivots.size());
    Matrix basis(f, dim, t.cols());
    std::uint32_t row = 0;
    for (std::uint32_t free = 0; free < t.cols(); free++) {
        if (is_pivot[free]) continue;
        basis(row, free) = 1;
        for (std::uint32_t pi = 0; pi < pivots.size(); pi++)
            basis(row, pivots[pi]) = f.neg(work[std::size_t(pi) * t.cols() + free]);
        row++;
    }
    // Normalize to reduced echelon form so the basis is canonical.
    std::vector<Fe> bwork = basis.data();
    rref_in_place(f, bwork, basis.rows(), basis.cols());
    basis.data() = bwork;
    return basis;
}

Fe saturation_form(const Matrix& A, const Matrix& B) {
    if (!A.square() || !B.square() || A.rows() != B.rows())
        throw std::invalid_argument("saturation form needs square matrices of equal order");
    const Field& f = A.field();
    Fe t = 0;
    for (std::uint32_t i = 0; i < A.rows(); i++)
        for (std::uint32_t j = 0; j < A.cols(); j++)
            t = f.add(t, f.mul(A(i, j), B(j, i)));
    return t;
}

EigenProfile eigen_profile(const Matrix& M) {
    if (!M.square()) throw std::invalid_argument("eigen profile of a non-square matrix");
    const Field& f = M.field();
    std::uint32_t n = M.rows();
    EigenProfile ep;
    std::vector<std::pair<std::uint32_t, Fe>> found; // (dim, lambda)
    Matrix shifted = M;
    for (std::uint32_t lam = 0; lam < f.q(); lam++) {
        for (std::uint32_t i = 0; i < n; i++) shifted(i, i) = f.sub(M(i, i), Fe(lam));
        std::uint32_t g = n - shifted.rank();
        if (g > 0) found.emplace_back(g, Fe(lam));
    }
    std::sort(found.begin(), found.end()); // by dim, then eigenvalue code
    std::uint64_t total = 0, nu = 0;
    for (auto& [g, lam] : found) {
        ep.dims.push_back(g);
        ep.eigenvalues.push_back(lam);
        total += g;
        std::uint64_t qg = 1;
        for (std::uint32_t i = 0; i < g; i++) qg *= f.q();
        nu += qg - 1;
    }
    ep.nu = nu;
    ep.theta = nu / (f.q() - 1); // each q^g - 1 is divisible by q - 1
    ep.diagonalizable = (total == n);
    return ep;
}

Matrix conjugate(const Matrix& M, const Matrix& g) {
    if (!M.square() || !g.square() || M.rows() != g.rows())
        throw std::invalid_argument("conjugate needs square matrices of equal order");
    return g.inverse() * M * g;
}

Matrix canonical_coset_rep(const Matrix& M) {
    if (!M.square()) throw std::invalid_argument("coset representative of a non-square matrix");
    const Field& f = M.field();
    std::uint32_t n = M.rows();
    Fe c;
    if (n % f.p() != 0) {
        c = f.div(M.trace(), f.from_int(n)); // the trace-zero element of M + <I>
    } else {
        c = M(0, 0); // trace is blind to <I> here; pin the (0,0) entry instead
    }
    Matrix r = M;
    for (std::uint32_t i = 0; i < n; i++) r(i, i) = f.sub(M(i, i), c);
    return r;
}

bool RowSpan::insert(std::vector<Fe> v) {
    const Field& f = *f_;
    for (std::size_t i = 0; i < rows_.size(); i++) {
        Fe c = v[leads_[i]];
        if (c == 0) continue;
        const auto& row = rows_[i];
        for (std::uint32_t j = leads_[i]; j < len_; j++)
            v[j] = f.sub(v[j], f.mul(c, row[j]));
    }
    std::uint32_t lead = len_;
    for (std::uint32_t j = 0; j < len_; j++)
        if (v[j] != 0) { lead = j; break; }
    if (lead == len_) return false;
    if (v[lead] != 1) {
        Fe pi = f.inv(v[lead]);
        for (std::uint32_t j = lead; j < len_; j++) v[j] = f.mul(v[j], pi);
    }
    rows_.push_back(std::move(v));
    leads_.push_back(lead);
    return true;
}

std::uint32_t min_poly_degree(const Matrix& M) {
    if (!M.square()) throw std::invalid_argument("minimal polynomial of a non-square matrix");
    const Field& f = M.field();
    std::uint32_t n = M.rows();
    RowSpan span(f, n * n);
    Matrix power = Matrix::identity(f, n);
    std::uint32_t d = 0;
    for (;;) {
        if (!span.insert(power.data())) return d; // M^d fell into <I, ..., M^{d-1}>
        d++;
        power = power * M;
    }
}

bool spread_criterion(const Matrix& M) {
    if (!M.square()) throw std::invalid_argument("spread criterion on a non-square matrix");
    const Field& f = M.field();
    std::uint32_t n = M.rows();

    if (!eigen_profile(M).dims.empty()) return false;

    // One representative per projective point: first nonzero coordinate 1.
    std::vector<Fe> x(n, 0);
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < n; i++) total *= f.q();
    for (std::uint64_t t = 1; t < total; t++) {
        std::uint64_t v = t;
        bool canonical = false;
        for (std::uint32_t i = 0; i < n; i++) {
            x[i] = Fe(v % f.q());
            v /= f.q();
        }
        for (std::uint32_t i = 0; i < n; i++) {
            if (x[i] != 0) { canonical = (x[i] == 1); break; }
        }
        if (!canonical) continue;
        std::vector<Fe> mx = matrix_times_col(M, x);
        std::vector<Fe> mmx = matrix_times_col(M, mx);
        RowSpan span(f, n);
        span.insert(x);
        span.insert(mx);
        if (span.insert(std::move(mmx))) return false; // M^2 x escaped <x, Mx>
    }
    return true;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::uint32_t i = 0; i < rows_; i++) {
        if (i) os << "; ";
        for (std::uint32_t j = 0; j < cols_; j++) {
            if (j) os << ',';
            os << (*this)(i, j);
        }
    }
    os << ']';
    return os.str();
}

void write_matrix(std::ostream& os, const Matrix& M) {
    os << M.rows() << ' ' << M.cols() << ' ' << M.field().p() << ' ' << M.field().e() << '\n';
    for (std::uint32_t i = 0; i < M.rows(); i++) {
        for (std::uint32_t j = 0; j < M.cols(); j++) {
            if (j) os << ' ';
            os << M(i, j);
        }
        os << '\n';
    }
}

Matrix read_matrix(std::istream& is) {
    std::uint32_t rows, cols, p, e;
    if (!(is >> rows >> cols >> p >> e))
        throw std::runtime_error("matrix file: bad header (want: rows cols p e)");
    const Field& f = shared_field(p, e);
    Matrix M(f, rows, cols);
    for (std::uint32_t i = 0; i < rows; i++)
        for (std::uint32_t j = 0; j < cols; j++) {
            std::uint32_t v;
            if (!(is >> v)) throw std::runtime_error("matrix file: truncated entries");
            if (v >= f.q()) throw std::runtime_error("matrix file: element code out of range");
            M(i, j) = Fe(v);
        }
    return M;
}

Matrix load_matrix_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open matrix file: " + path);
    return read_matrix(is);
}

void save_matrix_file(const std::string& path, const Matrix& M) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write matrix file: " + path);
    write_matrix(os, M);
}

} // namespace segre
