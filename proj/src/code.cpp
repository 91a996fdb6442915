#include "segre/code.hpp"

#include "segre/rng.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace segre {

std::uint64_t geom_sum(std::uint32_t q, std::uint32_t m) {
    std::uint64_t s = 0, pw = 1;
    for (std::uint32_t i = 0; i < m; i++) {
        s += pw;
        pw *= q;
    }
    return s;
}

namespace {

std::uint64_t upow(std::uint32_t q, std::uint32_t m) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < m; i++) r *= q;
    return r;
}

} // namespace

CodeSummary code_params(int n, const Field& f) {
    if (n < 1) throw std::invalid_argument("projective dimension must be at least 1");
    std::uint32_t q = f.q();
    std::uint32_t un = std::uint32_t(n);
    CodeSummary s;
    s.q = q;
    s.n = n;
    s.N = geom_sum(q, un + 1) * geom_sum(q, un);
    s.k = std::uint64_t(un) * un + 2 * un;
    s.d = upow(q, 2 * un - 1) - upow(q, un - 1);
    s.w_second = upow(q, 2 * un - 1);
    s.w_max = upow(q, un - 1) * geom_sum(q, un + 1);
    return s;
}

SegreSummary segre_code_params(int n, const Field& f) {
    if (n < 1) throw std::invalid_argument("projective dimension must be at least 1");
    std::uint32_t q = f.q();
    std::uint32_t un = std::uint32_t(n);
    SegreSummary s;
    std::uint64_t g = geom_sum(q, un + 1);
    s.N = g * g;
    s.k = std::uint64_t(un + 1) * (un + 1);
    s.d = upow(q, 2 * un);
    return s;
}

std::vector<Matrix> coset_basis(int n, const Field& f) {
    std::uint32_t nn = std::uint32_t(n) + 1;
    std::vector<Matrix> basis;
    if (nn % f.p() != 0) {
        for (std::uint32_t i = 0; i < nn; i++)
            for (std::uint32_t j = 0; j < nn; j++)
                if (i != j) basis.push_back(Matrix::unit(f, nn, i, j));
        for (std::uint32_t i = 0; i + 1 < nn; i++) {
            Matrix d(f, nn, nn);
            d(i, i) = 1;
            d(i + 1, i + 1) = f.neg(1);
            basis.push_back(std::move(d));
        }
    } else {
        for (std::uint32_t i = 0; i < nn; i++)
            for (std::uint32_t j = 0; j < nn; j++)
                if (i != 0 || j != 0) basis.push_back(Matrix::unit(f, nn, i, j));
    }
    return basis;
}

std::vector<Matrix> full_basis(int n, const Field& f) {
    std::uint32_t nn = std::uint32_t(n) + 1;
    std::vector<Matrix> basis;
    for (std::uint32_t i = 0; i < nn; i++)
        for (std::uint32_t j = 0; j < nn; j++) basis.push_back(Matrix::unit(f, nn, i, j));
    return basis;
}

Matrix generator_matrix(const FlagSystem& sys) {
    const Field& f = sys.field();
    auto basis = sys.variant() == Variant::Lambda1 ? coset_basis(sys.n(), f) : full_basis(sys.n(), f);
    std::uint32_t k = std::uint32_t(basis.size());
    std::uint32_t N = std::uint32_t(sys.size());
    Matrix G(f, k, N);
    for (std::uint32_t j = 0; j < k; j++) {
        Codeword cw = encode(basis[j], sys);
        for (std::uint32_t i = 0; i < N; i++) G(j, i) = cw.values[i];
    }
    if (G.rank() != k)
        throw std::logic_error("generator matrix is rank deficient");
    return G;
}

void encode_into(const Matrix& M, const FlagSystem& sys, std::vector<Fe>& values) {
    const Field& f = sys.field();
    if (!M.field().same_as(f)) throw std::invalid_argument("encode: field mismatch");
    std::uint32_t nn = std::uint32_t(sys.n()) + 1;
    if (!M.square() || M.rows() != nn) throw std::invalid_argument("encode: matrix order mismatch");

    values.resize(sys.size());
    // Tr((x xi) M) = xi M x: walk hyperplane-major and reuse xi*M.
    const auto& flags = sys.flags();
    thread_local std::vector<Fe> rho;
    rho.assign(nn, 0);
    for (std::uint32_t h = 0; h < sys.hyps().size(); h++) {
        auto [lo, hi] = sys.hyp_range(h);
        if (lo == hi) continue;
        const auto& xi = sys.hyps()[h].coords;
        std::fill(rho.begin(), rho.end(), 0);
        for (std::uint32_t i = 0; i < nn; i++) {
            if (xi[i] == 0) continue;
            for (std::uint32_t j = 0; j < nn; j++)
                rho[j] = f.add(rho[j], f.mul(xi[i], M(i, j)));
        }
        for (std::uint32_t i = lo; i < hi; i++) {
            const auto& x = sys.points()[flags[i].point].coords;
            Fe acc = 0;
            for (std::uint32_t j = 0; j < nn; j++) acc = f.add(acc, f.mul(rho[j], x[j]));
            values[i] = acc;
        }
    }
}

Codeword encode(const Matrix& M, const FlagSystem& sys) {
    Codeword cw;
    encode_into(M, sys, cw.values);
    cw.source = sys.variant() == Variant::Lambda1 ? canonical_coset_rep(M) : M;
    return cw;
}

std::uint64_t hamming_weight(const std::vector<Fe>& values) {
    std::uint64_t w = 0;
    for (auto v : values) w += (v != 0);
    return w;
}

std::uint64_t weight_formula(const Matrix& M) {
    if (!M.square() || M.rows() < 2) throw std::invalid_argument("weight formula: need order >= 2");
    if (M.is_scalar()) return 0;
    const Field& f = M.field();
    std::uint32_t un = M.rows() - 1; // n
    std::uint64_t qn1 = upow(f.q(), un - 1);
    return qn1 * geom_sum(f.q(), un + 1) - qn1 * eigen_profile(M).theta;
}

RepSpace::RepSpace(int n, const Field& f) : n_(n), f_(&f) {
    if (n < 1) throw std::invalid_argument("projective dimension must be at least 1");
    std::uint32_t nn = std::uint32_t(n) + 1;
    char_divides_ = (nn % f.p() == 0);
    for (std::uint32_t i = 0; i < nn; i++)
        for (std::uint32_t j = 0; j < nn; j++) {
            if (char_divides_ ? (i == 0 && j == 0) : (i == nn - 1 && j == nn - 1)) continue;
            free_.emplace_back(i, j);
        }
    k_ = std::uint32_t(free_.size());
}

std::uint64_t RepSpace::size() const {
    std::uint64_t s = 1;
    for (std::uint32_t i = 0; i < k_; i++) {
        if (s > (std::uint64_t(1) << 62) / f_->q())
            throw std::length_error("representative space exceeds 2^63");
        s *= f_->q();
    }
    return s;
}

std::uint64_t RepSpace::projective_size() const {
    return (size() - 1) / (f_->q() - 1);
}

void RepSpace::fill_from_digits(const Fe* digits, Matrix& M) const {
    const Field& f = *f_;
    std::uint32_t nn = std::uint32_t(n_) + 1;
    Fe diag_sum = 0;
    for (std::uint32_t c = 0; c < k_; c++) {
        auto [i, j] = free_[c];
        M(i, j) = digits[c];
        if (i == j) diag_sum = f.add(diag_sum, digits[c]);
    }
    if (char_divides_)
        M(0, 0) = 0;
    else
        M(nn - 1, nn - 1) = f.neg(diag_sum);
}

void RepSpace::fill(std::uint64_t index, Matrix& M) const {
    const Field& f = *f_;
    std::uint64_t v = index;
    thread_local std::vector<Fe> digits; // hot path: avoid reallocating per call
    digits.resize(k_);
    for (std::uint32_t c = 0; c < k_; c++) {
        digits[c] = Fe(v % f.q());
        v /= f.q();
    }
    fill_from_digits(digits.data(), M);
}

Matrix RepSpace::matrix_at(std::uint64_t index) const {
    Matrix M(*f_, std::uint32_t(n_) + 1, std::uint32_t(n_) + 1);
    fill(index, M);
    return M;
}

void RepSpace::fill_projective(std::uint64_t pindex, Matrix& M) const {
    // Lead cell l gets value 1, cells before it 0, the q^{k-1-l} tails follow
    // in index order.
    const Field& f = *f_;
    std::uint64_t block = 1;
    for (std::uint32_t i = 0; i + 1 < k_; i++) block *= f.q(); // q^{k-1}
    std::uint32_t lead = 0;
    while (pindex >= block) {
        pindex -= block;
        block /= f.q();
        lead++;
        if (lead >= k_) throw std::out_of_range("projective index out of range");
    }
    // Rebuild the plain index: zeros below lead, 1 at lead, digits of pindex above.
    std::uint64_t qpow = 1;
    for (std::uint32_t i = 0; i < lead; i++) qpow *= f.q();
    std::uint64_t index = qpow + pindex * (qpow * f.q());
    fill(index, M);
}

Matrix RepSpace::projective_at(std::uint64_t pindex) const {
    Matrix M(*f_, std::uint32_t(n_) + 1, std::uint32_t(n_) + 1);
    fill_projective(pindex, M);
    return M;
}

std::string profile_to_string(const Profile& p) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.size(); i++) {
        if (i) os << ',';
        os << p[i];
    }
    os << ')';
    return os.str();
}

SpectrumReport theoretical_weight_list(int n, const Field& f) {
    CodeSummary ps = code_params(n, f);
    std::uint32_t q = f.q();
    std::uint64_t qn1 = upow(q, std::uint32_t(n) - 1);

    SpectrumReport rep;
    rep.mode = SpectrumMode::Formula;
    std::set<std::uint64_t> wset{0};

    // Depth-first over nondecreasing tuples, lex order.
    Profile cur;
    std::uint32_t budget = std::uint32_t(n) + 1;
    auto emit = [&](const Profile& prof) {
        if (prof.size() == 1 && prof[0] == budget) return; // scalar-only profile
        std::uint64_t theta = 0;
        for (auto g : prof) theta += geom_sum(q, g);
        std::uint64_t w = ps.w_max - qn1 * theta;
        rep.profiles.emplace_back(prof, w);
        wset.insert(w);
    };
    std::function<void(std::uint32_t, std::uint32_t)> walk = [&](std::uint32_t low, std::uint32_t left) {
        emit(cur);
        if (cur.size() == q) return; // at most q distinct eigenvalues
        for (std::uint32_t g = low; g <= left; g++) {
            cur.push_back(g);
            walk(g, left - g);
            cur.pop_back();
        }
    };
    walk(1, budget);

    rep.weights.assign(wset.begin(), wset.end());
    return rep;
}

void parallel_ranges(std::uint64_t total, unsigned workers,
                     const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn) {
    if (workers <= 1 || total < 2) {
        fn(0, 0, total);
        return;
    }
    if (workers > total) workers = unsigned(total);
    std::vector<std::thread> pool;
    std::uint64_t chunk = total / workers, extra = total % workers, lo = 0;
    for (unsigned w = 0; w < workers; w++) {
        std::uint64_t hi = lo + chunk + (w < extra ? 1 : 0);
        pool.emplace_back(fn, w, lo, hi);
        lo = hi;
    }
    for (auto& t : pool) t.join();
}

SpectrumReport exhaustive_spectrum(int n, const Field& f, unsigned threads) {
    RepSpace rs(n, f);
    std::uint64_t total = rs.size();
    if (total > (std::uint64_t(1) << 25))
        throw std::length_error("representative space exceeds the 2^25 exhaustive cap");
    if (threads == 0) threads = 1;

    std::vector<std::map<std::uint64_t, std::uint64_t>> partial(threads);
    parallel_ranges(total, threads, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        Matrix M(f, std::uint32_t(n) + 1, std::uint32_t(n) + 1);
        auto& counts = partial[w];
        for (std::uint64_t t = lo; t < hi; t++) {
            rs.fill(t, M);
            counts[weight_formula(M)]++;
        }
    });

    SpectrumReport rep;
    rep.mode = SpectrumMode::Exhaustive;
    for (auto& m : partial)
        for (auto& [w, c] : m) rep.counts[w] += c;
    for (auto& [w, c] : rep.counts) rep.weights.push_back(w);
    return rep;
}

SpectrumReport sampled_spectrum(int n, const Field& f, std::uint64_t sample_size,
                                std::uint64_t seed, unsigned threads) {
    RepSpace rs(n, f);
    if (threads == 0) threads = 1;
    std::uint32_t k = rs.dim();

    // Draw every sample up front on one stream: the census cannot depend on
    // the worker count.
    std::vector<Fe> digits(sample_size * k);
    Lcg64 rng(seed);
    for (auto& d : digits) d = rng.next_element(f);

    std::uint32_t nn = std::uint32_t(n) + 1;
    std::vector<std::map<std::uint64_t, std::uint64_t>> partial(threads);
    parallel_ranges(sample_size, threads, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        Matrix M(f, nn, nn);
        auto& counts = partial[w];
        for (std::uint64_t s = lo; s < hi; s++) {
            rs.fill_from_digits(digits.data() + s * k, M);
            counts[weight_formula(M)]++;
        }
    });

    SpectrumReport rep;
    rep.mode = SpectrumMode::Sampled;
    for (auto& m : partial)
        for (auto& [w, c] : m) rep.counts[w] += c;
    for (auto& [w, c] : rep.counts) rep.weights.push_back(w);
    return rep;
}

} // namespace segre
