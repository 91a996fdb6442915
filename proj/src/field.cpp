#include "segre/field.hpp"

#include <algorithm>
#include <deque>
#include <mutex>

namespace segre {
namespace {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; d++)
        if (p % d == 0) return false;
    return true;
}

// Dense polynomials over GF(p), coefficients ascending, no trailing zeros
// maintained by callers where it matters.
using Poly = std::vector<std::uint32_t>;

int degree(const Poly& f) {
    for (int i = int(f.size()) - 1; i >= 0; i--)
        if (f[std::size_t(i)] != 0) return i;
    return -1;
}

// f mod g, g monic of degree dg >= 1.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
    int dg = degree(g);
    for (int i = degree(f); i >= dg; i--) {
        std::uint32_t c = f[std::size_t(i)];
        if (c == 0) continue;
        for (int j = 0; j <= dg; j++) {
            std::uint32_t& fj = f[std::size_t(i - dg + j)];
            fj = (fj + std::uint64_t(p - 1) * c % p * g[std::size_t(j)]) % p;
        }
    }
    f.resize(std::size_t(dg));
    return f;
}

// Trial division: irreducible iff no monic divisor of degree 1..deg/2.
// Candidate divisors are enumerated as base-p odometers.
bool poly_irreducible(const Poly& f, std::uint32_t p) {
    int df = degree(f);
    if (df < 1) return false;
    for (int d = 1; 2 * d <= df; d++) {
        Poly g(std::size_t(d) + 1, 0);
        g[std::size_t(d)] = 1; // monic
        std::uint64_t count = 1;
        for (int i = 0; i < d; i++) count *= p;
        for (std::uint64_t t = 0; t < count; t++) {
            std::uint64_t v = t;
            for (int i = 0; i < d; i++) { g[std::size_t(i)] = std::uint32_t(v % p); v /= p; }
            if (degree(poly_mod(f, g, p)) < 0) return false;
        }
    }
    return true;
}

} // namespace

Field::Field(std::uint32_t p, std::uint32_t e) : p_(p), e_(e) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (e == 0) throw std::invalid_argument("field extension degree must be positive");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; i++) {
        q *= p;
        if (q > 65536) throw std::length_error("field order exceeds 2^16");
    }
    q_ = std::uint32_t(q);

    if (e_ == 1) {
        mod_ = {0, 1}; // placeholder: the polynomial x
    } else {
        // Lexicographically smallest monic irreducible of degree e over GF(p):
        // scan coefficient sequences (c0, ..., c_{e-1}) in lex order with c0
        // most significant, first hit wins.
        Poly f(e_ + 1, 0);
        f[e_] = 1;
        std::vector<std::uint32_t> c(e_, 0);
        for (;;) {
            for (std::uint32_t i = 0; i < e_; i++) f[i] = c[i];
            if (poly_irreducible(f, p_)) break;
            int i = int(e_) - 1; // increment from the last (least significant) slot
            while (i >= 0 && ++c[std::size_t(i)] == p_) c[std::size_t(i--)] = 0;
            if (i < 0) throw std::logic_error("no irreducible polynomial found"); // unreachable
        }
        mod_.assign(f.begin(), f.end());
    }

    // neg table.
    neg_tab_.resize(q_);
    for (std::uint32_t a = 0; a < q_; a++) {
        std::uint32_t r = 0, pw = 1;
        std::uint32_t v = a;
        for (std::uint32_t i = 0; i < e_; i++) {
            std::uint32_t d = v % p_;
            v /= p_;
            r += ((p_ - d) % p_) * pw;
            pw *= p_;
        }
        neg_tab_[a] = Fe(r);
    }

    tabled_ = q_ <= 1024;
    if (tabled_) {
        add_tab_.resize(std::size_t(q_) * q_);
        mul_tab_.resize(std::size_t(q_) * q_);
        for (std::uint32_t a = 0; a < q_; a++)
            for (std::uint32_t b = 0; b < q_; b++) {
                add_tab_[std::size_t(a) * q_ + b] = add_slow(Fe(a), Fe(b));
                mul_tab_[std::size_t(a) * q_ + b] = mul_slow(Fe(a), Fe(b));
            }
    }

    // inv table via a^(q-2); untabled fields compute it on demand instead.
    if (tabled_) {
        inv_tab_.assign(q_, 0);
        for (std::uint32_t a = 1; a < q_; a++) inv_tab_[a] = pow(Fe(a), q_ - 2);
    }
}

Field Field::from_order(std::uint32_t q) {
    if (q < 2) throw std::invalid_argument("field order must be at least 2");
    std::uint32_t p = 2;
    while (q % p != 0) {
        p++;
        if (std::uint64_t(p) * p > q) { p = q; break; }
    }
    std::uint32_t e = 0, v = q;
    while (v % p == 0) { v /= p; e++; }
    if (v != 1) throw std::invalid_argument("field order is not a prime power");
    return Field(p, e);
}

Fe Field::add_slow(Fe a, Fe b) const {
    std::uint32_t r = 0, pw = 1, va = a, vb = b;
    for (std::uint32_t i = 0; i < e_; i++) {
        r += (va % p_ + vb % p_) % p_ * pw;
        va /= p_;
        vb /= p_;
        pw *= p_;
    }
    return Fe(r);
}

Fe Field::mul_slow(Fe a, Fe b) const {
    if (e_ == 1) return Fe(std::uint64_t(a) * b % p_);
    // Schoolbook product of the coefficient vectors, then reduce.
    std::vector<std::uint32_t> ca(e_), cb(e_), prod(2 * e_ - 1, 0);
    std::uint32_t va = a, vb = b;
    for (std::uint32_t i = 0; i < e_; i++) { ca[i] = va % p_; va /= p_; cb[i] = vb % p_; vb /= p_; }
    for (std::uint32_t i = 0; i < e_; i++)
        for (std::uint32_t j = 0; j < e_; j++)
            prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
    // Reduce degree by degree using x^e = -(mod_ lower part).
    for (int d = int(prod.size()) - 1; d >= int(e_); d--) {
        std::uint32_t c = prod[std::size_t(d)];
        if (c == 0) continue;
        prod[std::size_t(d)] = 0;
        for (std::uint32_t j = 0; j < e_; j++) {
            std::uint32_t sub = c * mod_[j] % p_;
            std::uint32_t& t = prod[std::size_t(d) - e_ + j];
            t = (t + p_ - sub) % p_;
        }
    }
    std::uint32_t r = 0, pw = 1;
    for (std::uint32_t i = 0; i < e_; i++) { r += prod[i] * pw; pw *= p_; }
    return Fe(r);
}

Fe Field::pow(Fe a, std::uint64_t m) const {
    Fe r = 1, base = a;
    while (m) {
        if (m & 1) r = mul(r, base);
        base = mul(base, base);
        m >>= 1;
    }
    return r;
}

std::vector<Fe> Field::elements() const {
    std::vector<Fe> v(q_);
    for (std::uint32_t a = 0; a < q_; a++) v[a] = Fe(a);
    return v;
}

const Field& shared_field(std::uint32_t p, std::uint32_t e) {
    static std::mutex mtx;
    static std::deque<Field> pool; // deque: stable addresses
    std::lock_guard<std::mutex> lock(mtx);
    for (const auto& f : pool)
        if (f.p() == p && f.e() == e) return f;
    pool.emplace_back(p, e);
    return pool.back();
}

const Field& shared_field_of_order(std::uint32_t q) {
    Field probe = Field::from_order(q); // validates and factors
    return shared_field(probe.p(), probe.e());
}

} // namespace segre
