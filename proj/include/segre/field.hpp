// Arithmetic in GF(q), q = p^e <= 2^16.
//
// Elements are stored as integer codes in [0, q): the code of
// a0 + a1*t + ... + a_{e-1}*t^{e-1} (t = class of x mod the modulus) is
// a0 + a1*p + ... + a_{e-1}*p^{e-1}.  For e = 1 the code is just the residue.
//
// The modulus is not user-selectable: we always take the lexicographically
// smallest monic irreducible polynomial of degree e over GF(p), comparing
// coefficient sequences from the constant term upward.  Two Field objects
// with the same (p, e) are therefore interchangeable, and element codes are
// portable across runs and implementations.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace segre {

using Fe = std::uint16_t; // element code, < q

class Field {
public:
    // GF(p^e) with the canonical modulus.  Throws std::invalid_argument if p
    // is not prime or e == 0, std::length_error if p^e > 65536.
    Field(std::uint32_t p, std::uint32_t e);

    // Factors q as p^e (p prime) and delegates; throws if q is not a prime power.
    static Field from_order(std::uint32_t q);

    std::uint32_t p() const { return p_; }
    std::uint32_t e() const { return e_; }
    std::uint32_t q() const { return q_; }

    // Monic modulus, e+1 coefficients, ascending degree (constant term first).
    // For e = 1 this is {0, 1}, i.e. the polynomial x.
    const std::vector<Fe>& modulus() const { return mod_; }

    bool same_as(const Field& o) const { return p_ == o.p_ && e_ == o.e_; }

    Fe add(Fe a, Fe b) const {
        return tabled_ ? add_tab_[std::size_t(a) * q_ + b] : add_slow(a, b);
    }
    Fe mul(Fe a, Fe b) const {
        return tabled_ ? mul_tab_[std::size_t(a) * q_ + b] : mul_slow(a, b);
    }
    Fe neg(Fe a) const { return neg_tab_[a]; }
    Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }

    // Throws std::domain_error on a = 0.
    Fe inv(Fe a) const {
        if (a == 0) throw std::domain_error("division by zero in GF(q)");
        return tabled_ ? inv_tab_[a] : pow(a, q_ - 2);
    }
    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }

    Fe pow(Fe a, std::uint64_t m) const;

    // Code of the residue r mod p embedded in the prime subfield.
    Fe from_int(std::uint64_t r) const { return Fe(r % p_); }

    std::vector<Fe> elements() const; // 0, 1, ..., q-1

private:
    std::uint32_t p_, e_, q_;
    std::vector<Fe> mod_;
    bool tabled_;
    std::vector<Fe> add_tab_, mul_tab_; // q*q, only when tabled_
    std::vector<Fe> neg_tab_, inv_tab_; // q entries (inv_tab_[0] unused)

    Fe add_slow(Fe a, Fe b) const;
    Fe mul_slow(Fe a, Fe b) const;
};

// Process-wide registry handing out stable references, so objects that keep a
// Field* (matrices read from files, flag systems) never dangle.  Thread-safe.
const Field& shared_field(std::uint32_t p, std::uint32_t e);
const Field& shared_field_of_order(std::uint32_t q);

} // namespace segre
