#include "segre/flags.hpp"

#include <algorithm>
#include <stdexcept>

namespace segre {

std::vector<std::vector<Fe>> pg_points(int n, const Field& f) {
    if (n < 1) throw std::invalid_argument("projective dimension must be at least 1");
    std::uint64_t total = 1;
    for (int i = 0; i <= n; i++) total *= f.q();
    std::vector<std::vector<Fe>> pts;
    std::vector<Fe> v(std::size_t(n) + 1, 0);
    // Odometer over all coordinate vectors in lex order (leftmost coordinate
    // most significant); keep those whose first nonzero entry is 1.
    for (std::uint64_t t = 1; t < total; t++) {
        std::uint64_t u = t;
        for (int i = n; i >= 0; i--) { v[std::size_t(i)] = Fe(u % f.q()); u /= f.q(); }
        Fe lead = 0;
        for (auto c : v)
            if (c != 0) { lead = c; break; }
        if (lead == 1) pts.push_back(v);
    }
    return pts;
}

Fe canonicalize(const Field& f, std::vector<Fe>& v) {
    for (auto c : v) {
        if (c == 0) continue;
        Fe inv = f.inv(c);
        if (inv != 1)
            for (auto& x : v) x = f.mul(x, inv);
        return inv;
    }
    throw std::domain_error("cannot canonicalize the zero vector");
}

bool incident(const Field& f, const std::vector<Fe>& point, const std::vector<Fe>& hyp) {
    if (point.size() != hyp.size()) throw std::invalid_argument("incidence: dimension mismatch");
    Fe s = 0;
    for (std::size_t i = 0; i < point.size(); i++) s = f.add(s, f.mul(hyp[i], point[i]));
    return s == 0;
}

FlagSystem::FlagSystem(int n, const Field& f, Variant variant)
    : n_(n), f_(&f), variant_(variant) {
    auto coords = pg_points(n, f);
    std::uint64_t P = coords.size();

    // Cap check before materializing: every hyperplane holds (q^n-1)/(q-1)
    // points (Lambda1) or all P of them (Lambda).
    std::uint64_t per_hyp = P;
    if (variant == Variant::Lambda1) {
        std::uint64_t qn = 1;
        for (int i = 0; i < n; i++) qn *= f.q();
        per_hyp = (qn - 1) / (f.q() - 1);
    }
    if (P * per_hyp > 10'000'000ULL)
        throw std::length_error("flag system larger than 10^7 flags");

    points_.reserve(coords.size());
    hyps_.reserve(coords.size());
    for (auto& c : coords) {
        points_.push_back({Kind::Point, c});
        hyps_.push_back({Kind::Hyperplane, c});
    }

    std::uint32_t np = std::uint32_t(points_.size());
    pair_to_flag_.assign(std::size_t(np) * np, NPOS);
    hyp_start_.reserve(np + 1);

    std::uint32_t nn = std::uint32_t(n) + 1;
    for (std::uint32_t h = 0; h < np; h++) {
        hyp_start_.push_back(std::uint32_t(flags_.size()));
        const auto& xi = hyps_[h].coords;
        for (std::uint32_t p = 0; p < np; p++) {
            const auto& x = points_[p].coords;
            if (variant == Variant::Lambda1 && !incident(f, x, xi)) continue;
            Matrix rep(f, nn, nn);
            for (std::uint32_t i = 0; i < nn; i++) {
                if (x[i] == 0) continue;
                for (std::uint32_t j = 0; j < nn; j++)
                    rep(i, j) = f.mul(x[i], xi[j]);
            }
            pair_to_flag_[std::size_t(p) * np + h] = std::uint32_t(flags_.size());
            flags_.push_back({p, h, std::move(rep)});
        }
    }
    hyp_start_.push_back(std::uint32_t(flags_.size()));
}

std::uint32_t FlagSystem::flag_index(std::uint32_t point, std::uint32_t hyp) const {
    std::uint32_t np = std::uint32_t(points_.size());
    if (point >= np || hyp >= np) throw std::invalid_argument("flag_index: index out of range");
    std::uint32_t idx = pair_to_flag_[std::size_t(point) * np + hyp];
    if (idx == NPOS) throw std::invalid_argument("flag_index: pair not in the system");
    return idx;
}

namespace {
std::uint32_t lookup(const std::vector<ProjPoint>& list, const std::vector<Fe>& coords) {
    auto it = std::lower_bound(list.begin(), list.end(), coords,
                               [](const ProjPoint& a, const std::vector<Fe>& b) { return a.coords < b; });
    if (it == list.end() || it->coords != coords)
        throw std::invalid_argument("coordinate vector is not canonical or out of range");
    return std::uint32_t(it - list.begin());
}
} // namespace

std::uint32_t FlagSystem::point_index(const std::vector<Fe>& coords) const {
    return lookup(points_, coords);
}

std::uint32_t FlagSystem::hyp_index(const std::vector<Fe>& coords) const {
    return lookup(hyps_, coords);
}

bool collinear(const FlagSystem& sys, const Flag& a, const Flag& b) {
    (void)sys;
    return a.point == b.point || a.hyp == b.hyp;
}

bool collinear(const FlagSystem& sys, std::uint32_t a, std::uint32_t b) {
    return collinear(sys, sys.flags()[a], sys.flags()[b]);
}

namespace {

// Leading coefficient, then canonical form of v; returns the lead.
Fe lead_and_canonicalize(const Field& f, std::vector<Fe>& v) {
    for (auto c : v) {
        if (c == 0) continue;
        if (c != 1) {
            Fe inv = f.inv(c);
            for (auto& x : v) x = f.mul(x, inv);
        }
        return c;
    }
    throw std::domain_error("zero vector in flag action");
}

FlagImage act_one(const FlagSystem& sys, const Matrix& g, const Matrix& ginv, std::uint32_t flag) {
    const Field& f = sys.field();
    const Flag& a = sys.flags()[flag];
    std::vector<Fe> x = matrix_times_col(g, sys.points()[a.point].coords);
    std::vector<Fe> xi = row_times_matrix(sys.hyps()[a.hyp].coords, ginv);
    Fe cx = lead_and_canonicalize(f, x);
    Fe cxi = lead_and_canonicalize(f, xi);
    std::uint32_t p = sys.point_index(x);
    std::uint32_t h = sys.hyp_index(xi);
    return {sys.flag_index(p, h), f.mul(cx, cxi)};
}

} // namespace

FlagImage flag_action_indexed(const FlagSystem& sys, const Matrix& g, std::uint32_t flag) {
    return act_one(sys, g, g.inverse(), flag);
}

Flag flag_action(const FlagSystem& sys, const Matrix& g, const Flag& a) {
    FlagImage im = act_one(sys, g, g.inverse(), sys.flag_index(a.point, a.hyp));
    return sys.flags()[im.index];
}

std::vector<FlagImage> flag_permutation(const FlagSystem& sys, const Matrix& g) {
    Matrix ginv = g.inverse(); // throws on singular g
    std::vector<FlagImage> out;
    out.reserve(sys.size());
    for (std::uint32_t i = 0; i < sys.size(); i++) out.push_back(act_one(sys, g, ginv, i));
    return out;
}

} // namespace segre
