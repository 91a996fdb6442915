// The point-hyperplane geometry of PG(n, q) and its rank-1 matrix model.
//
// Points and hyperplanes both live in PG(n, q) and are stored in canonical
// homogeneous coordinates: leftmost nonzero coordinate scaled to 1.  A point
// x is incident with a hyperplane xi when sum_i xi_i * x_i = 0.
//
// A flag (x, xi) with x in [xi] is represented by the rank-1 matrix
// X = x * xi (column times row), which then has trace xi(x) = 0; dropping the
// incidence requirement gives the full rank-1 model (variant LAMBDA), whose
// non-incident pairs have nonzero trace.
//
// Enumeration orders are part of the contract (codeword positions depend on
// them): points and hyperplanes are sorted lexicographically by coordinate
// code sequence, and flags are listed hyperplane-major — all flags of the
// lex-first hyperplane first, points in lex order within each hyperplane.

#pragma once

#include <cstdint>
#include <vector>

#include "segre/field.hpp"
#include "segre/matrix.hpp"

namespace segre {

enum class Kind { Point, Hyperplane };

struct ProjPoint {
    Kind kind;
    std::vector<Fe> coords; // n+1 codes, first nonzero = 1
};

struct Flag {
    std::uint32_t point; // index into FlagSystem::points()
    std::uint32_t hyp;   // index into FlagSystem::hyps()
    Matrix rep;          // x * xi, rank 1
};

enum class Variant { Lambda1, Lambda }; // incident pairs only / all pairs

// Canonical representatives of PG(n, q) in lexicographic order; (q^{n+1}-1)/(q-1) of them.
std::vector<std::vector<Fe>> pg_points(int n, const Field& f);

// Scale v so its first nonzero coordinate is 1; returns the scaling factor c
// with v_canonical = c * v_input (c = inverse of the leading coefficient).
// Throws std::domain_error on the zero vector.
Fe canonicalize(const Field& f, std::vector<Fe>& v);

bool incident(const Field& f, const std::vector<Fe>& point, const std::vector<Fe>& hyp);

class FlagSystem {
public:
    // Builds the full system; throws std::length_error if the flag count
    // would exceed 10^7.
    FlagSystem(int n, const Field& f, Variant variant = Variant::Lambda1);

    int n() const { return n_; }
    const Field& field() const { return *f_; }
    Variant variant() const { return variant_; }

    const std::vector<ProjPoint>& points() const { return points_; }
    const std::vector<ProjPoint>& hyps() const { return hyps_; }
    const std::vector<Flag>& flags() const { return flags_; }
    std::size_t size() const { return flags_.size(); }

    // Flags of hyperplane h occupy indices [first, last).
    std::pair<std::uint32_t, std::uint32_t> hyp_range(std::uint32_t h) const {
        return {hyp_start_[h], hyp_start_[h + 1]};
    }

    // Index of the flag with the given point and hyperplane indices; throws
    // std::invalid_argument if that pair is not in the system.
    std::uint32_t flag_index(std::uint32_t point, std::uint32_t hyp) const;

    // Index of a canonical coordinate vector among points() / hyps().
    std::uint32_t point_index(const std::vector<Fe>& coords) const;
    std::uint32_t hyp_index(const std::vector<Fe>& coords) const;

private:
    int n_;
    const Field* f_;
    Variant variant_;
    std::vector<ProjPoint> points_, hyps_;
    std::vector<Flag> flags_;
    std::vector<std::uint32_t> hyp_start_;           // size hyps+1
    std::vector<std::uint32_t> pair_to_flag_;        // point*|hyps|+hyp -> index or NPOS
    static constexpr std::uint32_t NPOS = 0xffffffffu;
};

// Two flags are collinear when they lie on a common line of the flag
// geometry: the lines are pencils with a fixed point or a fixed hyperplane,
// so collinear means equal points or equal hyperplanes.  a == b returns true.
bool collinear(const FlagSystem& sys, const Flag& a, const Flag& b);
bool collinear(const FlagSystem& sys, std::uint32_t a, std::uint32_t b);

// Image of a flag under g in PGL: point x -> g*x, hyperplane xi -> xi*g^{-1}.
// Canonicalizing the two image vectors drops a scalar each; `scale` is their
// product (the leading coefficients of g*x and xi*g^{-1}), so that
//
//   g * X_a * g^{-1} = scale * X_image,
//
// and consequently Tr(X_a * g^{-1}Mg) = scale * Tr(X_image * M) for every M:
// the codeword of the conjugated matrix is the permuted codeword up to these
// per-position scalars (a monomial transformation, identity scalars iff q = 2).
struct FlagImage {
    std::uint32_t index;
    Fe scale;
};

FlagImage flag_action_indexed(const FlagSystem& sys, const Matrix& g, std::uint32_t flag);
Flag flag_action(const FlagSystem& sys, const Matrix& g, const Flag& a);

// Whole permutation at once (computes g^{-1} a single time).
std::vector<FlagImage> flag_permutation(const FlagSystem& sys, const Matrix& g);

} // namespace segre
