#include "segre/analysis.hpp"

#include "segre/rng.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace segre {

const char* to_string(WeightClass k) {
    switch (k) {
        case WeightClass::Zero: return "ZERO";
        case WeightClass::Minimum: return "MINIMUM";
        case WeightClass::SecondLowest: return "SECOND_LOWEST";
        case WeightClass::Maximum: return "MAXIMUM";
        case WeightClass::Intermediate: return "INTERMEDIATE";
    }
    return "?";
}

const char* to_string(GeometricTag t) {
    switch (t) {
        case GeometricTag::QuasiSingularNonsingular: return "QUASI_SINGULAR_NONSINGULAR";
        case GeometricTag::Singular: return "SINGULAR";
        case GeometricTag::SpreadType: return "SPREAD_TYPE";
        case GeometricTag::NoEigenvalueNonSpread: return "NO_EIGENVALUE_NON_SPREAD";
        case GeometricTag::Plain: return "PLAIN";
    }
    return "?";
}

CodewordClass classify(const Matrix& M) {
    if (!M.square() || M.rows() < 2) throw std::invalid_argument("classify: need a square matrix of order >= 2");
    const Field& f = M.field();
    std::uint32_t nn = M.rows();
    int n = int(nn) - 1;
    CodeSummary ps = code_params(n, f);

    CodewordClass out;
    EigenProfile ep = eigen_profile(M);
    out.theta = ep.theta;
    out.weight = weight_formula(M);

    if (out.weight == 0)
        out.kind = WeightClass::Zero;
    else if (out.weight == ps.d)
        out.kind = WeightClass::Minimum;
    else if (out.weight == ps.w_second)
        out.kind = WeightClass::SecondLowest;
    else if (out.weight == ps.w_max)
        out.kind = WeightClass::Maximum;
    else
        out.kind = WeightClass::Intermediate;

    // Geometric tag: scan the coset M + <I> for a rank-1 member.
    out.tag = GeometricTag::Plain;
    Matrix shifted = M;
    for (std::uint32_t lam = 0; lam < f.q(); lam++) {
        for (std::uint32_t i = 0; i < nn; i++) shifted(i, i) = f.sub(M(i, i), Fe(lam));
        if (shifted.rank() != 1) continue;
        // Factor the rank-1 member as x * xi.
        std::uint32_t i0 = 0;
        while (i0 < nn) {
            bool nonzero = false;
            for (std::uint32_t j = 0; j < nn; j++)
                if (shifted(i0, j) != 0) { nonzero = true; break; }
            if (nonzero) break;
            i0++;
        }
        std::vector<Fe> xi(nn), x(nn);
        for (std::uint32_t j = 0; j < nn; j++) xi[j] = shifted(i0, j);
        std::uint32_t j0 = 0;
        while (xi[j0] == 0) j0++;
        Fe inv = f.inv(xi[j0]);
        for (std::uint32_t i = 0; i < nn; i++) x[i] = f.mul(shifted(i, j0), inv);
        out.tag = shifted.trace() != 0 ? GeometricTag::QuasiSingularNonsingular : GeometricTag::Singular;
        canonicalize(f, x);
        canonicalize(f, xi);
        out.has_witness = true;
        out.witness_point = std::move(x);
        out.witness_hyp = std::move(xi);
        break;
    }
    if (out.tag == GeometricTag::Plain && ep.dims.empty())
        out.tag = spread_criterion(M) ? GeometricTag::SpreadType : GeometricTag::NoEigenvalueNonSpread;
    return out;
}

namespace {

std::uint64_t upow(std::uint32_t q, std::uint32_t m) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < m; i++) r *= q;
    return r;
}

// Canonical vector of the pindex-th projective point of GF(q)^k, same
// block order as RepSpace::fill_projective: lead position 0 first.
void projective_vector(const Field& f, std::uint32_t k, std::uint64_t pindex, std::vector<Fe>& v) {
    v.assign(k, 0);
    std::uint64_t block = 1;
    for (std::uint32_t i = 0; i + 1 < k; i++) block *= f.q();
    std::uint32_t lead = 0;
    while (pindex >= block) {
        pindex -= block;
        block /= f.q();
        lead++;
        if (lead >= k) throw std::out_of_range("projective index out of range");
    }
    v[lead] = 1;
    for (std::uint32_t i = lead + 1; i < k; i++) {
        v[i] = Fe(pindex % f.q());
        pindex /= f.q();
    }
}

std::string describe_section_failure(const Matrix& M, std::uint32_t got, std::uint32_t want) {
    std::ostringstream os;
    os << "section of " << M.to_string() << " spans " << got << " < " << want;
    return os.str();
}

} // namespace

MinimalityReport is_minimal_cutting_set(const FlagSystem& sys, unsigned threads) {
    if (sys.variant() != Variant::Lambda1)
        throw std::invalid_argument("cutting-set oracle is defined for the incident-pair system");
    const Field& f = sys.field();
    RepSpace rs(sys.n(), f);
    std::uint64_t P = rs.projective_size();
    if (P > (std::uint64_t(1) << 22))
        throw std::length_error("too many hyperplane sections for the cutting-set oracle; "
                                "use pairwise_support_minimality on a sample");
    if (threads == 0) threads = 1;
    std::uint32_t k = rs.dim();
    std::uint32_t nn = std::uint32_t(sys.n()) + 1;
    std::uint32_t nn2 = nn * nn;

    std::vector<std::vector<std::string>> fails(threads);
    parallel_ranges(P, threads, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        Matrix M(f, nn, nn);
        std::vector<Fe> values;
        RowSpan span(f, nn2);
        for (std::uint64_t t = lo; t < hi; t++) {
            rs.fill_projective(t, M);
            encode_into(M, sys, values);
            span.clear();
            // The section lives in a (k-1)-dimensional space, so stop as soon
            // as its span gets there.
            for (std::uint32_t i = 0; i < values.size(); i++) {
                if (values[i] != 0) continue;
                if (span.insert(sys.flags()[i].rep.data()) && span.rank() == k - 1) break;
            }
            if (span.rank() != k - 1)
                fails[w].push_back(describe_section_failure(M, span.rank(), k - 1));
        }
    });

    MinimalityReport rep;
    rep.method = MinimalityMethod::CuttingSet;
    rep.checked = P;
    for (auto& fw : fails)
        for (auto& s : fw) rep.witnesses.push_back(std::move(s));
    rep.minimal = rep.witnesses.empty();
    return rep;
}

namespace {

bool support_connected(const FlagSystem& sys, const std::vector<Fe>& values) {
    std::vector<std::uint32_t> supp;
    for (std::uint32_t i = 0; i < values.size(); i++)
        if (values[i] != 0) supp.push_back(i);
    if (supp.size() <= 1) return true;
    std::vector<char> seen(supp.size(), 0);
    std::vector<std::uint32_t> queue{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
        std::uint32_t a = queue.back();
        queue.pop_back();
        for (std::uint32_t b = 0; b < supp.size(); b++) {
            if (seen[b]) continue;
            if (collinear(sys, supp[a], supp[b])) {
                seen[b] = 1;
                reached++;
                queue.push_back(b);
            }
        }
    }
    return reached == supp.size();
}

} // namespace

bool complement_connected(const FlagSystem& sys, const Matrix& M) {
    std::vector<Fe> values;
    encode_into(M, sys, values);
    return support_connected(sys, values);
}

MinimalityReport connectivity_minimality(const FlagSystem& sys, unsigned threads) {
    if (sys.variant() != Variant::Lambda1)
        throw std::invalid_argument("connectivity oracle is defined for the incident-pair system");
    const Field& f = sys.field();
    RepSpace rs(sys.n(), f);
    std::uint64_t P = rs.projective_size();
    if (P > (std::uint64_t(1) << 22))
        throw std::length_error("too many hyperplane sections for the connectivity oracle");
    if (threads == 0) threads = 1;
    std::uint32_t nn = std::uint32_t(sys.n()) + 1;

    std::vector<std::vector<std::string>> fails(threads);
    parallel_ranges(P, threads, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        Matrix M(f, nn, nn);
        std::vector<Fe> values;
        for (std::uint64_t t = lo; t < hi; t++) {
            rs.fill_projective(t, M);
            encode_into(M, sys, values);
            if (!support_connected(sys, values))
                fails[w].push_back("disconnected complement: " + M.to_string());
        }
    });

    MinimalityReport rep;
    rep.method = MinimalityMethod::GraphConnectivity;
    rep.checked = P;
    for (auto& fw : fails)
        for (auto& s : fw) rep.witnesses.push_back(std::move(s));
    rep.minimal = rep.witnesses.empty();
    return rep;
}

MinimalityReport pairwise_support_minimality(const Matrix& G) {
    const Field& f = G.field();
    std::uint32_t k = G.rows(), N = G.cols();
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < k; i++) {
        total *= f.q();
        if (total > (std::uint64_t(1) << 16))
            throw std::length_error("code too large for the pairwise-support oracle (q^k > 2^16)");
    }
    std::uint64_t P = (total - 1) / (f.q() - 1);
    std::uint32_t blocks = (N + 63) / 64;

    // Support bitmasks of one representative per projective codeword.
    std::vector<std::uint64_t> masks(P * blocks, 0);
    std::vector<Fe> v;
    for (std::uint64_t a = 0; a < P; a++) {
        projective_vector(f, k, a, v);
        std::vector<Fe> word = row_times_matrix(v, G);
        for (std::uint32_t i = 0; i < N; i++)
            if (word[i] != 0) masks[a * blocks + i / 64] |= std::uint64_t(1) << (i % 64);
    }

    MinimalityReport rep;
    rep.method = MinimalityMethod::PairwiseSupport;
    rep.checked = P * (P - 1) / 2;
    for (std::uint64_t a = 0; a < P && rep.witnesses.size() < 16; a++) {
        const std::uint64_t* ma = &masks[a * blocks];
        for (std::uint64_t b = a + 1; b < P; b++) {
            const std::uint64_t* mb = &masks[b * blocks];
            bool a_in_b = true, b_in_a = true;
            for (std::uint32_t w = 0; w < blocks; w++) {
                if (ma[w] & ~mb[w]) a_in_b = false;
                if (mb[w] & ~ma[w]) b_in_a = false;
                if (!a_in_b && !b_in_a) break;
            }
            if (a_in_b || b_in_a) {
                std::ostringstream os;
                os << "projective words " << a << " and " << b << " have nested supports";
                rep.witnesses.push_back(os.str());
                if (rep.witnesses.size() >= 16) break;
            }
        }
    }
    rep.minimal = rep.witnesses.empty();
    return rep;
}

MinimalityReport pairwise_support_minimality(const FlagSystem& sys) {
    return pairwise_support_minimality(generator_matrix(sys));
}

std::vector<std::uint32_t> quasi_singular_hyperplane(const FlagSystem& sys,
                                                     std::uint32_t point, std::uint32_t hyp) {
    if (point >= sys.points().size() || hyp >= sys.hyps().size())
        throw std::invalid_argument("quasi_singular_hyperplane: index out of range");
    std::vector<std::uint32_t> base;
    for (std::uint32_t i = 0; i < sys.size(); i++)
        if (sys.flags()[i].point == point || sys.flags()[i].hyp == hyp) base.push_back(i);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < sys.size(); i++)
        for (auto b : base)
            if (collinear(sys, i, b)) {
                out.push_back(i);
                break;
            }
    return out; // ascending by construction
}

bool automorphism_check(const FlagSystem& sys, const Matrix& g, const Matrix& M) {
    const Field& f = sys.field();
    auto perm = flag_permutation(sys, g); // throws if g is singular
    std::vector<Fe> before, after;
    encode_into(M, sys, before);
    encode_into(conjugate(M, g), sys, after);
    for (std::uint32_t i = 0; i < sys.size(); i++)
        if (after[i] != f.mul(perm[i].scale, before[perm[i].index])) return false;
    return true;
}

namespace {
Fraction reduced(std::uint64_t num, std::uint64_t den) {
    std::uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}
} // namespace

AbRatio ab_ratio(int n, const Field& f) {
    CodeSummary ps = code_params(n, f);
    AbRatio r;
    r.ratio = reduced(ps.w_max, ps.d);
    r.bound = reduced(f.q(), f.q() - 1);
    std::uint64_t lhs = r.ratio.num * r.bound.den, rhs = r.bound.num * r.ratio.den;
    r.cmp = lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
    return r;
}

// ---- verification bundles -------------------------------------------------

CheckResult check_minimality(const FlagSystem& sys, unsigned threads) {
    CheckResult res{"minimality", true, {}, {}};
    MinimalityReport cut = is_minimal_cutting_set(sys, threads);
    res.counters.emplace_back("cutting_set_hyperplanes", cut.checked);
    res.counters.emplace_back("cutting_set_minimal", cut.minimal);
    res.pass = cut.minimal;
    for (auto& w : cut.witnesses)
        if (res.witnesses.size() < 8) res.witnesses.push_back(w);

    RepSpace rs(sys.n(), sys.field());
    if (rs.projective_size() <= 4000) {
        MinimalityReport conn = connectivity_minimality(sys, threads);
        res.counters.emplace_back("connectivity_hyperplanes", conn.checked);
        res.counters.emplace_back("connectivity_minimal", conn.minimal);
        if (conn.minimal != cut.minimal) res.pass = false; // oracles must agree
        for (auto& w : conn.witnesses)
            if (res.witnesses.size() < 8) res.witnesses.push_back(w);
    }
    if (rs.projective_size() <= 4096) {
        MinimalityReport pw = pairwise_support_minimality(sys);
        res.counters.emplace_back("pairwise_pairs", pw.checked);
        res.counters.emplace_back("pairwise_minimal", pw.minimal);
        if (pw.minimal != cut.minimal) res.pass = false;
        for (auto& w : pw.witnesses)
            if (res.witnesses.size() < 8) res.witnesses.push_back(w);
    }
    return res;
}

CheckResult check_weights(int n, const Field& f, std::uint64_t seed, unsigned threads) {
    CheckResult res{"weights", true, {}, {}};
    CodeSummary ps = code_params(n, f);
    SpectrumReport theo = theoretical_weight_list(n, f);
    RepSpace rs(n, f);

    bool exhaustive = true;
    std::uint64_t size = 0;
    try {
        size = rs.size();
        if (size > (std::uint64_t(1) << 20)) exhaustive = false;
    } catch (const std::length_error&) {
        exhaustive = false;
    }

    SpectrumReport spect = exhaustive ? exhaustive_spectrum(n, f, threads)
                                      : sampled_spectrum(n, f, 10000, seed, threads);
    res.counters.emplace_back("exhaustive", exhaustive);
    res.counters.emplace_back("distinct_weights", spect.weights.size());

    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) {
            res.pass = false;
            res.witnesses.push_back(what);
        }
    };

    if (exhaustive) {
        expect(spect.weights == theo.weights, "exhaustive weight set differs from the profile census");
        std::uint64_t total = 0;
        for (auto& [w, c] : spect.counts) total += c;
        expect(total == size, "multiplicities do not sum to q^k");
        expect(spect.counts.count(0) == 1 && spect.counts.at(0) == 1, "zero weight must appear once");
        std::vector<std::uint64_t> nz;
        for (auto w : spect.weights)
            if (w) nz.push_back(w);
        expect(nz.size() >= 3, "degenerate spectrum");
        if (nz.size() >= 3) {
            expect(nz.front() == ps.d, "minimum distance mismatch");
            expect(nz[1] == ps.w_second, "second-lowest weight mismatch");
            expect(nz.back() == ps.w_max, "maximum weight mismatch");
        }
    } else {
        for (auto w : spect.weights)
            expect(std::binary_search(theo.weights.begin(), theo.weights.end(), w),
                   "sampled weight " + std::to_string(w) + " not in the profile census");
    }

    // Independent cross-check: direct encodings against the theta formula.
    if (exhaustive && size <= (std::uint64_t(1) << 16)) {
        FlagSystem sys(n, f, Variant::Lambda1);
        std::uint64_t agree = 0;
        Matrix M(f, std::uint32_t(n) + 1, std::uint32_t(n) + 1);
        std::vector<Fe> values;
        for (std::uint64_t t = 0; t < size; t++) {
            rs.fill(t, M);
            encode_into(M, sys, values);
            if (hamming_weight(values) == weight_formula(M))
                agree++;
            else if (res.witnesses.size() < 8)
                res.witnesses.push_back("formula/direct weight mismatch at " + M.to_string());
        }
        res.counters.emplace_back("dual_method_checked", size);
        expect(agree == size, "direct encoding disagreed with the weight formula");
    }
    return res;
}

CheckResult check_identities(const FlagSystem& sys, std::uint64_t seed) {
    CheckResult res{"identities", true, {}, {}};
    const Field& f = sys.field();
    int n = sys.n();
    std::uint32_t nn = std::uint32_t(n) + 1;
    std::uint32_t P = std::uint32_t(sys.points().size());
    std::uint32_t q = f.q();

    std::uint64_t cc_in = geom_sum(q, nn) * geom_sum(q, std::uint32_t(n) - 1) +
                          upow(q, std::uint32_t(n) - 1) * geom_sum(q, std::uint32_t(n));
    std::uint64_t cc_out = cc_in + upow(q, std::uint32_t(n) - 1);

    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    if (std::uint64_t(P) * P <= 2500) {
        for (std::uint32_t p = 0; p < P; p++)
            for (std::uint32_t h = 0; h < P; h++) pairs.emplace_back(p, h);
    } else {
        Lcg64 rng(seed);
        for (int t = 0; t < 50; t++)
            pairs.emplace_back(std::uint32_t(rng.next_below(P)), std::uint32_t(rng.next_below(P)));
    }

    std::uint64_t incident_pairs = 0;
    std::vector<Fe> values;
    for (auto [p, h] : pairs) {
        const auto& x = sys.points()[p].coords;
        const auto& xi = sys.hyps()[h].coords;
        bool p_in_A = incident(f, x, xi);
        incident_pairs += p_in_A;

        auto qs = quasi_singular_hyperplane(sys, p, h);

        // Direct section of the rank-1 matrix x * xi.
        Matrix R(f, nn, nn);
        for (std::uint32_t i = 0; i < nn; i++)
            for (std::uint32_t j = 0; j < nn; j++) R(i, j) = f.mul(x[i], xi[j]);
        encode_into(R, sys, values);
        std::vector<std::uint32_t> section;
        for (std::uint32_t i = 0; i < values.size(); i++)
            if (values[i] == 0) section.push_back(i);

        std::uint64_t want = p_in_A ? cc_in : cc_out;
        if (qs.size() != want || qs != section) {
            res.pass = false;
            if (res.witnesses.size() < 8) {
                std::ostringstream os;
                os << "pencil (" << p << "," << h << "): collinearity closure " << qs.size()
                   << ", trace section " << section.size() << ", expected " << want;
                res.witnesses.push_back(os.str());
            }
        }
    }
    res.counters.emplace_back("pencil_pairs", pairs.size());
    res.counters.emplace_back("incident_pairs", incident_pairs);
    res.counters.emplace_back("expected_incident_size", cc_in);
    res.counters.emplace_back("expected_nonincident_size", cc_out);

    // The classical minimality ratio test must fail for this family.
    AbRatio ab = ab_ratio(n, f);
    res.counters.emplace_back("ab_ratio_exceeds_bound", ab.cmp > 0);
    if (ab.cmp <= 0) {
        res.pass = false;
        res.witnesses.push_back("w_max/w_min did not exceed q/(q-1)");
    }

    // Saturation form spot checks: symmetry and f(x*xi, M) = xi*M*x.
    Lcg64 rng(seed ^ 0x5a5a5a5a5a5a5a5aULL);
    std::uint64_t sat_ok = 0;
    for (int t = 0; t < 32; t++) {
        Matrix A = rng.next_matrix(f, nn), B = rng.next_matrix(f, nn);
        bool ok = saturation_form(A, B) == saturation_form(B, A);
        std::uint32_t p = std::uint32_t(rng.next_below(P)), h = std::uint32_t(rng.next_below(P));
        const auto& x = sys.points()[p].coords;
        const auto& xi = sys.hyps()[h].coords;
        Matrix R(f, nn, nn);
        for (std::uint32_t i = 0; i < nn; i++)
            for (std::uint32_t j = 0; j < nn; j++) R(i, j) = f.mul(x[i], xi[j]);
        std::vector<Fe> xiA = row_times_matrix(xi, A);
        Fe dot = 0;
        for (std::uint32_t i = 0; i < nn; i++) dot = f.add(dot, f.mul(xiA[i], x[i]));
        ok = ok && saturation_form(R, A) == dot;
        sat_ok += ok;
        if (!ok) {
            res.pass = false;
            if (res.witnesses.size() < 8) res.witnesses.push_back("saturation identity failed");
        }
    }
    res.counters.emplace_back("saturation_samples", sat_ok);
    return res;
}

CheckResult check_automorphism(const FlagSystem& sys, std::uint64_t seed, unsigned pairs) {
    CheckResult res{"automorphism", true, {}, {}};
    const Field& f = sys.field();
    std::uint32_t nn = std::uint32_t(sys.n()) + 1;
    Lcg64 rng(seed);
    std::uint64_t ok = 0;
    for (unsigned t = 0; t < pairs; t++) {
        Matrix g = rng.next_invertible(f, nn);
        Matrix M = rng.next_matrix(f, nn);
        if (automorphism_check(sys, g, M)) {
            ok++;
        } else {
            res.pass = false;
            if (res.witnesses.size() < 8)
                res.witnesses.push_back("conjugation by " + g.to_string() + " broke the monomial identity at " +
                                        M.to_string());
        }
    }
    res.counters.emplace_back("pairs_checked", pairs);
    res.counters.emplace_back("pairs_ok", ok);

    // Scalar action: encode(c*M) = c * encode(M), identical support.
    std::uint64_t scalar_ok = 0;
    std::vector<Fe> base, scaledv;
    for (int t = 0; t < 16; t++) {
        Matrix M = rng.next_matrix(f, nn);
        Fe c = Fe(1 + rng.next_below(f.q() - 1));
        encode_into(M, sys, base);
        encode_into(M.scaled(c), sys, scaledv);
        bool good = true;
        for (std::size_t i = 0; i < base.size(); i++)
            if (scaledv[i] != f.mul(c, base[i])) { good = false; break; }
        scalar_ok += good;
        if (!good) {
            res.pass = false;
            if (res.witnesses.size() < 8) res.witnesses.push_back("scalar action failed");
        }
    }
    res.counters.emplace_back("scalar_samples_ok", scalar_ok);
    return res;
}

CheckResult check_classification(int n, const Field& f, unsigned threads) {
    CheckResult res{"classification", true, {}, {}};
    CodeSummary ps = code_params(n, f);
    RepSpace rs(n, f);
    std::uint64_t size = rs.size();
    bool exhaustive = size <= (std::uint64_t(1) << 20);
    std::uint64_t total = exhaustive ? size : 4096;
    res.counters.emplace_back("exhaustive", exhaustive);
    if (threads == 0) threads = 1;

    struct Tally {
        std::uint64_t scanned = 0, minimum = 0, second = 0, maximum = 0, spread = 0;
        std::vector<std::string> bad;
        bool ok = true;
    };
    std::vector<Tally> tallies(threads);

    Lcg64 rng(1);
    std::vector<std::uint64_t> sample;
    if (!exhaustive) {
        sample.resize(total);
        for (auto& s : sample) s = rng.next_below(size);
    }

    parallel_ranges(total, threads, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        Matrix M(f, std::uint32_t(n) + 1, std::uint32_t(n) + 1);
        Tally& tl = tallies[w];
        for (std::uint64_t t = lo; t < hi; t++) {
            rs.fill(exhaustive ? t : sample[t], M);
            CodewordClass c = classify(M);
            tl.scanned++;
            bool good = true;
            switch (c.kind) {
                case WeightClass::Zero:
                    good = c.weight == 0 && c.tag == GeometricTag::Plain && M.is_zero();
                    break;
                case WeightClass::Minimum:
                    good = c.weight == ps.d && c.tag == GeometricTag::QuasiSingularNonsingular;
                    tl.minimum++;
                    break;
                case WeightClass::SecondLowest:
                    good = c.weight == ps.w_second && c.tag == GeometricTag::Singular;
                    tl.second++;
                    break;
                case WeightClass::Maximum: {
                    good = c.weight == ps.w_max &&
                           (c.tag == GeometricTag::SpreadType || c.tag == GeometricTag::NoEigenvalueNonSpread);
                    tl.maximum++;
                    // spread <=> quadratic minimal polynomial (no eigenvalues here)
                    bool quad = min_poly_degree(M) == 2;
                    bool spread = c.tag == GeometricTag::SpreadType;
                    if (quad != spread) good = false;
                    tl.spread += spread;
                    break;
                }
                case WeightClass::Intermediate:
                    good = c.tag == GeometricTag::Plain;
                    break;
            }
            if (!good) {
                tl.ok = false;
                if (tl.bad.size() < 4)
                    tl.bad.push_back("classification mismatch at " + M.to_string() + " -> " +
                                     to_string(c.kind) + "/" + to_string(c.tag));
            }
        }
    });

    std::uint64_t scanned = 0, minimum = 0, second = 0, maximum = 0, spread = 0;
    for (auto& tl : tallies) {
        scanned += tl.scanned;
        minimum += tl.minimum;
        second += tl.second;
        maximum += tl.maximum;
        spread += tl.spread;
        if (!tl.ok) res.pass = false;
        for (auto& b : tl.bad)
            if (res.witnesses.size() < 8) res.witnesses.push_back(b);
    }
    res.counters.emplace_back("scanned", scanned);
    res.counters.emplace_back("minimum_words", minimum);
    res.counters.emplace_back("second_lowest_words", second);
    res.counters.emplace_back("maximum_words", maximum);
    res.counters.emplace_back("spread_type_words", spread);
    return res;
}

} // namespace segre
