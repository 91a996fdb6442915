// Command-line front end: parameters, generator matrices, weight spectra,
// codeword encoding/classification, flag dumps, and the verification bundles.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include "CLI11.hpp"
#include "json.hpp"

#include "segre/analysis.hpp"
#include "segre/code.hpp"
#include "segre/field.hpp"
#include "segre/flags.hpp"
#include "segre/matrix.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace segre;

namespace {

unsigned default_threads() {
    if (const char* env = std::getenv("SEGRE_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 256) return unsigned(v);
    }
    return 1;
}

struct Options {
    std::uint32_t q = 0, p = 0, e = 0;
    int n = 2;
    std::string variant = "lambda1";
    std::string mode = "exhaustive";
    std::string format = "csv";
    std::string matrix_path;
    std::string checks = "minimality,weights,identities,automorphism,classification";
    std::uint64_t sample_size = 10000;
    std::uint64_t seed = 0;
    unsigned threads = default_threads();
};

void add_field_options(CLI::App* cmd, Options& opt) {
    auto* oq = cmd->add_option("--q", opt.q, "field order (prime power)");
    auto* op = cmd->add_option("--p", opt.p, "field characteristic");
    auto* oe = cmd->add_option("--e", opt.e, "extension degree");
    oq->excludes(op)->excludes(oe);
    op->needs(oe);
    oe->needs(op);
    cmd->add_option("--n", opt.n, "projective dimension (default 2)");
}

void add_thread_option(CLI::App* cmd, Options& opt) {
    cmd->add_option("--threads", opt.threads, "worker threads (default: SEGRE_THREADS or 1)");
}

const Field& resolve_field(const Options& opt) {
    if (opt.q) return shared_field_of_order(opt.q);
    if (opt.p && opt.e) return shared_field(opt.p, opt.e);
    throw std::invalid_argument("specify the field with --q, or with --p and --e");
}

Variant resolve_variant(const Options& opt) {
    if (opt.variant == "lambda1") return Variant::Lambda1;
    if (opt.variant == "lambda") return Variant::Lambda;
    throw std::invalid_argument("--variant must be lambda1 or lambda");
}

// Field/dimension coherence for matrix-driven commands: explicit --q/--p/--e
// and --n, when given, must agree with the matrix file.
void cross_check(const Options& opt, const Matrix& M) {
    if (!M.square() || M.rows() < 2) throw std::invalid_argument("matrix file: need a square matrix of order >= 2");
    if (opt.q && opt.q != M.field().q()) throw std::invalid_argument("--q disagrees with the matrix file");
    if (opt.p && (opt.p != M.field().p() || opt.e != M.field().e()))
        throw std::invalid_argument("--p/--e disagree with the matrix file");
    if (opt.n != 2 && std::uint32_t(opt.n) + 1 != M.rows())
        throw std::invalid_argument("--n disagrees with the matrix order");
}

json witness_json(const CodewordClass& c) {
    if (!c.has_witness) return nullptr;
    json w;
    w["point"] = c.witness_point;
    w["hyperplane"] = c.witness_hyp;
    return w;
}

json spectrum_json(const SpectrumReport& rep) {
    json out;
    switch (rep.mode) {
        case SpectrumMode::Formula: out["mode"] = "formula"; break;
        case SpectrumMode::Exhaustive: out["mode"] = "exhaustive"; break;
        case SpectrumMode::Sampled: out["mode"] = "sampled"; break;
    }
    out["weights"] = rep.weights;
    json counts = json::object();
    for (const auto& [w, c] : rep.counts) counts[std::to_string(w)] = c;
    out["counts"] = counts;
    json profiles = json::array();
    for (const auto& [prof, w] : rep.profiles) profiles.push_back({{"profile", profile_to_string(prof)}, {"weight", w}});
    out["profiles"] = profiles;
    return out;
}

json check_json(const CheckResult& res) {
    json out;
    out["status"] = res.pass ? "pass" : "fail";
    json counters = json::object();
    for (const auto& [name, value] : res.counters) counters[name] = value;
    out["counters"] = counters;
    out["witnesses"] = res.witnesses;
    return out;
}

int run_params(const Options& opt) {
    const Field& f = resolve_field(opt);
    json out;
    if (resolve_variant(opt) == Variant::Lambda1) {
        CodeSummary s = code_params(opt.n, f);
        out["N"] = s.N;
        out["k"] = s.k;
        out["d"] = s.d;
        out["w_second"] = s.w_second;
        out["w_max"] = s.w_max;
    } else {
        SegreSummary s = segre_code_params(opt.n, f);
        out["N"] = s.N;
        out["k"] = s.k;
        out["d"] = s.d;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_genmat(const Options& opt) {
    const Field& f = resolve_field(opt);
    FlagSystem sys(opt.n, f, resolve_variant(opt));
    Matrix G = generator_matrix(sys);
    if (opt.format == "csv") {
        for (std::uint32_t i = 0; i < G.rows(); i++) {
            for (std::uint32_t j = 0; j < G.cols(); j++) {
                if (j) std::cout << ',';
                std::cout << std::uint32_t(G(i, j));
            }
            std::cout << '\n';
        }
    } else if (opt.format == "json") {
        json out;
        out["rows"] = G.rows();
        out["cols"] = G.cols();
        json entries = json::array();
        for (std::uint32_t i = 0; i < G.rows(); i++) {
            json row = json::array();
            for (std::uint32_t j = 0; j < G.cols(); j++) row.push_back(G(i, j));
            entries.push_back(row);
        }
        out["entries"] = entries;
        std::cout << out.dump(2) << "\n";
    } else {
        throw std::invalid_argument("--format must be csv or json");
    }
    return 0;
}

int run_spectrum(const Options& opt) {
    const Field& f = resolve_field(opt);
    SpectrumReport rep;
    if (opt.mode == "formula")
        rep = theoretical_weight_list(opt.n, f);
    else if (opt.mode == "exhaustive")
        rep = exhaustive_spectrum(opt.n, f, opt.threads);
    else if (opt.mode == "sampled")
        rep = sampled_spectrum(opt.n, f, opt.sample_size, opt.seed, opt.threads);
    else
        throw std::invalid_argument("--mode must be formula, exhaustive or sampled");
    std::cout << spectrum_json(rep).dump(2) << "\n";
    return 0;
}

int run_encode(const Options& opt) {
    if (opt.matrix_path.empty()) throw std::invalid_argument("encode needs --matrix");
    Matrix M = load_matrix_file(opt.matrix_path);
    cross_check(opt, M);
    FlagSystem sys(int(M.rows()) - 1, M.field(), resolve_variant(opt));
    Codeword cw = encode(M, sys);
    for (std::size_t i = 0; i < cw.values.size(); i++) {
        if (i) std::cout << ',';
        std::cout << std::uint32_t(cw.values[i]);
    }
    std::cout << '\n';
    return 0;
}

int run_classify(const Options& opt) {
    if (opt.matrix_path.empty()) throw std::invalid_argument("classify needs --matrix");
    Matrix M = load_matrix_file(opt.matrix_path);
    cross_check(opt, M);
    CodewordClass c = classify(M);
    json out;
    out["kind"] = to_string(c.kind);
    out["tag"] = to_string(c.tag);
    out["weight"] = c.weight;
    out["theta"] = c.theta;
    out["witness"] = witness_json(c);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_dump_flags(const Options& opt) {
    const Field& f = resolve_field(opt);
    FlagSystem sys(opt.n, f, resolve_variant(opt));
    for (std::uint32_t t = 0; t < sys.size(); t++) {
        const Flag& fl = sys.flags()[t];
        std::cout << t;
        for (Fe c : sys.points()[fl.point].coords) std::cout << ' ' << std::uint32_t(c);
        std::cout << " |";
        for (Fe c : sys.hyps()[fl.hyp].coords) std::cout << ' ' << std::uint32_t(c);
        std::cout << '\n';
    }
    return 0;
}

int run_verify(const Options& opt) {
    const Field& f = resolve_field(opt);
    FlagSystem sys(opt.n, f, Variant::Lambda1);

    std::vector<std::string> wanted;
    std::string cur;
    for (char ch : opt.checks + ",") {
        if (ch == ',') {
            if (!cur.empty()) wanted.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }

    json out;
    out["q"] = f.q();
    out["n"] = opt.n;
    json checks = json::object();
    bool all_pass = true;
    for (const std::string& name : wanted) {
        CheckResult res;
        if (name == "minimality")
            res = check_minimality(sys, opt.threads);
        else if (name == "weights")
            res = check_weights(opt.n, f, opt.seed, opt.threads);
        else if (name == "identities")
            res = check_identities(sys, opt.seed);
        else if (name == "automorphism")
            res = check_automorphism(sys, opt.seed);
        else if (name == "classification")
            res = check_classification(opt.n, f, opt.threads);
        else
            throw std::invalid_argument("unknown check: " + name);
        checks[res.name] = check_json(res);
        all_pass = all_pass && res.pass;
    }
    out["checks"] = checks;
    out["overall"] = all_pass ? "pass" : "fail";
    std::cout << out.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear codes from the point-hyperplane flag geometry of PG(n, q)"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* params = app.add_subcommand("params", "closed-form code parameters");
    add_field_options(params, opt);
    params->add_option("--variant", opt.variant, "lambda1 (incident pairs) or lambda (all pairs)");

    CLI::App* genmat = app.add_subcommand("genmat", "generator matrix");
    add_field_options(genmat, opt);
    genmat->add_option("--variant", opt.variant, "lambda1 or lambda");
    genmat->add_option("--format", opt.format, "csv (default) or json");

    CLI::App* spectrum = app.add_subcommand("spectrum", "weight spectrum");
    add_field_options(spectrum, opt);
    spectrum->add_option("--mode", opt.mode, "formula, exhaustive (default) or sampled");
    spectrum->add_option("--sample-size", opt.sample_size, "sampled mode: number of draws");
    spectrum->add_option("--seed", opt.seed, "sampled mode: RNG seed");
    add_thread_option(spectrum, opt);

    CLI::App* enc = app.add_subcommand("encode", "codeword of a matrix file");
    add_field_options(enc, opt);
    enc->add_option("--matrix", opt.matrix_path, "matrix file (rows cols p e header)")->required();
    enc->add_option("--variant", opt.variant, "lambda1 or lambda");

    CLI::App* cls = app.add_subcommand("classify", "weight class and geometric tag of a codeword");
    add_field_options(cls, opt);
    cls->add_option("--matrix", opt.matrix_path, "matrix file")->required();

    CLI::App* dumpf = app.add_subcommand("dump-flags", "flag enumeration: index, point, hyperplane");
    add_field_options(dumpf, opt);
    dumpf->add_option("--variant", opt.variant, "lambda1 or lambda");

    CLI::App* verify = app.add_subcommand("verify", "run the verification bundles");
    add_field_options(verify, opt);
    verify->add_option("--checks", opt.checks, "comma-separated subset of "
                                               "minimality,weights,identities,automorphism,classification");
    verify->add_option("--seed", opt.seed, "seed for sampled checks");
    add_thread_option(verify, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (params->parsed()) return run_params(opt);
        if (genmat->parsed()) return run_genmat(opt);
        if (spectrum->parsed()) return run_spectrum(opt);
        if (enc->parsed()) return run_encode(opt);
        if (cls->parsed()) return run_classify(opt);
        if (dumpf->parsed()) return run_dump_flags(opt);
        if (verify->parsed()) return run_verify(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
