// agdec: build, inspect, and decode differential AG codes on Hermitian
// curves and the projective line (classical Goppa codes).
//
// Exit codes: 0 success; 1 expected domain failure (decoder reports failure,
// verification finds a violation); 2 usage / input errors.

#include <CLI11.hpp>

#include <agdec/analysis.hpp>
#include <agdec/decoder.hpp>
#include <agdec/goppa.hpp>
#include <agdec/hermitian.hpp>
#include <agdec/oracle.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace agdec;

namespace {

// Either kind of code file: a Goppa description (carries its support list) or
// a fully built table file.
struct LoadedCode {
    std::optional<GoppaCode> goppa;
    std::optional<CodeData> code;
};

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    nlohmann::json doc;
    in >> doc;
    return doc;
}

LoadedCode load_code(const std::string& path) {
    nlohmann::json doc = load_json(path);
    LoadedCode lc;
    if (is_goppa_json(doc))
        lc.goppa = goppa_from_json(doc);
    else
        lc.code = CodeData::from_json(doc);
    return lc;
}

void write_json(const std::string& path, const nlohmann::json& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << doc.dump(2) << "\n";
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<Elem> parse_elems(const std::string& list, const Field& F) {
    std::vector<Elem> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        long long v = std::stoll(item, &pos);
        if (pos != item.size()) throw std::runtime_error("bad integer '" + item + "'");
        if (v < 0 || static_cast<Elem>(v) >= F.q())
            throw std::runtime_error("element " + std::to_string(v) + " out of range for GF(" +
                                     std::to_string(F.q()) + ")");
        out.push_back(static_cast<Elem>(v));
    }
    if (out.empty()) throw std::runtime_error("empty list");
    return out;
}

std::vector<Elem> read_vector(const std::string& path, const Field& F, int n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::vector<Elem> out;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        long long v = std::stoll(line);
        if (v < 0 || static_cast<Elem>(v) >= F.q())
            throw std::runtime_error("element " + std::to_string(v) + " out of range for GF(" +
                                     std::to_string(F.q()) + ")");
        out.push_back(static_cast<Elem>(v));
    }
    if (static_cast<int>(out.size()) != n)
        throw std::runtime_error("expected " + std::to_string(n) + " lines in '" + path +
                                 "', found " + std::to_string(out.size()));
    return out;
}

// message file: k lines, one coefficient per message weight, largest weight first
Message read_message(const std::string& path, const CodeData& code) {
    std::vector<Elem> vals = read_vector(path, code.field, code.k());
    Message msg;
    for (std::size_t i = 0; i < vals.size(); ++i) msg[code.S[i]] = vals[i];
    return msg;
}

void print_word(const std::vector<Elem>& w) {
    for (Elem c : w) std::cout << c << "\n";
}

std::string poly_str(const Poly& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        if (i) s += " ";
        s += std::to_string(p.c[i]);
    }
    return s + "]";
}

int cmd_build_hermitian(int q, int gO, int gQ, const std::string& out) {
    CodeData cd = build_hermitian(q, gO, gQ);
    write_json(out, cd.to_json());
    std::cerr << "built [" << cd.n << "," << cd.k() << "] code over GF(" << cd.field.q()
              << ") -> " << out << "\n";
    return 0;
}

int cmd_goppa_build(int q, int m, const std::string& g_list, const std::string& L_list,
                    bool square, const std::string& out) {
    auto pp = goppa_detail::factor_prime_power(q);
    Field F = Field::make(pp.p, pp.e * m, default_prim(pp.p, pp.e * m));
    Poly g;
    g.c = parse_elems(g_list, F);
    g.trim();
    std::vector<Elem> L;
    if (L_list == "all") {
        L.push_back(0);
        Elem t = 1;
        for (Elem i = 1; i < F.q(); ++i) {
            L.push_back(t);
            t = F.mul(t, F.alpha());
        }
    } else {
        L = parse_elems(L_list, F);
    }
    GoppaCode gc = goppa_build(std::move(F), static_cast<Elem>(q), std::move(L), std::move(g),
                               square);
    write_json(out, goppa_to_json(gc));
    std::cerr << "built Goppa code: n = " << gc.n() << ", generator degree " << gc.g.deg()
              << (gc.squared ? " (squared)" : "") << " -> " << out << "\n";
    return 0;
}

int cmd_params(const std::string& file) {
    LoadedCode lc = load_code(file);
    CodeData cd = lc.goppa ? to_codedata(*lc.goppa) : std::move(*lc.code);
    std::cout << params_report(cd);
    return 0;
}

int cmd_encode(const std::string& file, const std::string& msgfile) {
    LoadedCode lc = load_code(file);
    if (lc.goppa)
        throw std::runtime_error(
            "'" + file + "' is a Goppa description; encoding needs built code tables");
    Message msg = read_message(msgfile, *lc.code);
    print_word(encode(*lc.code, msg));
    return 0;
}

int cmd_decode(const std::string& file, const std::string& vfile, bool trace) {
    LoadedCode lc = load_code(file);
    if (lc.goppa) {
        const GoppaCode& gc = *lc.goppa;
        std::vector<Elem> v = read_vector(vfile, gc.field, gc.n());
        GoppaDecodeOptions opt;
        opt.trace = trace;
        GoppaDecodeResult res = goppa_decode(gc, v, opt);
        if (trace)
            for (const GoppaStep& st : res.steps)
                std::cerr << (st.s < 0 ? "final" : "s=" + std::to_string(st.s)) << " A="
                          << poly_str(st.A) << " B=" << poly_str(st.B) << " C=" << poly_str(st.C)
                          << " D=" << poly_str(st.D) << "\n";
        if (res.status != GoppaStatus::success) {
            std::cerr << "Decoding Failure: " << res.failure_reason << "\n";
            return 1;
        }
        print_word(res.codeword);
        return 0;
    }
    const CodeData& cd = *lc.code;
    std::vector<Elem> v = read_vector(vfile, cd.field, cd.n);
    DecodeOptions opt;
    opt.trace = trace;
    DecodeResult res = decode(cd, v, opt);
    if (trace)
        for (const std::string& line : res.trace) std::cerr << line << "\n";
    if (res.status != DecodeStatus::success) {
        std::cerr << "Decoding Failure: " << res.failure_reason << "\n";
        return 1;
    }
    print_word(res.codeword);
    return 0;
}

int cmd_simulate(const std::string& file, long long trials, int max_errors,
                 std::uint64_t seed) {
    LoadedCode lc = load_code(file);
    CodeData cd = lc.goppa ? to_codedata(*lc.goppa) : std::move(*lc.code);
    long long exact = 0, failures = 0, miscorrections = 0;
    long long max_iter = 0, max_deg = 0;
    auto t0 = std::chrono::steady_clock::now();
    for (long long i = 0; i < trials; ++i) {
        TrialResult tr = run_trial(cd, seed + static_cast<std::uint64_t>(i), max_errors);
        if (tr.outcome == "exact")
            ++exact;
        else if (tr.outcome == "failure")
            ++failures;
        else
            ++miscorrections;
        max_iter = std::max(max_iter, static_cast<long long>(tr.iterations));
        max_deg = std::max(max_deg, static_cast<long long>(tr.max_poly_deg));
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::cout << "trials = " << trials << "\n"
              << "exact = " << exact << "\n"
              << "failures = " << failures << "\n"
              << "miscorrections = " << miscorrections << "\n"
              << "max iterations = " << max_iter << "\n"
              << "max working degree = " << max_deg << "\n"
              << "elapsed ms = " << ms << "\n";
    return 0;
}

int cmd_verify(const std::string& file) {
    LoadedCode lc = load_code(file);
    CodeData cd = lc.goppa ? to_codedata(*lc.goppa) : std::move(*lc.code);
    try {
        cd.validate();
        std::cout << "structure: ok\n";
        verify_capacity_profiles(cd);
        std::cout << "capacity profiles: ok\n";
        bool geometry = cd.hermitian_meta.has_value() || cd.pline_meta.has_value();
        if (geometry) {
            verify_jump_duality(cd);
            std::cout << "jump-set duality: ok\n";
        } else {
            std::cout << "jump-set duality: skipped (no divisor metadata)\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    }
    std::cout << "OK\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"differential AG code toolkit"};
    app.require_subcommand(1);

    int q = 0, gO = 0, gQ = 0, m = 0, max_errors = 0;
    long long trials = 0;
    std::uint64_t seed = 1;
    bool square = false, trace = false;
    std::string out, file, vfile, msgfile, g_list, L_list;

    CLI::App* sb = app.add_subcommand("build-hermitian", "build a two-point Hermitian code");
    sb->add_option("--q", q, "base field size of the curve (code lives over GF(q^2))")
        ->required();
    sb->add_option("--gO", gO, "divisor coefficient at the origin point")->required();
    sb->add_option("--gQ", gQ, "divisor coefficient at the point at infinity")->required();
    sb->add_option("-o,--out", out, "output code file")->required();

    CLI::App* sg = app.add_subcommand("goppa-build", "build a classical Goppa code");
    sg->add_option("--q", q, "subfield the transmitted symbols come from")->required();
    sg->add_option("--m", m, "extension degree of the big field over the subfield")->required();
    sg->add_option("--g", g_list, "generator coefficients, ascending, comma-separated")
        ->required();
    sg->add_option("--L", L_list, "support: 'all' or comma-separated element encodings")
        ->required();
    sg->add_flag("--square", square, "decode the code of g^2 (binary separable generators)");
    sg->add_option("-o,--out", out, "output code file")->required();

    CLI::App* sp = app.add_subcommand("params", "print the capacity table and distance bounds");
    sp->add_option("file", file, "code file")->required();

    CLI::App* se = app.add_subcommand("encode", "encode a message file");
    se->add_option("file", file, "code file")->required();
    se->add_option("msgfile", msgfile, "message: k lines, largest weight first")->required();

    CLI::App* sd = app.add_subcommand("decode", "decode a received word");
    sd->add_option("file", file, "code file")->required();
    sd->add_option("vfile", vfile, "received word: one element per line")->required();
    sd->add_flag("--trace", trace, "print per-iteration states to the diagnostic stream");

    CLI::App* ss = app.add_subcommand("simulate", "seeded encode/corrupt/decode trials");
    ss->add_option("file", file, "code file")->required();
    ss->add_option("--trials", trials, "number of trials")->required();
    ss->add_option("--max-errors", max_errors, "error weights drawn uniformly from 0..W")
        ->required();
    ss->add_option("--seed", seed, "base seed; trial i uses seed + i");

    CLI::App* sv = app.add_subcommand("verify", "check structural and capacity invariants");
    sv->add_option("file", file, "code file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sb->parsed()) return cmd_build_hermitian(q, gO, gQ, out);
        if (sg->parsed()) return cmd_goppa_build(q, m, g_list, L_list, square, out);
        if (sp->parsed()) return cmd_params(file);
        if (se->parsed()) return cmd_encode(file, msgfile);
        if (sd->parsed()) return cmd_decode(file, vfile, trace);
        if (ss->parsed()) return cmd_simulate(file, trials, max_errors, seed);
        if (sv->parsed()) return cmd_verify(file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
