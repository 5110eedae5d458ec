#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "codedata.hpp"
#include "decoder.hpp"
#include "linalg.hpp"
#include "rng.hpp"

// Ground-truth helpers the tests and the simulator lean on: straightforward
// encoding, seeded error injection, and brute-force searches that are exact
// by construction (guarded against infeasible sizes).

namespace agdec {

using Message = std::map<long long, Elem, std::greater<long long>>;

inline std::vector<Elem> encode(const CodeData& code, const Message& msg) {
    const Field& F = code.field;
    std::vector<Elem> cw(static_cast<std::size_t>(code.n), 0);
    for (const auto& [s, val] : msg) {
        auto it = std::find(code.S.begin(), code.S.end(), s);
        if (it == code.S.end())
            throw std::invalid_argument("message weight " + std::to_string(s) +
                                        " is not a weight of this code");
        if (val == 0) continue;
        std::size_t row = static_cast<std::size_t>(it - code.S.begin());
        for (int c = 0; c < code.n; ++c)
            cw[static_cast<std::size_t>(c)] = F.add(
                cw[static_cast<std::size_t>(c)], F.mul(val, code.gen[row][static_cast<std::size_t>(c)]));
    }
    return cw;
}

inline Message random_message(const CodeData& code, SplitMix64& rng) {
    Message m;
    for (long long s : code.S) m[s] = static_cast<Elem>(rng.below(code.field.q()));
    return m;
}

// Adds w errors at distinct positions (values uniform over the nonzero field
// elements) and returns the chosen positions.
inline std::vector<int> add_errors(const Field& F, SplitMix64& rng, std::vector<Elem>& word,
                                   int w) {
    const int n = static_cast<int>(word.size());
    if (w < 0 || w > n) throw std::invalid_argument("error weight out of range");
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> support;
    for (int t = 0; t < w; ++t) {
        int j = t + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - t)));
        std::swap(idx[static_cast<std::size_t>(t)], idx[static_cast<std::size_t>(j)]);
        int p = idx[static_cast<std::size_t>(t)];
        Elem e = static_cast<Elem>(1 + rng.below(static_cast<std::uint64_t>(F.q()) - 1));
        word[static_cast<std::size_t>(p)] = F.add(word[static_cast<std::size_t>(p)], e);
        support.push_back(p);
    }
    return support;
}

namespace oracle_detail {

inline std::uint64_t guarded_total(std::uint64_t base, int exp, std::uint64_t guard) {
    std::uint64_t total = 1;
    for (int i = 0; i < exp; ++i) {
        if (total > guard / base)
            throw std::invalid_argument("search space exceeds the exhaustive guard");
        total *= base;
    }
    if (total > guard) throw std::invalid_argument("search space exceeds the exhaustive guard");
    return total;
}

// advance the message odometer by one and apply the delta to the codeword
inline void bump(const CodeData& code, std::vector<Elem>& digit, std::vector<Elem>& cw) {
    const Field& F = code.field;
    for (std::size_t pos = 0;; ++pos) {
        Elem old = digit[pos];
        Elem neu = (old + 1 == F.q()) ? 0 : old + 1;
        digit[pos] = neu;
        Elem diff = F.sub(neu, old);
        for (int r = 0; r < code.n; ++r)
            cw[static_cast<std::size_t>(r)] = F.add(
                cw[static_cast<std::size_t>(r)], F.mul(diff, code.gen[pos][static_cast<std::size_t>(r)]));
        if (neu != 0) return;
    }
}

} // namespace oracle_detail

// True minimum distance by enumerating every nonzero codeword.
inline int min_distance_exhaustive(const CodeData& code, std::uint64_t guard = (1ull << 24)) {
    std::uint64_t total = oracle_detail::guarded_total(code.field.q(), code.k(), guard);
    std::vector<Elem> digit(static_cast<std::size_t>(code.k()), 0);
    std::vector<Elem> cw(static_cast<std::size_t>(code.n), 0);
    int best = code.n + 1;
    for (std::uint64_t step = 1; step < total; ++step) {
        oracle_detail::bump(code, digit, cw);
        int wt = 0;
        for (Elem e : cw)
            if (e != 0) ++wt;
        best = std::min(best, wt);
    }
    return best;
}

// Messages whose codewords span, over the prime field, the subcode of words
// with every coordinate in the subfield of order q0. The condition c^{q0} = c
// on each coordinate is linear over the prime field, so the subcode pulls
// back to a prime-field kernel of the message space.
inline std::vector<Message> subfield_message_basis(const CodeData& code, Elem q0) {
    const Field& F = code.field;
    const int p = F.spec().p;
    const int e = F.spec().m;
    const int k = code.k();
    const int dim = k * e;

    Field Fp = Field::make(p, 1, default_prim(p, 1));
    Matrix M(static_cast<std::size_t>(code.n) * static_cast<std::size_t>(e),
             static_cast<std::size_t>(dim));
    for (int t = 0; t < dim; ++t) {
        int srow = t / e, j = t % e;
        Elem basis = 1;
        for (int i = 0; i < j; ++i) basis *= static_cast<Elem>(p); // digit monomial
        for (int r = 0; r < code.n; ++r) {
            Elem v = F.mul(basis, code.gen[static_cast<std::size_t>(srow)][static_cast<std::size_t>(r)]);
            Elem u = F.sub(F.pow(v, static_cast<long long>(q0)), v);
            for (int d = 0; d < e; ++d) {
                M.at(static_cast<std::size_t>(r) * static_cast<std::size_t>(e) +
                         static_cast<std::size_t>(d),
                     static_cast<std::size_t>(t)) = u % static_cast<Elem>(p);
                u /= static_cast<Elem>(p);
            }
        }
    }
    std::vector<Message> out;
    for (const std::vector<Elem>& vec : mat_kernel(Fp, M)) {
        Message msg;
        for (int s = 0; s < k; ++s) {
            Elem enc = 0, place = 1;
            for (int j = 0; j < e; ++j) {
                enc += vec[static_cast<std::size_t>(s * e + j)] * place;
                place *= static_cast<Elem>(p);
            }
            msg[code.S[static_cast<std::size_t>(s)]] = enc;
        }
        out.push_back(std::move(msg));
    }
    return out;
}

// Prime-field combination of basis messages; lam entries live in {0..p-1}.
inline Message combine_messages(const CodeData& code, const std::vector<Message>& basis,
                                const std::vector<Elem>& lam) {
    Message msg;
    for (long long s : code.S) msg[s] = 0;
    for (std::size_t t = 0; t < basis.size(); ++t) {
        if (lam[t] == 0) continue;
        for (const auto& [s, val] : basis[t])
            msg[s] = code.field.add(msg[s], code.field.mul(lam[t], val));
    }
    return msg;
}

// True minimum distance of the subcode of codewords with every coordinate in
// the subfield of order q0; nullopt when that subcode is trivial.
inline std::optional<int> min_distance_subfield(const CodeData& code, Elem q0,
                                                std::uint64_t guard = (1ull << 24)) {
    const int p = code.field.spec().p;
    std::vector<Message> basis = subfield_message_basis(code, q0);
    if (basis.empty()) return std::nullopt;
    std::uint64_t total = oracle_detail::guarded_total(static_cast<std::uint64_t>(p),
                                                       static_cast<int>(basis.size()), guard);
    int best = code.n + 1;
    std::vector<Elem> lam(basis.size(), 0);
    for (std::uint64_t step = 1; step < total; ++step) {
        // odometer over the combination coefficients in the prime field
        for (std::size_t pos = 0;; ++pos) {
            lam[pos] = (lam[pos] + 1 == static_cast<Elem>(p)) ? 0 : lam[pos] + 1;
            if (lam[pos] != 0) break;
        }
        std::vector<Elem> cw = encode(code, combine_messages(code, basis, lam));
        int wt = 0;
        for (Elem c : cw)
            if (c != 0) ++wt;
        best = std::min(best, wt);
    }
    return best;
}

struct Nearest {
    std::vector<Elem> codeword;
    Message msg;
    int distance = 0;
};

// Closest codeword to the given word by full enumeration; ties broken toward
// the lexicographically smallest codeword, so the answer is deterministic.
inline Nearest nearest_codeword(const CodeData& code, const std::vector<Elem>& v,
                                std::uint64_t guard = (1ull << 20)) {
    if (static_cast<int>(v.size()) != code.n)
        throw std::invalid_argument("word length does not match the code");
    std::uint64_t total = oracle_detail::guarded_total(code.field.q(), code.k(), guard);
    std::vector<Elem> digit(static_cast<std::size_t>(code.k()), 0);
    std::vector<Elem> cw(static_cast<std::size_t>(code.n), 0);
    Nearest best;
    best.distance = std::numeric_limits<int>::max();
    auto consider = [&]() {
        int d = 0;
        for (int r = 0; r < code.n; ++r)
            if (cw[static_cast<std::size_t>(r)] != v[static_cast<std::size_t>(r)]) ++d;
        if (d < best.distance || (d == best.distance && cw < best.codeword)) {
            best.distance = d;
            best.codeword = cw;
            best.msg.clear();
            for (int s = 0; s < code.k(); ++s)
                best.msg[code.S[static_cast<std::size_t>(s)]] = digit[static_cast<std::size_t>(s)];
        }
    };
    consider();
    for (std::uint64_t step = 1; step < total; ++step) {
        oracle_detail::bump(code, digit, cw);
        consider();
    }
    return best;
}

struct TrialResult {
    std::uint64_t seed = 0;
    int wt = 0;
    std::string outcome; // "exact" | "failure" | "miscorrect"
    long long iterations = 0;
    int max_poly_deg = 0;
};

// One seeded encode/corrupt/decode round trip. The seed alone determines the
// message, the error weight (uniform on 0..max_errors), the error positions,
// and the error values.
inline TrialResult run_trial(const CodeData& code, std::uint64_t seed, int max_errors,
                             const DecodeOptions& opt = {}) {
    SplitMix64 rng(seed);
    Message msg = random_message(code, rng);
    std::vector<Elem> cw = encode(code, msg);
    int w = max_errors > 0 ? static_cast<int>(rng.below(static_cast<std::uint64_t>(max_errors) + 1))
                           : 0;
    std::vector<Elem> recv = cw;
    add_errors(code.field, rng, recv, w);

    TrialResult t;
    t.seed = seed;
    t.wt = w;
    DecodeResult dr = decode(code, recv, opt);
    t.iterations = dr.iterations;
    t.max_poly_deg = dr.max_poly_deg;
    if (dr.status == DecodeStatus::failure)
        t.outcome = "failure";
    else
        t.outcome = (dr.codeword == cw) ? "exact" : "miscorrect";
    return t;
}

} // namespace agdec
