#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "codedata.hpp"
#include "field.hpp"
#include "poly.hpp"

// Classical Goppa codes as genus-zero differential codes on the projective
// line, plus the specialized decoder that works on a 2x2 array of univariate
// polynomials. Residues here are the true residues at the support points, so
// arbitrary support sets L work, not only full evaluation supports.

namespace agdec {

struct GoppaCode {
    Field field;   // the big field the support and generator live in
    Elem subq = 0; // order of the subfield the transmitted symbols come from
    std::vector<Elem> L;
    Poly g;               // generator as given
    bool squared = false; // decode with g^2 (binary separable construction)

    // derived tables
    Poly geff;                 // g or g^2
    Poly full;                 // prod (x - L_i)
    std::vector<Poly> lag;     // lag[i] = full / (x - L_i)
    std::vector<Elem> gl;      // geff(L_i)
    std::vector<Elem> pip;     // full'(L_i) = prod_{j != i} (L_i - L_j)

    int n() const { return static_cast<int>(L.size()); }
    int dim() const { return n() - geff.deg(); } // dimension over the big field
};

namespace goppa_detail {

struct PrimePower {
    int p = 0;
    int e = 0;
};

inline PrimePower factor_prime_power(long long q) {
    for (int p = 2; static_cast<long long>(p) * p <= q; ++p) {
        if (q % p != 0) continue;
        int e = 0;
        long long t = q;
        while (t % p == 0) {
            t /= p;
            ++e;
        }
        if (t != 1) throw std::invalid_argument("subfield order must be a prime power");
        return {p, e};
    }
    if (q < 2) throw std::invalid_argument("subfield order must be a prime power");
    return {static_cast<int>(q), 1};
}

} // namespace goppa_detail

inline GoppaCode goppa_build(Field field, Elem subq, std::vector<Elem> L, Poly g,
                             bool squared = false) {
    GoppaCode gc{std::move(field), subq, std::move(L), std::move(g), squared};
    const Field& F = gc.field;
    if (gc.L.empty()) throw std::invalid_argument("support set is empty");
    for (Elem a : gc.L)
        if (a >= F.q()) throw std::invalid_argument("support point outside the field");
    {
        std::vector<Elem> sorted = gc.L;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("support points must be distinct");
    }
    F.in_subfield(0, subq); // validates that subq is a subfield order

    if (gc.g.deg() < 1) throw std::invalid_argument("generator must have positive degree");
    if (squared) {
        if (F.spec().p != 2)
            throw std::invalid_argument("the squaring construction needs characteristic two");
        Poly d = poly_deriv(F, gc.g);
        if (poly_gcd(F, gc.g, d).deg() != 0)
            throw std::invalid_argument("the squaring construction needs a separable generator");
    }

    gc.geff = squared ? poly_mul(F, gc.g, gc.g) : gc.g;
    if (gc.geff.deg() >= gc.n())
        throw std::invalid_argument("generator degree must be smaller than the support size");

    gc.full = poly_const(1);
    for (Elem a : gc.L)
        gc.full = poly_mul(F, gc.full, poly_from({F.neg(a), 1}));
    Poly dfull = poly_deriv(F, gc.full);
    for (Elem a : gc.L) {
        Elem gv = poly_eval(F, gc.geff, a);
        if (gv == 0) throw std::invalid_argument("generator vanishes on a support point");
        gc.gl.push_back(gv);
        gc.pip.push_back(poly_eval(F, dfull, a));
        DivRem dr = poly_divrem(F, gc.full, poly_from({F.neg(a), 1}));
        gc.lag.push_back(dr.quot);
    }
    return gc;
}

// Binary Goppa code from a separable generator: same code as the one defined
// by g^2, decodable up to deg g errors.
inline GoppaCode binary_goppa_build(int m, std::vector<Elem> L, Poly g) {
    Field F = Field::make(2, m, default_prim(2, m));
    return goppa_build(std::move(F), 2, std::move(L), std::move(g), true);
}

// View the Goppa code through the generic interface: a gamma = 1 code on the
// line with full tables, so the general decoder and analysis apply verbatim.
inline CodeData to_codedata(const GoppaCode& gc) {
    const Field& F = gc.field;
    const int n = gc.n();
    CodeData cd(F);
    cd.n = n;
    cd.genus = 0;
    cd.gamma = 1;
    cd.degG = gc.geff.deg() - 1;
    cd.a = {0};
    cd.b = {gc.geff.deg() - n + 1};
    for (long long s = 0; s >= cd.b[0]; --s) cd.S.push_back(s);

    cd.eta = {DifferentialVec{{gc.full}}};
    for (int i = 0; i < n; ++i) {
        Elem scale = F.inv(gc.gl[static_cast<std::size_t>(i)]);
        cd.h.push_back(DifferentialVec{{poly_scale(F, scale, gc.lag[static_cast<std::size_t>(i)])}});
    }
    cd.wtab = {{DifferentialVec{{poly_const(1)}}}};
    for (long long s : cd.S) {
        std::vector<Elem> row(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            Elem x = gc.L[static_cast<std::size_t>(i)];
            Elem val = F.div(F.mul(F.pow(x, s - cd.b[0]), gc.gl[static_cast<std::size_t>(i)]),
                             gc.pip[static_cast<std::size_t>(i)]);
            row[static_cast<std::size_t>(i)] = val;
        }
        cd.gen.push_back(std::move(row));
    }
    for (Elem a : gc.L) cd.points.push_back({a, 0});
    cd.pline_meta = PlineMeta{gc.subq, gc.L, gc.g, gc.squared};
    cd.finalize();
    cd.validate();
    return cd;
}

enum class GoppaStatus { success, failure };

// snapshot of the working 2x2 array entering an iteration
struct GoppaStep {
    long long s = 0;
    Poly A, B; // F-row: A z + B omega
    Poly C, D; // G-row: C z + D omega
};

struct GoppaDecodeOptions {
    bool trace = false;
};

struct GoppaDecodeResult {
    GoppaStatus status = GoppaStatus::failure;
    std::vector<Elem> codeword; // filled on success only
    std::vector<Elem> corrected; // the corrected big-field word, always filled
    Poly mu;                     // message polynomial
    std::string failure_reason;
    bool conservation_ok = true;
    std::vector<GoppaStep> steps; // entry states for s = n-1..0, then the exit state
};

// The specialized descent for genus zero and gamma = 1. Phase one (weights at
// and above the code dimension) absorbs the error locations fraction-free;
// phase two reads one message coefficient per weight. The corrected word is
// accepted only if every symbol lies in the declared subfield.
inline GoppaDecodeResult goppa_decode(const GoppaCode& gc, const std::vector<Elem>& v,
                                      const GoppaDecodeOptions& opt = {}) {
    const Field& F = gc.field;
    const int n = gc.n();
    if (static_cast<int>(v.size()) != n)
        throw std::invalid_argument("received word length does not match the code");

    GoppaDecodeResult out;

    Poly hv; // syndrome polynomial: h_v = sum v_i lag_i / geff(L_i)
    for (int i = 0; i < n; ++i) {
        Elem c = v[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        Elem scale = F.div(c, gc.gl[static_cast<std::size_t>(i)]);
        hv = poly_add(F, hv, poly_scale(F, scale, gc.lag[static_cast<std::size_t>(i)]));
    }

    Poly A = poly_const(1), B = poly_scale(F, F.neg(1), hv);
    Poly C, D = gc.full;
    Elem nu = 1;
    const int kdim = gc.dim();
    std::vector<Elem> m_coef(static_cast<std::size_t>(kdim), 0);

    for (long long s = n - 1; s >= 0; --s) {
        if (opt.trace) out.steps.push_back({s, A, B, C, D});
        if (A.is_zero() || D.is_zero() || A.deg() + D.deg() != n)
            out.conservation_ok = false;
        long long k = A.deg() + s;
        if (s >= kdim) {
            Elem m = F.neg(coeff_at(B, static_cast<int>(k)));
            if (m != 0) {
                long long c = D.deg() - k;
                if (c > 0) {
                    Poly nA = poly_add(F, poly_scale(F, nu, poly_shift(A, static_cast<int>(c))),
                                       poly_scale(F, m, C));
                    Poly nB = poly_add(F, poly_scale(F, nu, poly_shift(B, static_cast<int>(c))),
                                       poly_scale(F, m, D));
                    C = A;
                    D = B;
                    A = std::move(nA);
                    B = std::move(nB);
                    nu = F.neg(m);
                } else {
                    A = poly_add(F, poly_scale(F, nu, A),
                                 poly_scale(F, m, poly_shift(C, static_cast<int>(-c))));
                    B = poly_add(F, poly_scale(F, nu, B),
                                 poly_scale(F, m, poly_shift(D, static_cast<int>(-c))));
                }
            }
        } else {
            Elem ms = F.neg(F.div(coeff_at(B, static_cast<int>(k)), leading_coeff(A)));
            m_coef[static_cast<std::size_t>(s)] = ms;
            if (ms != 0) {
                B = poly_add(F, B, poly_scale(F, ms, poly_shift(A, static_cast<int>(s))));
                D = poly_add(F, D, poly_scale(F, ms, poly_shift(C, static_cast<int>(s))));
            }
        }
    }
    if (opt.trace) out.steps.push_back({-1, A, B, C, D});
    if (A.is_zero() || D.is_zero() || A.deg() + D.deg() != n) out.conservation_ok = false;

    out.mu.c = m_coef;
    out.mu.trim();
    out.corrected.resize(static_cast<std::size_t>(n));
    bool in_sub = true;
    for (int i = 0; i < n; ++i) {
        Elem r = F.div(F.mul(poly_eval(F, out.mu, gc.L[static_cast<std::size_t>(i)]),
                             gc.gl[static_cast<std::size_t>(i)]),
                       gc.pip[static_cast<std::size_t>(i)]);
        out.corrected[static_cast<std::size_t>(i)] = r;
        if (!F.in_subfield(r, gc.subq)) in_sub = false;
    }
    if (in_sub) {
        out.status = GoppaStatus::success;
        out.codeword = out.corrected;
    } else {
        out.status = GoppaStatus::failure;
        out.failure_reason = "corrected word leaves the subfield";
    }
    return out;
}

inline nlohmann::json goppa_to_json(const GoppaCode& gc) {
    const FieldSpec& fs = gc.field.spec();
    goppa_detail::PrimePower pp = goppa_detail::factor_prime_power(gc.subq);
    nlohmann::json doc;
    doc["q"] = gc.subq;
    doc["m"] = fs.m / pp.e; // extension degree of the big field over the subfield
    doc["prim"] = fs.prim;
    doc["L"] = gc.L;
    doc["g"] = gc.g.c;
    doc["squared"] = gc.squared;
    return doc;
}

inline GoppaCode goppa_from_json(const nlohmann::json& doc) {
    for (const char* key : {"q", "m", "prim", "L", "g", "squared"})
        if (!doc.contains(key))
            throw std::invalid_argument(std::string("missing field '") + key + "'");
    Elem subq = doc.at("q").get<Elem>();
    int m = doc.at("m").get<int>();
    goppa_detail::PrimePower pp = goppa_detail::factor_prime_power(subq);
    std::vector<int> prim = doc.at("prim").get<std::vector<int>>();
    Field F = Field::make(pp.p, pp.e * m, std::move(prim));
    std::vector<Elem> L = doc.at("L").get<std::vector<Elem>>();
    Poly g;
    g.c = doc.at("g").get<std::vector<Elem>>();
    g.trim();
    return goppa_build(std::move(F), subq, std::move(L), std::move(g),
                       doc.at("squared").get<bool>());
}

// Files describing a Goppa code carry the support list; built code tables do not.
inline bool is_goppa_json(const nlohmann::json& doc) { return doc.contains("L"); }

} // namespace agdec
