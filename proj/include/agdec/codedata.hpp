#pragma once

#include <array>
#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "field.hpp"
#include "linalg.hpp"
#include "poly.hpp"

namespace agdec {

// Element of R = ⊕_i F[x]·y_i (functions with poles only at the designated
// place at infinity): parts[i] is the F[x]-coefficient of y_i.
struct FunctionVec {
    std::vector<Poly> parts;

    bool is_zero() const {
        return std::all_of(parts.begin(), parts.end(), [](const Poly& p) { return p.is_zero(); });
    }
    bool operator==(const FunctionVec& o) const { return parts == o.parts; }
};

// Element of W̄ = ⊕_i F[x]·ω̄_i (differentials regular on the evaluation
// points): parts[i] is the F[x]-coefficient of ω̄_i.
struct DifferentialVec {
    std::vector<Poly> parts;

    bool is_zero() const {
        return std::all_of(parts.begin(), parts.end(), [](const Poly& p) { return p.is_zero(); });
    }
    bool operator==(const DifferentialVec& o) const { return parts == o.parts; }
};

// Leading-term descriptor under a weighted degree: weight w = gamma*deg + a_cls
// (or b_cls), achieved at x^deg in position cls with coefficient coeff.
struct LeadTerm {
    bool zero = true;
    long long weight = 0;
    int cls = -1;
    int deg = 0;
    Elem coeff = 0;
};

struct HermitianMeta {
    int q = 0;
    int lam_o = 0;
    int lam_q = 0;
};

struct PlineMeta {
    Elem subq = 0;
    std::vector<Elem> L;
    Poly g_given;       // generator as given (before any squaring)
    bool squared = false;
};

namespace detail {

inline FunctionVec fvec_zero(int gamma) { return FunctionVec{std::vector<Poly>(static_cast<std::size_t>(gamma))}; }
inline DifferentialVec dvec_zero(int gamma) { return DifferentialVec{std::vector<Poly>(static_cast<std::size_t>(gamma))}; }

template <typename Vec>
Vec vec_add(const Field& F, const Vec& u, const Vec& v) {
    Vec r = u;
    for (std::size_t i = 0; i < r.parts.size(); ++i) r.parts[i] = poly_add(F, u.parts[i], v.parts[i]);
    return r;
}

template <typename Vec>
Vec vec_sub(const Field& F, const Vec& u, const Vec& v) {
    Vec r = u;
    for (std::size_t i = 0; i < r.parts.size(); ++i) r.parts[i] = poly_sub(F, u.parts[i], v.parts[i]);
    return r;
}

template <typename Vec>
Vec vec_scale(const Field& F, Elem c, const Vec& v) {
    Vec r = v;
    for (auto& p : r.parts) p = poly_scale(F, c, p);
    return r;
}

// v * (c * x^k)
template <typename Vec>
Vec vec_scale_shift(const Field& F, Elem c, int k, const Vec& v) {
    Vec r = v;
    for (auto& p : r.parts) p = poly_shift(poly_scale(F, c, p), k);
    return r;
}

} // namespace detail

// Everything the decoder consumes, self-contained: Apéry weights, the kernel
// Gröbner basis {η_i}, Lagrange differentials {h_i}, the y_i·ω̄_j expansion
// table, generator residue rows, and the evaluation points. Immutable after
// build/load and safely shareable across concurrent decodes.
class CodeData {
public:
    Field field;
    int n = 0;
    int genus = 0;
    int gamma = 1;
    int degG = 0;
    std::vector<int> a;                    // rho(y_i), a_i ≡ i (mod gamma)
    std::vector<int> b;                    // delta(omega-bar_i), b_i ≡ i (mod gamma)
    std::vector<long long> S;              // all nongap weights ≤ 0, descending; |S| = k
    std::vector<DifferentialVec> eta;      // gamma rows, reduced module Groebner basis of the residue kernel
    std::vector<DifferentialVec> h;        // n rows, res(h_i) = e_i
    std::vector<std::vector<DifferentialVec>> wtab; // wtab[i][j] = expansion of y_i * omega-bar_j
    std::vector<std::vector<Elem>> gen;    // k x n, row r = res(phi-bar_{S[r]})
    std::vector<std::array<Elem, 2>> points; // n evaluation points (x, y coordinates)
    std::optional<HermitianMeta> hermitian_meta;
    std::optional<PlineMeta> pline_meta;

    explicit CodeData(Field f) : field(std::move(f)) {}

    int k() const { return static_cast<int>(S.size()); }

    int cls_of(long long w) const {
        return static_cast<int>(((w % gamma) + gamma) % gamma);
    }

    bool delta_nongap(long long s) const {
        int i = cls_of(s);
        return s >= b[static_cast<std::size_t>(i)];
    }

    bool rho_nongap(long long lam) const {
        int i = cls_of(lam);
        return lam >= a[static_cast<std::size_t>(i)];
    }

    // The unique monomial x^k omega-bar_i of weight s.
    DifferentialVec phi_bar(long long s) const {
        int i = cls_of(s);
        long long k = (s - b[static_cast<std::size_t>(i)]) / gamma;
        if (k < 0) throw std::domain_error("not a nongap: delta weight " + std::to_string(s));
        DifferentialVec r = detail::dvec_zero(gamma);
        r.parts[static_cast<std::size_t>(i)] = poly_monomial(1, static_cast<int>(k));
        return r;
    }

    // The unique monomial x^k y_i of weight lam.
    FunctionVec phi(long long lam) const {
        int i = cls_of(lam);
        long long k = (lam - a[static_cast<std::size_t>(i)]) / gamma;
        if (k < 0) throw std::domain_error("not a nongap: rho weight " + std::to_string(lam));
        FunctionVec r = detail::fvec_zero(gamma);
        r.parts[static_cast<std::size_t>(i)] = poly_monomial(1, static_cast<int>(k));
        return r;
    }

    LeadTerm delta_lead(const DifferentialVec& w) const { return lead(w.parts, b); }
    LeadTerm rho_lead(const FunctionVec& f) const { return lead(f.parts, a); }

    // y_i * w, expanded through the multiplication table.
    DifferentialVec wmul_basis(int i, const DifferentialVec& w) const {
        DifferentialVec r = detail::dvec_zero(gamma);
        for (int j = 0; j < gamma; ++j) {
            const Poly& c = w.parts[static_cast<std::size_t>(j)];
            if (c.is_zero()) continue;
            const DifferentialVec& t = wtab[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (int l = 0; l < gamma; ++l)
                r.parts[static_cast<std::size_t>(l)] = poly_add(
                    field, r.parts[static_cast<std::size_t>(l)],
                    poly_mul(field, c, t.parts[static_cast<std::size_t>(l)]));
        }
        return r;
    }

    // f * w for f in R, w in W-bar.
    DifferentialVec wmul(const FunctionVec& f, const DifferentialVec& w) const {
        DifferentialVec r = detail::dvec_zero(gamma);
        for (int i = 0; i < gamma; ++i) {
            const Poly& fi = f.parts[static_cast<std::size_t>(i)];
            if (fi.is_zero()) continue;
            DifferentialVec t = wmul_basis(i, w);
            for (int l = 0; l < gamma; ++l)
                r.parts[static_cast<std::size_t>(l)] = poly_add(
                    field, r.parts[static_cast<std::size_t>(l)],
                    poly_mul(field, fi, t.parts[static_cast<std::size_t>(l)]));
        }
        return r;
    }

    // f * g in R, through the derived y_i*y_j table.
    FunctionVec rmul(const FunctionVec& f, const FunctionVec& g) const {
        FunctionVec r = detail::fvec_zero(gamma);
        for (int i = 0; i < gamma; ++i) {
            const Poly& fi = f.parts[static_cast<std::size_t>(i)];
            if (fi.is_zero()) continue;
            for (int j = 0; j < gamma; ++j) {
                const Poly& gj = g.parts[static_cast<std::size_t>(j)];
                if (gj.is_zero()) continue;
                Poly c = poly_mul(field, fi, gj);
                const FunctionVec& t = ytab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                for (int l = 0; l < gamma; ++l)
                    r.parts[static_cast<std::size_t>(l)] = poly_add(
                        field, r.parts[static_cast<std::size_t>(l)],
                        poly_mul(field, c, t.parts[static_cast<std::size_t>(l)]));
            }
        }
        return r;
    }

    // res(w) at every evaluation point, reconstructed from the generator rows:
    // res(x^k omega-bar_i) at P = x(P)^k * res(omega-bar_i) at P.
    std::vector<Elem> residue_vector(const DifferentialVec& w) const {
        std::vector<Elem> r(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < gamma; ++i) {
            const Poly& p = w.parts[static_cast<std::size_t>(i)];
            if (p.is_zero()) continue;
            const std::vector<Elem>& wr = wres_[static_cast<std::size_t>(i)];
            for (int pt = 0; pt < n; ++pt) {
                Elem x = points[static_cast<std::size_t>(pt)][0];
                Elem v = field.mul(poly_eval(field, p, x), wr[static_cast<std::size_t>(pt)]);
                r[static_cast<std::size_t>(pt)] = field.add(r[static_cast<std::size_t>(pt)], v);
            }
        }
        return r;
    }

    const std::vector<Elem>& basis_residues(int i) const { return wres_[static_cast<std::size_t>(i)]; }
    const FunctionVec& ybasis_product(int i, int j) const {
        return ytab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

    // Derives the cached residue rows of omega-bar_i and the y_i*y_j table.
    // Must be called once after the public fields are populated; the build
    // and load paths do so before validate().
    void finalize() {
        wres_.assign(static_cast<std::size_t>(gamma), {});
        for (int i = 0; i < gamma; ++i) {
            auto it = std::find(S.begin(), S.end(), static_cast<long long>(b[static_cast<std::size_t>(i)]));
            if (it == S.end())
                throw std::runtime_error("invalid code data: Apery delta " +
                                         std::to_string(b[static_cast<std::size_t>(i)]) + " not in S");
            std::size_t row = static_cast<std::size_t>(it - S.begin());
            if (row >= gen.size()) throw std::runtime_error("invalid code data: gen row count");
            wres_[static_cast<std::size_t>(i)] = gen[row];
        }
        derive_ytab();
    }

    void validate() const;

    nlohmann::json to_json() const;
    static CodeData from_json(const nlohmann::json& j);

private:
    LeadTerm lead(const std::vector<Poly>& parts, const std::vector<int>& wt) const {
        LeadTerm best;
        for (int i = 0; i < gamma; ++i) {
            const Poly& p = parts[static_cast<std::size_t>(i)];
            if (p.is_zero()) continue;
            long long w = static_cast<long long>(gamma) * p.deg() + wt[static_cast<std::size_t>(i)];
            if (best.zero || w > best.weight) {
                best.zero = false;
                best.weight = w;
                best.cls = i;
                best.deg = p.deg();
                best.coeff = leading_coeff(p);
            }
        }
        return best;
    }

    // Solve V = sum_l c_l(x) * (y_l * omega-bar_0) for the c_l by greedy
    // elimination of the leading term; the leading positions of the y_l*w0
    // rows lie in distinct classes, so each step is forced.
    FunctionVec solve_against_column0(DifferentialVec V,
                                      const std::vector<LeadTerm>& col0_lead) const {
        FunctionVec out = detail::fvec_zero(gamma);
        while (true) {
            LeadTerm t = delta_lead(V);
            if (t.zero) break;
            int l = t.cls; // leading class of y_l * omega-bar_0 is l
            const LeadTerm& L0 = col0_lead[static_cast<std::size_t>(l)];
            int k = t.deg - L0.deg;
            if (k < 0)
                throw std::runtime_error("invalid code data: wmul table is not triangular");
            Elem c = field.div(t.coeff, L0.coeff);
            out.parts[static_cast<std::size_t>(l)] = poly_add(
                field, out.parts[static_cast<std::size_t>(l)], poly_monomial(c, k));
            const DifferentialVec& row = wtab[static_cast<std::size_t>(l)][0];
            V = detail::vec_sub(field, V, detail::vec_scale_shift(field, c, k, row));
        }
        return out;
    }

    void derive_ytab() {
        std::vector<LeadTerm> col0_lead(static_cast<std::size_t>(gamma));
        for (int l = 0; l < gamma; ++l) {
            LeadTerm t = delta_lead(wtab[static_cast<std::size_t>(l)][0]);
            long long expect = static_cast<long long>(a[static_cast<std::size_t>(l)]) + b[0];
            if (t.zero || t.weight != expect || t.cls != l)
                throw std::runtime_error("invalid code data: wmul table leading weight");
            col0_lead[static_cast<std::size_t>(l)] = t;
        }
        ytab_.assign(static_cast<std::size_t>(gamma),
                     std::vector<FunctionVec>(static_cast<std::size_t>(gamma)));
        for (int i = 0; i < gamma; ++i) {
            for (int j = 0; j < gamma; ++j) {
                // y_i * (y_j * omega-bar_0), expanded through the table twice
                DifferentialVec V = wmul_basis(i, wtab[static_cast<std::size_t>(j)][0]);
                ytab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    solve_against_column0(std::move(V), col0_lead);
            }
        }
    }

    std::vector<std::vector<Elem>> wres_;          // gamma x n residue rows of omega-bar_i
    std::vector<std::vector<FunctionVec>> ytab_;   // gamma x gamma products y_i*y_j
};

namespace detail {

inline nlohmann::json poly_to_json(const Poly& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (Elem c : p.c) arr.push_back(c);
    return arr;
}

inline Poly poly_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::runtime_error("invalid code data: polynomial must be an array");
    std::vector<Elem> c;
    for (const auto& v : j) c.push_back(v.get<Elem>());
    return poly_from(std::move(c));
}

inline nlohmann::json dvec_to_json(const DifferentialVec& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Poly& p : v.parts) arr.push_back(poly_to_json(p));
    return arr;
}

inline DifferentialVec dvec_from_json(const nlohmann::json& j, int gamma) {
    if (!j.is_array() || static_cast<int>(j.size()) != gamma)
        throw std::runtime_error("invalid code data: differential must have gamma parts");
    DifferentialVec v;
    for (const auto& e : j) v.parts.push_back(poly_from_json(e));
    return v;
}

} // namespace detail

inline void CodeData::validate() const {
    auto fail = [](const std::string& what) { throw std::runtime_error("invalid code data: " + what); };

    if (wres_.size() != static_cast<std::size_t>(gamma)) fail("not finalized");
    if (n < 1) fail("length");
    if (gamma < 1) fail("gamma");
    if (genus < 0) fail("genus");
    if (!(2 * genus - 2 < degG && degG < n)) fail("divisor degree out of range");
    if (a.size() != static_cast<std::size_t>(gamma) || b.size() != static_cast<std::size_t>(gamma))
        fail("Apery system size");
    if (a[0] != 0) fail("Apery residue");
    for (int i = 0; i < gamma; ++i) {
        if (a[static_cast<std::size_t>(i)] < 0 || a[static_cast<std::size_t>(i)] % gamma != i)
            fail("Apery residue");
        int bm = ((b[static_cast<std::size_t>(i)] % gamma) + gamma) % gamma;
        if (bm != i) fail("Apery residue");
        if (b[static_cast<std::size_t>(i)] > 0) fail("Apery delta positive");
    }

    // S must be exactly the nongap weights <= 0, descending, and match the
    // designed dimension k = n - degG + g - 1.
    {
        std::vector<long long> expect;
        long long bmin = *std::min_element(b.begin(), b.end());
        for (long long s = 0; s >= bmin; --s)
            if (delta_nongap(s)) expect.push_back(s);
        if (S != expect) fail("S enumeration");
        if (static_cast<long long>(S.size()) != static_cast<long long>(n) - degG + genus - 1)
            fail("dimension mismatch");
    }

    if (points.size() != static_cast<std::size_t>(n)) fail("points size");
    for (const auto& pt : points)
        if (pt[0] >= field.q() || pt[1] >= field.q()) fail("point coordinate out of range");
    {
        auto sorted = points;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail("points not distinct");
    }

    if (gen.size() != S.size()) fail("gen row count");
    for (const auto& row : gen) {
        if (row.size() != static_cast<std::size_t>(n)) fail("gen row length");
        for (Elem e : row)
            if (e >= field.q()) fail("gen entry out of range");
    }

    if (eta.size() != static_cast<std::size_t>(gamma)) fail("eta count");
    if (h.size() != static_cast<std::size_t>(n)) fail("h count");
    if (wtab.size() != static_cast<std::size_t>(gamma)) fail("wmul table shape");
    for (const auto& row : wtab) {
        if (row.size() != static_cast<std::size_t>(gamma)) fail("wmul table shape");
        for (const auto& v : row)
            if (v.parts.size() != static_cast<std::size_t>(gamma)) fail("wmul table shape");
    }
    for (const auto& v : eta)
        if (v.parts.size() != static_cast<std::size_t>(gamma)) fail("eta shape");
    for (const auto& v : h)
        if (v.parts.size() != static_cast<std::size_t>(gamma)) fail("h shape");

    // Consistency of the generator rows with the monomial structure:
    // row for s must be the row for b_i scaled by x(P)^k pointwise.
    for (std::size_t r = 0; r < S.size(); ++r) {
        long long s = S[r];
        int i = cls_of(s);
        long long kk = (s - b[static_cast<std::size_t>(i)]) / gamma;
        const std::vector<Elem>& base = wres_[static_cast<std::size_t>(i)];
        for (int pt = 0; pt < n; ++pt) {
            Elem want = field.mul(field.pow(points[static_cast<std::size_t>(pt)][0], kk),
                                  base[static_cast<std::size_t>(pt)]);
            if (gen[r][static_cast<std::size_t>(pt)] != want) fail("gen mismatch");
        }
    }

    // eta rows: in the kernel of res, leading classes 0..gamma-1, monic,
    // degree identity sum deg_x LT(eta_i) = n, part degrees within budget.
    {
        long long degsum = 0;
        const int n_eta = (genus > 0)
            ? static_cast<int>((static_cast<long long>(n) + 3 * genus + gamma - 1) / gamma)
            : n;
        for (int i = 0; i < gamma; ++i) {
            const DifferentialVec& e = eta[static_cast<std::size_t>(i)];
            for (Elem r : residue_vector(e))
                if (r != 0) fail("res(eta) nonzero");
            LeadTerm t = delta_lead(e);
            if (t.zero || t.cls != i) fail("eta leading class");
            if (t.coeff != 1) fail("eta not monic");
            degsum += t.deg;
            for (const Poly& p : e.parts)
                if (p.deg() > n_eta) fail("eta degree budget");
        }
        if (degsum != n) fail("eta degree sum");
    }

    // h rows: res(h_i) = e_i, part degrees within the Lagrange budget.
    {
        const int n_h = static_cast<int>((static_cast<long long>(n) + 2 * genus - 1) / gamma);
        for (int i = 0; i < n; ++i) {
            std::vector<Elem> r = residue_vector(h[static_cast<std::size_t>(i)]);
            for (int pt = 0; pt < n; ++pt)
                if (r[static_cast<std::size_t>(pt)] != (pt == i ? 1u : 0u)) fail("res(h) mismatch");
            for (const Poly& p : h[static_cast<std::size_t>(i)].parts)
                if (p.deg() > n_h) fail("h degree budget");
        }
    }

    // Generator rows linearly independent: the code has full designed rank.
    {
        Matrix M(S.size(), static_cast<std::size_t>(n));
        for (std::size_t r = 0; r < S.size(); ++r)
            for (int c = 0; c < n; ++c)
                M.at(r, static_cast<std::size_t>(c)) = gen[r][static_cast<std::size_t>(c)];
        if (mat_rank(field, std::move(M)) != S.size()) fail("gen rank");
    }

    // Multiplication table: exact leading weights delta(y_i*w_j) = a_i + b_j,
    // and the residue compatibility res(y_i*w_j) * res(w_0) =
    // res(y_i*w_0) * res(w_j) pointwise (all four are residue vectors of
    // table entries, so this closes the loop without curve context).
    for (int i = 0; i < gamma; ++i) {
        std::vector<Elem> ri0 = residue_vector(wtab[static_cast<std::size_t>(i)][0]);
        for (int j = 0; j < gamma; ++j) {
            const DifferentialVec& t = wtab[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            LeadTerm lt = delta_lead(t);
            long long expect = static_cast<long long>(a[static_cast<std::size_t>(i)]) +
                               b[static_cast<std::size_t>(j)];
            if (lt.zero || lt.weight != expect) fail("wmul table degree");
            std::vector<Elem> rij = residue_vector(t);
            for (int pt = 0; pt < n; ++pt) {
                Elem lhs = field.mul(rij[static_cast<std::size_t>(pt)],
                                     wres_[0][static_cast<std::size_t>(pt)]);
                Elem rhs = field.mul(ri0[static_cast<std::size_t>(pt)],
                                     wres_[static_cast<std::size_t>(j)][static_cast<std::size_t>(pt)]);
                if (lhs != rhs) fail("wmul table residue");
            }
        }
        // y_0 = 1: the first table row must be the identity
        for (int j = 0; j < gamma; ++j) {
            const DifferentialVec& t = wtab[0][static_cast<std::size_t>(j)];
            for (int l = 0; l < gamma; ++l) {
                const Poly& p = t.parts[static_cast<std::size_t>(l)];
                if (l == j ? !(p == poly_from({1})) : !p.is_zero()) fail("wmul table identity row");
            }
        }
    }
}

inline nlohmann::json CodeData::to_json() const {
    nlohmann::json j;
    j["field"] = {{"p", field.spec().p}, {"m", field.spec().m}, {"prim", field.spec().prim}};
    j["n"] = n;
    j["genus"] = genus;
    j["gamma"] = gamma;
    j["a"] = a;
    j["b"] = b;
    j["degG"] = degG;
    j["S"] = S;
    nlohmann::json etaj = nlohmann::json::array();
    for (const auto& e : eta) etaj.push_back(detail::dvec_to_json(e));
    j["eta"] = std::move(etaj);
    nlohmann::json hj = nlohmann::json::array();
    for (const auto& v : h) hj.push_back(detail::dvec_to_json(v));
    j["h"] = std::move(hj);
    nlohmann::json wj = nlohmann::json::array();
    for (const auto& row : wtab) {
        nlohmann::json rj = nlohmann::json::array();
        for (const auto& v : row) rj.push_back(detail::dvec_to_json(v));
        wj.push_back(std::move(rj));
    }
    j["wmul"] = std::move(wj);
    j["gen"] = gen;
    nlohmann::json pj = nlohmann::json::array();
    for (const auto& pt : points) pj.push_back({pt[0], pt[1]});
    j["points"] = std::move(pj);
    if (hermitian_meta) {
        j["divisor"] = {{"type", "hermitian"},
                        {"q", hermitian_meta->q},
                        {"lamO", hermitian_meta->lam_o},
                        {"lamQ", hermitian_meta->lam_q}};
    } else if (pline_meta) {
        j["divisor"] = {{"type", "pline"},
                        {"subq", pline_meta->subq},
                        {"L", pline_meta->L},
                        {"g", detail::poly_to_json(pline_meta->g_given)},
                        {"squared", pline_meta->squared}};
    }
    return j;
}

inline CodeData CodeData::from_json(const nlohmann::json& j) {
    auto need = [&](const char* key) -> const nlohmann::json& {
        auto it = j.find(key);
        if (it == j.end()) throw std::runtime_error(std::string("invalid code data: missing field '") + key + "'");
        return *it;
    };
    const auto& fj = need("field");
    FieldSpec fs;
    fs.p = fj.at("p").get<int>();
    fs.m = fj.at("m").get<int>();
    fs.prim = fj.at("prim").get<std::vector<int>>();
    CodeData code{Field(fs)};
    code.n = need("n").get<int>();
    code.genus = need("genus").get<int>();
    code.gamma = need("gamma").get<int>();
    code.degG = need("degG").get<int>();
    code.a = need("a").get<std::vector<int>>();
    code.b = need("b").get<std::vector<int>>();
    code.S = need("S").get<std::vector<long long>>();
    if (code.gamma < 1 || code.n < 1) throw std::runtime_error("invalid code data: shape");
    for (const auto& e : need("eta")) code.eta.push_back(detail::dvec_from_json(e, code.gamma));
    for (const auto& e : need("h")) code.h.push_back(detail::dvec_from_json(e, code.gamma));
    for (const auto& row : need("wmul")) {
        std::vector<DifferentialVec> r;
        for (const auto& e : row) r.push_back(detail::dvec_from_json(e, code.gamma));
        code.wtab.push_back(std::move(r));
    }
    code.gen = need("gen").get<std::vector<std::vector<Elem>>>();
    for (const auto& p : need("points")) {
        if (!p.is_array() || p.size() != 2) throw std::runtime_error("invalid code data: point shape");
        code.points.push_back({p[0].get<Elem>(), p[1].get<Elem>()});
    }
    if (auto it = j.find("divisor"); it != j.end()) {
        const auto& d = *it;
        std::string type = d.at("type").get<std::string>();
        if (type == "hermitian") {
            HermitianMeta m;
            m.q = d.at("q").get<int>();
            m.lam_o = d.at("lamO").get<int>();
            m.lam_q = d.at("lamQ").get<int>();
            code.hermitian_meta = m;
        } else if (type == "pline") {
            PlineMeta m;
            m.subq = d.at("subq").get<Elem>();
            m.L = d.at("L").get<std::vector<Elem>>();
            m.g_given = detail::poly_from_json(d.at("g"));
            m.squared = d.at("squared").get<bool>();
            code.pline_meta = m;
        } else {
            throw std::runtime_error("invalid code data: unknown divisor type");
        }
    }
    // structural sanity needed before finalize() can run safely
    if (code.a.size() != static_cast<std::size_t>(code.gamma) ||
        code.b.size() != static_cast<std::size_t>(code.gamma) ||
        code.gen.size() != code.S.size() ||
        code.wtab.size() != static_cast<std::size_t>(code.gamma))
        throw std::runtime_error("invalid code data: shape");
    for (const auto& row : code.gen)
        if (row.size() != static_cast<std::size_t>(code.n))
            throw std::runtime_error("invalid code data: gen row length");
    for (int i = 0; i < code.gamma; ++i) {
        int bm = ((code.b[static_cast<std::size_t>(i)] % code.gamma) + code.gamma) % code.gamma;
        if (bm != i) throw std::runtime_error("invalid code data: Apery residue");
        if (code.a[static_cast<std::size_t>(i)] < 0 ||
            code.a[static_cast<std::size_t>(i)] % code.gamma != i)
            throw std::runtime_error("invalid code data: Apery residue");
    }
    code.finalize();
    code.validate();
    return code;
}

} // namespace agdec
