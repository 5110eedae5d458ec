#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "codedata.hpp"
#include "field.hpp"
#include "linalg.hpp"
#include "poly.hpp"

// Builder for differential codes on the curve y^q + y = x^(q+1) over
// GF(q^2), evaluated at the q^3 - 1 affine rational points other than the
// origin, with divisor G = lam_o * O + lam_q * Q where O is the origin and
// Q the place at infinity.

namespace agdec {

namespace hermitian_detail {

// exponent pair (k, j) representing x^k y^j; normal form keeps 0 <= k <= q
using Mono = std::pair<int, int>;
using CurveElem = std::map<Mono, Elem>;

struct Curve {
    int q;
    const Field& F;

    long long wt(const Mono& m) const {
        return static_cast<long long>(q) * m.first + static_cast<long long>(q + 1) * m.second;
    }
    long long val_origin(const Mono& m) const {
        return static_cast<long long>(m.first) + static_cast<long long>(q + 1) * m.second;
    }

    void add_term(CurveElem& e, Mono m, Elem c) const {
        if (c == 0) return;
        auto it = e.find(m);
        if (it == e.end()) {
            e.emplace(m, c);
        } else {
            it->second = F.add(it->second, c);
            if (it->second == 0) e.erase(it);
        }
    }

    // rewrite x^K -> x^(K-q-1) * (y^q + y) until every x-exponent is <= q;
    // the top-weight term is preserved with the same coefficient
    CurveElem normalize(CurveElem e) const {
        bool again = true;
        while (again) {
            again = false;
            for (auto it = e.begin(); it != e.end(); ++it) {
                if (it->first.first > q) {
                    Mono m = it->first;
                    Elem c = it->second;
                    e.erase(it);
                    add_term(e, {m.first - q - 1, m.second + q}, c);
                    add_term(e, {m.first - q - 1, m.second + 1}, c);
                    again = true;
                    break;
                }
            }
        }
        return e;
    }

    CurveElem mul(const CurveElem& A, const CurveElem& B) const {
        CurveElem r;
        for (const auto& [ma, ca] : A)
            for (const auto& [mb, cb] : B)
                add_term(r, {ma.first + mb.first, ma.second + mb.second}, F.mul(ca, cb));
        return normalize(std::move(r));
    }

    // evaluation at a point with y != 0 (negative y-exponents allowed)
    Elem eval(const CurveElem& A, Elem x, Elem y) const {
        Elem r = 0;
        for (const auto& [m, c] : A) {
            Elem t = F.mul(c, F.pow(x, m.first));
            t = F.mul(t, F.pow(y, m.second));
            r = F.add(r, t);
        }
        return r;
    }

    // top term under the weight; weights of distinct normal monomials are
    // distinct, so this is unambiguous
    CurveElem::const_iterator top(const CurveElem& A) const {
        auto best = A.begin();
        for (auto it = std::next(A.begin()); it != A.end(); ++it)
            if (wt(it->first) > wt(best->first)) best = it;
        return best;
    }
};

inline long long floor_div(long long a, long long b) {
    long long d = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? d - 1 : d;
}
inline long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

} // namespace hermitian_detail

inline CodeData build_hermitian(int q, int lam_o, int lam_q) {
    using namespace hermitian_detail;

    if (q < 2) throw std::invalid_argument("curve parameter q must be at least 2");
    int p = 0;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) { p = d; break; }
    if (p == 0) p = q;
    int e = 0;
    for (long long t = q; t > 1; t /= p, ++e)
        if (t % p != 0) throw std::invalid_argument("curve parameter q must be a prime power");

    Field F = Field::make(p, 2 * e, default_prim(p, 2 * e));
    Curve cv{q, F};

    const int gamma = q;
    const int n = q * q * q - 1;
    const int genus = q * (q - 1) / 2;
    const int degG = lam_o + lam_q;
    const long long C = static_cast<long long>(q) * q * q + static_cast<long long>(q) * q - q - 2;
    if (!(2 * genus - 2 < degG && degG < n))
        throw std::invalid_argument("unsupported divisor: need 2g-2 < deg G < n (G has degree " +
                                    std::to_string(degG) + ")");

    // ---- evaluation points: solutions of y^q + y = x^(q+1) minus the origin
    std::vector<std::array<Elem, 2>> points;
    for (Elem x = 0; x < F.q(); ++x) {
        Elem rhs = F.pow(x, q + 1);
        for (Elem y = 0; y < F.q(); ++y) {
            if (x == 0 && y == 0) continue;
            if (F.add(F.pow(y, q), y) == rhs) points.push_back({x, y});
        }
    }
    if (points.size() != static_cast<std::size_t>(n))
        throw std::logic_error("point count mismatch on the curve");

    // ---- Apery differentials: per weight class mod gamma, the normal
    // monomial f = x^k y^j minimizing delta(f * w_std) = lam_q + wt(f) - C
    // subject to the order constraint at the origin, v_O(f) >= lam_o + 1.
    // For fixed k, the q consecutive admissible values of j starting at the
    // least admissible one realize each class exactly once with minimal
    // delta, so scanning k in 0..q and q values of j is exhaustive.
    std::vector<CurveElem> wfun(static_cast<std::size_t>(gamma));
    std::vector<long long> bll(static_cast<std::size_t>(gamma));
    {
        std::vector<bool> seen(static_cast<std::size_t>(gamma), false);
        for (int k = 0; k <= q; ++k) {
            long long j0 = ceil_div(static_cast<long long>(lam_o) + 1 - k, q + 1);
            for (int t = 0; t < q; ++t) {
                long long j = j0 + t;
                if (j < std::numeric_limits<int>::min() || j > std::numeric_limits<int>::max())
                    throw std::invalid_argument("unsupported divisor: exponent overflow");
                Mono m{k, static_cast<int>(j)};
                long long delta = lam_q + cv.wt(m) - C;
                int cls = static_cast<int>(((delta % gamma) + gamma) % gamma);
                if (!seen[static_cast<std::size_t>(cls)] || delta < bll[static_cast<std::size_t>(cls)]) {
                    seen[static_cast<std::size_t>(cls)] = true;
                    bll[static_cast<std::size_t>(cls)] = delta;
                    wfun[static_cast<std::size_t>(cls)] = CurveElem{{m, 1}};
                }
            }
        }
        for (int i = 0; i < gamma; ++i) {
            if (!seen[static_cast<std::size_t>(i)])
                throw std::logic_error("Apery search missed a class");
            if (bll[static_cast<std::size_t>(i)] > 0)
                throw std::invalid_argument(
                    "unsupported divisor: positive Apery delta in class " + std::to_string(i) +
                    " (the one-point part of G is too large relative to the part at the origin)");
        }
    }
    std::vector<int> a(static_cast<std::size_t>(gamma)), b(static_cast<std::size_t>(gamma));
    for (int i = 0; i < gamma; ++i) {
        a[static_cast<std::size_t>(i)] = i * (q + 1);
        b[static_cast<std::size_t>(i)] = static_cast<int>(bll[static_cast<std::size_t>(i)]);
    }

    // ---- residues of the Apery differentials: res_P(f * w_std) = -f(P)
    std::vector<std::vector<Elem>> wres(static_cast<std::size_t>(gamma),
                                        std::vector<Elem>(static_cast<std::size_t>(n)));
    for (int i = 0; i < gamma; ++i)
        for (int pt = 0; pt < n; ++pt)
            wres[static_cast<std::size_t>(i)][static_cast<std::size_t>(pt)] =
                F.neg(cv.eval(wfun[static_cast<std::size_t>(i)],
                              points[static_cast<std::size_t>(pt)][0],
                              points[static_cast<std::size_t>(pt)][1]));

    // ---- message weights S (all nongap deltas <= 0) and generator rows
    auto cls_of = [&](long long w) { return static_cast<int>(((w % gamma) + gamma) % gamma); };
    std::vector<long long> S;
    {
        long long bmin = *std::min_element(b.begin(), b.end());
        for (long long s = 0; s >= bmin; --s)
            if (s >= b[static_cast<std::size_t>(cls_of(s))]) S.push_back(s);
    }
    if (static_cast<long long>(S.size()) != static_cast<long long>(n) - degG + genus - 1)
        throw std::logic_error("dimension mismatch: |S| != n - deg G + g - 1");

    std::vector<std::vector<Elem>> gen(S.size(), std::vector<Elem>(static_cast<std::size_t>(n)));
    for (std::size_t r = 0; r < S.size(); ++r) {
        int i = cls_of(S[r]);
        long long kk = (S[r] - b[static_cast<std::size_t>(i)]) / gamma;
        for (int pt = 0; pt < n; ++pt)
            gen[r][static_cast<std::size_t>(pt)] =
                F.mul(F.pow(points[static_cast<std::size_t>(pt)][0], kk),
                      wres[static_cast<std::size_t>(i)][static_cast<std::size_t>(pt)]);
    }

    // column set of monomials x^k w_i with delta <= bound, ascending delta
    auto monomial_columns = [&](long long bound) {
        std::vector<std::pair<int, int>> cols; // (class, degree)
        for (int i = 0; i < gamma; ++i)
            for (long long k = 0; gamma * k + b[static_cast<std::size_t>(i)] <= bound; ++k)
                cols.emplace_back(i, static_cast<int>(k));
        std::sort(cols.begin(), cols.end(), [&](const auto& u, const auto& v) {
            long long du = static_cast<long long>(gamma) * u.second + b[static_cast<std::size_t>(u.first)];
            long long dv = static_cast<long long>(gamma) * v.second + b[static_cast<std::size_t>(v.first)];
            return du < dv;
        });
        return cols;
    };
    auto residue_matrix = [&](const std::vector<std::pair<int, int>>& cols) {
        Matrix M(static_cast<std::size_t>(n), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (int pt = 0; pt < n; ++pt)
                M.at(static_cast<std::size_t>(pt), c) =
                    F.mul(F.pow(points[static_cast<std::size_t>(pt)][0], cols[c].second),
                          wres[static_cast<std::size_t>(cols[c].first)][static_cast<std::size_t>(pt)]);
        return M;
    };

    // ---- eta: reduced Groebner basis of the residue kernel module.
    // A spanning set of the kernel up to the degree budget is reduced to
    // weak Popov form (distinct leading classes), then tail-reduced to the
    // canonical monic basis.
    std::vector<DifferentialVec> eta;
    {
        const int n_eta = static_cast<int>((static_cast<long long>(n) + 3 * genus + gamma - 1) / gamma);
        long long bmax = *std::max_element(b.begin(), b.end());
        auto cols = monomial_columns(static_cast<long long>(gamma) * n_eta + bmax);
        std::vector<std::vector<Elem>> ker = mat_kernel(F, residue_matrix(cols));
        if (ker.empty()) throw std::logic_error("residue kernel is trivial");

        std::vector<DifferentialVec> rows;
        for (const auto& kv : ker) {
            DifferentialVec v = detail::dvec_zero(gamma);
            std::vector<std::vector<Elem>> parts(static_cast<std::size_t>(gamma));
            for (std::size_t c = 0; c < cols.size(); ++c) {
                if (kv[c] == 0) continue;
                auto& dst = parts[static_cast<std::size_t>(cols[c].first)];
                if (dst.size() <= static_cast<std::size_t>(cols[c].second))
                    dst.resize(static_cast<std::size_t>(cols[c].second) + 1, 0);
                dst[static_cast<std::size_t>(cols[c].second)] = kv[c];
            }
            for (int i = 0; i < gamma; ++i)
                v.parts[static_cast<std::size_t>(i)] = poly_from(std::move(parts[static_cast<std::size_t>(i)]));
            rows.push_back(std::move(v));
        }

        auto lead = [&](const DifferentialVec& v) {
            LeadTerm t;
            for (int i = 0; i < gamma; ++i) {
                const Poly& pp = v.parts[static_cast<std::size_t>(i)];
                if (pp.is_zero()) continue;
                long long w = static_cast<long long>(gamma) * pp.deg() + b[static_cast<std::size_t>(i)];
                if (t.zero || w > t.weight) {
                    t.zero = false;
                    t.weight = w;
                    t.cls = i;
                    t.deg = pp.deg();
                    t.coeff = leading_coeff(pp);
                }
            }
            return t;
        };

        // weak Popov: while two rows collide in leading class, cancel the
        // leading term of the higher one against the lower one
        bool again = true;
        while (again) {
            again = false;
            for (std::size_t i = 0; i < rows.size() && !again; ++i) {
                LeadTerm ti = lead(rows[i]);
                for (std::size_t l = 0; l < rows.size() && !again; ++l) {
                    if (l == i) continue;
                    LeadTerm tl = lead(rows[l]);
                    if (tl.cls != ti.cls || tl.weight > ti.weight) continue;
                    Elem c = F.div(ti.coeff, tl.coeff);
                    int sh = static_cast<int>((ti.weight - tl.weight) / gamma);
                    rows[i] = detail::vec_sub(F, rows[i],
                                              detail::vec_scale_shift(F, c, sh, rows[l]));
                    if (rows[i].is_zero()) rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
                    again = true;
                }
            }
        }
        if (rows.size() != static_cast<std::size_t>(gamma))
            throw std::logic_error("kernel basis does not have one row per class");

        eta.assign(static_cast<std::size_t>(gamma), DifferentialVec{});
        for (auto& r : rows) {
            LeadTerm t = lead(r);
            eta[static_cast<std::size_t>(t.cls)] =
                detail::vec_scale(F, F.inv(t.coeff), r);
        }

        // canonical tail reduction: no term of eta_i in class l with degree
        // >= deg LT(eta_l) survives, except its own leading term
        std::vector<int> d(static_cast<std::size_t>(gamma));
        for (int i = 0; i < gamma; ++i)
            d[static_cast<std::size_t>(i)] = eta[static_cast<std::size_t>(i)]
                                                 .parts[static_cast<std::size_t>(i)].deg();
        bool reduced = true;
        while (reduced) {
            reduced = false;
            for (int i = 0; i < gamma; ++i) {
                for (int l = 0; l < gamma; ++l) {
                    if (l == i) continue;
                    const Poly& pl = eta[static_cast<std::size_t>(i)].parts[static_cast<std::size_t>(l)];
                    for (int deg = pl.deg(); deg >= d[static_cast<std::size_t>(l)]; --deg) {
                        Elem c = coeff_at(pl, deg);
                        if (c == 0) continue;
                        eta[static_cast<std::size_t>(i)] = detail::vec_sub(
                            F, eta[static_cast<std::size_t>(i)],
                            detail::vec_scale_shift(F, c, deg - d[static_cast<std::size_t>(l)],
                                                    eta[static_cast<std::size_t>(l)]));
                        reduced = true;
                        break;
                    }
                    if (reduced) break;
                }
                if (reduced) break;
            }
        }

        long long dsum = 0;
        for (int i = 0; i < gamma; ++i) dsum += d[static_cast<std::size_t>(i)];
        if (dsum != n) throw std::logic_error("eta degree sum != n");
    }

    // ---- h: for each point, the differential with residue vector e_i and
    // support inside the monomial staircase. One RREF of [M | I] yields all
    // of them: the pivot columns are the staircase, and the transform part
    // carries the coefficients of every solution.
    std::vector<DifferentialVec> h;
    {
        const int n_h = static_cast<int>((static_cast<long long>(n) + 2 * genus - 1) / gamma);
        long long bmax = *std::max_element(b.begin(), b.end());
        auto cols = monomial_columns(static_cast<long long>(gamma) * n_h + bmax);
        Matrix M(static_cast<std::size_t>(n), cols.size() + static_cast<std::size_t>(n));
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (int pt = 0; pt < n; ++pt)
                M.at(static_cast<std::size_t>(pt), c) =
                    F.mul(F.pow(points[static_cast<std::size_t>(pt)][0], cols[c].second),
                          wres[static_cast<std::size_t>(cols[c].first)][static_cast<std::size_t>(pt)]);
        for (int pt = 0; pt < n; ++pt)
            M.at(static_cast<std::size_t>(pt), cols.size() + static_cast<std::size_t>(pt)) = 1;

        std::vector<std::size_t> piv = rref(F, M);
        std::vector<std::size_t> mpiv;
        for (std::size_t c : piv)
            if (c < cols.size()) mpiv.push_back(c);
        if (mpiv.size() != static_cast<std::size_t>(n))
            throw std::logic_error("residue matrix rank deficient within the degree budget");

        // staircase check: pivots must be exactly the monomials below the
        // eta leading degrees
        {
            std::vector<int> d(static_cast<std::size_t>(gamma));
            for (int i = 0; i < gamma; ++i)
                d[static_cast<std::size_t>(i)] = eta[static_cast<std::size_t>(i)]
                                                     .parts[static_cast<std::size_t>(i)].deg();
            for (std::size_t r = 0; r < mpiv.size(); ++r) {
                auto [ci, ck] = cols[mpiv[r]];
                if (ck >= d[static_cast<std::size_t>(ci)])
                    throw std::logic_error("pivot outside the monomial staircase");
            }
        }

        h.assign(static_cast<std::size_t>(n), DifferentialVec{});
        for (int i = 0; i < n; ++i) {
            std::vector<std::vector<Elem>> parts(static_cast<std::size_t>(gamma));
            for (std::size_t r = 0; r < mpiv.size(); ++r) {
                Elem c = M.at(r, cols.size() + static_cast<std::size_t>(i));
                if (c == 0) continue;
                auto [ci, ck] = cols[mpiv[r]];
                auto& dst = parts[static_cast<std::size_t>(ci)];
                if (dst.size() <= static_cast<std::size_t>(ck))
                    dst.resize(static_cast<std::size_t>(ck) + 1, 0);
                dst[static_cast<std::size_t>(ck)] = c;
            }
            DifferentialVec v = detail::dvec_zero(gamma);
            for (int l = 0; l < gamma; ++l)
                v.parts[static_cast<std::size_t>(l)] = poly_from(std::move(parts[static_cast<std::size_t>(l)]));
            h[static_cast<std::size_t>(i)] = std::move(v);
        }
    }

    // ---- multiplication table: expand y^i * (Apery monomial j) in the
    // module basis by repeatedly stripping the top-weight term
    auto expand = [&](CurveElem f) {
        std::vector<std::map<int, Elem>> acc(static_cast<std::size_t>(gamma));
        while (!f.empty()) {
            auto it = cv.top(f);
            long long delta = lam_q + cv.wt(it->first) - C;
            int cl = cls_of(delta);
            long long kk = (delta - b[static_cast<std::size_t>(cl)]) / gamma;
            if (kk < 0) throw std::logic_error("expansion left the module");
            Elem c = it->second;
            acc[static_cast<std::size_t>(cl)][static_cast<int>(kk)] = c;
            CurveElem xk = cv.normalize(CurveElem{{{static_cast<int>(kk), 0}, 1}});
            CurveElem sub = cv.mul(xk, wfun[static_cast<std::size_t>(cl)]);
            for (const auto& [m, sc] : sub) cv.add_term(f, m, F.neg(F.mul(c, sc)));
        }
        DifferentialVec out = detail::dvec_zero(gamma);
        for (int l = 0; l < gamma; ++l) {
            std::vector<Elem> cc;
            for (const auto& [k, c] : acc[static_cast<std::size_t>(l)]) {
                if (cc.size() <= static_cast<std::size_t>(k)) cc.resize(static_cast<std::size_t>(k) + 1, 0);
                cc[static_cast<std::size_t>(k)] = c;
            }
            out.parts[static_cast<std::size_t>(l)] = poly_from(std::move(cc));
        }
        return out;
    };

    std::vector<std::vector<DifferentialVec>> wtab(
        static_cast<std::size_t>(gamma), std::vector<DifferentialVec>(static_cast<std::size_t>(gamma)));
    for (int i = 0; i < gamma; ++i) {
        CurveElem yi = cv.normalize(CurveElem{{{0, i}, 1}});
        for (int j = 0; j < gamma; ++j)
            wtab[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                expand(cv.mul(yi, wfun[static_cast<std::size_t>(j)]));
    }

    CodeData code{F};
    code.n = n;
    code.genus = genus;
    code.gamma = gamma;
    code.degG = degG;
    code.a = std::move(a);
    code.b = std::move(b);
    code.S = std::move(S);
    code.eta = std::move(eta);
    code.h = std::move(h);
    code.wtab = std::move(wtab);
    code.gen = std::move(gen);
    code.points = std::move(points);
    code.hermitian_meta = HermitianMeta{q, lam_o, lam_q};
    code.finalize();
    code.validate();
    return code;
}

} // namespace agdec
