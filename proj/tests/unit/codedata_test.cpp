#include <catch2/catch_amalgamated.hpp>

#include <agdec/codedata.hpp>
#include <agdec/hermitian.hpp>
#include <agdec/rng.hpp>

#include <map>
#include <vector>

using namespace agdec;
using Catch::Matchers::ContainsSubstring;

namespace {

Poly P(std::vector<Elem> c) { return poly_from(std::move(c)); }

DifferentialVec dvec(int gamma) { return detail::dvec_zero(gamma); }
FunctionVec fvec(int gamma) { return detail::fvec_zero(gamma); }

Poly random_poly(const Field& F, SplitMix64& rng, int maxdeg) {
    std::vector<Elem> c(static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(maxdeg) + 1)) + 1);
    for (auto& e : c) e = static_cast<Elem>(rng.below(F.q()));
    return poly_from(std::move(c));
}

DifferentialVec random_dvec(const CodeData& code, SplitMix64& rng, int maxdeg) {
    DifferentialVec v = dvec(code.gamma);
    for (auto& p : v.parts) p = random_poly(code.field, rng, maxdeg);
    return v;
}

FunctionVec random_fvec(const CodeData& code, SplitMix64& rng, int maxdeg) {
    FunctionVec v = fvec(code.gamma);
    for (auto& p : v.parts) p = random_poly(code.field, rng, maxdeg);
    return v;
}

// evaluate f = sum_i f_i(x) y^i at a point (valid for the Hermitian builds,
// where y_i = y^i)
Elem eval_fvec(const CodeData& code, const FunctionVec& f, Elem x, Elem y) {
    Elem r = 0;
    for (int i = 0; i < code.gamma; ++i)
        r = code.field.add(
            r, code.field.mul(poly_eval(code.field, f.parts[static_cast<std::size_t>(i)], x),
                              code.field.pow(y, i)));
    return r;
}

// ---- truncated power series helpers for the independent residue oracle ----

using Series = std::vector<Elem>; // coefficient of t^i at index i

Series s_mul(const Field& F, const Series& A, const Series& B) {
    Series r(A.size(), 0);
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (A[i] == 0) continue;
        for (std::size_t j = 0; i + j < r.size() && j < B.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(A[i], B[j]));
    }
    return r;
}

Series s_inv(const Field& F, const Series& A) {
    REQUIRE(A[0] != 0);
    Series r(A.size(), 0);
    r[0] = F.inv(A[0]);
    for (std::size_t n = 1; n < A.size(); ++n) {
        Elem acc = 0;
        for (std::size_t i = 1; i <= n && i < A.size(); ++i)
            acc = F.add(acc, F.mul(A[i], r[n - i]));
        r[n] = F.neg(F.mul(acc, r[0]));
    }
    return r;
}

Series s_pow(const Field& F, Series A, long long e, std::size_t T) {
    if (e < 0) {
        A = s_inv(F, A);
        e = -e;
    }
    Series r(T, 0);
    r[0] = 1;
    for (long long i = 0; i < e; ++i) r = s_mul(F, r, A);
    return r;
}

// Taylor expansion of y along the branch through (a, b) of y^q + y = x^(q+1),
// in the local parameter t = x - a: matching coefficients of
// y(t)^q + y(t) = (a + t)^(q+1) gives c_0 = b and, for i >= 1,
// c_i = [t^i](a+t)^(q+1) - (c_{i/q})^q when q | i, else c_i = [t^i](a+t)^(q+1).
Series y_branch(const Field& F, int q, Elem a, Elem b, std::size_t T) {
    Series xt(T, 0);
    xt[0] = a;
    if (T > 1) xt[1] = 1;
    Series rhs = s_pow(F, xt, q + 1, T);
    Series c(T, 0);
    c[0] = b;
    for (std::size_t i = 1; i < T; ++i) {
        Elem v = rhs[i];
        if (i % static_cast<std::size_t>(q) == 0)
            v = F.sub(v, F.pow(c[i / static_cast<std::size_t>(q)], q));
        c[i] = v;
    }
    return c;
}

} // namespace

TEST_CASE("golden Hermitian q=3 build matches the published tables") {
    CodeData code = build_hermitian(3, -1, 18);
    const Field& F = code.field;

    REQUIRE(F.p() == 3);
    REQUIRE(F.m() == 2);
    REQUIRE(F.spec().prim == std::vector<int>{2, 2, 1});
    REQUIRE(code.n == 26);
    REQUIRE(code.genus == 3);
    REQUIRE(code.gamma == 3);
    REQUIRE(code.degG == 17);
    REQUIRE(code.k() == 11);
    REQUIRE(code.a == std::vector<int>{0, 4, 8});
    REQUIRE(code.b == std::vector<int>{-9, -5, -13});
    REQUIRE(code.S == std::vector<long long>{0, -1, -2, -3, -4, -5, -6, -7, -9, -10, -13});

    SECTION("evaluation points in ascending encoding order") {
        REQUIRE(code.points.size() == 26);
        REQUIRE(code.points[0] == std::array<Elem, 2>{0, 4});
        REQUIRE(code.points[1] == std::array<Elem, 2>{0, 8});
        REQUIRE(code.points[2] == std::array<Elem, 2>{1, 2});
        REQUIRE(code.points[3] == std::array<Elem, 2>{1, 3});
        REQUIRE(code.points[4] == std::array<Elem, 2>{1, 7});
        REQUIRE(code.points[25] == std::array<Elem, 2>{8, 7});
        for (const auto& pt : code.points) {
            REQUIRE(pt[1] != 0);
            REQUIRE(F.add(F.pow(pt[1], 3), pt[1]) == F.pow(pt[0], 4));
        }
    }

    SECTION("kernel basis eta") {
        REQUIRE(code.eta[0].parts[0] == P({0, 2, 0, 0, 0, 0, 0, 0, 0, 1}));
        REQUIRE(code.eta[0].parts[1].is_zero());
        REQUIRE(code.eta[0].parts[2].is_zero());
        REQUIRE(code.eta[1].parts[0].is_zero());
        REQUIRE(code.eta[1].parts[1] == P({2, 0, 0, 0, 0, 0, 0, 0, 1}));
        REQUIRE(code.eta[1].parts[2] == P({2, 0, 0, 0, 0, 0, 0, 0, 1}));
        REQUIRE(code.eta[2].parts[0].is_zero());
        REQUIRE(code.eta[2].parts[1].is_zero());
        REQUIRE(code.eta[2].parts[2] == P({0, 2, 0, 0, 0, 0, 0, 0, 0, 1}));
        REQUIRE(code.delta_lead(code.eta[0]).weight == 18);
        REQUIRE(code.delta_lead(code.eta[1]).weight == 19);
        REQUIRE(code.delta_lead(code.eta[2]).weight == 14);
    }

    SECTION("Lagrange differentials h_1 and h_2") {
        REQUIRE(code.h[0].parts[0] == P({8, 0, 0, 0, 0, 0, 0, 0, 4}));
        REQUIRE(code.h[0].parts[1].is_zero());
        REQUIRE(code.h[0].parts[2] == P({1, 0, 0, 0, 0, 0, 0, 0, 2}));
        REQUIRE(code.h[1].parts[0] == P({4, 0, 0, 0, 0, 0, 0, 0, 8}));
        REQUIRE(code.h[1].parts[1].is_zero());
        REQUIRE(code.h[1].parts[2] == P({1, 0, 0, 0, 0, 0, 0, 0, 2}));
    }

    SECTION("multiplication table entries") {
        // y_1 * omega-bar_0 = omega-bar_1
        REQUIRE(code.wtab[1][0].parts[0].is_zero());
        REQUIRE(code.wtab[1][0].parts[1] == P({1}));
        REQUIRE(code.wtab[1][0].parts[2].is_zero());
        // y_1 * omega-bar_1 = x^4 omega-bar_2 - omega-bar_0
        REQUIRE(code.wtab[1][1].parts[0] == P({2}));
        REQUIRE(code.wtab[1][1].parts[1].is_zero());
        REQUIRE(code.wtab[1][1].parts[2] == P({0, 0, 0, 0, 1}));
        // identity row for y_0 = 1
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l)
                REQUIRE(code.wtab[0][static_cast<std::size_t>(j)].parts[static_cast<std::size_t>(l)] ==
                        (l == j ? P({1}) : Poly{}));
    }

    SECTION("residue rows") {
        // res(omega-bar_2) = -1 everywhere; res(omega-bar_0) = -y(P)
        for (int pt = 0; pt < 26; ++pt) {
            REQUIRE(code.basis_residues(2)[static_cast<std::size_t>(pt)] == 2);
            REQUIRE(code.basis_residues(0)[static_cast<std::size_t>(pt)] ==
                    F.neg(code.points[static_cast<std::size_t>(pt)][1]));
        }
        REQUIRE(code.basis_residues(0)[0] == 8);
        // generator row for s = 0 is res(x^3 omega-bar_0)
        REQUIRE(code.gen[0][0] == 0);
        REQUIRE(code.gen[0][2] == 1); // x = 1, -y = -2 = 1
    }

    SECTION("full invariant suite accepts the build") {
        REQUIRE_NOTHROW(code.validate());
    }
}

TEST_CASE("golden Hermitian q=2 build") {
    CodeData code = build_hermitian(2, 0, 5);
    REQUIRE(code.field.q() == 4);
    REQUIRE(code.n == 7);
    REQUIRE(code.genus == 1);
    REQUIRE(code.gamma == 2);
    REQUIRE(code.degG == 5);
    REQUIRE(code.k() == 2);
    REQUIRE(code.a == std::vector<int>{0, 3});
    REQUIRE(code.b == std::vector<int>{0, -1});
    REQUIRE(code.S == std::vector<long long>{0, -1});
    REQUIRE(code.eta[0].parts[0] == P({0, 1, 0, 0, 1})); // x^4 + x
    REQUIRE(code.eta[0].parts[1].is_zero());
    REQUIRE(code.eta[1].parts[0].is_zero());
    REQUIRE(code.eta[1].parts[1] == P({1, 0, 0, 1})); // x^3 + 1
    REQUIRE(code.delta_lead(code.eta[0]).weight == 8);
    REQUIRE(code.delta_lead(code.eta[1]).weight == 5);
}

TEST_CASE("one-point Hermitian divisor 12Q") {
    CodeData code = build_hermitian(3, 0, 12);
    REQUIRE(code.degG == 12);
    REQUIRE(code.b == std::vector<int>{-15, -11, -16});
    REQUIRE(code.k() == 16);
    REQUIRE_NOTHROW(code.validate());
}

TEST_CASE("builder rejects unsupported parameters") {
    REQUIRE_THROWS_AS(build_hermitian(1, 0, 5), std::invalid_argument);
    REQUIRE_THROWS_WITH(build_hermitian(6, 0, 100), ContainsSubstring("prime power"));
    // deg G at the lower boundary 2g-2 and at the upper boundary n
    REQUIRE_THROWS_WITH(build_hermitian(3, -1, 5), ContainsSubstring("2g-2 < deg G < n"));
    REQUIRE_THROWS_WITH(build_hermitian(3, 0, 26), ContainsSubstring("2g-2 < deg G < n"));
    // a divisor whose Apery system would need a positive delta
    REQUIRE_THROWS_WITH(build_hermitian(3, -15, 40), ContainsSubstring("positive Apery delta"));
}

TEST_CASE("serialization round trip preserves everything") {
    CodeData code = build_hermitian(3, -1, 18);
    nlohmann::json j = code.to_json();
    for (const char* key :
         {"field", "n", "genus", "gamma", "a", "b", "degG", "S", "eta", "h", "wmul", "gen", "points"})
        REQUIRE(j.contains(key));
    REQUIRE(j["divisor"]["type"] == "hermitian");
    REQUIRE(j["divisor"]["q"] == 3);
    REQUIRE(j["divisor"]["lamO"] == -1);
    REQUIRE(j["divisor"]["lamQ"] == 18);

    CodeData back = CodeData::from_json(j);
    REQUIRE(back.n == code.n);
    REQUIRE(back.genus == code.genus);
    REQUIRE(back.gamma == code.gamma);
    REQUIRE(back.degG == code.degG);
    REQUIRE(back.a == code.a);
    REQUIRE(back.b == code.b);
    REQUIRE(back.S == code.S);
    REQUIRE(back.eta == code.eta);
    REQUIRE(back.h == code.h);
    REQUIRE(back.wtab == code.wtab);
    REQUIRE(back.gen == code.gen);
    REQUIRE(back.points == code.points);
    REQUIRE(back.hermitian_meta.has_value());
    REQUIRE(back.hermitian_meta->lam_q == 18);
}

TEST_CASE("loading rejects corrupted documents with a named violation") {
    CodeData code = build_hermitian(2, 0, 5);
    const nlohmann::json good = code.to_json();
    REQUIRE_NOTHROW(CodeData::from_json(good));

    SECTION("corrupted eta coefficient") {
        nlohmann::json j = good;
        j["eta"][0][0][1] = 0; // x^4 + x -> x^4
        REQUIRE_THROWS_WITH(CodeData::from_json(j), ContainsSubstring("res(eta) nonzero"));
    }
    SECTION("corrupted Apery delta") {
        nlohmann::json j = good;
        j["b"][1] = -2; // class of -2 mod 2 is 0, not 1
        REQUIRE_THROWS_WITH(CodeData::from_json(j), ContainsSubstring("Apery residue"));
    }
    SECTION("corrupted Lagrange differential") {
        nlohmann::json j = good;
        j["h"][0][0][0] = j["h"][0][0][0].get<Elem>() == 1 ? 2 : 1;
        REQUIRE_THROWS_WITH(CodeData::from_json(j), ContainsSubstring("res(h) mismatch"));
    }
    SECTION("corrupted generator entry in a basis row") {
        // for this code every row of gen doubles as a residue row of some
        // omega-bar_i, so the corruption surfaces through the h residues
        nlohmann::json j = good;
        j["gen"][1][3] = (j["gen"][1][3].get<Elem>() + 1) % 4;
        REQUIRE_THROWS_WITH(CodeData::from_json(j), ContainsSubstring("res(h) mismatch"));
    }
    SECTION("corrupted generator entry in a derived row") {
        // needs a code where some s in S is not an Apery delta
        nlohmann::json j = build_hermitian(3, -1, 18).to_json();
        j["gen"][3][5] = (j["gen"][3][5].get<Elem>() + 1) % 9; // row for s = -3
        REQUIRE_THROWS_WITH(CodeData::from_json(j), ContainsSubstring("gen mismatch"));
    }
    SECTION("corrupted multiplication table") {
        nlohmann::json j = good;
        // break y_1 * omega-bar_0 by adding a constant to part 0
        auto cur = j["wmul"][1][0][0];
        if (cur.empty())
            j["wmul"][1][0][0] = {1};
        else
            j["wmul"][1][0][0][0] = (cur[0].get<Elem>() + 1) % 4;
        REQUIRE_THROWS_WITH(CodeData::from_json(j), ContainsSubstring("wmul table"));
    }
    SECTION("S extended past the nongaps") {
        nlohmann::json j = good;
        j["S"].push_back(-2); // -2 is a gap for this code
        j["gen"].push_back(j["gen"][0]);
        REQUIRE_THROWS_WITH(CodeData::from_json(j), ContainsSubstring("S enumeration"));
    }
    SECTION("S missing a basis weight") {
        nlohmann::json j = good;
        j["S"].erase(1);
        j["gen"].erase(1);
        REQUIRE_THROWS_WITH(CodeData::from_json(j), ContainsSubstring("not in S"));
    }
    SECTION("missing field") {
        nlohmann::json j = good;
        j.erase("gen");
        REQUIRE_THROWS_WITH(CodeData::from_json(j), ContainsSubstring("missing field 'gen'"));
    }
    SECTION("unfinalized data refuses to validate") {
        CodeData raw{Field::make(2, 2, {1, 1, 1})};
        REQUIRE_THROWS_WITH(raw.validate(), ContainsSubstring("not finalized"));
    }
}

TEST_CASE("weighted monomials and nongap queries") {
    CodeData code = build_hermitian(3, -1, 18);

    REQUIRE(code.phi_bar(-13).parts[2] == P({1}));
    REQUIRE(code.phi_bar(-9).parts[0] == P({1}));
    REQUIRE(code.phi_bar(0).parts[0] == P({0, 0, 0, 1}));
    REQUIRE(code.phi_bar(1).parts[1] == P({0, 0, 1}));
    REQUIRE(code.phi(0).parts[0] == P({1}));
    REQUIRE(code.phi(4).parts[1] == P({1}));
    REQUIRE(code.phi(3).parts[0] == P({0, 1}));
    REQUIRE_THROWS_AS(code.phi_bar(-14), std::domain_error);
    REQUIRE_THROWS_AS(code.phi(1), std::domain_error);
    REQUIRE_THROWS_AS(code.phi(2), std::domain_error);
    REQUIRE_THROWS_AS(code.phi(5), std::domain_error);

    REQUIRE(code.rho_nongap(0));
    REQUIRE_FALSE(code.rho_nongap(1));
    REQUIRE_FALSE(code.rho_nongap(2));
    REQUIRE(code.rho_nongap(3));
    REQUIRE(code.rho_nongap(4));
    REQUIRE_FALSE(code.rho_nongap(5));
    for (long long s : {-13LL, -10LL, -9LL, -7LL, -1LL, 0LL, 1LL, 2LL})
        REQUIRE(code.delta_nongap(s));
    for (long long s : {-14LL, -12LL, -11LL, -8LL})
        REQUIRE_FALSE(code.delta_nongap(s));
}

TEST_CASE("residue and multiplication properties on random elements") {
    CodeData code = build_hermitian(3, -1, 18);
    const Field& F = code.field;
    SplitMix64 rng(0x5eed5eedULL);

    SECTION("residue map is linear") {
        for (int trial = 0; trial < 25; ++trial) {
            DifferentialVec w1 = random_dvec(code, rng, 7);
            DifferentialVec w2 = random_dvec(code, rng, 7);
            Elem c = static_cast<Elem>(rng.below(F.q()));
            DifferentialVec sum = detail::vec_add(F, w1, detail::vec_scale(F, c, w2));
            std::vector<Elem> r1 = code.residue_vector(w1);
            std::vector<Elem> r2 = code.residue_vector(w2);
            std::vector<Elem> rs = code.residue_vector(sum);
            for (int pt = 0; pt < code.n; ++pt)
                REQUIRE(rs[static_cast<std::size_t>(pt)] ==
                        F.add(r1[static_cast<std::size_t>(pt)],
                              F.mul(c, r2[static_cast<std::size_t>(pt)])));
        }
    }

    SECTION("res(f*w) = f(P) res(w) pointwise") {
        for (int trial = 0; trial < 25; ++trial) {
            FunctionVec f = random_fvec(code, rng, 4);
            DifferentialVec w = random_dvec(code, rng, 5);
            std::vector<Elem> rw = code.residue_vector(w);
            std::vector<Elem> rfw = code.residue_vector(code.wmul(f, w));
            for (int pt = 0; pt < code.n; ++pt) {
                Elem fp = eval_fvec(code, f, code.points[static_cast<std::size_t>(pt)][0],
                                    code.points[static_cast<std::size_t>(pt)][1]);
                REQUIRE(rfw[static_cast<std::size_t>(pt)] ==
                        F.mul(fp, rw[static_cast<std::size_t>(pt)]));
            }
        }
    }

    SECTION("weighted degree is multiplicative on monomials") {
        for (long long lam : {0LL, 3LL, 4LL, 6LL, 7LL, 8LL, 12LL})
            for (long long s : {0LL, -1LL, -5LL, -13LL, -2LL, 2LL}) {
                DifferentialVec prod = code.wmul(code.phi(lam), code.phi_bar(s));
                REQUIRE(code.delta_lead(prod).weight == lam + s);
            }
    }

    SECTION("generator rows are residues of the message monomials") {
        for (std::size_t r = 0; r < code.S.size(); ++r)
            REQUIRE(code.residue_vector(code.phi_bar(code.S[r])) == code.gen[r]);
    }

    SECTION("ring products: goldens, symmetry, associativity") {
        // y_1 * y_1 = y_2
        REQUIRE(code.ybasis_product(1, 1).parts[2] == P({1}));
        REQUIRE(code.ybasis_product(1, 1).parts[0].is_zero());
        // y_1 * y_2 = y^3 = x^4 - y
        REQUIRE(code.ybasis_product(1, 2).parts[0] == P({0, 0, 0, 0, 1}));
        REQUIRE(code.ybasis_product(1, 2).parts[1] == P({2}));
        REQUIRE(code.ybasis_product(1, 2).parts[2].is_zero());
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                REQUIRE(code.ybasis_product(i, j) == code.ybasis_product(j, i));

        for (int trial = 0; trial < 10; ++trial) {
            FunctionVec f = random_fvec(code, rng, 3);
            FunctionVec g = random_fvec(code, rng, 3);
            DifferentialVec w = random_dvec(code, rng, 3);
            // (f g) w == f (g w): links the ring table to the module table
            REQUIRE(code.wmul(code.rmul(f, g), w) == code.wmul(f, code.wmul(g, w)));
        }
    }
}

TEST_CASE("residues agree with a local series expansion at the points") {
    struct Build {
        int q, lam_o, lam_q;
    };
    for (Build bl : {Build{3, -1, 18}, Build{2, 0, 5}}) {
        CodeData code = build_hermitian(bl.q, bl.lam_o, bl.lam_q);
        const Field& F = code.field;
        const int q = bl.q;

        // independent search for the Apery monomials x^k y^j of W-bar:
        // minimize delta over a window, subject to the valuation constraint
        // at the origin
        std::map<int, std::pair<int, int>> mono; // class -> (k, j)
        std::map<int, long long> best;
        for (int k = 0; k <= q; ++k)
            for (int j = -3 * q; j <= 3 * q; ++j) {
                if (k + (q + 1) * j < bl.lam_o + 1) continue;
                long long wt = static_cast<long long>(q) * k + static_cast<long long>(q + 1) * j;
                long long delta = bl.lam_q + wt - (static_cast<long long>(q) * q * q + q * q - q - 2);
                int cls = static_cast<int>(((delta % q) + q) % q);
                if (!best.count(cls) || delta < best[cls]) {
                    best[cls] = delta;
                    mono[cls] = {k, j};
                }
            }
        for (int i = 0; i < q; ++i) {
            REQUIRE(best.count(i) == 1);
            REQUIRE(best[i] == code.b[static_cast<std::size_t>(i)]);
        }

        const std::size_t T = 12;
        for (int pt : {0, code.n / 2, code.n - 1}) {
            Elem ax = code.points[static_cast<std::size_t>(pt)][0];
            Elem by = code.points[static_cast<std::size_t>(pt)][1];
            Series yt = y_branch(F, q, ax, by, T);
            Series xt(T, 0);
            xt[0] = ax;
            xt[1] = 1;

            // the branch really lies on the curve through the point
            Series lhs = s_pow(F, yt, q, T);
            Series rhs = s_pow(F, xt, q + 1, T);
            for (std::size_t i = 0; i < T; ++i)
                REQUIRE(F.add(lhs[i], yt[i]) == rhs[i]);

            // res_P(x^k w_i) via the leading series coefficient of
            // f / (t^{q^2} - t) dt, which is minus the constant term
            for (int i = 0; i < q; ++i) {
                auto [mk, mj] = mono[i];
                for (int extra = 0; extra < 3; ++extra) {
                    Series num = s_mul(F, s_pow(F, xt, mk + extra, T), s_pow(F, yt, mj, T));
                    DifferentialVec w = dvec(code.gamma);
                    w.parts[static_cast<std::size_t>(i)] = poly_monomial(1, extra);
                    REQUIRE(code.residue_vector(w)[static_cast<std::size_t>(pt)] == F.neg(num[0]));
                }
            }
        }
    }
}
