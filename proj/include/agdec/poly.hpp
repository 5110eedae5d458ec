#pragma once

#include <climits>
#include <stdexcept>
#include <vector>

#include "field.hpp"

namespace agdec {

// Degree of the zero polynomial: a sentinel far below any real degree so
// that weighted-degree maxima stay total. Chosen so that adding moderate
// offsets (weights, shifts) cannot wrap.
constexpr int kNegInfDeg = INT_MIN / 4;

// Univariate polynomial, ascending coefficients, canonical form (no trailing
// zeros; zero polynomial has empty coefficient list).
struct Poly {
    std::vector<Elem> c;

    bool is_zero() const { return c.empty(); }
    int deg() const { return c.empty() ? kNegInfDeg : static_cast<int>(c.size()) - 1; }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool operator==(const Poly& o) const { return c == o.c; }
};

inline Poly poly_from(std::vector<Elem> coeffs) {
    Poly f{std::move(coeffs)};
    f.trim();
    return f;
}

inline Poly poly_zero() { return Poly{}; }

inline Poly poly_const(Elem a) { return a == 0 ? Poly{} : Poly{{a}}; }

// c * x^k
inline Poly poly_monomial(Elem a, int k) {
    if (a == 0) return Poly{};
    if (k < 0) throw std::invalid_argument("monomial exponent must be nonnegative");
    Poly f;
    f.c.assign(static_cast<std::size_t>(k) + 1, 0);
    f.c.back() = a;
    return f;
}

// Coefficient of x^k; total (0 outside the support, including k < 0).
inline Elem coeff_at(const Poly& f, int k) {
    if (k < 0 || k > f.deg()) return 0;
    return f.c[static_cast<std::size_t>(k)];
}

inline Elem leading_coeff(const Poly& f) { return f.c.empty() ? 0 : f.c.back(); }

inline Poly poly_add(const Field& F, const Poly& f, const Poly& g) {
    Poly r;
    r.c.resize(std::max(f.c.size(), g.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = F.add(coeff_at(f, static_cast<int>(i)), coeff_at(g, static_cast<int>(i)));
    r.trim();
    return r;
}

inline Poly poly_neg(const Field& F, const Poly& f) {
    Poly r = f;
    for (auto& x : r.c) x = F.neg(x);
    return r;
}

inline Poly poly_sub(const Field& F, const Poly& f, const Poly& g) {
    return poly_add(F, f, poly_neg(F, g));
}

inline Poly poly_scale(const Field& F, Elem a, const Poly& f) {
    if (a == 0) return Poly{};
    Poly r = f;
    for (auto& x : r.c) x = F.mul(a, x);
    return r;
}

// f * x^k (k >= 0)
inline Poly poly_shift(const Poly& f, int k) {
    if (f.is_zero()) return f;
    if (k < 0) throw std::invalid_argument("negative shift");
    Poly r;
    r.c.assign(f.c.size() + static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < f.c.size(); ++i) r.c[i + static_cast<std::size_t>(k)] = f.c[i];
    return r;
}

inline Poly poly_mul(const Field& F, const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero()) return Poly{};
    Poly r;
    r.c.assign(f.c.size() + g.c.size() - 1, 0);
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i] == 0) continue;
        for (std::size_t j = 0; j < g.c.size(); ++j)
            r.c[i + j] = F.add(r.c[i + j], F.mul(f.c[i], g.c[j]));
    }
    r.trim();
    return r;
}

struct DivRem {
    Poly quot;
    Poly rem;
};

inline DivRem poly_divrem(const Field& F, const Poly& f, const Poly& g) {
    if (g.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly r = f;
    Poly q;
    const int dg = g.deg();
    if (r.deg() >= dg) q.c.assign(static_cast<std::size_t>(r.deg() - dg) + 1, 0);
    const Elem lg_inv = F.inv(leading_coeff(g));
    while (!r.is_zero() && r.deg() >= dg) {
        const int k = r.deg() - dg;
        const Elem c = F.mul(leading_coeff(r), lg_inv);
        q.c[static_cast<std::size_t>(k)] = c;
        for (int i = 0; i <= dg; ++i) {
            auto idx = static_cast<std::size_t>(k + i);
            r.c[idx] = F.sub(r.c[idx], F.mul(c, g.c[static_cast<std::size_t>(i)]));
        }
        r.trim();
    }
    q.trim();
    return {q, r};
}

inline Elem poly_eval(const Field& F, const Poly& f, Elem a) {
    Elem r = 0;
    for (std::size_t i = f.c.size(); i-- > 0;)
        r = F.add(F.mul(r, a), f.c[i]);
    return r;
}

inline Poly poly_deriv(const Field& F, const Poly& f) {
    Poly r;
    if (f.deg() < 1) return r;
    r.c.assign(f.c.size() - 1, 0);
    for (std::size_t i = 1; i < f.c.size(); ++i) {
        Elem k = 0; // i mod p, as a field constant
        for (std::size_t t = 0; t < i % static_cast<std::size_t>(F.p()); ++t) k = F.add(k, 1);
        r.c[i - 1] = F.mul(k, f.c[i]);
    }
    r.trim();
    return r;
}

inline Poly poly_monic(const Field& F, const Poly& f) {
    if (f.is_zero()) return f;
    return poly_scale(F, F.inv(leading_coeff(f)), f);
}

inline Poly poly_gcd(const Field& F, Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_divrem(F, a, b).rem;
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(F, a);
}

} // namespace agdec
