#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace agdec {

// Integer encoding of a field element: sum of digits[i]*p^i where digits are
// the polynomial-basis coordinates in alpha. All file formats and APIs pass
// elements in this encoding.
using Elem = std::uint32_t;

struct FieldSpec {
    int p = 2;                 // prime characteristic
    int m = 1;                 // extension degree
    std::vector<int> prim;     // ascending coeffs of the defining polynomial, length m+1, monic
};

namespace detail {

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace detail

// GF(p^m) with full log/antilog tables (q <= 2^16). Construction validates
// the defining polynomial (irreducible, monic) and that alpha = x generates
// the multiplicative group. Immutable after construction.
class Field {
public:
    explicit Field(FieldSpec spec) : spec_(std::move(spec)) {
        validate_spec();
        q_ = 1;
        for (int i = 0; i < spec_.m; ++i) {
            q_ *= static_cast<Elem>(spec_.p);
            if (q_ > (1u << 16)) throw std::invalid_argument("field too large: q > 2^16");
        }
        check_irreducible();
        build_tables();
    }

    static Field make(int p, int m, std::vector<int> prim) {
        return Field(FieldSpec{p, m, std::move(prim)});
    }

    const FieldSpec& spec() const { return spec_; }
    int p() const { return spec_.p; }
    int m() const { return spec_.m; }
    Elem q() const { return q_; }
    Elem alpha() const { return spec_.m == 1 ? canonical_prime_generator_ : static_cast<Elem>(spec_.p); }

    Elem add(Elem a, Elem b) const {
        check(a); check(b);
        if (spec_.p == 2) return a ^ b;
        Elem r = 0, pw = 1;
        const Elem p = static_cast<Elem>(spec_.p);
        for (int i = 0; i < spec_.m; ++i) {
            r += ((a + b) % p) * pw;
            a /= p; b /= p; pw *= p;
        }
        return r;
    }

    Elem neg(Elem a) const {
        check(a);
        if (spec_.p == 2) return a;
        Elem r = 0, pw = 1;
        const Elem p = static_cast<Elem>(spec_.p);
        for (int i = 0; i < spec_.m; ++i) {
            r += ((p - a % p) % p) * pw;
            a /= p; pw *= p;
        }
        return r;
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        check(a); check(b);
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }

    Elem inv(Elem a) const {
        check(a);
        if (a == 0) throw std::domain_error("division by zero in field inverse");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    // a^e for any integer e (negative allowed when a != 0).
    Elem pow(Elem a, long long e) const {
        check(a);
        if (a == 0) {
            if (e < 0) throw std::domain_error("division by zero in field inverse");
            return e == 0 ? 1 : 0;
        }
        long long ord = static_cast<long long>(q_) - 1;
        long long k = ((log_[a] * (e % ord)) % ord + ord) % ord;
        return exp_[k];
    }

    // True iff a lies in the subfield of order q0 = p^d (requires d | m):
    // equivalent to a^{q0} = a.
    bool in_subfield(Elem a, Elem q0) const {
        check(a);
        int d = 0;
        Elem t = 1;
        while (t < q0) { t *= static_cast<Elem>(spec_.p); ++d; }
        if (t != q0 || d == 0 || spec_.m % d != 0)
            throw std::invalid_argument("invalid subfield order " + std::to_string(q0));
        return pow(a, static_cast<long long>(q0)) == a;
    }

    // Discrete log base alpha; a must be nonzero.
    Elem log(Elem a) const {
        check(a);
        if (a == 0) throw std::domain_error("log of zero");
        return log_[a];
    }

    Elem alpha_pow(long long e) const {
        long long ord = static_cast<long long>(q_) - 1;
        return exp_[((e % ord) + ord) % ord];
    }

    bool operator==(const Field& o) const {
        return spec_.p == o.spec_.p && spec_.m == o.spec_.m && spec_.prim == o.spec_.prim;
    }

private:
    void check(Elem a) const {
        if (a >= q_) throw std::out_of_range("field element encoding out of range");
    }

    void validate_spec() {
        if (!detail::is_prime(spec_.p)) throw std::invalid_argument("characteristic must be prime");
        if (spec_.m < 1) throw std::invalid_argument("extension degree must be positive");
        if (spec_.prim.size() != static_cast<std::size_t>(spec_.m) + 1)
            throw std::invalid_argument("defining polynomial must have degree m");
        for (int c : spec_.prim)
            if (c < 0 || c >= spec_.p) throw std::invalid_argument("defining polynomial coefficient out of range");
        if (spec_.prim[spec_.m] != 1) throw std::invalid_argument("defining polynomial must be monic");
    }

    // Residue polynomials over GF(p) as digit vectors (ascending, length m).
    using Digits = std::vector<int>;

    Digits mul_mod_prim(const Digits& a, const Digits& b) const {
        const int p = spec_.p, m = spec_.m;
        std::vector<int> t(2 * m - 1, 0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                t[i + j] = (t[i + j] + a[i] * b[j]) % p;
        for (int d = 2 * m - 2; d >= m; --d) {
            int c = t[d];
            if (c == 0) continue;
            t[d] = 0;
            // x^d = -sum prim[i] x^{d-m+i}, i < m (prim monic)
            for (int i = 0; i < m; ++i)
                t[d - m + i] = ((t[d - m + i] - c * spec_.prim[i]) % p + p) % p;
        }
        t.resize(m);
        return t;
    }

    Elem encode(const Digits& d) const {
        Elem r = 0, pw = 1;
        for (int i = 0; i < spec_.m; ++i) { r += static_cast<Elem>(d[i]) * pw; pw *= static_cast<Elem>(spec_.p); }
        return r;
    }

    // Exhaustive check for factors of degree <= m/2 over GF(p); feasible for
    // every field in scope (small p, small m).
    void check_irreducible() {
        const int p = spec_.p, m = spec_.m;
        if (m == 1) return;
        std::vector<int> f(spec_.prim.begin(), spec_.prim.end());
        for (int d = 1; 2 * d <= m; ++d) {
            long long count = 1;
            for (int i = 0; i < d; ++i) count *= p;
            for (long long idx = 0; idx < count; ++idx) {
                // candidate monic divisor of degree d
                std::vector<int> g(d + 1, 0);
                long long t = idx;
                for (int i = 0; i < d; ++i) { g[i] = static_cast<int>(t % p); t /= p; }
                g[d] = 1;
                // remainder of f mod g
                std::vector<int> r = f;
                for (int k = m; k >= d; --k) {
                    int c = r[k];
                    if (c == 0) continue;
                    for (int i = 0; i <= d; ++i)
                        r[k - d + i] = ((r[k - d + i] - c * g[i]) % p + p) % p;
                }
                bool zero = true;
                for (int i = 0; i < d; ++i)
                    if (r[i] != 0) { zero = false; break; }
                if (zero) throw std::invalid_argument("defining polynomial is reducible");
            }
        }
    }

    void build_tables() {
        const int p = spec_.p, m = spec_.m;
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        if (m == 1) {
            // alpha is the root of the degree-1 defining polynomial x + c0,
            // and must generate GF(p)^*.
            int root = ((-spec_.prim[0]) % p + p) % p;
            if (root == 0) throw std::invalid_argument("alpha does not generate the multiplicative group");
            canonical_prime_generator_ = static_cast<Elem>(root);
            int v = 1;
            for (Elem k = 0; k + 1 < q_; ++k) {
                if (k > 0 && v == 1) throw std::invalid_argument("alpha does not generate the multiplicative group");
                exp_[k] = static_cast<Elem>(v);
                log_[v] = k;
                v = (v * root) % p;
            }
            if (v != 1) throw std::invalid_argument("alpha does not generate the multiplicative group");
            return;
        }
        Digits acc(m, 0), x(m, 0);
        acc[0] = 1;
        x[1 % m] = 1; // the class of x, i.e. alpha
        for (Elem k = 0; k + 1 < q_; ++k) {
            Elem e = encode(acc);
            if (e == 0) throw std::invalid_argument("defining polynomial is reducible");
            if (k > 0 && e == 1) throw std::invalid_argument("alpha does not generate the multiplicative group");
            exp_[k] = e;
            log_[e] = k;
            acc = mul_mod_prim(acc, x);
        }
        Elem wrap = encode(acc);
        if (wrap != 1) throw std::invalid_argument("alpha does not generate the multiplicative group");
        // every nonzero element must have been visited
        for (Elem e = 1; e < q_; ++e)
            if (exp_[log_[e]] != e) throw std::invalid_argument("alpha does not generate the multiplicative group");
    }

    FieldSpec spec_;
    Elem q_ = 0;
    Elem canonical_prime_generator_ = 1;
    std::vector<Elem> exp_; // exp_[k] = alpha^k, k in [0, q-1)
    std::vector<Elem> log_; // log_[a] for a != 0
};

// Default defining polynomials. The table entries are fixed so that file
// formats and worked examples are reproducible; every returned polynomial is
// re-validated by the Field constructor (irreducible, alpha a generator).
inline std::vector<int> default_prim(int p, int m) {
    if (m == 1) {
        // alpha = smallest generator of GF(p)^*: root of x - g.
        for (int g = 1; g < p; ++g) {
            int v = 1, ord = 0;
            do { v = (v * g) % p; ++ord; } while (v != 1);
            if (ord == p - 1) return {(p - g) % p, 1};
        }
        throw std::invalid_argument("characteristic must be prime");
    }
    if (p == 2 && m == 2) return {1, 1, 1};
    if (p == 2 && m == 3) return {1, 1, 0, 1};
    if (p == 2 && m == 4) return {1, 1, 0, 0, 1};
    if (p == 2 && m == 5) return {1, 0, 1, 0, 0, 1};
    if (p == 2 && m == 6) return {1, 1, 0, 0, 0, 0, 1};
    if (p == 3 && m == 2) return {2, 2, 1}; // x^2 - x - 1
    if (p == 3 && m == 4) return {2, 0, 0, 2, 1};
    if (p == 5 && m == 2) return {2, 4, 1};
    if (p == 7 && m == 2) return {3, 6, 1};
    // Fall back to the first (ascending integer encoding) monic polynomial
    // accepted by the Field constructor.
    long long count = 1;
    for (int i = 0; i < m; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
        std::vector<int> prim(m + 1, 0);
        long long t = idx;
        for (int i = 0; i < m; ++i) { prim[i] = static_cast<int>(t % p); t /= p; }
        prim[m] = 1;
        try {
            Field f(FieldSpec{p, m, prim});
            return prim;
        } catch (const std::invalid_argument&) {
            continue;
        }
    }
    throw std::invalid_argument("no primitive polynomial found");
}

} // namespace agdec
