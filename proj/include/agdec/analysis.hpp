#pragma once

#include <algorithm>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "codedata.hpp"
#include "linalg.hpp"

// Combinatorial analysis of a differential code: the promised-correction
// profile nu(s), the decoding radius tau, dual descriptions of the weight
// jump sets, and the minimum distance bounds they induce.

namespace agdec {

namespace analysis_detail {

inline long long floor_div(long long a, long long b) {
    long long d = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? d - 1 : d;
}

} // namespace analysis_detail

// t-th smallest pole weight of the function ring (t >= 0)
inline long long nongap_lambda(const CodeData& code, long long t) {
    if (t < 0) throw std::domain_error("nongap index must be nonnegative");
    long long seen = -1;
    for (long long w = 0;; ++w)
        if (code.rho_nongap(w) && ++seen == t) return w;
}

// number of errors the s-th round of voting is guaranteed to see through:
// nu(s) = (1/gamma) * sum_i max(delta(eta_{i'}) - a_i - s, 0), i' = (i+s) mod gamma
inline long long nu(const CodeData& code, long long s) {
    if (std::find(code.S.begin(), code.S.end(), s) == code.S.end())
        throw std::domain_error("nu(s): s = " + std::to_string(s) + " is not a message weight");
    long long acc = 0;
    for (int i = 0; i < code.gamma; ++i) {
        int ip = code.cls_of(i + s);
        long long d = code.delta_lead(code.eta[static_cast<std::size_t>(ip)]).weight -
                      code.a[static_cast<std::size_t>(i)] - s;
        if (d > 0) acc += d;
    }
    if (acc % code.gamma != 0) throw std::logic_error("nu(s) is not an integer");
    return acc / code.gamma;
}

// the same quantity counted directly as |staircase of the kernel module
// meeting the monomials of R*phi-bar_s|
inline long long nu_count_form(const CodeData& code, long long s) {
    long long cnt = 0;
    for (int i = 0; i < code.gamma; ++i) {
        int d = code.eta[static_cast<std::size_t>(i)].parts[static_cast<std::size_t>(i)].deg();
        for (int k = 0; k < d; ++k) {
            long long lam = static_cast<long long>(code.gamma) * k +
                            code.b[static_cast<std::size_t>(i)] - s;
            if (lam >= 0 && code.rho_nongap(lam)) ++cnt;
        }
    }
    return cnt;
}

struct NuTable {
    std::vector<std::pair<long long, long long>> rows; // (s, nu(s)) descending s
    long long d_omega = 0;
    long long tau = 0;
};

// nu over all message weights, the designed distance d_Omega = min nu, and
// the radius tau = floor((d_Omega - 1) / 2); checks the Goppa-style floor
// nu(s) >= deg G - 2g + 2 - s on the way
inline NuTable nu_profile(const CodeData& code);

inline long long s_q(const CodeData& code, long long t) {
    return code.degG - nongap_lambda(code, t) - nu_profile(code).tau -
           2 * code.genus + 1;
}

inline NuTable nu_profile(const CodeData& code) {
    NuTable t;
    for (long long s : code.S) {
        long long v = nu(code, s);
        if (v < code.degG - 2 * code.genus + 2 - s)
            throw std::logic_error("nu(s) fell below its genus floor");
        t.rows.emplace_back(s, v);
    }
    t.d_omega = t.rows.front().second;
    for (const auto& [s, v] : t.rows) t.d_omega = std::min(t.d_omega, v);
    t.tau = (t.d_omega - 1) / 2;
    return t;
}

// largest error weight the majority vote at weight s can absorb
inline long long tau_m(const CodeData& code, long long s) {
    return analysis_detail::floor_div(nu(code, s) - 1, 2);
}

// largest t for which the early-termination degree test can fire at weight s
// (-1 when even t = 0 cannot)
inline long long tau_q(const CodeData& code, long long s) {
    long long best = -1;
    for (long long t = 0;; ++t) {
        if (nongap_lambda(code, t) + s + t + 2 * code.genus - 1 > code.degG) break;
        best = t;
    }
    return best;
}

// least weight by which the degree test is guaranteed to fire on at most t
// errors; the threshold involves the full decoding radius, not t itself
inline long long s_q(const CodeData& code, long long t);

// Verifies the exact relationships between the profiles:
//  - genus sandwiches for tau_M and tau_Q with their stated equality ranges,
//  - tau = min over S of tau_M,
//  - s_q(tau) is the largest s with tau_Q(s) >= tau,
//  - nu agrees with its direct staircase count.
// Violations throw logic_error: they would falsify the design, not the input.
inline void verify_capacity_profiles(const CodeData& code) {
    using analysis_detail::floor_div;
    const long long G = code.degG, g = code.genus;
    NuTable table = nu_profile(code);

    long long min_tau_m = std::numeric_limits<long long>::max();
    for (long long s : code.S) {
        if (nu(code, s) != nu_count_form(code, s))
            throw std::logic_error("nu(s) disagrees with its staircase count");
        long long tm = tau_m(code, s), tq = tau_q(code, s);
        min_tau_m = std::min(min_tau_m, tm);

        if (tm < floor_div(G - 2 * g + 1 - s, 2) || tm > floor_div(G - g + 1 - s, 2))
            throw std::logic_error("tau_M outside its genus sandwich");
        if (s <= G - 4 * g + 2 && tm != floor_div(G - 2 * g + 1 - s, 2))
            throw std::logic_error("tau_M missed its exact value in the low range");
        if (tq < floor_div(G - 3 * g + 1 - s, 2) || tq > floor_div(G - 2 * g + 1 - s, 2))
            throw std::logic_error("tau_Q outside its genus sandwich");
        if (s <= G - 5 * g + 1) {
            if (tq != floor_div(G - 3 * g + 1 - s, 2))
                throw std::logic_error("tau_Q missed its exact value in the low range");
            long long expect = ((G - s) % 2 != 0) ? (g + 1) / 2 : g / 2;
            if (tm - tq != expect)
                throw std::logic_error("tau_M - tau_Q parity identity failed");
        }
    }
    if (min_tau_m != table.tau)
        throw std::logic_error("tau != min over S of tau_M");

    long long smax = std::numeric_limits<long long>::min();
    for (long long s = G; s >= *std::min_element(code.S.begin(), code.S.end()); --s)
        if (tau_q(code, s) >= table.tau) {
            smax = s;
            break;
        }
    if (smax != s_q(code, table.tau))
        throw std::logic_error("s_q(tau) is not the last weight where tau_Q >= tau");
}

// ---- weight jump sets and their geometric cross-checks ----

// membership of s in the jump set of L(G + sQ)
inline bool lambda_bar_member(const CodeData& code, long long s) {
    if (code.hermitian_meta) {
        const auto& m = *code.hermitian_meta;
        const long long q = m.q;
        // the unique monomial x^k y^j in normal form of weight lam_q + s
        long long w = m.lam_q + s;
        long long k = ((-w) % (q + 1) + (q + 1)) % (q + 1);
        long long j = (w - q * k) / (q + 1);
        return k + (q + 1) * j >= -static_cast<long long>(m.lam_o);
    }
    if (code.pline_meta) {
        // genus zero: L(G + sQ) grows at every nonnegative degree
        return s >= -static_cast<long long>(code.degG);
    }
    throw std::domain_error("unsupported divisor: no geometry metadata in the code data");
}

struct JumpSets {
    std::vector<long long> lambda;     // pole weights in [0, horizon]
    std::vector<long long> lambda_bar; // L(G+sQ) jumps in [-degG, horizon]
    std::vector<long long> omega_bar;  // differential weights in [min b, horizon]
    long long horizon = 0;
};

inline JumpSets jump_sets(const CodeData& code, long long horizon = -1) {
    JumpSets out;
    out.horizon = horizon >= 0 ? horizon
                               : 2LL * code.degG + 4LL * code.genus + code.gamma;
    for (long long w = 0; w <= out.horizon; ++w)
        if (code.rho_nongap(w)) out.lambda.push_back(w);
    for (long long s = -code.degG; s <= out.horizon; ++s)
        if (lambda_bar_member(code, s)) out.lambda_bar.push_back(s);
    long long bmin = *std::min_element(code.b.begin(), code.b.end());
    for (long long s = bmin; s <= out.horizon; ++s)
        if (code.delta_nongap(s)) out.omega_bar.push_back(s);
    return out;
}

namespace analysis_detail {

// evaluation matrix of a basis of L(G + sQ) at the code points
inline Matrix eval_space_matrix(const CodeData& code, long long s) {
    const Field& F = code.field;
    std::vector<std::vector<Elem>> rows;
    if (code.hermitian_meta) {
        const auto& m = *code.hermitian_meta;
        const long long q = m.q;
        for (long long k = 0; k <= q; ++k) {
            // v_O(x^k y^j) >= -lam_o and weight <= lam_q + s
            long long jlo = -floor_div(static_cast<long long>(m.lam_o) + k, q + 1);
            long long jhi = floor_div(m.lam_q + s - q * k, q + 1);
            for (long long j = jlo; j <= jhi; ++j) {
                std::vector<Elem> row(static_cast<std::size_t>(code.n));
                for (int pt = 0; pt < code.n; ++pt)
                    row[static_cast<std::size_t>(pt)] =
                        F.mul(F.pow(code.points[static_cast<std::size_t>(pt)][0], k),
                              F.pow(code.points[static_cast<std::size_t>(pt)][1], j));
                rows.push_back(std::move(row));
            }
        }
    } else if (code.pline_meta) {
        // G = Z - P_inf on the line: basis x^t / g(x), 0 <= t <= deg g - 1 + s
        const auto& m = *code.pline_meta;
        Poly geff = m.g_given;
        if (m.squared) geff = poly_mul(F, geff, geff);
        long long tmax = geff.deg() - 1 + s;
        for (long long t = 0; t <= tmax; ++t) {
            std::vector<Elem> row(static_cast<std::size_t>(code.n));
            for (int pt = 0; pt < code.n; ++pt) {
                Elem x = code.points[static_cast<std::size_t>(pt)][0];
                row[static_cast<std::size_t>(pt)] =
                    F.div(F.pow(x, t), poly_eval(F, geff, x));
            }
            rows.push_back(std::move(row));
        }
    } else {
        throw std::domain_error("unsupported divisor: no geometry metadata in the code data");
    }
    Matrix M(rows.size(), static_cast<std::size_t>(code.n));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < code.n; ++c)
            M.at(r, static_cast<std::size_t>(c)) = rows[r][static_cast<std::size_t>(c)];
    return M;
}

inline std::size_t eval_space_rank(const CodeData& code, long long s) {
    if (s < -code.degG) return 0;
    return mat_rank(code.field, eval_space_matrix(code, s));
}

} // namespace analysis_detail

// Cross-validates the differential jump set against the function-side
// geometry: s is a differential weight jump exactly when -s+1 is not an
// L(G+sQ) jump or the evaluation code grows from -s to -s+1.
inline void verify_jump_duality(const CodeData& code) {
    long long bmin = *std::min_element(code.b.begin(), code.b.end());
    long long s_lo = bmin - code.gamma - 2;
    long long s_hi = code.degG + 2 * code.genus + code.gamma;
    // rank of ev(L(G - (s-1)Q)), i.e. at -s+1 for the first iteration
    std::size_t rank_above = analysis_detail::eval_space_rank(code, -s_lo + 1);
    for (long long s = s_lo; s <= s_hi; ++s) {
        std::size_t rank_here = analysis_detail::eval_space_rank(code, -s);
        bool lhs = code.delta_nongap(s);
        bool rhs = !lambda_bar_member(code, -s + 1) || rank_here != rank_above;
        if (lhs != rhs)
            throw std::logic_error("jump set duality failed at weight " + std::to_string(s));
        rank_above = rank_here; // next s reads this as its rank at -s+1
    }
}

struct DistanceBounds {
    long long d_omega = 0;       // min over S of nu(s)
    long long d_omega_pairs = 0; // pair-count form over the differential jumps
    long long d_omega_growth = 0; // pair-count form over evaluation-code growth steps
    long long d_evaluation = 0;  // the analogous bound for the evaluation code
    long long d_evaluation_growth = 0; // its evaluation-growth twin
    std::optional<long long> d_feng_rao;      // one-point codes only
    std::optional<long long> d_feng_rao_weak; // ditto, pairs restricted to growth steps
};

// Computes every published formulation of the distance bounds; requires the
// geometry metadata. The alternate forms are theorems, so callers may assert
// d_omega == d_omega_pairs == d_omega_growth and the evaluation twins equal.
inline DistanceBounds distance_bounds(const CodeData& code) {
    DistanceBounds out;
    out.d_omega = nu_profile(code).d_omega;

    // d_omega as min over s in the differential jumps, s <= 0, of the number
    // of pairs i in Lambda, j in Lambda-bar with i + j + s = 1
    long long bmin = *std::min_element(code.b.begin(), code.b.end());
    long long best = std::numeric_limits<long long>::max();
    for (long long s = bmin; s <= 0; ++s) {
        if (!code.delta_nongap(s)) continue;
        long long cnt = 0;
        for (long long i = 0; i <= 1 - s + code.degG; ++i) {
            if (!code.rho_nongap(i)) continue;
            if (lambda_bar_member(code, 1 - s - i)) ++cnt;
        }
        best = std::min(best, cnt);
    }
    out.d_omega_pairs = best;

    // the twin bound for the evaluation code C_L(D, G)
    best = std::numeric_limits<long long>::max();
    for (long long s = -code.degG; s <= 0; ++s) {
        if (!lambda_bar_member(code, s)) continue;
        long long cnt = 0;
        for (long long i = 0; i <= 1 - s - bmin; ++i) {
            if (!code.rho_nongap(i)) continue;
            if (code.delta_nongap(1 - s - i)) ++cnt;
        }
        best = std::min(best, cnt);
    }
    out.d_evaluation = best;

    // growth steps of the evaluation codes ev(L(G+kQ)): exactly n of them
    std::vector<long long> growth;
    {
        std::size_t prev = 0;
        for (long long k = -code.degG; static_cast<int>(prev) < code.n; ++k) {
            std::size_t r = analysis_detail::eval_space_rank(code, k);
            if (r != prev) growth.push_back(k);
            prev = r;
            if (k > 2LL * code.n + 4 * code.genus + code.gamma + code.degG)
                throw std::logic_error("evaluation ranks failed to stabilize");
        }
    }
    auto grows_at = [&](long long k) {
        return std::binary_search(growth.begin(), growth.end(), k);
    };

    // the same two bounds written over the growth steps
    best = std::numeric_limits<long long>::max();
    for (long long k : growth) {
        if (k < 1) continue;
        long long cnt = 0;
        for (long long i = 0; i <= k + code.degG; ++i) {
            if (!code.rho_nongap(i)) continue;
            if (lambda_bar_member(code, k - i)) ++cnt;
        }
        best = std::min(best, cnt);
    }
    out.d_omega_growth = best;

    best = std::numeric_limits<long long>::max();
    for (long long s = -code.degG; s <= 0; ++s) {
        if (!lambda_bar_member(code, s)) continue;
        long long cnt = 0;
        for (long long i = 0; i <= growth.back() - s; ++i)
            if (code.rho_nongap(i) && grows_at(i + s)) ++cnt;
        best = std::min(best, cnt);
    }
    out.d_evaluation_growth = best;

    // Feng-Rao for one-point divisors G = mQ: min over the jumps k > m of
    // ev(L(kQ)) of the number of pairs of pole weights summing to k; the weak
    // form further restricts the pairs to jump weights
    if (code.hermitian_meta && code.hermitian_meta->lam_o == 0) {
        const long long m = code.hermitian_meta->lam_q;
        // H* = {i : ev(L(iQ)) grows}, and ev(L(iQ)) = ev(L(G + (i-m)Q))
        std::vector<long long> hstar;
        for (long long k : growth) hstar.push_back(k + m);
        auto in_hstar = [&](long long i) {
            return std::binary_search(hstar.begin(), hstar.end(), i);
        };
        long long fr = std::numeric_limits<long long>::max();
        long long fr_weak = fr;
        for (long long k : hstar) {
            if (k <= m) continue;
            long long cnt = 0, cnt_weak = 0;
            for (long long i = 0; i <= k; ++i) {
                if (code.rho_nongap(i) && code.rho_nongap(k - i)) ++cnt;
                if (in_hstar(i) && in_hstar(k - i)) ++cnt_weak;
            }
            fr = std::min(fr, cnt);
            fr_weak = std::min(fr_weak, cnt_weak);
        }
        out.d_feng_rao = fr;
        out.d_feng_rao_weak = fr_weak;
    }
    return out;
}

// Human-readable parameter report: the nu/tau table over the message weights
// with the designed distance footer.
inline std::string params_report(const CodeData& code) {
    std::ostringstream os;
    NuTable table = nu_profile(code);
    os << "differential AG code over GF(" << code.field.q() << "): n = " << code.n
       << ", k = " << code.k() << ", deg G = " << code.degG << ", genus = " << code.genus
       << ", gamma = " << code.gamma << "\n";
    os << "a =";
    for (int v : code.a) os << " " << v;
    os << "\nb =";
    for (int v : code.b) os << " " << v;
    os << "\n\n";
    os << "    s  nu(s)  tau_M  tau_Q\n";
    for (const auto& [s, v] : table.rows)
        os << std::setw(5) << s << std::setw(7) << v << std::setw(7) << tau_m(code, s)
           << std::setw(7) << tau_q(code, s) << "\n";
    os << "\n";
    bool have_geometry = code.hermitian_meta.has_value() || code.pline_meta.has_value();
    if (have_geometry) {
        DistanceBounds db = distance_bounds(code);
        os << "pair-count distance bound = " << db.d_omega_pairs
           << ", evaluation-code twin bound = " << db.d_evaluation;
        if (db.d_feng_rao) os << ", Feng-Rao bound = " << *db.d_feng_rao;
        os << "\n";
    }
    os << "Goppa designed bound = " << code.degG - 2 * code.genus + 2 << "\n";
    os << "d_Omega = " << table.d_omega << ", tau = " << table.tau << "\n";
    return os.str();
}

} // namespace agdec
