#pragma once

#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "codedata.hpp"

// Interpolation-based list-free decoder. The received word is turned into a
// syndrome differential h_v; the decoder then runs a Groebner-basis descent
// over the module of differentials vanishing on the error positions,
// recovering one message coefficient per weight by majority voting, with an
// early-termination division once the basis degrees certify the error count.

namespace agdec {

enum class DecodeStatus { success, failure };

// one row of the working basis: z-component (a function vector, coefficient
// of the indeterminate) plus a plain differential component
struct ModuleRow {
    FunctionVec z;
    DifferentialVec w;
};

struct DecodeOptions {
    bool trace = false;        // record one line per iteration
    bool use_shortcut = true;  // read the message directly when delta(h_v) <= 0
    bool use_qcheck = true;    // allow early termination by division
    // called after every iteration with the weight just processed and the
    // updated basis rows (F-rows carrying z, then the kernel-side rows)
    std::function<void(long long, const std::vector<ModuleRow>&, const std::vector<ModuleRow>&)>
        step_hook;
};

struct DecodeResult {
    DecodeStatus status = DecodeStatus::failure;
    std::vector<Elem> codeword;                            // empty on failure
    std::map<long long, Elem, std::greater<long long>> msg; // weight -> coefficient
    std::string failure_reason;
    long long iterations = 0;
    int max_poly_deg = 0;
    bool conservation_ok = true;
    std::vector<std::string> trace;
};

namespace decoder_detail {

inline int row_max_deg(const ModuleRow& r) {
    int d = 0;
    for (const Poly& p : r.z.parts) d = std::max(d, p.deg());
    for (const Poly& p : r.w.parts) d = std::max(d, p.deg());
    return d;
}

} // namespace decoder_detail

inline DecodeResult decode(const CodeData& code, const std::vector<Elem>& v,
                           const DecodeOptions& opt = {}) {
    const Field& F = code.field;
    const int gam = code.gamma;
    if (static_cast<int>(v.size()) != code.n)
        throw std::invalid_argument("received word length does not match the code");

    DecodeResult out;
    for (long long s : code.S) out.msg[s] = 0;

    const long long tau = nu_profile(code).tau;
    const long long smin = *std::min_element(code.S.begin(), code.S.end());

    auto emit_codeword = [&]() {
        out.codeword.assign(static_cast<std::size_t>(code.n), 0);
        for (std::size_t r = 0; r < code.S.size(); ++r) {
            Elem m = out.msg[code.S[r]];
            if (m == 0) continue;
            for (int c = 0; c < code.n; ++c)
                out.codeword[static_cast<std::size_t>(c)] =
                    F.add(out.codeword[static_cast<std::size_t>(c)],
                          F.mul(m, code.gen[r][static_cast<std::size_t>(c)]));
        }
        out.status = DecodeStatus::success;
    };
    auto fail = [&](std::string reason) {
        out.status = DecodeStatus::failure;
        out.failure_reason = std::move(reason);
        if (opt.trace) out.trace.push_back("failure: " + out.failure_reason);
    };

    // syndrome differential of the received word
    DifferentialVec hv = detail::dvec_zero(gam);
    for (int r = 0; r < code.n; ++r) {
        Elem c = v[static_cast<std::size_t>(r)];
        if (c == 0) continue;
        hv = detail::vec_add(F, hv, detail::vec_scale(F, c, code.h[static_cast<std::size_t>(r)]));
    }

    if (hv.is_zero()) { // the zero word is its own decoding
        emit_codeword();
        return out;
    }
    const long long N = code.delta_lead(hv).weight;

    if (opt.use_shortcut && N <= 0) {
        // every monomial of h_v sits at a nonpositive nongap weight, so h_v
        // is literally the message combination and v itself is a codeword
        for (int i = 0; i < gam; ++i) {
            const Poly& p = hv.parts[static_cast<std::size_t>(i)];
            for (int k = 0; k <= p.deg(); ++k) {
                if (p.c[static_cast<std::size_t>(k)] == 0) continue;
                long long s = static_cast<long long>(gam) * k + code.b[static_cast<std::size_t>(i)];
                out.msg.at(s) = p.c[static_cast<std::size_t>(k)];
            }
        }
        if (opt.trace) out.trace.push_back("shortcut: syndrome weight " + std::to_string(N));
        emit_codeword();
        return out;
    }

    // working basis: frows carry z - (corrections), grows start as the kernel basis
    std::vector<ModuleRow> frows(static_cast<std::size_t>(gam)), grows(static_cast<std::size_t>(gam));
    for (int i = 0; i < gam; ++i) {
        grows[static_cast<std::size_t>(i)] = {detail::fvec_zero(gam), code.eta[static_cast<std::size_t>(i)]};
        frows[static_cast<std::size_t>(i)].z = detail::fvec_zero(gam);
        frows[static_cast<std::size_t>(i)].z.parts[static_cast<std::size_t>(i)] = poly_const(1);
        frows[static_cast<std::size_t>(i)].w =
            detail::vec_scale(F, F.neg(1), code.wmul_basis(i, hv));
    }

    auto note_degrees = [&]() {
        for (const auto& r : frows) out.max_poly_deg = std::max(out.max_poly_deg, decoder_detail::row_max_deg(r));
        for (const auto& r : grows) out.max_poly_deg = std::max(out.max_poly_deg, decoder_detail::row_max_deg(r));
    };
    auto check_conservation = [&]() {
        long long total = 0;
        for (int i = 0; i < gam; ++i) {
            const Poly& fz = frows[static_cast<std::size_t>(i)].z.parts[static_cast<std::size_t>(i)];
            const Poly& gw = grows[static_cast<std::size_t>(i)].w.parts[static_cast<std::size_t>(i)];
            if (fz.is_zero() || gw.is_zero())
                throw std::logic_error("decoder lost a leading term");
            total += fz.deg() + gw.deg();
        }
        if (total != code.n) out.conservation_ok = false;
    };
    note_degrees();
    check_conservation();

    // early-termination division: the chosen row determines the remaining
    // message coefficients exactly, or exposes an inconsistency
    auto qdivide = [&](const ModuleRow& row, long long s_now) -> std::optional<std::string> {
        const FunctionVec& phi = row.z;
        LeadTerm pl = code.rho_lead(phi);
        DifferentialVec T = detail::vec_scale(F, F.neg(1), row.w);
        while (!T.is_zero()) {
            LeadTerm tl = code.delta_lead(T);
            long long t = tl.weight - pl.weight;
            if (t > s_now || t > 0 || !code.delta_nongap(t))
                return "early termination produced an invalid message weight " + std::to_string(t);
            DifferentialVec u = code.wmul(phi, code.phi_bar(t));
            Elem c = F.div(tl.coeff, code.delta_lead(u).coeff);
            out.msg.at(t) = c;
            T = detail::vec_sub(F, T, detail::vec_scale(F, c, u));
        }
        return std::nullopt;
    };

    for (long long s = N; s >= smin; --s) {
        ++out.iterations;
        std::ostringstream line;

        long long degsum = 0;
        for (int i = 0; i < gam; ++i)
            degsum += frows[static_cast<std::size_t>(i)].z.parts[static_cast<std::size_t>(i)].deg();
        if (opt.trace) line << "s=" << s << " degsum=" << degsum;

        if (degsum > tau) {
            if (opt.trace) out.trace.push_back(line.str());
            fail("error degree exceeded the radius at weight " + std::to_string(s));
            return out;
        }

        if (opt.use_qcheck) {
            int pick = -1;
            for (int i = 0; i < gam; ++i) {
                long long d = frows[static_cast<std::size_t>(i)].z.parts[static_cast<std::size_t>(i)].deg();
                if (gam * d + code.a[static_cast<std::size_t>(i)] + s + tau + 2 * code.genus - 1 <= code.degG) {
                    pick = i;
                    break;
                }
            }
            if (pick >= 0) {
                if (opt.trace) {
                    line << " action=qfire i=" << pick;
                    out.trace.push_back(line.str());
                }
                if (auto err = qdivide(frows[static_cast<std::size_t>(pick)], s)) {
                    fail(*err);
                    return out;
                }
                emit_codeword();
                return out;
            }
        }

        // pairing: row i meets kernel row i' = (i + s) mod gamma
        std::vector<int> ip(static_cast<std::size_t>(gam));
        std::vector<long long> kk(static_cast<std::size_t>(gam)), cgap(static_cast<std::size_t>(gam));
        for (int i = 0; i < gam; ++i) {
            ip[static_cast<std::size_t>(i)] = code.cls_of(i + s);
            kk[static_cast<std::size_t>(i)] =
                frows[static_cast<std::size_t>(i)].z.parts[static_cast<std::size_t>(i)].deg() +
                (code.a[static_cast<std::size_t>(i)] + s -
                 code.b[static_cast<std::size_t>(ip[static_cast<std::size_t>(i)])]) /
                    gam;
            const Poly& diag = grows[static_cast<std::size_t>(ip[static_cast<std::size_t>(i)])]
                                   .w.parts[static_cast<std::size_t>(ip[static_cast<std::size_t>(i)])];
            cgap[static_cast<std::size_t>(i)] = diag.deg() - kk[static_cast<std::size_t>(i)];
        }

        const bool vote_round = s <= 0 && code.delta_nongap(s);
        std::vector<Elem> mi(static_cast<std::size_t>(gam)), mu(static_cast<std::size_t>(gam), 1);
        Elem m = 0;
        if (vote_round) {
            DifferentialVec pb = code.phi_bar(s);
            for (int i = 0; i < gam; ++i) {
                Elem lc = leading_coeff(frows[static_cast<std::size_t>(i)].z.parts[static_cast<std::size_t>(i)]);
                mu[static_cast<std::size_t>(i)] =
                    F.mul(lc, code.delta_lead(code.wmul_basis(i, pb)).coeff);
                Elem bcoef = coeff_at(frows[static_cast<std::size_t>(i)]
                                          .w.parts[static_cast<std::size_t>(ip[static_cast<std::size_t>(i)])],
                                      static_cast<int>(kk[static_cast<std::size_t>(i)]));
                mi[static_cast<std::size_t>(i)] =
                    F.neg(F.div(bcoef, mu[static_cast<std::size_t>(i)]));
            }
            // weighted vote; candidate 0 is always on the ballot
            std::map<Elem, long long> ballot;
            ballot[0] = 0;
            for (int i = 0; i < gam; ++i)
                ballot[mi[static_cast<std::size_t>(i)]] +=
                    std::max<long long>(cgap[static_cast<std::size_t>(i)], 0);
            long long best = -1;
            for (const auto& [cand, wt] : ballot)
                if (wt > best) {
                    best = wt;
                    m = cand;
                }
            out.msg.at(s) = m;
            if (opt.trace) {
                line << " votes{";
                bool first = true;
                for (const auto& [cand, wt] : ballot) {
                    if (!first) line << " ";
                    line << static_cast<unsigned>(cand) << ":" << wt;
                    first = false;
                }
                line << "} m=" << static_cast<unsigned>(m);
            }
        } else {
            for (int i = 0; i < gam; ++i)
                mi[static_cast<std::size_t>(i)] =
                    F.neg(coeff_at(frows[static_cast<std::size_t>(i)]
                                       .w.parts[static_cast<std::size_t>(ip[static_cast<std::size_t>(i)])],
                                   static_cast<int>(kk[static_cast<std::size_t>(i)])));
            if (opt.trace) {
                int touched = 0;
                for (Elem e : mi)
                    if (e != 0) ++touched;
                line << " m=0 updates=" << touched;
            }
        }

        // rebasing: substitute z <- z + m*phi_bar_s everywhere first
        if (m != 0) {
            DifferentialVec pb = code.phi_bar(s);
            for (auto rows : {&frows, &grows})
                for (ModuleRow& r : *rows) {
                    if (r.z.is_zero()) continue;
                    r.w = detail::vec_add(F, r.w, detail::vec_scale(F, m, code.wmul(r.z, pb)));
                }
        }
        std::vector<ModuleRow> fnew = frows, gnew = grows;
        for (int i = 0; i < gam; ++i) {
            int j = ip[static_cast<std::size_t>(i)];
            Elem wi = F.mul(mu[static_cast<std::size_t>(i)], F.sub(m, mi[static_cast<std::size_t>(i)]));
            if (wi == 0) continue; // this row already agrees with the vote
            const ModuleRow& fi = frows[static_cast<std::size_t>(i)];
            const ModuleRow& gj = grows[static_cast<std::size_t>(j)];
            Elem nu_j = leading_coeff(gj.w.parts[static_cast<std::size_t>(j)]);
            Elem ratio = F.div(wi, nu_j);
            long long c = cgap[static_cast<std::size_t>(i)];
            ModuleRow& fdst = fnew[static_cast<std::size_t>(i)];
            if (c > 0) {
                gnew[static_cast<std::size_t>(j)] = fi;
                fdst.z = detail::vec_sub(F, detail::vec_scale_shift(F, 1, static_cast<int>(c), fi.z),
                                         detail::vec_scale(F, ratio, gj.z));
                fdst.w = detail::vec_sub(F, detail::vec_scale_shift(F, 1, static_cast<int>(c), fi.w),
                                         detail::vec_scale(F, ratio, gj.w));
            } else {
                fdst.z = detail::vec_sub(F, fi.z,
                                         detail::vec_scale_shift(F, ratio, static_cast<int>(-c), gj.z));
                fdst.w = detail::vec_sub(F, fi.w,
                                         detail::vec_scale_shift(F, ratio, static_cast<int>(-c), gj.w));
            }
        }
        frows = std::move(fnew);
        grows = std::move(gnew);

        note_degrees();
        check_conservation();
        if (opt.trace) out.trace.push_back(line.str());
        if (opt.step_hook) opt.step_hook(s, frows, grows);
    }

    emit_codeword();
    return out;
}

} // namespace agdec
