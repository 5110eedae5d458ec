#include <catch2/catch_amalgamated.hpp>

#include <agdec/analysis.hpp>
#include <agdec/decoder.hpp>
#include <agdec/hermitian.hpp>
#include <agdec/oracle.hpp>

using namespace agdec;

namespace {

// weight of the syndrome differential of v, recomputed independently
long long syndrome_weight(const CodeData& code, const std::vector<Elem>& v) {
    DifferentialVec hv = detail::dvec_zero(code.gamma);
    for (int r = 0; r < code.n; ++r)
        if (v[static_cast<std::size_t>(r)] != 0)
            hv = detail::vec_add(code.field, hv,
                                 detail::vec_scale(code.field, v[static_cast<std::size_t>(r)],
                                                   code.h[static_cast<std::size_t>(r)]));
    REQUIRE(!hv.is_zero());
    return code.delta_lead(hv).weight;
}

} // namespace

TEST_CASE("round trips on the reference code") {
    CodeData code = build_hermitian(3, -1, 18);
    const long long tau = nu_profile(code).tau;
    REQUIRE(tau == 6);

    SECTION("error-free words take the syndrome shortcut") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            SplitMix64 rng(seed);
            Message msg = random_message(code, rng);
            std::vector<Elem> cw = encode(code, msg);
            DecodeResult dr = decode(code, cw);
            REQUIRE(dr.status == DecodeStatus::success);
            CHECK(dr.iterations == 0);
            CHECK(dr.codeword == cw);
            CHECK(Message(dr.msg.begin(), dr.msg.end()) == msg);
        }
    }

    SECTION("error-free words terminate on the first pass without the shortcut") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            SplitMix64 rng(seed);
            Message msg = random_message(code, rng);
            std::vector<Elem> cw = encode(code, msg);
            DecodeOptions opt;
            opt.use_shortcut = false;
            DecodeResult dr = decode(code, cw, opt);
            REQUIRE(dr.status == DecodeStatus::success);
            if (!cw.empty() &&
                std::any_of(cw.begin(), cw.end(), [](Elem e) { return e != 0; }))
                CHECK(dr.iterations == 1); // degree test fires immediately
            CHECK(dr.codeword == cw);
        }
    }

    SECTION("corrupted words decode exactly up to the radius") {
        for (std::uint64_t seed = 100; seed < 160; ++seed) {
            TrialResult t = run_trial(code, seed, static_cast<int>(tau));
            INFO("seed " << seed << " weight " << t.wt);
            CHECK(t.outcome == "exact");
            CHECK(t.iterations <= code.n + 2 * code.genus);
            CHECK(t.max_poly_deg <= 1 + (code.n + 4 * code.genus - 2) / code.gamma);
        }
    }

    SECTION("voting-only route agrees with the accelerated route") {
        DecodeOptions plain;
        plain.use_qcheck = false;
        plain.use_shortcut = false;
        for (std::uint64_t seed = 300; seed < 330; ++seed) {
            SplitMix64 rng(seed);
            Message msg = random_message(code, rng);
            std::vector<Elem> cw = encode(code, msg);
            std::vector<Elem> recv = cw;
            add_errors(code.field, rng, recv, static_cast<int>(rng.below(tau + 1)));
            DecodeResult fast = decode(code, recv);
            DecodeResult slow = decode(code, recv, plain);
            REQUIRE(fast.status == DecodeStatus::success);
            REQUIRE(slow.status == DecodeStatus::success);
            CHECK(fast.codeword == cw);
            CHECK(slow.codeword == cw);
            CHECK(fast.msg == slow.msg);
            CHECK(slow.conservation_ok);
        }
    }

    SECTION("early termination fires by its guaranteed weight") {
        for (int t = 0; t <= 6; ++t) {
            long long sq = s_q(code, t);
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                SplitMix64 rng(7000 + 100 * static_cast<std::uint64_t>(t) + seed);
                Message msg = random_message(code, rng);
                std::vector<Elem> cw = encode(code, msg);
                std::vector<Elem> recv = cw;
                add_errors(code.field, rng, recv, t);
                if (recv == cw) continue; // weight zero: shortcut territory
                long long N = syndrome_weight(code, recv);
                if (N < sq) continue; // loop starts below the guarantee window
                DecodeResult dr = decode(code, recv);
                REQUIRE(dr.status == DecodeStatus::success);
                CHECK(dr.codeword == cw);
                // fired at weight N - iterations + 1, never below s_q(t)
                CHECK(dr.iterations <= N - sq + 1);
            }
        }
    }

    SECTION("beyond the radius the decoder stays well-behaved") {
        int failures = 0;
        for (std::uint64_t seed = 900; seed < 915; ++seed) {
            SplitMix64 rng(seed);
            Message msg = random_message(code, rng);
            std::vector<Elem> cw = encode(code, msg);
            std::vector<Elem> recv = cw;
            add_errors(code.field, rng, recv, 10);
            DecodeResult dr = decode(code, recv);
            CHECK(dr.conservation_ok);
            if (dr.status == DecodeStatus::failure) {
                ++failures;
                CHECK(!dr.failure_reason.empty());
                CHECK(dr.codeword.empty());
            }
        }
        CHECK(failures > 0); // most overload patterns must be detected
    }

    SECTION("trace records one line per pass") {
        SplitMix64 rng(42);
        Message msg = random_message(code, rng);
        std::vector<Elem> cw = encode(code, msg);
        std::vector<Elem> recv = cw;
        add_errors(code.field, rng, recv, 4);
        DecodeOptions opt;
        opt.trace = true;
        DecodeResult dr = decode(code, recv, opt);
        REQUIRE(dr.status == DecodeStatus::success);
        REQUIRE(dr.trace.size() == static_cast<std::size_t>(dr.iterations));
        CHECK(dr.trace.front().rfind("s=", 0) == 0);
        bool fired = false;
        for (const std::string& ln : dr.trace)
            if (ln.find("action=qfire") != std::string::npos) fired = true;
        CHECK(fired);

        DecodeResult shortcut = decode(code, cw, opt);
        REQUIRE(shortcut.trace.size() == 1);
        CHECK(shortcut.trace.front().rfind("shortcut:", 0) == 0);
    }

    SECTION("received word must have length n") {
        CHECK_THROWS_AS(decode(code, std::vector<Elem>(5, 0)), std::invalid_argument);
    }

    SECTION("the zero word decodes to the zero message") {
        DecodeResult dr = decode(code, std::vector<Elem>(static_cast<std::size_t>(code.n), 0));
        REQUIRE(dr.status == DecodeStatus::success);
        for (const auto& [s, m] : dr.msg) CHECK(m == 0);
        CHECK(dr.codeword == std::vector<Elem>(static_cast<std::size_t>(code.n), 0));
    }
}

TEST_CASE("round trips on other codes") {
    SECTION("small code") {
        CodeData code = build_hermitian(2, 0, 5);
        long long tau = nu_profile(code).tau;
        REQUIRE(tau == 2);
        for (std::uint64_t seed = 1; seed <= 40; ++seed) {
            TrialResult t = run_trial(code, seed, static_cast<int>(tau));
            INFO("seed " << seed << " weight " << t.wt);
            CHECK(t.outcome == "exact");
        }
    }
    SECTION("one-point code") {
        CodeData code = build_hermitian(3, 0, 12);
        long long tau = nu_profile(code).tau;
        for (std::uint64_t seed = 1; seed <= 25; ++seed) {
            TrialResult t = run_trial(code, seed, static_cast<int>(tau));
            INFO("seed " << seed << " weight " << t.wt);
            CHECK(t.outcome == "exact");
        }
    }
}

TEST_CASE("working basis stays a Groebner basis throughout") {
    CodeData code = build_hermitian(2, 0, 5);

    // any polynomial combination of the basis rows must have its leading
    // term divisible by the leading term of the row of the same kind and
    // class; this pins the leading-term structure after every update
    auto check_containment = [&](long long s_next, const std::vector<ModuleRow>& frows,
                                 const std::vector<ModuleRow>& grows, SplitMix64& rng) {
        const Field& F = code.field;
        std::vector<const ModuleRow*> rows;
        for (const auto& r : frows) rows.push_back(&r);
        for (const auto& r : grows) rows.push_back(&r);
        for (int trial = 0; trial < 50; ++trial) {
            ModuleRow combo{detail::fvec_zero(code.gamma), detail::dvec_zero(code.gamma)};
            for (const ModuleRow* r : rows) {
                Poly f;
                f.c = {static_cast<Elem>(rng.below(F.q())), static_cast<Elem>(rng.below(F.q())),
                       static_cast<Elem>(rng.below(F.q()))};
                f.trim();
                if (f.is_zero()) continue;
                for (int c = 0; c < code.gamma; ++c) {
                    combo.z.parts[static_cast<std::size_t>(c)] =
                        poly_add(F, combo.z.parts[static_cast<std::size_t>(c)],
                                 poly_mul(F, f, r->z.parts[static_cast<std::size_t>(c)]));
                    combo.w.parts[static_cast<std::size_t>(c)] =
                        poly_add(F, combo.w.parts[static_cast<std::size_t>(c)],
                                 poly_mul(F, f, r->w.parts[static_cast<std::size_t>(c)]));
                }
            }
            bool zzero = combo.z.is_zero(), wzero = combo.w.is_zero();
            if (zzero && wzero) continue;
            // leading term under the order for the next weight: z-monomials
            // weigh rho + s and win ties against plain differentials
            bool z_leads;
            LeadTerm zl, wl;
            if (!zzero) zl = code.rho_lead(combo.z);
            if (!wzero) wl = code.delta_lead(combo.w);
            if (zzero)
                z_leads = false;
            else if (wzero)
                z_leads = true;
            else
                z_leads = zl.weight + s_next >= wl.weight;
            if (z_leads) {
                const Poly& diag =
                    frows[static_cast<std::size_t>(zl.cls)].z.parts[static_cast<std::size_t>(zl.cls)];
                REQUIRE(!diag.is_zero());
                CHECK(zl.deg >= diag.deg());
            } else {
                const Poly& diag =
                    grows[static_cast<std::size_t>(wl.cls)].w.parts[static_cast<std::size_t>(wl.cls)];
                REQUIRE(!diag.is_zero());
                CHECK(wl.deg >= diag.deg());
            }
        }
    };

    SplitMix64 combo_rng(2026);
    int steps = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SplitMix64 rng(seed);
        Message msg = random_message(code, rng);
        std::vector<Elem> cw = encode(code, msg);
        std::vector<Elem> recv = cw;
        add_errors(code.field, rng, recv, static_cast<int>(rng.below(3)));
        DecodeOptions opt;
        opt.use_shortcut = false;
        opt.use_qcheck = false; // run the full descent so every weight is hooked
        opt.step_hook = [&](long long s, const std::vector<ModuleRow>& frows,
                            const std::vector<ModuleRow>& grows) {
            ++steps;
            check_containment(s - 1, frows, grows, combo_rng);
        };
        DecodeResult dr = decode(code, recv, opt);
        REQUIRE(dr.status == DecodeStatus::success);
        CHECK(dr.codeword == cw);
        CHECK(dr.conservation_ok);
    }
    CHECK(steps > 20);
}
