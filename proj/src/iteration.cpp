#include "wavetail/iteration.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace wavetail {

namespace {

const Sym kHalf(Rat(1, 2));
const Sym kOne(Rat(1));
const Sym kTwo(Rat(2));
const Sym kThree(Rat(3));

enum class Regime { None, Far, Near };  // Far = power-range conversion (u<-1, sum<3)

struct Track {
    std::string name;
    std::optional<DecayBound> best;
    Regime regime = Regime::None;
    Sym prev_u;  // u-exponent of the last accepted bound
    bool has_prev = false;
};

// Trade any <u> growth (negative u-exponent) for <v> weight; valid since
// |u| <= v everywhere. Characteristics: p -> s, q and s unchanged.
DecayBound absorb_u_growth(const DecayBound& b, Region region, double sigma) {
    Chars c = chars_of(canon(b), region);
    if (sym_cmp(c.s - c.p, Sym(0), sigma) >= 0) return canon(b);
    Chars w{c.s, c.q, c.s, c.has_q};
    return bound_from_chars(w, region);
}

struct Engine {
    const ProblemSpec& spec;
    Region region;
    double sigma;
    Sym sgm = Sym::sigma();
    Sym d_eta;    // decrement for the eta = 1 boundary
    Sym d_defer;  // decrement for the sum = 3 exterior boundary
    IterationTrace trace;
    int sweep = 0;
    bool noted_q_reading = false;

    Engine(const ProblemSpec& s, Region reg) : spec(s), region(reg), sigma(s.sigma) {
        // boundary decrements stay strictly below the sigma ladder increment,
        // so a weakened rung can never stall the climb
        d_eta = Rat(1, 2) * sym_min(sgm, kHalf, sigma);
        d_defer = Rat(1, 2) * d_eta;
    }

    Sym u_exp(const DecayBound& b) const {
        Chars c = chars_of(canon(b), region);
        return c.s - c.p;
    }

    // Best <v>^-1-form u-exponent implied by the accumulated bound.
    Sym t_form_exp(const DecayBound& cur) const {
        Chars c = chars_of(canon(cur), region);
        if (region == Region::Exterior) return c.s - c.p;
        return sym_min(c.q, c.s, sigma) - kOne;
    }

    // Move <r> weight to <v> weight one unit at a time against the current
    // t-form level. Returns the v-form bound.
    DecayBound interiorize_chain(const DecayBound& rform, const DecayBound& cur, const std::string& track) {
        Sym e_r = rform.e;
        Sym e_t = t_form_exp(cur);
        if (sym_cmp(e_r, e_t, sigma) <= 0)
            return DecayBound(rform.a - kOne, rform.b + kOne, e_r, Region::Interior);
        DecayBound out(Sym(0), kOne, e_t, Region::Interior);
        while (sym_cmp(e_t, e_r, sigma) < 0) {
            Sym delta = sym_min(e_r - e_t, kOne, sigma);
            Sym q = e_t + delta + kHalf;  // u-improvement over the initial 1/2
            DecayBound step_in(kOne, Sym(0), e_t + delta, Region::Interior);
            out = interiorize(step_in, q, delta, sigma);
            std::string note;
            if (!noted_q_reading) {
                note = "q taken as the u-improvement over 1/2";
                noted_q_reading = true;
            }
            trace.add(sweep, track, "interiorize", step_in, out, note);
            e_t = e_t + delta;
        }
        return out;
    }

    // One fundamental-solution application for a source bound in this region.
    std::pair<DecayBound, Regime> convert_source(DecayBound src, bool dt_route,
                                                 const std::vector<DecayBound>& clean,
                                                 const std::string& track) {
        src = canon(src);
        ConvertOpts opts{sigma, spec.sigma_reduced};
        Chars c0 = chars_of(src, region);
        Sym base_p = c0.p;  // before the dt differentiation

        if (dt_route) {
            // The differentiated source carries one extra power: near the cone
            // mu ~ <u> and the u-weighted derivative hypothesis makes that
            // power land on <r>.
            src = DecayBound(base_p + kOne, Sym(0), src.e, region);
        }
        Chars c = chars_of(src, region);
        Sym p = c.p, s = c.s, eta = s - p;

        if (region == Region::Exterior) {
            int cs = sym_cmp(s, kThree, sigma);
            if (cs < 0) {
                DecayBound out = convert_cone_exterior(src, opts);
                trace.add(sweep, track, "cone-exterior", src, out);
                return {out, Regime::Far};
            }
            if (cs == 0) {
                // Boundary sum: discard a little u-decay and ride whatever the
                // cleanly converted tracks achieved this sweep.
                std::optional<DecayBound> target;
                for (const auto& cb : clean) target = target ? join(*target, cb, sigma) : cb;
                if (target) {
                    Chars tc = chars_of(canon(*target), region);
                    bool pure_power = sym_cmp(tc.s, tc.p, sigma) == 0;
                    if (pure_power && sym_cmp(tc.p, kOne, sigma) < 0 &&
                        sym_cmp(tc.p, s - kTwo, sigma) < 0) {
                        DecayBound out(tc.p, Sym(0), Sym(0), Region::Exterior);
                        trace.add(sweep, track, "cone-exterior", src, out,
                                  "sum=3 boundary; deferred to combined pace");
                        return {out, Regime::Far};
                    }
                }
                DecayBound weak(src.a, src.b, src.e - d_defer, Region::Exterior);
                DecayBound out = convert_cone_exterior(weak, opts);
                trace.add(sweep, track, "cone-exterior", weak, out, "sum=3 boundary; weakened u-decay");
                return {out, Regime::Far};
            }
        }

        // Near-cone conversion. Resolve the eta = 1 boundary by discarding
        // d_eta of u-decay, as the sigma-reduction convention allows.
        std::string note;
        if (sym_cmp(eta, kOne, sigma) == 0) {
            src.e = src.e - d_eta;
            eta = eta - d_eta;
            note = "eta=1 boundary; weakened u-decay";
        }

        if (dt_route && region == Region::Interior && sym_cmp(base_p, kTwo, sigma) > 0 &&
            sym_cmp(base_p, kThree, sigma) < 0) {
            DecayBound folded(base_p, Sym(0), src.e, region);
            folded.dt_structured = true;
            folded.cone_supported = true;
            DecayBound out = convert_dt_source(folded, opts);
            trace.add(sweep, track, "dt-source", folded, out, note);
            return {out, Regime::Near};
        }

        // Choose a valid (alpha, beta) split: in the exterior r ~ v and the
        // split is free; in the interior only v-weight may move onto r.
        const Sym kFiveHalf(Rat(5, 2));
        DecayBound shaped = src;
        if (region == Region::Exterior) {
            if (sym_cmp(p, kThree, sigma) >= 0) shaped = DecayBound(kFiveHalf, p - kFiveHalf, src.e, region);
            else shaped = DecayBound(p, Sym(0), src.e, region);
        } else {
            Sym a = src.a, b = src.b;
            if (sym_cmp(a, kThree, sigma) < 0) {
                Sym alpha = sym_min(p, kFiveHalf, sigma);
                if (sym_cmp(alpha, a, sigma) < 0) alpha = a;
                shaped = DecayBound(alpha, p - alpha, src.e, region);
            } else if (sym_cmp(a, kThree, sigma) == 0 && sym_cmp(b, Sym(0), sigma) > 0) {
                shaped = DecayBound(a + Rat(1, 2) * b, Rat(1, 2) * b, src.e, region);
            }
        }
        ConvertOpts waived = opts;
        if (sym_cmp(shaped.a, kThree, sigma) == 0) {
            if (!spec.sigma_reduced) fail(ErrKind::BoundaryCase, "alpha = 3 with no sigma reduction in force");
            waived.alpha3_waiver = true;
            note += note.empty() ? "alpha=3 taken as sigma-perturbed" : "; alpha=3 taken as sigma-perturbed";
        }
        DecayBound out = convert_cone_interior(shaped, waived);
        trace.add(sweep, track, "cone-interior", shaped, out, note);
        return {out, Regime::Near};
    }

    // A track leaving the power-range regime, or crossing from u-growth to
    // u-decay, lands on the clean zero-exponent rung first.
    DecayBound clamp_transition(Track& tr, DecayBound out, Regime used, const Sym& init_u) {
        Sym prev = tr.has_prev ? tr.prev_u : init_u;
        Sym out_u = u_exp(out);
        bool crossing = sym_cmp(prev, Sym(0), sigma) < 0 && sym_cmp(out_u, Sym(0), sigma) > 0;
        bool regime_switch = region == Region::Exterior && tr.regime == Regime::Far &&
                             used == Regime::Near && sym_cmp(out_u, Sym(0), sigma) > 0;
        if (crossing || regime_switch) {
            DecayBound clamped = canon(out);
            clamped.e = Sym(0);
            trace.add(sweep, tr.name, "weaken", out, clamped, "clamped to the zero-exponent rung");
            return clamped;
        }
        return out;
    }

    void accept(Track& tr, const DecayBound& out, Regime used) {
        tr.best = tr.best ? meet(*tr.best, out, sigma) : out;
        tr.prev_u = u_exp(out);
        tr.has_prev = true;
        if (used != Regime::None) tr.regime = used;
    }
};

Sym term_tail_exponent(const NonlinearTerm& t) {
    // u-exponent cap contributed by one term: T+N-2, or T+n for the
    // total-derivative shape (n = N-1).
    if (t.total_derivative) return Sym(Rat(t.tangential + t.factors - 1));
    return Sym(Rat(t.tangential + t.factors - 2));
}

}  // namespace

std::string IterationTrace::to_text() const {
    std::ostringstream os;
    for (const auto& st : steps) {
        os << "step=" << st.sweep << " track=" << st.track << " rule=" << st.rule;
        if (st.in) os << " in=" << st.in->str();
        os << " out=" << st.out.str();
        if (!st.note.empty()) os << " note=\"" << st.note << "\"";
        os << "\n";
    }
    return os.str();
}

std::vector<DecayBound> IterationTrace::combined_sequence() const {
    std::vector<DecayBound> seq;
    for (const auto& st : steps)
        if (st.track == "combined") seq.push_back(st.out);
    return seq;
}

Sym data_decay_kappa(const ProblemSpec& spec) {
    std::optional<Sym> a;
    for (const auto& t : spec.terms) {
        Sym at = term_tail_exponent(t) - kOne;  // T+N-3 resp. T+n-1
        a = a ? sym_min(*a, at, spec.sigma) : at;
    }
    if (!spec.has_background) return a ? *a : Sym::sigma();
    return a ? sym_min(Sym::sigma(), *a, spec.sigma) : Sym::sigma();
}

Sym default_jumpstart_gamma(const ProblemSpec& spec) {
    // (1/2 + min(1, 2 sigma)) / 2, exact in Q + Q sigma.
    if (spec.sigma < 0.5) return Sym(Rat(1, 4), Rat(1));
    return Sym(Rat(3, 4));
}

DecayBound predicted_final_rate(const ProblemSpec& spec) {
    spec.validate();
    std::optional<Sym> e;
    for (const auto& t : spec.terms) {
        Sym et = term_tail_exponent(t);
        e = e ? sym_min(*e, et, spec.sigma) : et;
    }
    Sym lin_cap = kOne + Sym::sigma();
    Sym out;
    if (!e) out = lin_cap;
    else if (spec.has_background) out = sym_min(lin_cap, *e, spec.sigma);
    else out = *e;
    return DecayBound(Sym(0), kOne, out, Region::Global);
}

namespace {

IterateResult iterate_region(const ProblemSpec& spec, Region region) {
    spec.validate();
    Engine eng(spec, region);
    const double sigma = spec.sigma;

    DecayBound cur = restrict_to(DecayBound(Sym(0), kOne, -kHalf, Region::Global), region);
    eng.trace.add(0, "combined", "initial", std::nullopt, cur);
    if (region == Region::Exterior) {
        // |u| <= r outside the cone: trade the u-growth for r-decay.
        DecayBound weak = absorb_u_growth(cur, region, sigma);
        eng.trace.add(0, "combined", "weaken", cur, weak, "u-growth absorbed into r-decay");
    }
    const Sym init_u = eng.u_exp(cur);

    Sym kappa = data_decay_kappa(spec);
    DecayBound data = restrict_to(DecayBound(Sym(0), kOne, kOne + kappa, Region::Global), region);
    eng.trace.add(0, "data", "free-data", std::nullopt, data);

    Track lin1, lin2, ph3;
    lin1.name = "phi1";
    lin2.name = "phi2";
    ph3.name = "phi3";
    const bool lin_on = spec.has_background;
    const bool nl_on = !spec.terms.empty();

    if (spec.needs_jumpstart() && nl_on) {
        Sym gamma = default_jumpstart_gamma(spec);
        auto [ji, je] = rp_jumpstart(gamma, sigma);
        if (region == Region::Interior) {
            Sym q = Rat(1, 2) * gamma;
            DecayBound seeded = interiorize(ji, q, q, sigma);
            eng.trace.add(0, "phi3", "rp-jumpstart", ji, seeded);
            ph3.best = seeded;
            ph3.prev_u = eng.u_exp(seeded);
        } else {
            eng.trace.add(0, "phi3", "rp-jumpstart", std::nullopt, je);
            ph3.best = je;
            ph3.prev_u = eng.u_exp(je);
        }
        ph3.has_prev = true;
    }

    auto join_components = [&]() -> std::optional<DecayBound> {
        DecayBound j = data;
        if (lin_on) {
            if (!lin1.best || !lin2.best) return std::nullopt;
            j = join(j, *lin1.best, sigma);
            j = join(j, *lin2.best, sigma);
        }
        if (nl_on) {
            if (!ph3.best) return std::nullopt;
            j = join(j, *ph3.best, sigma);
        }
        return j;
    };

    DecayBound displayed = cur;
    const int kMaxSweeps = 1000;
    for (eng.sweep = 1; eng.sweep <= kMaxSweeps; ++eng.sweep) {
        auto before = std::make_tuple(lin1.best, lin2.best, ph3.best, displayed);
        std::vector<DecayBound> clean;

        if (lin_on) {
            auto [h1, h2] = source_bound_linear(sigma, cur);
            for (auto* pr : {&lin1, &lin2}) {
                Track& tr = *pr;
                bool dt_route = (pr == &lin2);
                const DecayBound& src = dt_route ? h2 : h1;
                auto [out, used] = eng.convert_source(src, dt_route, clean, tr.name);
                out = eng.clamp_transition(tr, out, used, init_u);
                if (region == Region::Interior) out = eng.interiorize_chain(out, cur, tr.name);
                eng.accept(tr, out, used);
                clean.push_back(out);
            }
        }

        if (nl_on) {
            DecayBound partial = cur;
            if (auto j = join_components()) partial = meet(cur, *j, sigma);
            std::optional<DecayBound> term_join;
            Regime used_any = Regime::None;
            for (const auto& term : spec.terms) {
                int jp = std::min(term.derivs, 3);
                int tp = std::min(term.tangential, jp);
                DecayBound factor = partial;
                // keep the product's u-exponent admissible (>= -1/2)
                Sym eta3 = Rat(term.factors) * eng.u_exp(partial) + Sym(Rat(jp - tp));
                if (sym_cmp(eta3, -kHalf, sigma) < 0) {
                    factor = absorb_u_growth(partial, region, sigma);
                    eng.trace.add(eng.sweep, "phi3", "weaken", partial, factor,
                                  "u-growth traded before forming the product");
                }
                DecayBound h3 = source_bound_nonlinear(term, factor, sigma);
                auto [out, used] = eng.convert_source(h3, false, clean, "phi3");
                used_any = used;
                // Total-derivative terms: integrating the outer derivative by
                // parts over the backward cone buys one more u-power.
                if (term.total_derivative) {
                    DecayBound hsp = scale_bound(term.factors, factor) +
                                     DecayBound(kOne, Sym(0), Sym(0), factor.region) +
                                     scale_bound(std::min(term.tangential, 1),
                                                 DecayBound(Sym(0), kOne, -kOne, factor.region));
                    hsp = canon(hsp);
                    Chars hc = chars_of(hsp, region);
                    if (sym_cmp(hc.s - hc.p, -kHalf, sigma) >= 0) {
                        auto [sp, sp_used] = eng.convert_source(hsp, false, clean, "phi3");
                        (void)sp_used;
                        eng.trace.add(eng.sweep, "phi3", "total-derivative-gain", hsp, sp);
                        out = meet(out, sp, sigma);
                    }
                }
                term_join = term_join ? join(*term_join, out, sigma) : out;
            }
            DecayBound out = *term_join;
            out = eng.clamp_transition(ph3, out, used_any, init_u);
            if (region == Region::Interior) out = eng.interiorize_chain(out, cur, "phi3");
            eng.accept(ph3, out, used_any);
        }

        if (auto combined = join_components()) {
            displayed = restrict_to(*combined, region);
            eng.trace.add(eng.sweep, "combined", "combine", std::nullopt, displayed);
            cur = meet(cur, displayed, sigma);
        }

        auto after = std::make_tuple(lin1.best, lin2.best, ph3.best, displayed);
        auto same = [&](const std::optional<DecayBound>& x, const std::optional<DecayBound>& y) {
            if (!x != !y) return false;
            return !x || x->same_exponents(*y);
        };
        if (eng.sweep > 1 && same(std::get<0>(before), std::get<0>(after)) &&
            same(std::get<1>(before), std::get<1>(after)) && same(std::get<2>(before), std::get<2>(after)) &&
            std::get<3>(before).same_exponents(std::get<3>(after))) {
            return {displayed, std::move(eng.trace), eng.sweep};
        }
    }
    fail(ErrKind::NonConvergence, "no fixed point after 1000 sweeps");
}

}  // namespace

IterateResult iterate_exterior(const ProblemSpec& spec) { return iterate_region(spec, Region::Exterior); }
IterateResult iterate_interior(const ProblemSpec& spec) { return iterate_region(spec, Region::Interior); }

}  // namespace wavetail
