#pragma once

#include "dga/document.hpp"
#include "dga/series.hpp"

namespace dga {

/* ------------------------------------------------------------------------
 * Verification harness for the main identities.  Every check returns a
 * CheckReport whose trace lists both sides of each (in)equality exactly;
 * `inconclusive-window` is a first-class outcome (window exhaustion is never
 * converted into a refutation), and counterexamples carry a replayable
 * serialization of their inputs.
 * ------------------------------------------------------------------------ */

namespace detail {

template <FieldType F>
std::string replay_doc(const ModPtr<F>& M, const ModPtr<F>& P, Window win) {
    std::vector<std::pair<std::string, ModPtr<F>>> mods;
    mods.push_back({"M", M});
    if (P) mods.push_back({"P", P});
    return serialize_document(document_from(M->algebra(), mods, win));
}

inline std::string isa_line(const std::string& name, const GradedSpace::InfSupAmp& isa) {
    return name + ": inf = " + isa.inf.str() + (isa.inf_exact ? "" : " (bound)") +
           ", sup = " + isa.sup.str() + (isa.sup_exact ? "" : " (bound)") +
           ", amp = " + isa.amp.str();
}

}  // namespace detail

/* inf(P ⊗^L M) = inf P + inf M. */
template <FieldType F>
CheckReport check_inf_additivity(const ModPtr<F>& P, const ModPtr<F>& M, Window win) {
    CheckReport rep;
    rep.id = "inf-add";
    auto ip = P->complex().cohomology().h.inf_sup_amp();
    auto im = M->complex().cohomology().h.inf_sup_amp();
    rep.trace.push_back(detail::isa_line("P", ip));
    rep.trace.push_back(detail::isa_line("M", im));
    if (!ip.inf_exact || !im.inf_exact) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("an inf is not certified within its window");
        return rep;
    }
    auto t = derived_inf_sup_amp(P, M, win);
    ExtInt want = ip.inf.plus(im.inf);
    rep.trace.push_back("inf(P (x)L M) = " + t.inf.str() + ", inf P + inf M = " + want.str());
    if (!t.inf_exact && !(t.inf == ExtInt::pos_inf() && want == ExtInt::pos_inf())) {
        rep.status = CheckReport::Status::Inconclusive;
        return rep;
    }
    rep.status =
        t.inf == want ? CheckReport::Status::Verified : CheckReport::Status::Counterexample;
    if (rep.status == CheckReport::Status::Counterexample)
        rep.replay = detail::replay_doc(M, P, win);
    return rep;
}

/* sup(P ⊗^L M) = sup P + pcd M, for compact-certified M and P locally finite
 * bounded above with exact sup. */
template <FieldType F>
CheckReport check_sup_formula(const ModPtr<F>& P, const ModPtr<F>& M, Window win) {
    CheckReport rep;
    rep.id = "sup";
    auto tw = build_tower(M, win.hi);
    if (!(tw.terminated && tw.certified)) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("M carries no compactness certificate in this window");
        return rep;
    }
    auto sp = P->complex().cohomology().h.inf_sup_amp();
    rep.trace.push_back(detail::isa_line("P", sp));
    if (!sp.sup_exact) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("sup P is not certified");
        return rep;
    }
    auto t = derived_inf_sup_amp(P, M, win, &tw);
    auto p = tw.pcd();
    ExtInt want = sp.sup.plus(p.value);
    rep.trace.push_back("sup(P (x)L M) = " + t.sup.str() + ", sup P + pcd M = " + sp.sup.str() +
                        " + " + p.value.str());
    if (!t.sup_exact) {
        rep.status = CheckReport::Status::Inconclusive;
        return rep;
    }
    rep.status =
        t.sup == want ? CheckReport::Status::Verified : CheckReport::Status::Counterexample;
    if (rep.status == CheckReport::Status::Counterexample)
        rep.replay = detail::replay_doc(M, P, win);
    return rep;
}

/* amp(P ⊗^L M) = amp P + pcd M - inf M  and  amp(P ⊗^L M) >= amp P. */
template <FieldType F>
CheckReport check_amplitude(const ModPtr<F>& P, const ModPtr<F>& M, Window win) {
    CheckReport rep;
    rep.id = "amp";
    auto tw = build_tower(M, win.hi);
    if (!(tw.terminated && tw.certified) || tw.base_is_zero) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("M is zero or carries no compactness certificate");
        return rep;
    }
    auto pisa = P->complex().cohomology().h.inf_sup_amp();
    auto misa = M->complex().cohomology().h.inf_sup_amp();
    rep.trace.push_back(detail::isa_line("P", pisa));
    if (!pisa.amp_exact() || !pisa.amp.finite() || !misa.inf_exact) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("amp P (or inf M) is not certified finite");
        return rep;
    }
    auto t = derived_inf_sup_amp(P, M, win, &tw);
    if (!(t.inf_exact && t.sup_exact)) {
        rep.status = CheckReport::Status::Inconclusive;
        return rep;
    }
    auto p = tw.pcd();
    ExtInt want = pisa.amp.plus(p.value).minus(misa.inf);
    rep.trace.push_back("amp(P (x)L M) = " + t.amp.str() + ", amp P + pcd M - inf M = " +
                        pisa.amp.str() + " + " + p.value.str() + " - " + misa.inf.str());
    bool eq = t.amp == want;
    bool geq = t.amp >= pisa.amp;
    rep.trace.push_back(std::string("amplitude inequality amp(P (x)L M) >= amp P: ") +
                        (geq ? "holds" : "fails"));
    rep.status = (eq && geq) ? CheckReport::Status::Verified : CheckReport::Status::Counterexample;
    if (rep.status == CheckReport::Status::Counterexample)
        rep.replay = detail::replay_doc(M, P, win);
    return rep;
}

/* pcd M = sup M + d with d = pcd P - sup P, both compact-certified with exact
 * finite sup (Auslander-Buchsbaum shape; P = R gives pcd M = sup M - sup R). */
template <FieldType F>
CheckReport check_ab(const ModPtr<F>& P, const ModPtr<F>& M, Window win) {
    CheckReport rep;
    rep.id = "ab";
    auto twp = build_tower(P, win.hi);
    auto twm = build_tower(M, win.hi);
    if (!(twp.terminated && twp.certified) || !(twm.terminated && twm.certified)) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("a side carries no compactness certificate");
        return rep;
    }
    auto sp = P->complex().cohomology().h.inf_sup_amp();
    auto sm = M->complex().cohomology().h.inf_sup_amp();
    if (!sp.sup_exact || !sm.sup_exact || !sp.sup.finite()) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("a sup is not certified finite");
        return rep;
    }
    ExtInt d = twp.pcd().value.minus(sp.sup);
    ExtInt want = sm.sup.plus(d);
    ExtInt got = twm.pcd().value;
    rep.trace.push_back("d = pcd P - sup P = " + twp.pcd().value.str() + " - " + sp.sup.str() +
                        " = " + d.str());
    rep.trace.push_back("pcd M = " + got.str() + ", sup M + d = " + sm.sup.str() + " + " + d.str());
    rep.status = got == want ? CheckReport::Status::Verified : CheckReport::Status::Counterexample;
    if (rep.status == CheckReport::Status::Counterexample)
        rep.replay = detail::replay_doc(M, P, win);
    return rep;
}

/* Positions j with seq(j) != 0, seq(j+1..j+g) = 0, seq(j+g+1) != 0, with all
 * indices inside the trusted range. */
inline std::vector<int> find_gaps(const std::map<int, int>& seq, int g, Window trusted) {
    std::vector<int> out;
    if (g < 1) return out;
    for (auto [j, v] : seq) {
        if (v == 0) continue;
        bool ok = true;
        for (int l = j + 1; l <= j + g && ok; ++l) {
            if (!trusted.known(l)) ok = false;
            auto it = seq.find(l);
            if (it != seq.end() && it->second != 0) ok = false;
        }
        if (!ok || !trusted.known(j + g + 1)) continue;
        auto it = seq.find(j + g + 1);
        if (it != seq.end() && it->second != 0) out.push_back(j);
    }
    return out;
}

/* Gap theorem: a gap of length g >= amp P in the Betti numbers of M forces
 * amp(P ⊗^L M) >= g+1.  With P = R this is the Betti-gap corollary
 * amp M >= g+1 (precondition g >= sup R). */
template <FieldType F>
CheckReport check_betti_gap(const ModPtr<F>& M, const ModPtr<F>& P, int g, Window win) {
    CheckReport rep;
    rep.id = "betti-gap";
    auto pisa = P->complex().cohomology().h.inf_sup_amp();
    if (!pisa.amp_exact() || !pisa.amp.finite()) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("amp P is not certified finite");
        return rep;
    }
    if (ExtInt(g) < pisa.amp) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("g = " + std::to_string(g) + " < amp P = " + pisa.amp.str() +
                            "; theorem does not apply");
        return rep;
    }
    auto b = betti_numbers(M, win);
    auto gaps = find_gaps(b.beta, g, b.window);
    rep.trace.push_back("beta(M) = " + WindowSeries::from_map(b.beta, b.window).str());
    if (gaps.empty()) {
        rep.status = CheckReport::Status::Verified;
        rep.trace.push_back("no gap of length " + std::to_string(g) + "; vacuously verified");
        return rep;
    }
    auto t = derived_inf_sup_amp(P, M, win, &b.tower);
    // amp's at-least certainty suffices for the >= assertion provided inf is exact
    if (!t.inf_exact) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("inf(P (x)L M) not certified; cannot bound amp from below");
        return rep;
    }
    rep.status = CheckReport::Status::Verified;
    for (int j : gaps) {
        bool ok = t.amp >= ExtInt(g + 1);
        rep.trace.push_back("gap at j = " + std::to_string(j) + ": amp(P (x)L M) = " + t.amp.str() +
                            (t.sup_exact ? "" : " (at least)") + " vs g+1 = " + std::to_string(g + 1));
        if (!ok) {
            if (!t.sup_exact) {
                rep.status = CheckReport::Status::Inconclusive;
                rep.trace.push_back("window too small to witness amp >= g+1");
            } else {
                rep.status = CheckReport::Status::Counterexample;
                rep.replay = detail::replay_doc(M, P, win);
                return rep;
            }
        }
    }
    return rep;
}

/* Bass-gap corollary: with sup R < ∞ and M locally finite bounded above, a
 * gap of length g >= sup R in μ(M) forces amp M >= g+1. */
template <FieldType F>
CheckReport check_bass_gap(const ModPtr<F>& M, int g, Window win) {
    CheckReport rep;
    rep.id = "bass-gap";
    const auto& A = M->algebra();
    auto ra = A->complex().cohomology().h.inf_sup_amp();
    if (!ra.sup_exact || !ra.sup.finite()) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("sup R is not certified finite");
        return rep;
    }
    if (ExtInt(g) < ra.sup) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("g < sup R; corollary does not apply");
        return rep;
    }
    GradedSpace mu = bass_numbers(M, win);
    std::map<int, int> seq;
    for (auto [j, v] : mu.support()) seq[j] = v;
    auto gaps = find_gaps(seq, g, mu.window());
    rep.trace.push_back("mu(M) = " + WindowSeries::from_dims(mu).str());
    if (gaps.empty()) {
        rep.status = CheckReport::Status::Verified;
        rep.trace.push_back("no gap of length " + std::to_string(g) + "; vacuously verified");
        return rep;
    }
    auto misa = M->complex().cohomology().h.inf_sup_amp();
    rep.status = CheckReport::Status::Verified;
    for (int j : gaps) {
        bool ok = misa.amp >= ExtInt(g + 1);
        rep.trace.push_back("gap at j = " + std::to_string(j) + ": amp M = " + misa.amp.str() +
                            " vs g+1 = " + std::to_string(g + 1));
        if (!ok) {
            if (!misa.amp_exact()) {
                rep.status = CheckReport::Status::Inconclusive;
            } else {
                rep.status = CheckReport::Status::Counterexample;
                rep.replay = detail::replay_doc(M, ModPtr<F>{}, win);
                return rep;
            }
        }
    }
    return rep;
}

/* Converse remark: amp M <= sup R (both exact) forbids Betti gaps of length
 * >= sup R within the trusted window. */
template <FieldType F>
CheckReport check_remark_converse(const ModPtr<F>& M, Window win) {
    CheckReport rep;
    rep.id = "gap-converse";
    const auto& A = M->algebra();
    auto ra = A->complex().cohomology().h.inf_sup_amp();
    auto misa = M->complex().cohomology().h.inf_sup_amp();
    if (!ra.sup_exact || !ra.sup.finite() || !misa.amp_exact()) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("sup R or amp M not certified");
        return rep;
    }
    if (!(misa.amp <= ra.sup)) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("amp M > sup R; remark does not apply");
        return rep;
    }
    int s = ra.sup.finite() ? ra.sup.value() : 0;
    auto b = betti_numbers(M, win);
    rep.trace.push_back("beta(M) = " + WindowSeries::from_map(b.beta, b.window).str());
    // a gap of length >= s exists iff consecutive nonzero entries differ by > s
    rep.status = CheckReport::Status::Verified;
    int prev = INT_MIN;
    for (auto [j, v] : b.beta) {
        if (v == 0) continue;
        if (prev != INT_MIN && j - prev - 1 >= s) {
            bool trusted = true;
            for (int l = prev + 1; l <= j && trusted; ++l) trusted = b.window.known(l);
            if (trusted) {
                rep.status = CheckReport::Status::Counterexample;
                rep.trace.push_back("forbidden gap between " + std::to_string(prev) + " and " +
                                    std::to_string(j));
                rep.replay = detail::replay_doc(M, ModPtr<F>{}, win);
                return rep;
            }
        }
        prev = j;
    }
    rep.trace.push_back("no gap of length >= sup R = " + std::to_string(s));
    return rep;
}

}  // namespace dga
