#pragma once

#include "dga/report.hpp"
#include "dga/tower.hpp"

namespace dga {

/* Formal series with non-negative integer coefficients supported on a degree
 * window; outside the window coefficients are unknown unless certified zero. */
struct WindowSeries {
    std::map<int, long long> coeffs;  // nonzero entries only
    Window win;

    WindowSeries() : win(0, -1, true, true) {}
    explicit WindowSeries(Window w) : win(w) {}

    static WindowSeries from_dims(const GradedSpace& g) {
        WindowSeries s(g.window());
        for (auto [j, d] : g.support()) s.coeffs[j] = d;
        return s;
    }
    static WindowSeries from_map(const std::map<int, int>& m, Window w) {
        WindowSeries s(w);
        for (auto [j, d] : m)
            if (d != 0) s.coeffs[j] = d;
        return s;
    }

    bool known(int j) const { return win.known(j); }
    std::optional<long long> at(int j) const {
        if (!known(j)) return std::nullopt;
        auto it = coeffs.find(j);
        return it == coeffs.end() ? 0 : it->second;
    }

    bool is_zero_on_window() const { return coeffs.empty(); }

    WindowSeries shifted_t(int j) const {  // multiply by t^j
        WindowSeries r(Window(win.lo + j, win.hi + j, win.zero_below, win.zero_above));
        for (auto [l, c] : coeffs) r.coeffs[l + j] = c;
        return r;
    }

    WindowSeries plus(const WindowSeries& o) const {
        Window w = Window::from_known(ext_max(win.known_lo(), o.win.known_lo()),
                                      ext_min(win.known_hi(), o.win.known_hi()),
                                      std::min(win.lo, o.win.lo), std::max(win.hi, o.win.hi));
        WindowSeries r(w);
        for (int j = w.lo; j <= w.hi; ++j) {
            long long c = at(j).value_or(0) + o.at(j).value_or(0);
            if (c != 0) r.coeffs[j] = c;
        }
        return r;
    }

    /* (Σ_d poly_d t^d) · this, computed only where every contributing
     * coefficient is trusted; the window shrinks by the polynomial's spread. */
    WindowSeries poly_mul(const std::map<int, long long>& poly) const {
        if (poly.empty()) {
            WindowSeries r;
            return r;  // zero series, known everywhere
        }
        int dmin = poly.begin()->first, dmax = poly.rbegin()->first;
        ExtInt klo = win.known_lo().is_neg_inf() ? ExtInt::neg_inf() : ExtInt(win.lo + dmax);
        ExtInt khi = win.known_hi().is_pos_inf() ? ExtInt::pos_inf() : ExtInt(win.hi + dmin);
        Window w = Window::from_known(klo, khi, win.lo + dmin, win.hi + dmax);
        WindowSeries r(w);
        for (int n = w.lo; n <= w.hi; ++n) {
            long long c = 0;
            for (auto [d, pc] : poly) c += pc * at(n - d).value_or(0);
            if (c != 0) r.coeffs[n] = c;
        }
        return r;
    }

    struct Degree {
        ExtInt value = ExtInt::neg_inf();
        bool exact = false;
    };
    Degree degree() const {
        Degree d;
        if (!coeffs.empty()) d.value = ExtInt(coeffs.rbegin()->first);
        d.exact = win.zero_above;
        return d;
    }

    std::string str() const {
        if (coeffs.empty()) return "0";
        std::string s;
        for (auto [j, c] : coeffs) {
            if (!s.empty()) s += " + ";
            s += std::to_string(c) + "*t^" + std::to_string(j);
        }
        return s;
    }
};

struct TermwiseVerdict {
    enum class Result { True, False, Inconclusive } result = Result::Inconclusive;
    int first_violation = 0;  // degree, valid when result == False
    int checked_lo = 0, checked_hi = -1;
};

/* a ≼ b termwise on the common known window. */
inline TermwiseVerdict termwise_leq(const WindowSeries& a, const WindowSeries& b) {
    TermwiseVerdict v;
    ExtInt klo = ext_max(a.win.known_lo(), b.win.known_lo());
    ExtInt khi = ext_min(a.win.known_hi(), b.win.known_hi());
    if (klo > khi) return v;  // disjoint knowledge: inconclusive
    int lo = klo.is_neg_inf() ? std::min(a.win.lo, b.win.lo) : klo.value();
    int hi = khi.is_pos_inf() ? std::max(a.win.hi, b.win.hi) : khi.value();
    if (klo.is_neg_inf() && khi.is_pos_inf()) {
        // fully certified on both sides: compare supports only
        lo = std::min(a.win.lo, b.win.lo);
        hi = std::max(a.win.hi, b.win.hi);
    }
    v.checked_lo = lo;
    v.checked_hi = hi;
    for (int j = lo; j <= hi; ++j) {
        if (a.at(j).value_or(0) > b.at(j).value_or(0)) {
            v.result = TermwiseVerdict::Result::False;
            v.first_violation = j;
            return v;
        }
    }
    v.result = TermwiseVerdict::Result::True;
    return v;
}

/* f_M(t) = Σ_ℓ dim_k H^ℓ(P ⊗^L_R M) t^ℓ on the sound window; with a
 * termination certificate for M the finite semifree model gives the exact
 * (fully certified) series. */
template <FieldType F>
WindowSeries f_series(const ModPtr<F>& P, const ModPtr<F>& M, Window win,
                      const Tower<F>* certificate = nullptr) {
    if (certificate && certificate->terminated && certificate->certified) {
        if (certificate->base_is_zero) return WindowSeries{};
        auto h = tensor_with_resolution(P, certificate->resolution).cohomology().h;
        return WindowSeries::from_dims(h);
    }
    return WindowSeries::from_dims(derived_tensor_cohomology(P, M, win));
}

/* f_R(t) = Σ_ℓ dim_k H^ℓ(P) t^ℓ. */
template <FieldType F>
WindowSeries f_r_series(const ModPtr<F>& P) {
    return WindowSeries::from_dims(P->complex().cohomology().h);
}

namespace detail {
inline void trace_series(CheckReport& rep, const std::string& name, const WindowSeries& s) {
    rep.trace.push_back(name + " = " + s.str() + "  on " + s.win.str());
}
inline CheckReport::Status status_of(const TermwiseVerdict& v) {
    switch (v.result) {
        case TermwiseVerdict::Result::True: return CheckReport::Status::Verified;
        case TermwiseVerdict::Result::False: return CheckReport::Status::Counterexample;
        default: return CheckReport::Status::Inconclusive;
    }
}
}  // namespace detail

/* Tower inequalities:
 *  (i)  f_M ≼ (β^i t^i + ... + β^u t^u) f_R + f_{M⟨u+1⟩}
 *  (ii) f_{M⟨u+1⟩} ≼ f_M + t^{-1}(β^i t^i + ... + β^u t^u) f_R   */
template <FieldType F>
CheckReport check_tower_inequalities(const ModPtr<F>& M, const ModPtr<F>& P, int u, Window win) {
    CheckReport rep;
    rep.id = "series-tower";
    auto tw = build_tower(M, u);
    if (tw.base_is_zero) {
        rep.status = CheckReport::Status::Verified;
        rep.trace.push_back("M is zero; both sides vanish");
        return rep;
    }
    if (tw.window_exhausted && tw.last_level < u) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("window exhausted at level " + std::to_string(tw.last_level));
        return rep;
    }
    std::map<int, long long> beta;
    for (auto [l, b] : tw.betti()) beta[l] = b;
    WindowSeries fM = f_series(P, M, win, &tw);
    WindowSeries fR = f_r_series(P);
    WindowSeries fTop = f_series(P, tw.top, win);
    WindowSeries rhs1 = fR.poly_mul(beta).plus(fTop);
    auto v1 = termwise_leq(fM, rhs1);
    WindowSeries rhs2 = fM.plus(fR.poly_mul(beta).shifted_t(-1));
    auto v2 = termwise_leq(fTop, rhs2);
    detail::trace_series(rep, "f_M", fM);
    detail::trace_series(rep, "f_R", fR);
    detail::trace_series(rep, "f_top", fTop);
    detail::trace_series(rep, "rhs(i)", rhs1);
    detail::trace_series(rep, "rhs(ii)", rhs2);
    rep.trace.push_back("checked (i) on [" + std::to_string(v1.checked_lo) + ", " +
                        std::to_string(v1.checked_hi) + "], (ii) on [" +
                        std::to_string(v2.checked_lo) + ", " + std::to_string(v2.checked_hi) + "]");
    auto s1 = detail::status_of(v1), s2 = detail::status_of(v2);
    if (s1 == CheckReport::Status::Counterexample || s2 == CheckReport::Status::Counterexample) {
        rep.status = CheckReport::Status::Counterexample;
        int viol = s1 == CheckReport::Status::Counterexample ? v1.first_violation : v2.first_violation;
        rep.trace.push_back("violated at degree " + std::to_string(viol));
    } else if (s1 == CheckReport::Status::Verified && s2 == CheckReport::Status::Verified) {
        rep.status = CheckReport::Status::Verified;
    }
    return rep;
}

/* Compact inequalities (terminated tower, i = inf, p = pcd, β^p != 0):
 *  (i)  f_M ≼ (β^i t^i + ... + β^p t^p) f_R
 *  (ii) β^p t^p f_R ≼ f_M + t^{-1}(β^i t^i + ... + β^{p-1} t^{p-1}) f_R  */
template <FieldType F>
CheckReport check_compact_inequalities(const ModPtr<F>& M, const ModPtr<F>& P, Window win) {
    CheckReport rep;
    rep.id = "series-compact";
    auto tw = build_tower(M, win.hi);
    if (tw.base_is_zero) {
        rep.status = CheckReport::Status::Verified;
        rep.trace.push_back("M is zero; all series vanish");
        return rep;
    }
    if (!(tw.terminated && tw.certified)) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("no termination certificate within the window");
        return rep;
    }
    std::map<int, long long> beta;
    for (auto [l, b] : tw.betti()) beta[l] = b;
    if (beta.empty()) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("terminated tower with no nonzero Betti numbers");
        return rep;
    }
    int p = beta.rbegin()->first;
    long long bp = beta.rbegin()->second;
    rep.trace.push_back("p = " + std::to_string(p) + ", beta^p = " + std::to_string(bp));
    WindowSeries fM = f_series(P, M, win, &tw);
    WindowSeries fR = f_r_series(P);
    auto v1 = termwise_leq(fM, fR.poly_mul(beta));
    std::map<int, long long> low = beta;
    low.erase(p);
    std::map<int, long long> toppoly{{p, bp}};
    auto v2 = termwise_leq(fR.poly_mul(toppoly), fM.plus(fR.poly_mul(low).shifted_t(-1)));
    detail::trace_series(rep, "f_M", fM);
    detail::trace_series(rep, "f_R", fR);
    detail::trace_series(rep, "beta poly * f_R", fR.poly_mul(beta));
    auto s1 = detail::status_of(v1), s2 = detail::status_of(v2);
    if (s1 == CheckReport::Status::Counterexample || s2 == CheckReport::Status::Counterexample)
        rep.status = CheckReport::Status::Counterexample;
    else if (s1 == CheckReport::Status::Verified && s2 == CheckReport::Status::Verified)
        rep.status = CheckReport::Status::Verified;
    else
        rep.status = CheckReport::Status::Inconclusive;
    return rep;
}

/* Loop-space model: β^j_A(k) as a series, computed by the tower and
 * cross-checked against the bar construction on every call. */
template <FieldType F>
WindowSeries loop_betti_series(const AlgPtr<F>& A, Window win) {
    auto k = trivial_k_module(A, Side::Left);
    auto b = betti_numbers(k, win);
    auto viabar = betti_via_bar(k, win);
    for (int j = win.lo; j <= win.hi; ++j) {
        if (!b.window.known(j) || !viabar.known(j)) continue;
        int tower_val = b.beta.count(j) ? b.beta.at(j) : 0;
        if (tower_val != viabar.dim(j).value_or(0))
            throw Error("loop series: tower and bar disagree at degree " + std::to_string(j));
    }
    return WindowSeries::from_map(b.beta, b.window);
}

/* deg f_M = deg f_R + pcd M, for compact-certified M and P with exact sup. */
template <FieldType F>
CheckReport check_degree_identity(const ModPtr<F>& M, const ModPtr<F>& P, Window win) {
    CheckReport rep;
    rep.id = "series-degree";
    auto tw = build_tower(M, win.hi);
    if (!(tw.terminated && tw.certified)) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("M carries no compactness certificate");
        return rep;
    }
    WindowSeries fR = f_r_series(P);
    auto dR = fR.degree();
    if (!dR.exact) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("deg f_R not certified (P unbounded above in window)");
        return rep;
    }
    WindowSeries fM = f_series(P, M, win, &tw);
    auto dM = fM.degree();
    auto p = tw.pcd();
    ExtInt want = dR.value.plus(p.value);
    rep.trace.push_back("deg f_M = " + dM.value.str());
    rep.trace.push_back("deg f_R = " + dR.value.str() + ", pcd M = " + p.value.str());
    if (!dM.exact) {
        rep.status = CheckReport::Status::Inconclusive;
        rep.trace.push_back("deg f_M not certified");
        return rep;
    }
    rep.status = dM.value == want ? CheckReport::Status::Verified : CheckReport::Status::Counterexample;
    return rep;
}

}  // namespace dga
