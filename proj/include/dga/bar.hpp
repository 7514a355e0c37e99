#pragma once

#include <algorithm>

#include "dga/dgbuild.hpp"

namespace dga {

/* Two-sided normalized bar complex B(P, A, M) = ⊕_m P ⊗ (sĀ)^{⊗m} ⊗ M for a
 * right module P and a left module M, Ā = A^{>=2}.  A word
 * p[a_1|...|a_m]x sits in cohomological degree |p| + Σ(|a_i|-1) + |x|.
 *
 * With ε_i = |p| + Σ_{t<=i}(|a_t|-1), the differential is
 *   d = dp[...]x  -  Σ_i (-1)^{ε_{i-1}} p[..da_i..]x  +  (-1)^{ε_m} p[...]dx
 *     + (-1)^{ε_0}(p.a_1)[a_2..]x + Σ_i (-1)^{ε_i} p[..a_i a_{i+1}..]x
 *     - (-1)^{ε_{m-1}} p[..a_{m-1}](a_m.x),
 * the unique sign system (up to global convention) for which d^2 = 0; d^2 is
 * nevertheless verified on every constructed instance.
 *
 * The sound window accounts for the truncation of A, P and M:
 *   hi <= lo(P) + lo(M) + (hi(A) - 1)   unless A is certified zero above,
 *   hi <= hi(P) + lo(M)                 unless P is certified zero above,
 *   hi <= hi(M) + lo(P)                 unless M is certified zero above,
 * and every degree below lo(P) + lo(M) is certified zero. */
template <FieldType F>
class BarComplex {
public:
    struct Word {
        int pdeg;
        int pidx;
        std::vector<std::pair<int, int>> letters;  // (degree, basis index)
        int xdeg;
        int xidx;
        friend auto operator<=>(const Word&, const Word&) = default;
    };

    BarComplex(ModPtr<F> P, ModPtr<F> M, Window requested)
        : P_(std::move(P)), M_(std::move(M)), cx_(make(requested)) {
        cx_.check_d2();
    }

    const ModPtr<F>& p_module() const { return P_; }
    const ModPtr<F>& m_module() const { return M_; }
    const CochainComplex<F>& complex() const { return cx_; }
    const Window& window() const { return cx_.window(); }

    const std::vector<Word>& words(int n) const {
        static const std::vector<Word> none;
        auto it = words_.find(n);
        return it == words_.end() ? none : it->second;
    }

private:
    ModPtr<F> P_, M_;
    std::map<int, std::vector<Word>> words_;
    std::map<int, std::map<Word, int>> index_;
    std::map<int, std::vector<std::vector<std::pair<int, int>>>> seq_memo_;
    CochainComplex<F> cx_;

    const std::vector<std::vector<std::pair<int, int>>>& letter_seqs(const DGAlgebra<F>& A, int c) {
        auto it = seq_memo_.find(c);
        if (it != seq_memo_.end()) return it->second;
        std::vector<std::vector<std::pair<int, int>>> out;
        if (c == 0) {
            out.push_back({});
        } else {
            for (auto [deg, dim] : A.complex().space().support()) {
                if (deg < 2 || deg - 1 > c) continue;
                for (int idx = 0; idx < dim; ++idx) {
                    for (const auto& rest : letter_seqs(A, c - (deg - 1))) {
                        std::vector<std::pair<int, int>> seq;
                        seq.reserve(rest.size() + 1);
                        seq.push_back({deg, idx});
                        seq.insert(seq.end(), rest.begin(), rest.end());
                        out.push_back(std::move(seq));
                    }
                }
            }
        }
        return seq_memo_.emplace(c, std::move(out)).first->second;
    }

    CochainComplex<F> make(Window requested) {
        const F& f = P_->field();
        if (P_->side() != Side::Right || M_->side() != Side::Left)
            throw InputError("bar complex needs a right module P and a left module M");
        if (P_->algebra().get() != M_->algebra().get())
            throw InputError("bar complex: modules over different algebras");
        const DGAlgebra<F>& A = *P_->algebra();
        const Window &wp = P_->window(), &wm = M_->window(), &wa = A.window();
        if (!wp.zero_below || !wm.zero_below)
            throw InputError("bar complex rejects inputs not bounded below within their windows");

        int bottom = wp.lo + wm.lo;
        int lo = std::min(requested.lo, bottom);
        int hi = requested.hi;
        if (!wa.zero_above) hi = std::min(hi, wp.lo + wm.lo + wa.hi - 1);
        if (!wp.zero_above) hi = std::min(hi, wp.hi + wm.lo);
        if (!wm.zero_above) hi = std::min(hi, wm.hi + wp.lo);
        Window w(lo, hi, true, false);
        if (hi < lo) w = Window(lo, lo - 1, true, false);

        GradedSpace sp(w);
        for (int n = w.lo; n <= w.hi; ++n) {
            std::vector<Word> ws;
            for (int pdeg = wp.lo; pdeg <= n - wm.lo; ++pdeg) {
                int pd = P_->dim(pdeg).value_or(0);
                if (pd == 0) continue;
                for (int c = 0; c + pdeg + wm.lo <= n; ++c) {
                    int xdeg = n - pdeg - c;
                    auto xd = M_->dim(xdeg);
                    if (!xd || *xd == 0) continue;
                    for (const auto& seq : letter_seqs(A, c))
                        for (int pi = 0; pi < pd; ++pi)
                            for (int xi = 0; xi < *xd; ++xi) ws.push_back({pdeg, pi, seq, xdeg, xi});
                }
            }
            std::sort(ws.begin(), ws.end());
            auto& idx = index_[n];
            for (std::size_t t = 0; t < ws.size(); ++t) idx.emplace(ws[t], static_cast<int>(t));
            sp.set_dim(n, static_cast<int>(ws.size()));
            words_[n] = std::move(ws);
        }

        CochainComplex<F> cx(f, std::move(sp));
        for (int n = w.lo; n + 1 <= w.hi; ++n) build_d(cx, n);
        return cx;
    }

    void add_term(Vec<F>& col, int n1, const Word& target, const typename F::Elt& c) {
        const F& f = P_->field();
        if (f.is_zero(c)) return;
        auto it = index_.at(n1).find(target);
        if (it == index_.at(n1).end()) throw Error("bar complex: target word outside sound window");
        col[it->second] = f.add(col[it->second], c);
    }

    void build_d(CochainComplex<F>& cx, int n) {
        const F& f = P_->field();
        const DGAlgebra<F>& A = *P_->algebra();
        int rows = cx.space().known_dim(n + 1), cols = cx.space().known_dim(n);
        if (rows == 0 || cols == 0) return;
        Matrix<F> dm(f, rows, cols);
        const auto& ws = words_.at(n);
        auto sgn = [&](int e) { return e % 2 == 0 ? f.one() : f.neg(f.one()); };
        for (int ci = 0; ci < cols; ++ci) {
            const Word& wrd = ws[ci];
            Vec<F> col = zero_vec(f, rows);
            const int m = static_cast<int>(wrd.letters.size());
            std::vector<int> eps(m + 1);
            eps[0] = wrd.pdeg;
            for (int i = 1; i <= m; ++i) eps[i] = eps[i - 1] + wrd.letters[i - 1].first - 1;

            // internal differential of p
            {
                Vec<F> dp = P_->complex().d_block(wrd.pdeg).col(wrd.pidx);
                for (std::size_t r = 0; r < dp.size(); ++r) {
                    Word t = wrd;
                    t.pdeg += 1;
                    t.pidx = static_cast<int>(r);
                    add_term(col, n + 1, t, dp[r]);
                }
            }
            // internal differentials of the letters: d(sa) = -s(da)
            for (int i = 1; i <= m; ++i) {
                auto [adeg, aidx] = wrd.letters[i - 1];
                if (!A.known(adeg + 1)) throw Error("bar complex: letter differential unknown");
                Vec<F> da = A.complex().d_block(adeg).col(aidx);
                for (std::size_t r = 0; r < da.size(); ++r) {
                    Word t = wrd;
                    t.letters[i - 1] = {adeg + 1, static_cast<int>(r)};
                    add_term(col, n + 1, t, f.mul(f.neg(sgn(eps[i - 1])), da[r]));
                }
            }
            // internal differential of x
            {
                Vec<F> dx = M_->complex().d_block(wrd.xdeg).col(wrd.xidx);
                for (std::size_t r = 0; r < dx.size(); ++r) {
                    Word t = wrd;
                    t.xdeg += 1;
                    t.xidx = static_cast<int>(r);
                    add_term(col, n + 1, t, f.mul(sgn(eps[m]), dx[r]));
                }
            }
            if (m > 0) {
                // face 0: p.a_1
                {
                    auto [adeg, aidx] = wrd.letters[0];
                    Vec<F> pa = P_->action(adeg, aidx, wrd.pdeg, wrd.pidx);
                    for (std::size_t r = 0; r < pa.size(); ++r) {
                        Word t;
                        t.pdeg = wrd.pdeg + adeg;
                        t.pidx = static_cast<int>(r);
                        t.letters.assign(wrd.letters.begin() + 1, wrd.letters.end());
                        t.xdeg = wrd.xdeg;
                        t.xidx = wrd.xidx;
                        add_term(col, n + 1, t, f.mul(sgn(eps[0]), pa[r]));
                    }
                }
                // inner faces: a_i a_{i+1}
                for (int i = 1; i <= m - 1; ++i) {
                    auto [d1, i1] = wrd.letters[i - 1];
                    auto [d2, i2] = wrd.letters[i];
                    if (!A.known(d1 + d2)) throw Error("bar complex: letter product unknown");
                    Vec<F> ab = A.product(d1, i1, d2, i2);
                    for (std::size_t r = 0; r < ab.size(); ++r) {
                        Word t = wrd;
                        t.letters.erase(t.letters.begin() + i);
                        t.letters[i - 1] = {d1 + d2, static_cast<int>(r)};
                        add_term(col, n + 1, t, f.mul(sgn(eps[i]), ab[r]));
                    }
                }
                // face m: a_m.x
                {
                    auto [adeg, aidx] = wrd.letters[m - 1];
                    Vec<F> ax = M_->action(adeg, aidx, wrd.xdeg, wrd.xidx);
                    for (std::size_t r = 0; r < ax.size(); ++r) {
                        Word t;
                        t.pdeg = wrd.pdeg;
                        t.pidx = wrd.pidx;
                        t.letters.assign(wrd.letters.begin(), wrd.letters.end() - 1);
                        t.xdeg = wrd.xdeg + adeg;
                        t.xidx = static_cast<int>(r);
                        add_term(col, n + 1, t, f.mul(f.neg(sgn(eps[m - 1])), ax[r]));
                    }
                }
            }
            dm.set_col(ci, col);
        }
        cx.set_d(n, std::move(dm));
    }
};

/* H^j(P ⊗^L_R M) on the sound window, via the bar complex. */
template <FieldType F>
GradedSpace derived_tensor_cohomology(const ModPtr<F>& P, const ModPtr<F>& M, Window win) {
    BarComplex<F> b(P, M, win);
    return b.complex().cohomology().h;
}

/* Betti numbers β^j(M) = dim H^j(k ⊗^L_R M). */
template <FieldType F>
GradedSpace betti_via_bar(const ModPtr<F>& M, Window win) {
    auto k = trivial_k_module(M->algebra(), Side::Right);
    return derived_tensor_cohomology(k, M, win);
}

/* Bass numbers via linear duality: μ^j(M) = dim H^{-j}(B(D(M), A, k)),
 * justified by RHom_R(k, M) ≅ D(D(M) ⊗^L_R k) for locally finite M.
 * M must be bounded above within its window (so D(M) is bounded below).
 * The returned space is indexed by j (Bass degree). */
template <FieldType F>
GradedSpace bass_numbers(const ModPtr<F>& M, Window win) {
    if (M->side() != Side::Left) throw InputError("bass_numbers expects a left module");
    if (!M->window().zero_above)
        throw InputError("bass_numbers rejects modules not bounded above within their windows");
    auto D = dual_module(M);
    auto k = trivial_k_module(M->algebra(), Side::Left);
    GradedSpace h = derived_tensor_cohomology(D, k, win.negated());
    GradedSpace out(h.window().negated());
    for (auto [j, d] : h.support()) out.set_dim(-j, d);
    return out;
}

}  // namespace dga
