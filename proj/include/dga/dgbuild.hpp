#pragma once

#include "dga/dgcore.hpp"

namespace dga {

/* ------------------------------------------------------------------------
 * Module constructors.  All results are validated by tests rather than
 * trusted; every sign convention here is exercised by d^2 = 0 and Leibniz
 * checks on constructed instances.
 * ------------------------------------------------------------------------ */

/* The algebra as a DG module over itself. */
template <FieldType F>
ModPtr<F> algebra_as_module(const AlgPtr<F>& A, Side side) {
    StructTable<F> act;
    const auto& sup = A->complex().space().support();
    for (auto [i, di] : sup) {
        if (i < 2) continue;
        for (auto [j, dj] : sup) {
            if (!A->known(i + j)) continue;
            auto& tab = act[{i, j}];
            tab.assign(di, std::vector<Vec<F>>(dj));
            for (int a = 0; a < di; ++a)
                for (int b = 0; b < dj; ++b) {
                    // left table: a.m = a*b ; right table: m.a = b*a
                    Vec<F> v = side == Side::Left ? A->product(i, a, j, b) : A->product(j, b, i, a);
                    if (!vec_is_zero(A->field(), v)) tab[a][b] = std::move(v);
                }
        }
    }
    return std::make_shared<DGModule<F>>(side, A, A->complex(), A->all_labels(), std::move(act));
}

/* k as the trivial DG module concentrated in degree 0; A^{>=2} acts by zero. */
template <FieldType F>
ModPtr<F> trivial_k_module(const AlgPtr<F>& A, Side side) {
    GradedSpace sp(Window::complete(0, 0));
    sp.set_dim(0, 1);
    CochainComplex<F> cx(A->field(), sp);
    std::map<int, std::vector<std::string>> labels;
    labels[0] = {"k0"};
    return std::make_shared<DGModule<F>>(side, A, std::move(cx), std::move(labels), StructTable<F>{});
}

/* Semifree module: one generator g per entry of `gens` (label, degree),
 * underlying graded module  ⊕_g Σ^{-deg g} A,  with differential
 *   d(g) = -twist_g,  twist_g ∈ F^{deg g + 1} supported on earlier generators.
 * A plain free module is the all-zero-twist case. */
template <FieldType F>
struct SemifreeData {
    AlgPtr<F> alg;
    Side side = Side::Left;
    std::vector<std::pair<std::string, int>> gens;
    /* twists[g] is either empty (zero) or a vector in the flat basis of
     * F^{deg g + 1} over the earlier generators only. */
    std::vector<Vec<F>> twists;
    ModPtr<F> mod;

    int gen_degree(std::size_t g) const { return gens[g].second; }

    /* flat basis layout of F^n: for g = 0.. : A-basis of A^{n - deg g} */
    std::size_t offset(int n, std::size_t g) const {
        std::size_t off = 0;
        for (std::size_t h = 0; h < g; ++h)
            off += static_cast<std::size_t>(alg->complex().space().dim(n - gens[h].second).value_or(0));
        return off;
    }
    std::size_t dim(int n) const {
        return offset(n, gens.size());
    }
};

template <FieldType F>
SemifreeData<F> semifree_module(const AlgPtr<F>& A, Side side,
                                std::vector<std::pair<std::string, int>> gens,
                                std::vector<Vec<F>> twists = {}) {
    const F& f = A->field();
    SemifreeData<F> sf;
    sf.alg = A;
    sf.side = side;
    sf.gens = std::move(gens);
    if (twists.empty()) twists.assign(sf.gens.size(), Vec<F>{});
    sf.twists = std::move(twists);

    const Window& aw = A->window();
    int dlo = 0, dhi = 0;
    ExtInt khi = ExtInt::pos_inf();
    if (!sf.gens.empty()) {
        dlo = sf.gens[0].second;
        dhi = sf.gens[0].second + aw.hi;
        for (auto& [lb, dg] : sf.gens) {
            dlo = std::min(dlo, dg);
            dhi = std::max(dhi, dg + aw.hi);
            if (!aw.zero_above) khi = ext_min(khi, ExtInt(aw.hi + dg));
        }
    }
    Window w = Window::from_known(ExtInt::neg_inf(), khi, dlo, dhi);

    GradedSpace sp(w);
    std::map<int, std::vector<std::string>> labels;
    for (int n = w.lo; n <= w.hi; ++n) {
        int d = 0;
        std::vector<std::string> ls;
        for (auto& [lb, dg] : sf.gens) {
            int da = A->complex().space().dim(n - dg).value_or(0);
            for (int t = 0; t < da; ++t) {
                const auto& al = A->labels(n - dg);
                ls.push_back(n == dg ? lb : al[t] + "." + lb);
            }
            d += da;
        }
        sp.set_dim(n, d);
        if (d > 0) labels[n] = std::move(ls);
    }

    CochainComplex<F> cx(f, std::move(sp));
    const GradedSpace& space = cx.space();

    for (int n = w.lo; n + 1 <= w.hi; ++n) {
        int rows = space.known_dim(n + 1), cols = space.known_dim(n);
        if (rows == 0 || cols == 0) continue;
        Matrix<F> dm(f, rows, cols);
        std::size_t c = 0;
        for (std::size_t g = 0; g < sf.gens.size(); ++g) {
            int dg = sf.gens[g].second;
            int adeg = n - dg;
            int da = A->complex().space().dim(adeg).value_or(0);
            for (int t = 0; t < da; ++t, ++c) {
                Vec<F> colv = zero_vec(f, rows);
                // internal part: d_A on the coefficient (sign (-1)^{deg g} for right modules)
                if (A->known(adeg + 1)) {
                    Vec<F> da_t = A->complex().d_block(adeg).col(t);
                    std::size_t off = sf.offset(n + 1, g);
                    typename F::Elt s =
                        (sf.side == Side::Right && dg % 2 != 0) ? f.neg(f.one()) : f.one();
                    for (std::size_t r = 0; r < da_t.size(); ++r)
                        colv[off + r] = f.add(colv[off + r], f.mul(s, da_t[r]));
                }
                // twist part
                const Vec<F>& u = sf.twists[g];
                if (!u.empty()) {
                    // expand u over (g', s') components and multiply by a_t
                    for (std::size_t g2 = 0; g2 < g; ++g2) {
                        int dg2 = sf.gens[g2].second;
                        int a2 = dg + 1 - dg2;
                        int da2 = A->complex().space().dim(a2).value_or(0);
                        std::size_t uoff = sf.offset(dg + 1, g2);
                        for (int s2 = 0; s2 < da2; ++s2) {
                            const auto& cu = u[uoff + s2];
                            if (f.is_zero(cu)) continue;
                            // left: -(-1)^{|a_t|} a_t * (a_{s2} ⊗ g2)
                            // right: -(a_{s2} ⊗ g2) * a_t
                            Vec<F> prod = sf.side == Side::Left
                                              ? A->product(adeg, t, a2, s2)
                                              : A->product(a2, s2, adeg, t);
                            typename F::Elt coef = f.neg(cu);
                            if (sf.side == Side::Left && adeg % 2 != 0) coef = f.neg(coef);
                            std::size_t off2 = sf.offset(n + 1, g2);
                            for (std::size_t r = 0; r < prod.size(); ++r)
                                colv[off2 + r] = f.add(colv[off2 + r], f.mul(coef, prod[r]));
                        }
                    }
                }
                dm.set_col(c, colv);
            }
        }
        cx.set_d(n, std::move(dm));
    }

    // action: blockwise algebra multiplication on the coefficients
    StructTable<F> act;
    for (auto [i, di] : A->complex().space().support()) {
        if (i < 2) continue;
        for (int j = w.lo; j <= w.hi; ++j) {
            if (!w.known(i + j) || i + j > w.hi) continue;
            int cols = space.known_dim(j), rows = space.known_dim(i + j);
            if (cols == 0 || rows == 0) continue;
            auto& tab = act[{i, j}];
            tab.assign(di, std::vector<Vec<F>>(cols));
            for (int a = 0; a < di; ++a) {
                std::size_t c = 0;
                for (std::size_t g = 0; g < sf.gens.size(); ++g) {
                    int dg = sf.gens[g].second;
                    int adeg = j - dg;
                    int da = A->complex().space().dim(adeg).value_or(0);
                    std::size_t off = sf.offset(i + j, g);
                    for (int t = 0; t < da; ++t, ++c) {
                        Vec<F> prod = sf.side == Side::Left ? A->product(i, a, adeg, t)
                                                            : A->product(adeg, t, i, a);
                        if (vec_is_zero(f, prod)) continue;
                        Vec<F> v = zero_vec(f, rows);
                        for (std::size_t r = 0; r < prod.size(); ++r) v[off + r] = prod[r];
                        tab[a][c] = std::move(v);
                    }
                }
            }
        }
    }

    sf.mod = std::make_shared<DGModule<F>>(side, A, std::move(cx), std::move(labels), std::move(act));
    return sf;
}

template <FieldType F>
ModPtr<F> free_module(const AlgPtr<F>& A, std::vector<std::pair<std::string, int>> gens,
                      Side side = Side::Left) {
    return semifree_module(A, side, std::move(gens)).mod;
}

/* Morphism from a semifree module determined by cycles z_g in target^{deg g}:
 * a⊗g -> a.z_g (left) / g⊗a -> z_g.a (right).  Only valid (a chain map) when
 * each z_g is a cycle and compatible with the twists; validated in tests. */
template <FieldType F>
DGMorphism<F> semifree_morphism(const SemifreeData<F>& sf, const ModPtr<F>& target,
                                const std::vector<Vec<F>>& cycles) {
    const F& f = target->field();
    DGMorphism<F> phi;
    phi.src = sf.mod;
    phi.dst = target;
    Window w = Window::intersect(sf.mod->window(), target->window());
    for (int n = w.lo; n <= w.hi; ++n) {
        int rows = target->complex().space().known_dim(n);
        int cols = sf.mod->complex().space().known_dim(n);
        if (rows == 0 || cols == 0) continue;
        Matrix<F> m(f, rows, cols);
        std::size_t c = 0;
        for (std::size_t g = 0; g < sf.gens.size(); ++g) {
            int dg = sf.gens[g].second;
            int adeg = n - dg;
            int da = sf.alg->complex().space().dim(adeg).value_or(0);
            for (int t = 0; t < da; ++t, ++c) {
                Vec<F> av = unit_vec(f, da, t);
                Vec<F> img = target->act_vec(adeg, av, dg, cycles[g]);
                m.set_col(c, img);
            }
        }
        if (!m.is_zero()) phi.blocks.insert_or_assign(n, std::move(m));
    }
    return phi;
}

template <FieldType F>
DGMorphism<F> zero_morphism(const ModPtr<F>& src, const ModPtr<F>& dst) {
    return DGMorphism<F>{src, dst, {}};
}

template <FieldType F>
DGMorphism<F> identity_morphism(const ModPtr<F>& m) {
    DGMorphism<F> id{m, m, {}};
    const Window& w = m->window();
    for (int j = w.lo; j <= w.hi; ++j) {
        int n = m->complex().space().known_dim(j);
        if (n > 0) id.blocks.insert_or_assign(j, Matrix<F>::identity(m->field(), n));
    }
    return id;
}

/* Mapping cone: Cone(f)^j = Msrc^{j+1} ⊕ Ndst^j,
 * d(m, n) = (-d m, f(m) + d n), diagonal action with the suspension sign
 * (-1)^{|a|} on the source part for left modules. */
template <FieldType F>
ModPtr<F> cone(const DGMorphism<F>& phi) {
    const ModPtr<F>& M = phi.src;
    const ModPtr<F>& N = phi.dst;
    if (M->algebra().get() != N->algebra().get())
        throw Error("cone: source and target over different algebras");
    if (M->side() != N->side()) throw Error("cone: source and target on different sides");
    const F& f = M->field();
    Side side = M->side();

    Window wm = M->window().shifted(1);
    const Window& wn = N->window();
    Window w = Window::from_known(ext_max(wm.known_lo(), wn.known_lo()),
                                  ext_min(wm.known_hi(), wn.known_hi()),
                                  std::min(wm.lo, wn.lo), std::max(wm.hi, wn.hi));
    GradedSpace sp(w);
    std::map<int, std::vector<std::string>> labels;
    auto mdim = [&](int j) { return M->complex().space().known_dim(j); };
    auto ndim = [&](int j) { return N->complex().space().known_dim(j); };
    for (int j = w.lo; j <= w.hi; ++j) {
        int d = mdim(j + 1) + ndim(j);
        sp.set_dim(j, d);
        if (d > 0) {
            std::vector<std::string> ls;
            for (int t = 0; t < mdim(j + 1); ++t) ls.push_back("s(" + M->labels(j + 1)[t] + ")");
            for (int t = 0; t < ndim(j); ++t) ls.push_back(N->labels(j)[t]);
            labels[j] = std::move(ls);
        }
    }
    CochainComplex<F> cx(f, std::move(sp));

    for (int j = w.lo; j + 1 <= w.hi; ++j) {
        int rows = mdim(j + 2) + ndim(j + 1), cols = mdim(j + 1) + ndim(j);
        if (rows == 0 || cols == 0) continue;
        Matrix<F> dmat(f, rows, cols);
        Matrix<F> dm = M->complex().d_block(j + 1);
        Matrix<F> dn = N->complex().d_block(j);
        Matrix<F> fb = phi.block(j + 1);
        for (int r = 0; r < mdim(j + 2); ++r)
            for (int c = 0; c < mdim(j + 1); ++c) dmat.at(r, c) = f.neg(dm.at(r, c));
        for (int r = 0; r < ndim(j + 1); ++r) {
            for (int c = 0; c < mdim(j + 1); ++c) dmat.at(mdim(j + 2) + r, c) = fb.at(r, c);
            for (int c = 0; c < ndim(j); ++c)
                dmat.at(mdim(j + 2) + r, mdim(j + 1) + c) = dn.at(r, c);
        }
        cx.set_d(j, std::move(dmat));
    }

    StructTable<F> act;
    const DGAlgebra<F>& A = *M->algebra();
    for (auto [i, di] : A.complex().space().support()) {
        if (i < 2) continue;
        for (int j = w.lo; j <= w.hi; ++j) {
            if (!w.known(i + j) || i + j > w.hi) continue;
            int cols = mdim(j + 1) + ndim(j);
            int rows = mdim(i + j + 1) + ndim(i + j);
            if (cols == 0 || rows == 0) continue;
            auto& tab = act[{i, j}];
            tab.assign(di, std::vector<Vec<F>>(cols));
            bool msign = (side == Side::Left) && (i % 2 != 0);
            for (int a = 0; a < di; ++a) {
                Matrix<F> am = M->action_matrix(i, a, j + 1);
                Matrix<F> an = N->action_matrix(i, a, j);
                for (int c = 0; c < mdim(j + 1); ++c) {
                    Vec<F> v = zero_vec(f, rows);
                    bool nz = false;
                    for (int r = 0; r < mdim(i + j + 1); ++r) {
                        auto e = am.at(r, c);
                        if (msign) e = f.neg(e);
                        if (!f.is_zero(e)) nz = true;
                        v[r] = e;
                    }
                    if (nz) tab[a][c] = std::move(v);
                }
                for (int c = 0; c < ndim(j); ++c) {
                    Vec<F> v = zero_vec(f, rows);
                    bool nz = false;
                    for (int r = 0; r < ndim(i + j); ++r) {
                        auto e = an.at(r, c);
                        if (!f.is_zero(e)) nz = true;
                        v[mdim(i + j + 1) + r] = e;
                    }
                    if (nz) tab[a][mdim(j + 1) + c] = std::move(v);
                }
            }
        }
    }
    return std::make_shared<DGModule<F>>(side, M->algebra(), std::move(cx), std::move(labels),
                                         std::move(act));
}

/* k-linear dual: D(M)^j = Hom_k(M^{-j}, k), differential
 * (dφ)(m) = -(-1)^{|φ|} φ(dm), action (φ.a)(m) = (-1)^{|a|(|φ|+|m|)} φ(a.m);
 * swaps left and right. */
template <FieldType F>
ModPtr<F> dual_module(const ModPtr<F>& M) {
    const F& f = M->field();
    Side dside = M->side() == Side::Left ? Side::Right : Side::Left;
    Window w = M->window().negated();
    GradedSpace sp(w);
    std::map<int, std::vector<std::string>> labels;
    auto mdim = [&](int j) { return M->complex().space().known_dim(j); };
    for (int j = w.lo; j <= w.hi; ++j) {
        int d = mdim(-j);
        sp.set_dim(j, d);
        if (d > 0) {
            std::vector<std::string> ls;
            for (int t = 0; t < d; ++t) ls.push_back(M->labels(-j)[t] + "'");
            labels[j] = std::move(ls);
        }
    }
    CochainComplex<F> cx(f, std::move(sp));
    for (int j = w.lo; j + 1 <= w.hi; ++j) {
        if (mdim(-j) == 0 || mdim(-j - 1) == 0) continue;
        Matrix<F> t = M->complex().d_block(-j - 1).transposed();
        if (j % 2 == 0) t = t.negated();  // -(-1)^j (d_M^{-j-1})^T
        cx.set_d(j, std::move(t));
    }

    StructTable<F> act;
    const DGAlgebra<F>& A = *M->algebra();
    for (auto [i, di] : A.complex().space().support()) {
        if (i < 2) continue;
        for (int j = w.lo; j <= w.hi; ++j) {
            if (!w.known(i + j) || i + j > w.hi) continue;
            int cols = mdim(-j), rows = mdim(-i - j);
            if (cols == 0 || rows == 0) continue;
            auto& tab = act[{i, j}];
            tab.assign(di, std::vector<Vec<F>>(cols));
            for (int a = 0; a < di; ++a) {
                Matrix<F> m = M->action_matrix(i, a, -i - j).transposed();
                if (i % 2 != 0) m = m.negated();
                for (int c = 0; c < cols; ++c) {
                    Vec<F> v = m.col(c);
                    if (!vec_is_zero(f, v)) tab[a][c] = std::move(v);
                }
            }
        }
    }
    return std::make_shared<DGModule<F>>(dside, M->algebra(), std::move(cx), std::move(labels),
                                         std::move(act));
}

/* Σ^s M: complex shifted (d scaled by (-1)^s), left action twisted by
 * (-1)^{s|a|}; right action untouched. */
template <FieldType F>
ModPtr<F> shift_module(const ModPtr<F>& M, int s) {
    const F& f = M->field();
    CochainComplex<F> cx = M->complex().shifted(s);
    std::map<int, std::vector<std::string>> labels;
    for (auto& [j, ls] : M->all_labels()) labels[j - s] = ls;
    StructTable<F> act;
    for (auto& [key, tab] : M->action_table()) {
        auto [i, j] = key;
        auto& out = act[{i, j - s}];
        out = tab;
        if (M->side() == Side::Left && (s % 2 != 0) && (i % 2 != 0)) {
            for (auto& row : out)
                for (auto& v : row)
                    for (auto& e : v) e = f.neg(e);
        }
    }
    return std::make_shared<DGModule<F>>(M->side(), M->algebra(), std::move(cx), std::move(labels),
                                         std::move(act));
}

/* M ⊕ N (same algebra and side). */
template <FieldType F>
ModPtr<F> direct_sum(const ModPtr<F>& M, const ModPtr<F>& N) {
    if (M->algebra().get() != N->algebra().get()) throw Error("direct_sum: different algebras");
    if (M->side() != N->side()) throw Error("direct_sum: different sides");
    const F& f = M->field();
    const Window &wm = M->window(), &wn = N->window();
    Window w = Window::from_known(ext_max(wm.known_lo(), wn.known_lo()),
                                  ext_min(wm.known_hi(), wn.known_hi()),
                                  std::min(wm.lo, wn.lo), std::max(wm.hi, wn.hi));
    GradedSpace sp(w);
    std::map<int, std::vector<std::string>> labels;
    auto mdim = [&](int j) { return M->complex().space().known_dim(j); };
    auto ndim = [&](int j) { return N->complex().space().known_dim(j); };
    for (int j = w.lo; j <= w.hi; ++j) {
        int d = mdim(j) + ndim(j);
        sp.set_dim(j, d);
        if (d > 0) {
            std::vector<std::string> ls;
            for (int t = 0; t < mdim(j); ++t) ls.push_back(M->labels(j)[t]);
            for (int t = 0; t < ndim(j); ++t) {
                std::string l = N->labels(j)[t];
                ls.push_back(l + "#b");
            }
            labels[j] = std::move(ls);
        }
    }
    CochainComplex<F> cx(f, std::move(sp));
    for (int j = w.lo; j + 1 <= w.hi; ++j) {
        int rows = mdim(j + 1) + ndim(j + 1), cols = mdim(j) + ndim(j);
        if (rows == 0 || cols == 0) continue;
        Matrix<F> d(f, rows, cols);
        Matrix<F> a = M->complex().d_block(j), b = N->complex().d_block(j);
        for (int r = 0; r < mdim(j + 1); ++r)
            for (int c = 0; c < mdim(j); ++c) d.at(r, c) = a.at(r, c);
        for (int r = 0; r < ndim(j + 1); ++r)
            for (int c = 0; c < ndim(j); ++c) d.at(mdim(j + 1) + r, mdim(j) + c) = b.at(r, c);
        cx.set_d(j, std::move(d));
    }
    StructTable<F> act;
    const DGAlgebra<F>& A = *M->algebra();
    for (auto [i, di] : A.complex().space().support()) {
        if (i < 2) continue;
        for (int j = w.lo; j <= w.hi; ++j) {
            if (!w.known(i + j) || i + j > w.hi) continue;
            int cols = mdim(j) + ndim(j);
            int rows = mdim(i + j) + ndim(i + j);
            if (cols == 0 || rows == 0) continue;
            auto& tab = act[{i, j}];
            tab.assign(di, std::vector<Vec<F>>(cols));
            for (int a = 0; a < di; ++a) {
                Matrix<F> am = M->action_matrix(i, a, j), an = N->action_matrix(i, a, j);
                for (int c = 0; c < mdim(j); ++c) {
                    Vec<F> v = zero_vec(f, rows);
                    bool nz = false;
                    for (int r = 0; r < mdim(i + j); ++r) {
                        v[r] = am.at(r, c);
                        nz = nz || !f.is_zero(v[r]);
                    }
                    if (nz) tab[a][c] = std::move(v);
                }
                for (int c = 0; c < ndim(j); ++c) {
                    Vec<F> v = zero_vec(f, rows);
                    bool nz = false;
                    for (int r = 0; r < ndim(i + j); ++r) {
                        v[mdim(i + j) + r] = an.at(r, c);
                        nz = nz || !f.is_zero(v[mdim(i + j) + r]);
                    }
                    if (nz) tab[a][mdim(j) + c] = std::move(v);
                }
            }
        }
    }
    return std::make_shared<DGModule<F>>(M->side(), M->algebra(), std::move(cx), std::move(labels),
                                         std::move(act));
}

}  // namespace dga
