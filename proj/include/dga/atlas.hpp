#pragma once

#include "dga/dgbuild.hpp"
#include "dga/rng.hpp"

namespace dga {

/* Assemble an algebra from labels, differential blocks and a product table.
 * The window is extended to cover the declared basis degrees. */
template <FieldType F>
AlgPtr<F> make_algebra(const F& f, Window win, std::map<int, std::vector<std::string>> labels,
                       std::map<int, Matrix<F>> d_blocks, StructTable<F> prod) {
    int lo = 0, hi = 0;
    for (auto& [j, ls] : labels) {
        lo = std::min(lo, j);
        hi = std::max(hi, j);
    }
    win.lo = std::min(win.lo, lo);
    win.hi = std::max(win.hi, hi);
    GradedSpace sp(win);
    for (auto& [j, ls] : labels) sp.set_dim(j, static_cast<int>(ls.size()));
    CochainComplex<F> cx(f, std::move(sp));
    for (auto& [j, m] : d_blocks) cx.set_d(j, std::move(m));
    return std::make_shared<DGAlgebra<F>>(f, std::move(cx), std::move(labels), std::move(prod));
}

/* H*(S^n) with zero differential: basis {1, x}, |x| = n, x*x = 0. */
template <FieldType F>
AlgPtr<F> sphere_algebra(const F& f, int n, Window win) {
    if (n < 2) throw InputError("sphere_algebra: degree must be >= 2 (simply connected)");
    win.zero_below = win.zero_above = true;
    std::map<int, std::vector<std::string>> labels;
    labels[0] = {"1"};
    labels[n] = {"x"};
    return make_algebra(f, win, std::move(labels), {}, StructTable<F>{});
}

template <FieldType F>
AlgPtr<F> sphere_algebra(const F& f, int n, int window_hi = -1) {
    return sphere_algebra(f, n, Window(0, std::max(window_hi, n)));
}

/* H*(S^{d1} v S^{d2} v ...) at finite truncation: one class per listed degree,
 * all products of positive-degree classes zero. */
template <FieldType F>
AlgPtr<F> wedge_algebra(const F& f, const std::vector<int>& degrees, Window win) {
    for (int d : degrees)
        if (d < 2) throw InputError("wedge_algebra: all degrees must be >= 2");
    win.zero_below = win.zero_above = true;
    std::map<int, std::vector<std::string>> labels;
    labels[0] = {"1"};
    for (std::size_t i = 0; i < degrees.size(); ++i)
        labels[degrees[i]].push_back("x" + std::to_string(i + 1));
    return make_algebra(f, win, std::move(labels), {}, StructTable<F>{});
}

template <FieldType F>
AlgPtr<F> wedge_algebra(const F& f, const std::vector<int>& degrees, int window_hi = -1) {
    int top = 0;
    for (int d : degrees) top = std::max(top, d);
    return wedge_algebra(f, degrees, Window(0, std::max(window_hi, top)));
}

/* k[x]/(x^e) with |x| = n: basis 1, x, ..., x^{e-1}. */
template <FieldType F>
AlgPtr<F> truncated_polynomial_algebra(const F& f, int n, int e, Window win) {
    if (n < 2) throw InputError("truncated_polynomial_algebra: degree must be >= 2");
    if (e < 2) throw InputError("truncated_polynomial_algebra: truncation must be >= 2");
    if (n % 2 != 0 && e > 2 && f.characteristic() != 2)
        throw InputError("truncated_polynomial_algebra: odd generator with x^2 != 0 "
                         "forces x^2 = 0 outside characteristic 2");
    win.zero_below = win.zero_above = true;
    std::map<int, std::vector<std::string>> labels;
    labels[0] = {"1"};
    for (int i = 1; i < e; ++i) labels[i * n] = {i == 1 ? "x" : "x" + std::to_string(i)};
    StructTable<F> prod;
    for (int i = 1; i < e; ++i)
        for (int j = 1; j < e; ++j) {
            if (i + j >= e) continue;  // x^{i+j} = 0 entries stay compressed
            auto& tab = prod[{i * n, j * n}];
            tab.assign(1, std::vector<Vec<F>>(1));
            tab[0][0] = {f.one()};
        }
    return make_algebra(f, win, std::move(labels), {}, std::move(prod));
}

template <FieldType F>
AlgPtr<F> truncated_polynomial_algebra(const F& f, int n, int e, int window_hi = -1) {
    return truncated_polynomial_algebra(f, n, e, Window(0, std::max(window_hi, (e - 1) * n)));
}

/* ------------------------------------------------------------------------
 * Seeded random instances.  Every generator is deterministic per seed and
 * produces modules/algebras that satisfy the axioms by construction;
 * validate() is still run by callers as a guard.
 * ------------------------------------------------------------------------ */

/* Random invertible degreewise change of basis. */
template <FieldType F>
Matrix<F> random_invertible(const F& f, Rng& rng, std::size_t n) {
    auto m = Matrix<F>::identity(f, n);
    for (std::size_t k = 0; k < 3 * n + 2; ++k) {
        std::size_t i = rng.below(n), j = rng.below(n);
        if (i == j) continue;
        auto c = rng.scalar(f);
        if (!f.is_zero(c)) f.row_axpy(m.row(i), m.row(j), c);
    }
    return m;
}

/* Random complex with exact d^2 = 0 (canonical ranks conjugated by random
 * changes of basis), certified complete. */
template <FieldType F>
CochainComplex<F> random_exact_d_complex(const F& f, Rng& rng, int lo, int hi, int maxdim) {
    Window w = Window::complete(lo, hi);
    GradedSpace sp(w);
    std::vector<int> dims(hi - lo + 1);
    for (auto& d : dims) d = static_cast<int>(rng.below(maxdim + 1));
    for (int j = lo; j <= hi; ++j) sp.set_dim(j, dims[j - lo]);
    std::vector<int> ranks(dims.size(), 0);
    int prev = 0;
    for (std::size_t t = 0; t + 1 < dims.size(); ++t) {
        int avail = std::min(dims[t] - prev, dims[t + 1]);
        ranks[t] = avail > 0 ? static_cast<int>(rng.below(avail + 1)) : 0;
        prev = ranks[t];
    }
    std::vector<Matrix<F>> basis;
    for (int d : dims) basis.push_back(random_invertible(f, rng, d));
    CochainComplex<F> cx(f, sp);
    for (int j = lo; j < hi; ++j) {
        std::size_t t = j - lo;
        if (dims[t] == 0 || dims[t + 1] == 0 || ranks[t] == 0) continue;
        Matrix<F> canon(f, dims[t + 1], dims[t]);
        int shift = t > 0 ? ranks[t - 1] : 0;
        for (int r = 0; r < ranks[t]; ++r) canon.at(r, shift + r) = f.one();
        cx.set_d(j, basis[t + 1].mul(canon).mul(basis[t].inverse()));
    }
    return cx;
}

/* Random DG algebra in which all products of positive-degree elements vanish
 * (so Setup axioms hold for any differential); random dims and d. */
template <FieldType F>
AlgPtr<F> random_square_zero_algebra(const F& f, std::uint64_t seed, int top = 6, int maxdim = 2) {
    Rng rng(seed);
    std::map<int, std::vector<std::string>> labels;
    labels[0] = {"1"};
    GradedSpace sp(Window::complete(0, top));
    sp.set_dim(0, 1);
    for (int j = 2; j <= top; ++j) {
        int d = static_cast<int>(rng.below(maxdim + 1));
        sp.set_dim(j, d);
        for (int t = 0; t < d; ++t) labels[j].push_back("e" + std::to_string(j) + "_" + std::to_string(t));
    }
    CochainComplex<F> cx(f, sp);
    // nonzero d only from even degrees, which makes d^2 = 0 automatic
    for (int j = 2; j + 1 <= top; j += 2) {
        int a = sp.known_dim(j), b = sp.known_dim(j + 1);
        if (a == 0 || b == 0) continue;
        Matrix<F> m(f, b, a);
        for (int r = 0; r < b; ++r)
            for (int c = 0; c < a; ++c) m.at(r, c) = rng.chance(1, 3) ? rng.scalar(f) : f.zero();
        if (!m.is_zero()) cx.set_d(j, m);
    }
    cx.check_d2();
    return std::make_shared<DGAlgebra<F>>(f, std::move(cx), std::move(labels), StructTable<F>{});
}

enum class RandomProfile {
    Semifree,       // random finite semifree module (compact by construction)
    TrivialAction,  // random complex of k-spaces, A^{>=2} acting by zero
    ConeOfFree,     // cone of a random morphism from an untwisted free module
    DualSemifree,   // dual of a random semifree (bounded above, for Bass sweeps)
    ShiftedSum      // shifted direct sum of two smaller instances
};

struct RandomModuleOptions {
    RandomProfile profile = RandomProfile::Semifree;
    Side side = Side::Left;
    int deg_lo = 0;
    int deg_hi = 4;
    int max_generators = 3;
    int max_dim = 2;  // per-degree dimension bound for TrivialAction
};

/* Twists must be cycles supported on earlier generators; over these algebras
 * the free differential vanishes on Ā·F only up to the algebra's products,
 * so we draw from the exact kernel of d restricted to earlier generators. */
template <FieldType F>
ModPtr<F> random_semifree(const AlgPtr<F>& A, Rng& rng, const RandomModuleOptions& opt) {
    int ng = 1 + static_cast<int>(rng.below(opt.max_generators));
    std::vector<std::pair<std::string, int>> gens;
    std::vector<Vec<F>> twists;
    const F& f = A->field();
    std::vector<int> levels;
    for (int g = 0; g < ng; ++g) levels.push_back(static_cast<int>(rng.range(opt.deg_lo, opt.deg_hi)));
    std::sort(levels.begin(), levels.end());
    for (int g = 0; g < ng; ++g) gens.push_back({"g" + std::to_string(g), levels[g]});
    for (int g = 0; g < ng; ++g) {
        // partial module over generators 0..g-1
        std::vector<std::pair<std::string, int>> part(gens.begin(), gens.begin() + g);
        std::vector<Vec<F>> ptw(twists.begin(), twists.begin() + g);
        auto prev = semifree_module(A, opt.side, part, ptw);
        int dg = gens[g].second;
        Vec<F> u;
        if (g > 0 && prev.mod->complex().space().known(dg + 1) &&
            prev.mod->complex().space().known_dim(dg + 1) > 0) {
            auto ker = prev.mod->complex().d_block(dg + 1).kernel_basis();
            if (!ker.empty()) {
                u = zero_vec(f, prev.mod->complex().space().known_dim(dg + 1));
                for (auto& kv : ker)
                    if (rng.chance(1, 2)) vec_axpy(f, u, kv, rng.scalar(f));
                if (vec_is_zero(f, u)) u.clear();
            }
        }
        twists.push_back(std::move(u));
    }
    return semifree_module(A, opt.side, gens, twists).mod;
}

template <FieldType F>
ModPtr<F> random_trivial_action(const AlgPtr<F>& A, Rng& rng, const RandomModuleOptions& opt) {
    auto cx = random_exact_d_complex(A->field(), rng, opt.deg_lo, opt.deg_hi, opt.max_dim);
    std::map<int, std::vector<std::string>> labels;
    for (auto [j, d] : cx.space().support())
        for (int t = 0; t < d; ++t) labels[j].push_back("m" + std::to_string(j) + "_" + std::to_string(t));
    return std::make_shared<DGModule<F>>(opt.side, A, std::move(cx), std::move(labels),
                                         StructTable<F>{});
}

template <FieldType F>
ModPtr<F> random_module(const AlgPtr<F>& A, std::uint64_t seed, RandomModuleOptions opt = {}) {
    Rng rng(seed);
    switch (opt.profile) {
        case RandomProfile::Semifree:
            return random_semifree(A, rng, opt);
        case RandomProfile::TrivialAction:
            return random_trivial_action(A, rng, opt);
        case RandomProfile::ConeOfFree: {
            auto target = random_semifree(A, rng, opt);
            int ng = 1 + static_cast<int>(rng.below(2));
            std::vector<std::pair<std::string, int>> gens;
            for (int g = 0; g < ng; ++g)
                gens.push_back({"c" + std::to_string(g), static_cast<int>(rng.range(opt.deg_lo, opt.deg_hi))});
            auto sf = semifree_module(A, opt.side, gens);
            const F& f = A->field();
            std::vector<Vec<F>> cycles;
            for (auto& [lb, dg] : gens) {
                Vec<F> z = zero_vec(f, target->complex().space().known_dim(dg));
                if (target->complex().space().known(dg + 1)) {
                    auto ker = target->complex().d_block(dg).kernel_basis();
                    for (auto& kv : ker)
                        if (rng.chance(1, 2)) vec_axpy(f, z, kv, rng.scalar(f));
                }
                cycles.push_back(z);
            }
            return cone(semifree_morphism(sf, target, cycles));
        }
        case RandomProfile::DualSemifree: {
            opt.side = opt.side == Side::Left ? Side::Right : Side::Left;
            return dual_module(random_semifree(A, rng, opt));
        }
        case RandomProfile::ShiftedSum: {
            RandomModuleOptions half = opt;
            half.profile = RandomProfile::Semifree;
            half.max_generators = std::max(1, opt.max_generators / 2);
            auto a = random_semifree(A, rng, half);
            auto b = random_trivial_action(A, rng, half);
            return direct_sum(a, shift_module(b, static_cast<int>(rng.range(-2, 2))));
        }
    }
    throw Error("unknown random module profile");
}

}  // namespace dga
