#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dga/complex.hpp"

namespace dga {

enum class Side { Left, Right };

inline std::string side_name(Side s) { return s == Side::Left ? "left" : "right"; }

/* Structure-constant table: key (i, j) -> table[alpha][beta] = vector in
 * degree i+j.  Absent keys and empty vectors mean zero (zero-compression).
 * For algebras: a_{(i,alpha)} * a_{(j,beta)}.
 * For left modules: a_{(i,alpha)} . m_{(j,beta)}.
 * For right modules: m_{(j,beta)} . a_{(i,alpha)}. */
template <FieldType F>
using StructTable = std::map<std::pair<int, int>, std::vector<std::vector<Vec<F>>>>;

using ValidationReport = std::vector<std::string>;

/* Cochain DG algebra with R^0 = k spanned by the unit and R^1 = 0. */
template <FieldType F>
class DGAlgebra {
public:
    DGAlgebra(const F& f, CochainComplex<F> cx, std::map<int, std::vector<std::string>> labels,
              StructTable<F> prod)
        : fld_(f), cx_(std::move(cx)), labels_(std::move(labels)), prod_(std::move(prod)) {}

    const F& field() const { return fld_; }
    const CochainComplex<F>& complex() const { return cx_; }
    const Window& window() const { return cx_.window(); }
    std::optional<int> dim(int j) const { return cx_.dim(j); }
    bool known(int j) const { return cx_.space().known(j); }

    const std::vector<std::string>& labels(int j) const {
        static const std::vector<std::string> none;
        auto it = labels_.find(j);
        return it == labels_.end() ? none : it->second;
    }
    const std::map<int, std::vector<std::string>>& all_labels() const { return labels_; }

    ExtInt sup() const { return cx_.cohomology().h.inf_sup_amp().sup; }

    /* Basis product a_{(i,alpha)} * a_{(j,beta)} as a vector in A^{i+j}.
     * Degree i+j must be known. */
    Vec<F> product(int i, std::size_t alpha, int j, std::size_t beta) const {
        int n = cx_.space().known_dim(i + j);
        if (i == 0) return unit_vec(fld_, n, beta);
        if (j == 0) return unit_vec(fld_, n, alpha);
        auto it = prod_.find({i, j});
        if (it == prod_.end()) return zero_vec(fld_, n);
        const auto& v = it->second[alpha][beta];
        if (v.empty()) return zero_vec(fld_, n);
        return v;
    }

    /* Left multiplication by a_{(i,alpha)} as a matrix A^j -> A^{i+j}. */
    Matrix<F> left_mul(int i, std::size_t alpha, int j) const {
        Matrix<F> m(fld_, cx_.space().known_dim(i + j), cx_.space().known_dim(j));
        for (std::size_t b = 0; b < static_cast<std::size_t>(cx_.space().known_dim(j)); ++b)
            m.set_col(b, product(i, alpha, j, b));
        return m;
    }

    /* u * v for u in A^i, v in A^j. */
    Vec<F> mul_vec(int i, const Vec<F>& u, int j, const Vec<F>& v) const {
        Vec<F> out = zero_vec(fld_, cx_.space().known_dim(i + j));
        for (std::size_t a = 0; a < u.size(); ++a) {
            if (fld_.is_zero(u[a])) continue;
            for (std::size_t b = 0; b < v.size(); ++b) {
                if (fld_.is_zero(v[b])) continue;
                vec_axpy(fld_, out, product(i, a, j, b), fld_.mul(u[a], v[b]));
            }
        }
        return out;
    }

    ValidationReport validate() const;

private:
    F fld_;
    CochainComplex<F> cx_;
    std::map<int, std::vector<std::string>> labels_;
    StructTable<F> prod_;
};

template <FieldType F>
using AlgPtr = std::shared_ptr<const DGAlgebra<F>>;

/* DG left or right module over a DGAlgebra, locally finite on its window. */
template <FieldType F>
class DGModule {
public:
    DGModule(Side side, AlgPtr<F> alg, CochainComplex<F> cx,
             std::map<int, std::vector<std::string>> labels, StructTable<F> act)
        : side_(side), alg_(std::move(alg)), cx_(std::move(cx)), labels_(std::move(labels)),
          act_(std::move(act)) {}

    Side side() const { return side_; }
    const AlgPtr<F>& algebra() const { return alg_; }
    const F& field() const { return cx_.field(); }
    const CochainComplex<F>& complex() const { return cx_; }
    const Window& window() const { return cx_.window(); }
    std::optional<int> dim(int j) const { return cx_.dim(j); }
    bool known(int j) const { return cx_.space().known(j); }

    const std::vector<std::string>& labels(int j) const {
        static const std::vector<std::string> none;
        auto it = labels_.find(j);
        return it == labels_.end() ? none : it->second;
    }
    const std::map<int, std::vector<std::string>>& all_labels() const { return labels_; }
    const StructTable<F>& action_table() const { return act_; }

    /* Action of the algebra basis element (i, alpha) on the module basis
     * element (j, beta): a.m for left modules, m.a for right modules.
     * Result lives in M^{i+j}. */
    Vec<F> action(int i, std::size_t alpha, int j, std::size_t beta) const {
        int n = cx_.space().known_dim(i + j);
        if (i == 0) return unit_vec(fld(), n, beta);
        auto it = act_.find({i, j});
        if (it == act_.end()) return zero_vec(fld(), n);
        const auto& v = it->second[alpha][beta];
        if (v.empty()) return zero_vec(fld(), n);
        return v;
    }

    /* Action of (i, alpha) as a matrix M^j -> M^{i+j}. */
    Matrix<F> action_matrix(int i, std::size_t alpha, int j) const {
        Matrix<F> m(fld(), cx_.space().known_dim(i + j), cx_.space().known_dim(j));
        for (std::size_t b = 0; b < m.cols(); ++b) m.set_col(b, action(i, alpha, j, b));
        return m;
    }

    /* u.v (left) / v.u (right) for u in A^i, v in M^j. */
    Vec<F> act_vec(int i, const Vec<F>& u, int j, const Vec<F>& v) const {
        Vec<F> out = zero_vec(fld(), cx_.space().known_dim(i + j));
        for (std::size_t a = 0; a < u.size(); ++a) {
            if (fld().is_zero(u[a])) continue;
            for (std::size_t b = 0; b < v.size(); ++b) {
                if (fld().is_zero(v[b])) continue;
                vec_axpy(fld(), out, action(i, a, j, b), fld().mul(u[a], v[b]));
            }
        }
        return out;
    }

    ValidationReport validate() const;

private:
    const F& fld() const { return cx_.field(); }
    Side side_;
    AlgPtr<F> alg_;
    CochainComplex<F> cx_;
    std::map<int, std::vector<std::string>> labels_;
    StructTable<F> act_;
};

template <FieldType F>
using ModPtr = std::shared_ptr<const DGModule<F>>;

/* Degree-0 morphism of DG modules over the same algebra and side. */
template <FieldType F>
struct DGMorphism {
    ModPtr<F> src, dst;
    std::map<int, Matrix<F>> blocks;  // blocks[j] : src^j -> dst^j, zero blocks omitted

    Matrix<F> block(int j) const {
        auto it = blocks.find(j);
        if (it != blocks.end()) return it->second;
        return Matrix<F>(src->field(), dst->complex().space().known_dim(j),
                         src->complex().space().known_dim(j));
    }

    Vec<F> apply(int j, const Vec<F>& v) const { return block(j).apply(v); }

    ValidationReport validate() const;
};

// ---------------------------------------------------------------------------
// validation

template <FieldType F>
ValidationReport DGAlgebra<F>::validate() const {
    ValidationReport rep;
    const Window& w = window();
    if (!w.known(0)) {
        rep.push_back("degree 0 is outside the window; cannot verify the unit");
        return rep;
    }
    if (cx_.space().known_dim(0) != 1) rep.push_back("degree-0 component is not one-dimensional");
    if (!w.zero_below) rep.push_back("algebra is not certified zero in negative degrees");
    for (auto [j, d] : cx_.space().support()) {
        if (j < 0 && d != 0) rep.push_back("nonzero component in negative degree " + std::to_string(j));
    }
    if (w.known(1) && cx_.space().known_dim(1) != 0) rep.push_back("degree-1 component nonzero");
    try {
        cx_.check_d2();
    } catch (const InvalidComplexError& e) {
        rep.push_back(e.what());
    }
    if (w.known(1) && !cx_.d_block(0).is_zero()) rep.push_back("d(1) != 0");

    auto deg_entries = [&](int j) { return cx_.space().dim(j).value_or(0); };
    std::vector<int> degs;
    degs.push_back(0);
    for (auto [j, d] : cx_.space().support())
        if (j >= 2 && d > 0) degs.push_back(j);

    // Leibniz: d(ab) = (da)b + (-1)^{|a|} a(db) wherever the target degree is known
    for (int i : degs)
        for (int j : degs) {
            if (!w.known(i + j) || !w.known(i + j + 1)) continue;
            for (int a = 0; a < deg_entries(i); ++a)
                for (int b = 0; b < deg_entries(j); ++b) {
                    Vec<F> lhs = cx_.d_block(i + j).apply(product(i, a, j, b));
                    Vec<F> da = cx_.d_block(i).col(a);
                    Vec<F> db = cx_.d_block(j).col(b);
                    Vec<F> rhs = mul_vec(i + 1, da, j, unit_vec(fld_, deg_entries(j), b));
                    Vec<F> adb = mul_vec(i, unit_vec(fld_, deg_entries(i), a), j + 1, db);
                    if (i % 2 == 0)
                        vec_axpy(fld_, rhs, adb, fld_.one());
                    else
                        vec_axpy(fld_, rhs, adb, fld_.neg(fld_.one()));
                    for (std::size_t t = 0; t < lhs.size(); ++t)
                        if (!fld_.eq(lhs[t], rhs[t])) {
                            rep.push_back("Leibniz violated for pair (" + labels(i)[a] + ", " +
                                          labels(j)[b] + ") in degrees (" + std::to_string(i) + "," +
                                          std::to_string(j) + ")");
                            goto next_pair;
                        }
                next_pair:;
                }
        }

    // associativity: (ab)c = a(bc) wherever the product degrees are known
    for (int i : degs)
        for (int j : degs)
            for (int l : degs) {
                if (!w.known(i + j) || !w.known(j + l) || !w.known(i + j + l)) continue;
                for (int a = 0; a < deg_entries(i); ++a)
                    for (int b = 0; b < deg_entries(j); ++b)
                        for (int c = 0; c < deg_entries(l); ++c) {
                            Vec<F> ab = product(i, a, j, b);
                            Vec<F> bc = product(j, b, l, c);
                            Vec<F> lhs = mul_vec(i + j, ab, l, unit_vec(fld_, deg_entries(l), c));
                            Vec<F> rhs = mul_vec(i, unit_vec(fld_, deg_entries(i), a), j + l, bc);
                            for (std::size_t t = 0; t < lhs.size(); ++t)
                                if (!fld_.eq(lhs[t], rhs[t])) {
                                    rep.push_back("associativity violated at (" + labels(i)[a] + ", " +
                                                  labels(j)[b] + ", " + labels(l)[c] + ")");
                                    goto next_triple;
                                }
                        next_triple:;
                        }
            }
    return rep;
}

template <FieldType F>
ValidationReport DGModule<F>::validate() const {
    ValidationReport rep;
    const F& f = fld();
    const DGAlgebra<F>& A = *alg_;
    try {
        cx_.check_d2();
    } catch (const InvalidComplexError& e) {
        rep.push_back(e.what());
    }

    std::vector<int> adegs;
    adegs.push_back(0);
    for (auto [j, d] : A.complex().space().support())
        if (j >= 2 && d > 0) adegs.push_back(j);
    std::vector<int> mdegs;
    for (auto [j, d] : cx_.space().support())
        if (d > 0) mdegs.push_back(j);

    auto adim = [&](int j) { return A.complex().space().dim(j).value_or(0); };
    auto mdim = [&](int j) { return cx_.space().dim(j).value_or(0); };
    const Window& w = window();

    // action Leibniz; for left modules d(a.m) = (da).m + (-1)^{|a|} a.(dm),
    // for right modules d(m.a) = (dm).a + (-1)^{|m|} m.(da)
    for (int i : adegs)
        for (int j : mdegs) {
            if (!w.known(i + j) || !w.known(i + j + 1) || !A.known(i + 1)) continue;
            for (int a = 0; a < adim(i); ++a)
                for (int m = 0; m < mdim(j); ++m) {
                    Vec<F> lhs = cx_.d_block(i + j).apply(action(i, a, j, m));
                    Vec<F> da = A.complex().d_block(i).col(a);
                    Vec<F> dm = cx_.d_block(j).col(m);
                    Vec<F> term_da = act_vec(i + 1, da, j, unit_vec(f, mdim(j), m));
                    Vec<F> term_dm = act_vec(i, unit_vec(f, adim(i), a), j + 1, dm);
                    Vec<F> rhs;
                    if (side_ == Side::Left) {
                        rhs = term_da;
                        vec_axpy(f, rhs, term_dm, i % 2 == 0 ? f.one() : f.neg(f.one()));
                    } else {
                        rhs = term_dm;
                        vec_axpy(f, rhs, term_da, j % 2 == 0 ? f.one() : f.neg(f.one()));
                    }
                    for (std::size_t t = 0; t < lhs.size(); ++t)
                        if (!f.eq(lhs[t], rhs[t])) {
                            rep.push_back("action Leibniz violated for (" + A.labels(i)[a] + ", " +
                                          labels(j)[m] + ") in degrees (" + std::to_string(i) + "," +
                                          std::to_string(j) + ")");
                            goto next_pair;
                        }
                next_pair:;
                }
        }

    // associativity of the action
    for (int i : adegs)
        for (int i2 : adegs)
            for (int j : mdegs) {
                if (!A.known(i + i2) || !w.known(i + i2 + j) || !w.known(i2 + j) || !w.known(i + j))
                    continue;
                for (int a = 0; a < adim(i); ++a)
                    for (int b = 0; b < adim(i2); ++b)
                        for (int m = 0; m < mdim(j); ++m) {
                            Vec<F> lhs, rhs;
                            if (side_ == Side::Left) {
                                // a.(b.m) = (ab).m
                                Vec<F> bm = action(i2, b, j, m);
                                lhs = act_vec(i, unit_vec(f, adim(i), a), i2 + j, bm);
                                Vec<F> ab = A.product(i, a, i2, b);
                                rhs = act_vec(i + i2, ab, j, unit_vec(f, mdim(j), m));
                            } else {
                                // (m.a).b = m.(ab)
                                Vec<F> ma = action(i, a, j, m);
                                lhs = act_vec(i2, unit_vec(f, adim(i2), b), i + j, ma);
                                Vec<F> ab = A.product(i, a, i2, b);
                                rhs = act_vec(i + i2, ab, j, unit_vec(f, mdim(j), m));
                            }
                            for (std::size_t t = 0; t < lhs.size(); ++t)
                                if (!f.eq(lhs[t], rhs[t])) {
                                    rep.push_back("action associativity violated at (" +
                                                  A.labels(i)[a] + ", " + A.labels(i2)[b] + ", " +
                                                  labels(j)[m] + ")");
                                    goto next_triple;
                                }
                        next_triple:;
                        }
            }
    return rep;
}

template <FieldType F>
ValidationReport DGMorphism<F>::validate() const {
    ValidationReport rep;
    const F& f = src->field();
    if (src->algebra().get() != dst->algebra().get())
        rep.push_back("source and target are modules over different algebras");
    if (src->side() != dst->side()) rep.push_back("source and target have different sides");
    Window w = Window::intersect(src->window(), dst->window());
    // chain map: f(d m) = d(f m)
    for (int j = w.lo; j + 1 <= w.hi; ++j) {
        auto lhs = block(j + 1).mul(src->complex().d_block(j));
        auto rhs = dst->complex().d_block(j).mul(block(j));
        if (!(lhs == rhs)) rep.push_back("morphism does not commute with d at degree " + std::to_string(j));
    }
    // A-linearity
    const DGAlgebra<F>& A = *src->algebra();
    for (auto [i, ad] : A.complex().space().support()) {
        if (i < 2) continue;
        for (int j = w.lo; j <= w.hi; ++j) {
            if (!w.known(i + j)) continue;
            for (int a = 0; a < ad; ++a) {
                auto lhs = block(i + j).mul(src->action_matrix(i, a, j));
                auto rhs = dst->action_matrix(i, a, j).mul(block(j));
                if (!(lhs == rhs))
                    rep.push_back("morphism is not A-linear at (" + A.labels(i)[a] + ", degree " +
                                  std::to_string(j) + ")");
            }
        }
    }
    (void)f;
    return rep;
}

}  // namespace dga
