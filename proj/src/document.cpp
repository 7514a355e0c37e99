#include "dga/document.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace dga {

namespace {

const std::set<std::string> kReserved = {"d",     "act",       "basis", "side",  "left",
                                         "right", "truncated", "prime", "rational"};

bool coefficient_like(const std::string& t) {
    return !t.empty() && (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '-' || t[0] == '/');
}

bool valid_label(const std::string& t) {
    if (t.empty() || coefficient_like(t) || kReserved.count(t)) return false;
    for (char c : t) {
        if (std::isalnum(static_cast<unsigned char>(c))) continue;
        if (c == '_' || c == '.' || c == '(' || c == ')' || c == '\'' || c == '#') continue;
        return false;
    }
    return true;
}

struct Tok {
    std::string text;
    int col;
};

std::vector<Tok> tokenize(const std::string& line) {
    std::vector<Tok> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size() || line[i] == '#') break;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start + 1)});
    }
    return out;
}

Document::LinComb parse_lincomb(const std::vector<Tok>& toks, std::size_t from, int line) {
    Document::LinComb lc;
    if (from >= toks.size()) throw ParseError(line, 1, "missing right-hand side");
    if (toks.size() == from + 1 && toks[from].text == "0") return lc;
    std::size_t i = from;
    while (i < toks.size()) {
        Document::Term term;
        if (coefficient_like(toks[i].text)) {
            term.coeff = toks[i].text;
            ++i;
            if (i >= toks.size()) throw ParseError(line, toks[i - 1].col, "coefficient without label");
        }
        if (!valid_label(toks[i].text))
            throw ParseError(line, toks[i].col, "invalid label '" + toks[i].text + "'");
        term.label = toks[i].text;
        ++i;
        lc.terms.push_back(std::move(term));
        if (i < toks.size()) {
            if (toks[i].text != "+") throw ParseError(line, toks[i].col, "expected '+'");
            ++i;
            if (i >= toks.size()) throw ParseError(line, toks[i - 1].col, "trailing '+'");
        }
    }
    return lc;
}

void canonicalize(Document::Section& s) {
    std::sort(s.basis.begin(), s.basis.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::stable_sort(s.rels.begin(), s.rels.end(), [](const auto& a, const auto& b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        if (a.a != b.a) return a.a < b.a;
        return a.b < b.b;
    });
}

}  // namespace

Document parse_document(const std::string& text) {
    Document doc;
    enum class Where { Start, Field, Window, Algebra, Module, Tasks };
    Where where = Where::Start;
    Document::Section* cur = nullptr;
    bool have_field = false, have_window = false, have_algebra = false;
    bool field_filled = false, window_filled = false;

    std::istringstream in(text);
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& t0 = toks[0].text;

        if (t0.front() == '[') {
            std::string head = t0;
            std::string rest;
            if (toks.size() >= 2) rest = toks[1].text;
            if (head == "[field]") {
                where = Where::Field;
                have_field = true;
            } else if (head == "[window]") {
                where = Where::Window;
                have_window = true;
            } else if (head == "[algebra]") {
                if (!have_field || !have_window)
                    throw ParseError(ln, toks[0].col, "[algebra] before [field]/[window]");
                where = Where::Algebra;
                have_algebra = true;
                cur = &doc.algebra;
            } else if (head == "[module") {
                if (!have_algebra) throw ParseError(ln, toks[0].col, "[module ...] before [algebra]");
                if (toks.size() < 2 || rest.size() < 2 || rest.back() != ']')
                    throw ParseError(ln, toks[0].col, "expected [module NAME]");
                std::string name = rest.substr(0, rest.size() - 1);
                if (!valid_label(name)) throw ParseError(ln, toks[1].col, "invalid module name");
                for (auto& m : doc.modules)
                    if (m.name == name) throw ParseError(ln, toks[1].col, "duplicate module name");
                doc.modules.push_back({});
                doc.modules.back().name = name;
                cur = &doc.modules.back();
                where = Where::Module;
            } else if (head == "[tasks]") {
                where = Where::Tasks;
            } else {
                throw ParseError(ln, toks[0].col, "unknown section " + head);
            }
            continue;
        }

        switch (where) {
            case Where::Start:
                throw ParseError(ln, toks[0].col, "content before any section");
            case Where::Field: {
                if (field_filled) throw ParseError(ln, toks[0].col, "duplicate field spec");
                if (t0 == "rational" && toks.size() == 1) {
                    doc.field_kind = Document::FieldKind::Rational;
                } else if (t0 == "prime" && toks.size() == 2) {
                    doc.field_kind = Document::FieldKind::Prime;
                    try {
                        doc.prime = static_cast<std::uint32_t>(std::stoul(toks[1].text));
                    } catch (...) {
                        throw ParseError(ln, toks[1].col, "bad prime");
                    }
                } else {
                    throw ParseError(ln, toks[0].col, "expected 'rational' or 'prime <p>'");
                }
                field_filled = true;
                break;
            }
            case Where::Window: {
                if (window_filled) throw ParseError(ln, toks[0].col, "duplicate window");
                if (toks.size() != 2) throw ParseError(ln, toks[0].col, "expected '<lo> <hi>'");
                try {
                    doc.win_lo = std::stoi(toks[0].text);
                    doc.win_hi = std::stoi(toks[1].text);
                } catch (...) {
                    throw ParseError(ln, toks[0].col, "bad window bounds");
                }
                if (doc.win_lo > doc.win_hi) throw ParseError(ln, toks[0].col, "window lo > hi");
                window_filled = true;
                break;
            }
            case Where::Algebra:
            case Where::Module: {
                if (t0 == "side") {
                    if (where != Where::Module) throw ParseError(ln, toks[0].col, "side outside module");
                    if (toks.size() != 2 || (toks[1].text != "left" && toks[1].text != "right"))
                        throw ParseError(ln, toks[0].col, "expected 'side left|right'");
                    cur->side = toks[1].text == "left" ? Side::Left : Side::Right;
                } else if (t0 == "truncated") {
                    if (toks.size() != 1)
                        throw ParseError(ln, toks[0].col, "unexpected tokens after 'truncated'");
                    cur->truncated = true;
                } else if (t0 == "basis") {
                    if (toks.size() < 3)
                        throw ParseError(ln, toks[0].col, "expected 'basis <deg> <label>...'");
                    int deg;
                    try {
                        deg = std::stoi(toks[1].text);
                    } catch (...) {
                        throw ParseError(ln, toks[1].col, "bad degree");
                    }
                    std::vector<std::string> labels;
                    for (std::size_t i = 2; i < toks.size(); ++i) {
                        if (!valid_label(toks[i].text))
                            throw ParseError(ln, toks[i].col, "invalid label '" + toks[i].text + "'");
                        labels.push_back(toks[i].text);
                    }
                    cur->basis.push_back({deg, std::move(labels)});
                } else if (t0 == "d") {
                    if (toks.size() < 4 || toks[2].text != "=")
                        throw ParseError(ln, toks[0].col, "expected 'd <label> = <lincomb>'");
                    Document::Relation r;
                    r.kind = Document::Relation::Kind::Diff;
                    r.a = toks[1].text;
                    r.rhs = parse_lincomb(toks, 3, ln);
                    r.line = ln;
                    cur->rels.push_back(std::move(r));
                } else if (t0 == "act") {
                    if (where != Where::Module) throw ParseError(ln, toks[0].col, "act outside module");
                    if (toks.size() < 6 || toks[3].text != "=")
                        throw ParseError(ln, toks[0].col, "expected 'act <alabel> <mlabel> = <lincomb>'");
                    Document::Relation r;
                    r.kind = Document::Relation::Kind::Act;
                    r.a = toks[1].text;
                    r.b = toks[2].text;
                    r.rhs = parse_lincomb(toks, 4, ln);
                    r.line = ln;
                    cur->rels.push_back(std::move(r));
                } else if (toks.size() >= 5 && toks[1].text == "*" && toks[3].text == "=") {
                    if (where != Where::Algebra)
                        throw ParseError(ln, toks[1].col, "product entries belong to the algebra");
                    Document::Relation r;
                    r.kind = Document::Relation::Kind::Prod;
                    r.a = toks[0].text;
                    r.b = toks[2].text;
                    r.rhs = parse_lincomb(toks, 4, ln);
                    r.line = ln;
                    cur->rels.push_back(std::move(r));
                } else {
                    throw ParseError(ln, toks[0].col, "unknown entry '" + t0 + "'");
                }
                break;
            }
            case Where::Tasks: {
                std::vector<std::string> task;
                for (auto& t : toks) task.push_back(t.text);
                doc.tasks.push_back(std::move(task));
                break;
            }
        }
    }
    if (!have_field) throw ParseError(ln + 1, 1, "missing field spec");
    if (!field_filled) throw ParseError(ln + 1, 1, "empty [field] section");
    if (!have_window || !window_filled) throw ParseError(ln + 1, 1, "missing window");
    if (!have_algebra) throw ParseError(ln + 1, 1, "missing [algebra] section");
    canonicalize(doc.algebra);
    for (auto& m : doc.modules) canonicalize(m);
    return doc;
}

namespace {

std::string lincomb_str(const Document::LinComb& lc) {
    if (lc.terms.empty()) return "0";
    std::string s;
    for (const auto& t : lc.terms) {
        if (!s.empty()) s += " + ";
        if (!t.coeff.empty()) s += t.coeff + " ";
        s += t.label;
    }
    return s;
}

void serialize_section(std::ostringstream& out, const Document::Section& s, bool is_module) {
    if (is_module) out << "[module " << s.name << "]\n" << "side " << side_name(s.side) << "\n";
    if (s.truncated) out << "truncated\n";
    for (const auto& [deg, labels] : s.basis) {
        out << "basis " << deg;
        for (const auto& l : labels) out << " " << l;
        out << "\n";
    }
    for (const auto& r : s.rels) {
        switch (r.kind) {
            case Document::Relation::Kind::Diff: out << "d " << r.a; break;
            case Document::Relation::Kind::Prod: out << r.a << " * " << r.b; break;
            case Document::Relation::Kind::Act: out << "act " << r.a << " " << r.b; break;
        }
        out << " = " << lincomb_str(r.rhs) << "\n";
    }
}

}  // namespace

std::string serialize_document(const Document& doc) {
    std::ostringstream out;
    out << "[field]\n";
    if (doc.field_kind == Document::FieldKind::Rational)
        out << "rational\n";
    else
        out << "prime " << doc.prime << "\n";
    out << "[window]\n" << doc.win_lo << " " << doc.win_hi << "\n";
    out << "[algebra]\n";
    serialize_section(out, doc.algebra, false);
    for (const auto& m : doc.modules) serialize_section(out, m, true);
    if (!doc.tasks.empty()) {
        out << "[tasks]\n";
        for (const auto& t : doc.tasks) {
            std::string line;
            for (const auto& w : t) {
                if (!line.empty()) line += " ";
                line += w;
            }
            out << line << "\n";
        }
    }
    return out.str();
}

namespace {

/* label -> (degree, index) table for one section */
struct LabelTable {
    std::map<std::string, std::pair<int, int>> at;
    std::map<int, int> dims;

    void add(int deg, const std::string& label, int line) {
        if (at.count(label)) throw ParseError(line, 1, "duplicate label '" + label + "'");
        at[label] = {deg, dims[deg]};
        dims[deg] += 1;
    }
    std::pair<int, int> find(const std::string& label, int line) const {
        auto it = at.find(label);
        if (it == at.end()) throw ParseError(line, 1, "undefined label '" + label + "'");
        return it->second;
    }
};

template <FieldType F>
Vec<F> lincomb_vec(const F& f, const Document::LinComb& lc, const LabelTable& tab, int expect_deg,
                   int dim, int line) {
    Vec<F> v = zero_vec(f, dim);
    for (const auto& t : lc.terms) {
        auto [deg, idx] = tab.find(t.label, line);
        if (deg != expect_deg)
            throw ParseError(line, 1,
                             "label '" + t.label + "' has degree " + std::to_string(deg) +
                                 ", expected " + std::to_string(expect_deg));
        typename F::Elt c = f.one();
        if (!t.coeff.empty() && !f.parse(t.coeff, c))
            throw ParseError(line, 1, "bad coefficient '" + t.coeff + "'");
        v[idx] = f.add(v[idx], c);
    }
    return v;
}

template <FieldType F>
void fill_complex(const F& f, const Document::Section& sec, const LabelTable& tab, Window win,
                  CochainComplex<F>& cx) {
    std::map<int, std::map<int, Vec<F>>> cols;  // degree -> column -> value
    for (const auto& r : sec.rels) {
        if (r.kind != Document::Relation::Kind::Diff) continue;
        auto [deg, idx] = tab.find(r.a, r.line);
        if (!win.known(deg + 1))
            throw ParseError(r.line, 1, "differential of '" + r.a + "' lands outside the window");
        int rows = cx.space().known_dim(deg + 1);
        Vec<F> v = lincomb_vec(f, r.rhs, tab, deg + 1, rows, r.line);
        cols[deg][idx] = std::move(v);
    }
    for (auto& [deg, by_col] : cols) {
        Matrix<F> m(f, cx.space().known_dim(deg + 1), cx.space().known_dim(deg));
        for (auto& [idx, v] : by_col) m.set_col(idx, v);
        cx.set_d(deg, std::move(m));
    }
}

}  // namespace

template <FieldType F>
Universe<F> materialize(const Document& doc, const F& f) {
    Universe<F> u{f, Window(doc.win_lo, doc.win_hi, true, true), nullptr, {}};

    LabelTable atab;
    for (const auto& [deg, labels] : doc.algebra.basis) {
        if (deg < doc.win_lo || deg > doc.win_hi)
            throw ParseError(1, 1, "algebra basis degree " + std::to_string(deg) + " outside window");
        for (const auto& l : labels) atab.add(deg, l, 1);
    }
    Window awin(std::min(0, doc.win_lo), doc.win_hi, true, !doc.algebra.truncated);
    GradedSpace asp(awin);
    for (auto [deg, d] : atab.dims) asp.set_dim(deg, d);
    CochainComplex<F> acx(f, asp);
    fill_complex(f, doc.algebra, atab, awin, acx);
    StructTable<F> prod;
    std::map<int, std::vector<std::string>> alabels;
    for (const auto& [deg, labels] : doc.algebra.basis)
        for (const auto& l : labels) alabels[deg].push_back(l);
    for (const auto& r : doc.algebra.rels) {
        if (r.kind != Document::Relation::Kind::Prod) continue;
        auto [da, ia] = atab.find(r.a, r.line);
        auto [db, ib] = atab.find(r.b, r.line);
        if (da == 0 || db == 0)
            throw ParseError(r.line, 1, "unit products are implicit; do not declare them");
        if (!awin.known(da + db))
            throw ParseError(r.line, 1,
                             "product '" + r.a + " * " + r.b + "' lands outside the window");
        int dim = asp.dim(da + db).value_or(0);
        Vec<F> v = lincomb_vec(f, r.rhs, atab, da + db, dim, r.line);
        if (vec_is_zero(f, v)) continue;
        auto& tab = prod[{da, db}];
        if (tab.empty())
            tab.assign(asp.dim(da).value_or(0), std::vector<Vec<F>>(asp.dim(db).value_or(0)));
        tab[ia][ib] = std::move(v);
    }
    u.alg = std::make_shared<DGAlgebra<F>>(f, std::move(acx), std::move(alabels), std::move(prod));

    for (const auto& sec : doc.modules) {
        LabelTable mtab;
        for (const auto& [deg, labels] : sec.basis) {
            if (deg < doc.win_lo || deg > doc.win_hi)
                throw ParseError(1, 1, "module basis degree outside window");
            for (const auto& l : labels) mtab.add(deg, l, 1);
        }
        Window mwin(doc.win_lo, doc.win_hi, true, !sec.truncated);
        GradedSpace msp(mwin);
        for (auto [deg, d] : mtab.dims) msp.set_dim(deg, d);
        CochainComplex<F> mcx(f, msp);
        fill_complex(f, sec, mtab, mwin, mcx);
        StructTable<F> act;
        for (const auto& r : sec.rels) {
            if (r.kind != Document::Relation::Kind::Act) continue;
            auto [da, ia] = atab.find(r.a, r.line);
            auto [dm, im] = mtab.find(r.b, r.line);
            if (da == 0)
                throw ParseError(r.line, 1, "the unit acts as the identity; do not declare it");
            if (!mwin.known(da + dm)) throw ParseError(r.line, 1, "action lands outside the window");
            int dim = msp.dim(da + dm).value_or(0);
            Vec<F> v = lincomb_vec(f, r.rhs, mtab, da + dm, dim, r.line);
            if (vec_is_zero(f, v)) continue;
            auto& tab = act[{da, dm}];
            if (tab.empty())
                tab.assign(asp.dim(da).value_or(0), std::vector<Vec<F>>(msp.dim(dm).value_or(0)));
            tab[ia][im] = std::move(v);
        }
        std::map<int, std::vector<std::string>> mlabels;
        for (const auto& [deg, labels] : sec.basis)
            for (const auto& l : labels) mlabels[deg].push_back(l);
        u.modules.push_back(
            {sec.name, std::make_shared<DGModule<F>>(sec.side, u.alg, std::move(mcx),
                                                     std::move(mlabels), std::move(act))});
    }
    return u;
}

namespace {

std::string sanitize_label(const std::string& raw, std::set<std::string>& used) {
    std::string s;
    for (char c : raw) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '(' ||
            c == ')' || c == '\'' || c == '#')
            s += c;
        else
            s += '_';
    }
    if (s.empty() || coefficient_like(s) || kReserved.count(s)) s = "b_" + s;
    std::string cand = s;
    int n = 2;
    while (used.count(cand)) cand = s + "#" + std::to_string(n++);
    used.insert(cand);
    return cand;
}

template <FieldType F>
Document::LinComb vec_to_lincomb(const F& f, const Vec<F>& v,
                                 const std::vector<std::string>& labels) {
    Document::LinComb lc;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (f.is_zero(v[i])) continue;
        Document::Term t;
        t.coeff = f.to_string(v[i]);
        t.label = labels[i];
        lc.terms.push_back(std::move(t));
    }
    return lc;
}

/* basis lines plus differential entries, with sanitized labels */
template <FieldType F>
std::map<int, std::vector<std::string>> emit_basis(
    const CochainComplex<F>& cx, const std::map<int, std::vector<std::string>>& labels, Window win,
    Document::Section& sec) {
    std::set<std::string> used;
    std::map<int, std::vector<std::string>> out;
    for (int j = win.lo; j <= win.hi; ++j) {
        if (!cx.space().known(j)) continue;
        int d = cx.space().dim(j).value_or(0);
        if (d == 0) continue;
        std::vector<std::string> ls;
        auto it = labels.find(j);
        for (int t = 0; t < d; ++t) {
            std::string raw = it != labels.end() && t < static_cast<int>(it->second.size())
                                  ? it->second[t]
                                  : "e" + std::to_string(j) + "_" + std::to_string(t);
            ls.push_back(sanitize_label(raw, used));
        }
        sec.basis.push_back({j, ls});
        out[j] = std::move(ls);
    }
    for (int j = win.lo; j < win.hi; ++j) {
        if (!cx.d_known(j)) continue;
        auto itj = out.find(j);
        if (itj == out.end()) continue;
        auto itn = out.find(j + 1);
        if (itn == out.end()) continue;
        Matrix<F> m = cx.d_block(j);
        for (std::size_t c = 0; c < m.cols(); ++c) {
            Vec<F> col = m.col(c);
            if (vec_is_zero(cx.field(), col)) continue;
            Document::Relation r;
            r.kind = Document::Relation::Kind::Diff;
            r.a = itj->second[c];
            r.rhs = vec_to_lincomb(cx.field(), col, itn->second);
            sec.rels.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace

template <FieldType F>
Document document_from(const AlgPtr<F>& alg,
                       const std::vector<std::pair<std::string, ModPtr<F>>>& modules, Window win) {
    const F& f = alg->field();
    Document doc;
    if constexpr (F::kIsPrime) {
        doc.field_kind = Document::FieldKind::Prime;
        doc.prime = f.characteristic();
    } else {
        doc.field_kind = Document::FieldKind::Rational;
    }
    // widen the window to cover every module's data range and the algebra
    win.lo = std::min(win.lo, 0);
    win.hi = std::max(win.hi, alg->window().hi);
    for (const auto& [name, M] : modules) {
        if (!M->complex().space().support().empty()) {
            win.lo = std::min(win.lo, M->complex().space().support().begin()->first);
            win.hi = std::max(win.hi, M->complex().space().support().rbegin()->first);
        }
        win.lo = std::min(win.lo, M->window().lo);
    }
    doc.win_lo = win.lo;
    doc.win_hi = win.hi;

    Window awin(std::min(0, win.lo), win.hi);
    doc.algebra.truncated = !alg->window().zero_above;
    auto alabels = emit_basis(alg->complex(), alg->all_labels(), awin, doc.algebra);
    for (auto [i, di] : alg->complex().space().support()) {
        if (i < 2 || i > win.hi) continue;
        for (auto [j, dj] : alg->complex().space().support()) {
            if (j < 2 || i + j > win.hi || !alg->known(i + j)) continue;
            for (int a = 0; a < di; ++a)
                for (int b = 0; b < dj; ++b) {
                    Vec<F> v = alg->product(i, a, j, b);
                    if (vec_is_zero(f, v)) continue;
                    Document::Relation r;
                    r.kind = Document::Relation::Kind::Prod;
                    r.a = alabels.at(i)[a];
                    r.b = alabels.at(j)[b];
                    r.rhs = vec_to_lincomb(f, v, alabels.at(i + j));
                    doc.algebra.rels.push_back(std::move(r));
                }
        }
    }

    for (const auto& [name, M] : modules) {
        Document::Section sec;
        sec.name = name;
        sec.side = M->side();
        sec.truncated = !M->window().zero_above;
        Window mwin(win.lo, win.hi);
        auto mlabels = emit_basis(M->complex(), M->all_labels(), mwin, sec);
        for (auto [i, di] : alg->complex().space().support()) {
            if (i < 2) continue;
            for (int j = win.lo; j <= win.hi; ++j) {
                if (i + j > win.hi || !M->known(j) || !M->known(i + j)) continue;
                int dj = M->complex().space().dim(j).value_or(0);
                if (!mlabels.count(j)) continue;
                for (int a = 0; a < di; ++a)
                    for (int b = 0; b < dj; ++b) {
                        Vec<F> v = M->action(i, a, j, b);
                        if (vec_is_zero(f, v)) continue;
                        Document::Relation r;
                        r.kind = Document::Relation::Kind::Act;
                        r.a = alabels.at(i)[a];
                        r.b = mlabels.at(j)[b];
                        r.rhs = vec_to_lincomb(f, v, mlabels.at(i + j));
                        sec.rels.push_back(std::move(r));
                    }
            }
        }
        doc.modules.push_back(std::move(sec));
    }
    return parse_document(serialize_document(doc));
}

template Universe<RationalField> materialize(const Document&, const RationalField&);
template Universe<PrimeField> materialize(const Document&, const PrimeField&);
template Document document_from(const AlgPtr<RationalField>&,
                                const std::vector<std::pair<std::string, ModPtr<RationalField>>>&,
                                Window);
template Document document_from(const AlgPtr<PrimeField>&,
                                const std::vector<std::pair<std::string, ModPtr<PrimeField>>>&,
                                Window);

}  // namespace dga
