#include "dga/runner.hpp"

#include <functional>
#include <sstream>

#include "dga/theorems.hpp"

namespace dga {

namespace {

struct CommandError : Error {
    using Error::Error;
};

struct Block {
    std::vector<std::string> lines;
    std::string status = "ok";

    void add(const std::string& s) { lines.push_back(s); }

    std::string render(const std::string& cmd) const {
        std::ostringstream out;
        out << "#report v1\n";
        out << "command: " << cmd << "\n";
        for (const auto& l : lines) out << l << "\n";
        out << "status: " << status << "\n";
        out << "#end report\n";
        return out.str();
    }
};

int exit_for(const std::string& status) {
    if (status == "ok") return 0;
    if (status == "counterexample") return 1;
    if (status == "window-limited") return 2;
    return 3;
}

// ---------------------------------------------------------------- expressions

struct Expr {
    enum class Kind { Name, R, K, Dual, Shift, Sum } kind;
    std::string name;
    int arg = 0;
    std::vector<Expr> sub;
};

struct ExprParser {
    const std::string& s;
    std::size_t i = 0;

    explicit ExprParser(const std::string& text) : s(text) {}

    char peek() const { return i < s.size() ? s[i] : '\0'; }
    void expect(char c) {
        if (peek() != c) throw CommandError("bad module expression '" + s + "'");
        ++i;
    }

    Expr parse() {
        Expr e = parse_expr();
        if (i != s.size()) throw CommandError("trailing characters in expression '" + s + "'");
        return e;
    }

    Expr parse_expr() {
        std::size_t start = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' ||
                                s[i] == '.' || s[i] == '\'' || s[i] == '#'))
            ++i;
        std::string head = s.substr(start, i - start);
        if (head.empty()) throw CommandError("bad module expression '" + s + "'");
        if (peek() == '(') {
            ++i;
            Expr e;
            if (head == "dual") {
                e.kind = Expr::Kind::Dual;
                e.sub.push_back(parse_expr());
            } else if (head == "shift") {
                e.kind = Expr::Kind::Shift;
                e.sub.push_back(parse_expr());
                expect(',');
                std::size_t ns = i;
                if (peek() == '-') ++i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (ns == i) throw CommandError("expected integer in shift()");
                e.arg = std::stoi(s.substr(ns, i - ns));
            } else if (head == "sum") {
                e.kind = Expr::Kind::Sum;
                e.sub.push_back(parse_expr());
                expect(',');
                e.sub.push_back(parse_expr());
            } else {
                throw CommandError("unknown function '" + head + "' in expression");
            }
            expect(')');
            return e;
        }
        Expr e;
        if (head == "R")
            e.kind = Expr::Kind::R;
        else if (head == "k")
            e.kind = Expr::Kind::K;
        else {
            e.kind = Expr::Kind::Name;
            e.name = head;
        }
        return e;
    }
};

template <FieldType F>
ModPtr<F> eval_expr(const Expr& e, const Universe<F>& u, Side side) {
    switch (e.kind) {
        case Expr::Kind::R: return algebra_as_module(u.alg, side);
        case Expr::Kind::K: return trivial_k_module(u.alg, side);
        case Expr::Kind::Name: {
            const ModPtr<F>* m = u.find(e.name);
            if (!m) throw CommandError("unknown module '" + e.name + "'");
            if ((*m)->side() != side)
                throw CommandError("module '" + e.name + "' is a " + side_name((*m)->side()) +
                                   " module; a " + side_name(side) + " module is required here");
            return *m;
        }
        case Expr::Kind::Dual:
            return dual_module(eval_expr(e.sub[0], u, side == Side::Left ? Side::Right : Side::Left));
        case Expr::Kind::Shift: return shift_module(eval_expr(e.sub[0], u, side), e.arg);
        case Expr::Kind::Sum:
            return direct_sum(eval_expr(e.sub[0], u, side), eval_expr(e.sub[1], u, side));
    }
    throw CommandError("bad expression");
}

// ------------------------------------------------------------------ utilities

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& w : v) {
        if (!s.empty()) s += " ";
        s += w;
    }
    return s;
}

struct Flags {
    std::vector<std::string> positional;
    std::map<std::string, std::string> named;
    std::map<std::string, std::vector<std::string>> multi;
};

Flags split_flags(const std::vector<std::string>& args, std::size_t from,
                  const std::map<std::string, int>& arity) {
    Flags fl;
    for (std::size_t i = from; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) == 0) {
            auto it = arity.find(a);
            if (it == arity.end()) throw CommandError("unknown flag " + a);
            std::vector<std::string> vals;
            for (int t = 0; t < it->second; ++t) {
                if (++i >= args.size()) throw CommandError("missing value for " + a);
                vals.push_back(args[i]);
            }
            if (it->second == 1) fl.named[a] = vals[0];
            fl.multi[a] = vals;
        } else {
            fl.positional.push_back(a);
        }
    }
    return fl;
}

long parse_long(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        throw CommandError("bad " + what + " '" + s + "'");
    }
}

std::string certainty_str(bool exact) { return exact ? "exact" : "window-limited"; }

// ------------------------------------------------------------------ commands

template <FieldType F>
void cmd_validate(const Universe<F>& u, Block& b) {
    auto rep = u.alg->validate();
    b.add("algebra: " + (rep.empty() ? std::string("valid") : std::string("invalid")));
    for (auto& r : rep) b.add("  violation: " + r);
    bool any = !rep.empty();
    for (auto& [name, M] : u.modules) {
        auto mrep = M->validate();
        b.add("module " + name + ": " + (mrep.empty() ? "valid" : "invalid"));
        for (auto& r : mrep) b.add("  violation: " + r);
        any = any || !mrep.empty();
    }
    if (any) b.status = "invalid";
}

template <FieldType F>
void cmd_cohomology(const Universe<F>& u, const ModPtr<F>& M, Block& b) {
    auto h = M->complex().cohomology();
    b.add("window: " + h.h.window().str());
    for (int j = h.h.window().lo; j <= h.h.window().hi; ++j) {
        int d = h.h.dim(j).value_or(0);
        if (d == 0) continue;
        b.add("H^" + std::to_string(j) + " dim = " + std::to_string(d));
        auto it = h.reps.find(j);
        if (it == h.reps.end()) continue;
        for (std::size_t c = 0; c < it->second.cols(); ++c) {
            std::string rep;
            auto col = it->second.col(c);
            const auto& labels = M->labels(j);
            for (std::size_t r = 0; r < col.size(); ++r) {
                if (u.fld.is_zero(col[r])) continue;
                if (!rep.empty()) rep += " + ";
                rep += u.fld.to_string(col[r]) + " " + labels[r];
            }
            b.add("  class " + std::to_string(c) + ": " + (rep.empty() ? "0" : rep));
        }
    }
    auto isa = h.h.inf_sup_amp();
    b.add("inf = " + isa.inf.str() + " (" + certainty_str(isa.inf_exact) + ")");
    b.add("sup = " + isa.sup.str() + " (" + certainty_str(isa.sup_exact) + ")");
    b.add("amp = " + isa.amp.str());
}

template <FieldType F>
void cmd_betti(const Universe<F>& u, const ModPtr<F>& M, Window win, Block& b) {
    auto r = betti_numbers(M, win);
    b.add("window: " + r.window.str());
    for (int j = std::min(win.lo, r.window.lo); j <= std::min(win.hi, r.window.hi); ++j) {
        if (!r.window.known(j)) continue;
        b.add("beta " + std::to_string(j) + " = " + std::to_string(r.beta.count(j) ? r.beta.at(j) : 0));
    }
    if (r.terminated && r.certified)
        b.add("terminated: yes (all higher Betti numbers vanish)");
    else
        b.add("terminated: no (values above the window are unknown)");
    (void)u;
}

template <FieldType F>
void cmd_bass(const Universe<F>& u, const ModPtr<F>& M, Window win, Block& b) {
    GradedSpace mu = bass_numbers(M, win);
    b.add("window: " + mu.window().str());
    for (int j = std::max(win.lo, mu.window().lo); j <= std::min(win.hi, mu.window().hi); ++j)
        b.add("mu " + std::to_string(j) + " = " + std::to_string(mu.dim(j).value_or(0)));
    (void)u;
}

template <FieldType F>
void cmd_pcd(const Universe<F>& u, const ModPtr<F>& M, Window win, Block& b) {
    auto p = pcd(M, win);
    if (p.exact) {
        b.add("pcd = " + p.value.str() + " (exact)");
    } else {
        b.add("pcd = at-least " + p.value.str() + " (window-limited)");
        b.status = "window-limited";
    }
    (void)u;
}

template <FieldType F>
void cmd_amp(const Universe<F>& u, const ModPtr<F>& M, Block& b) {
    auto isa = M->complex().cohomology().h.inf_sup_amp();
    b.add("inf = " + isa.inf.str() + " (" + certainty_str(isa.inf_exact) + ")");
    b.add("sup = " + isa.sup.str() + " (" + certainty_str(isa.sup_exact) + ")");
    b.add("amp = " + isa.amp.str() + " (" + certainty_str(isa.amp_exact()) + ")");
    if (!isa.amp_exact()) b.status = "window-limited";
    (void)u;
}

template <FieldType F>
void cmd_tensor(const Universe<F>& u, const ModPtr<F>& P, const ModPtr<F>& M, Window win, Block& b) {
    auto tw = build_tower(M, win.hi);
    auto t = derived_inf_sup_amp(P, M, win, &tw);
    GradedSpace h = derived_tensor_cohomology(P, M, win);
    b.add("window: " + h.window().str());
    for (auto [j, d] : h.support()) b.add("H^" + std::to_string(j) + " dim = " + std::to_string(d));
    b.add("inf = " + t.inf.str() + " (" + certainty_str(t.inf_exact) + ")");
    b.add("sup = " + t.sup.str() + " (" + certainty_str(t.sup_exact) + ")");
    b.add("amp = " + t.amp.str());
    (void)u;
}

template <FieldType F>
void cmd_series(const Universe<F>& u, const ModPtr<F>& P, const ModPtr<F>& M, Window win, Block& b) {
    auto tw = build_tower(M, win.hi);
    WindowSeries s = f_series(P, M, win, &tw);
    b.add("f = " + s.str());
    b.add("window: " + s.win.str());
    auto d = s.degree();
    b.add("deg = " + d.value.str() + " (" + certainty_str(d.exact) + ")");
    (void)u;
}

template <FieldType F>
void cmd_tower(const Universe<F>& u, const ModPtr<F>& M, int upto, Block& b) {
    auto tw = build_tower(M, upto);
    if (tw.base_is_zero) {
        b.add("module is zero; empty tower");
        return;
    }
    b.add("inf = " + std::to_string(tw.first_level));
    for (auto& s : tw.steps) {
        b.add("level " + std::to_string(s.level) + ": beta = " + std::to_string(s.beta));
    }
    if (tw.window_exhausted) {
        b.add("window exhausted above level " + std::to_string(tw.last_level));
        b.status = "window-limited";
    }
    if (tw.terminated) {
        b.add(std::string("terminated: M<") + std::to_string(tw.last_level + 1) + "> ~= 0" +
              (tw.certified ? " (certified)" : " (within the trusted window only)"));
        b.add("pcd = " + tw.pcd().value.str());
    }
    (void)u;
}

// ------------------------------------------------------------ verify command

template <FieldType F>
struct VerifyInstance {
    std::string desc;
    ModPtr<F> M;
};

template <FieldType F>
int run_verify(const std::string& id, const F& f, const Universe<F>* u, std::uint64_t seed,
               int count, Block& b) {
    Window win(-10, 11);
    std::vector<std::pair<std::string, AlgPtr<F>>> algebras;
    if (u) {
        algebras.push_back({"document algebra", u->alg});
    } else {
        algebras.push_back({"sphere(2)", sphere_algebra(f, 2)});
        algebras.push_back({"wedge(2,3)", wedge_algebra(f, {2, 3})});
    }
    int verified = 0, inconclusive = 0, counterexamples = 0;
    int idx = 0;
    auto tally = [&](const std::string& desc, const CheckReport& rep) {
        std::string line = "instance " + std::to_string(idx++) + " [" + desc + "]: " +
                           rep.status_name();
        b.add(line);
        switch (rep.status) {
            case CheckReport::Status::Verified: ++verified; break;
            case CheckReport::Status::Inconclusive: ++inconclusive; break;
            case CheckReport::Status::Counterexample: {
                ++counterexamples;
                for (auto& t : rep.trace) b.add("  " + t);
                b.add("replay document follows");
                std::istringstream in(rep.replay);
                std::string l;
                while (std::getline(in, l)) b.add("  | " + l);
                break;
            }
        }
    };

    for (auto& [aname, A] : algebras) {
        auto R = algebra_as_module(A, Side::Left);
        auto Rop = algebra_as_module(A, Side::Right);
        auto P = dual_module(R);
        auto kr = trivial_k_module(A, Side::Right);
        int sup_r = A->complex().cohomology().h.inf_sup_amp().sup.value();

        std::vector<VerifyInstance<F>> builtins = {
            {"R over " + aname, R},
            {"shift(R,-1) over " + aname, shift_module(R, -1)},
            {"sum(R, shift(R,-1)) over " + aname, direct_sum(R, shift_module(R, -1))},
            {"free{0,3} over " + aname, free_module(A, {{"a", 0}, {"b", 3}})},
        };
        if (u)
            for (auto& [name, M] : u->modules)
                if (M->side() == Side::Left) builtins.push_back({"module " + name, M});

        std::vector<VerifyInstance<F>> randoms;
        for (int c = 0; c < count; ++c) {
            RandomModuleOptions opt;
            opt.profile = c % 3 == 0 ? RandomProfile::ConeOfFree : RandomProfile::Semifree;
            opt.deg_hi = 3;
            auto M = random_module(A, seed + 7919 * c, opt);
            randoms.push_back({"random seed " + std::to_string(seed + 7919 * c) + " over " + aname, M});
        }

        auto all = builtins;
        all.insert(all.end(), randoms.begin(), randoms.end());

        for (auto& inst : all) {
            if (id == "inf-add") {
                tally(inst.desc, check_inf_additivity(P, inst.M, win));
            } else if (id == "sup") {
                tally(inst.desc, check_sup_formula(P, inst.M, win));
            } else if (id == "amp") {
                tally(inst.desc, check_amplitude(P, inst.M, win));
            } else if (id == "ab") {
                tally(inst.desc, check_ab(Rop, inst.M, win));
            } else if (id == "betti-gap") {
                tally(inst.desc, check_betti_gap(inst.M, R, sup_r, win));
            } else if (id == "bass-gap") {
                tally(inst.desc, check_bass_gap(inst.M, sup_r, win));
            } else if (id == "gap-converse") {
                tally(inst.desc, check_remark_converse(inst.M, win));
            } else if (id == "series-tower") {
                tally(inst.desc, check_tower_inequalities(inst.M, P, 3, win));
            } else if (id == "series-compact") {
                tally(inst.desc, check_compact_inequalities(inst.M, P, win));
            } else if (id == "series-degree") {
                tally(inst.desc, check_degree_identity(inst.M, P, win));
            } else {
                throw CommandError("unknown theorem id '" + id + "'");
            }
        }
    }
    b.add("verified: " + std::to_string(verified) + ", inconclusive: " + std::to_string(inconclusive) +
          ", counterexamples: " + std::to_string(counterexamples));
    if (counterexamples > 0) {
        b.status = "counterexample";
        return 1;
    }
    if (inconclusive > 0) {
        b.status = "window-limited";
        return 2;
    }
    return 0;
}

// ------------------------------------------------------------- atlas command

RunResult cmd_atlas(const std::vector<std::string>& args) {
    Flags fl = split_flags(args, 1, {{"--field", 1}, {"--window", 2}, {"--seed", 1}});
    if (fl.positional.empty()) throw CommandError("atlas: expected a kind (sphere|wedge|trunc|random)");
    std::string kind = fl.positional[0];
    std::string field = fl.named.count("--field") ? fl.named.at("--field") : "rational";
    Window win(0, 12);
    if (fl.multi.count("--window")) {
        win.lo = static_cast<int>(parse_long(fl.multi.at("--window")[0], "window bound"));
        win.hi = static_cast<int>(parse_long(fl.multi.at("--window")[1], "window bound"));
    }

    auto emit = [&](auto f) -> RunResult {
        using F = decltype(f);
        AlgPtr<F> A;
        std::vector<std::pair<std::string, ModPtr<F>>> mods;
        if (kind == "sphere") {
            if (fl.positional.size() != 2) throw CommandError("atlas sphere <n>");
            A = sphere_algebra(f, static_cast<int>(parse_long(fl.positional[1], "degree")), win);
        } else if (kind == "wedge") {
            std::vector<int> degs;
            for (std::size_t i = 1; i < fl.positional.size(); ++i)
                degs.push_back(static_cast<int>(parse_long(fl.positional[i], "degree")));
            A = wedge_algebra(f, degs, win);
        } else if (kind == "trunc") {
            if (fl.positional.size() != 3) throw CommandError("atlas trunc <n> <e>");
            A = truncated_polynomial_algebra(f, static_cast<int>(parse_long(fl.positional[1], "degree")),
                                             static_cast<int>(parse_long(fl.positional[2], "power")), win);
        } else if (kind == "random") {
            if (fl.positional.size() < 3)
                throw CommandError("atlas random <sphere|wedge|trunc args...> requires --seed");
            std::vector<std::string> sub(fl.positional.begin() + 1, fl.positional.end());
            std::uint64_t seed = fl.named.count("--seed")
                                     ? static_cast<std::uint64_t>(parse_long(fl.named.at("--seed"), "seed"))
                                     : 1;
            if (sub[0] == "sphere" && sub.size() == 2)
                A = sphere_algebra(f, static_cast<int>(parse_long(sub[1], "degree")), win);
            else if (sub[0] == "wedge" && sub.size() >= 2) {
                std::vector<int> degs;
                for (std::size_t i = 1; i < sub.size(); ++i)
                    degs.push_back(static_cast<int>(parse_long(sub[i], "degree")));
                A = wedge_algebra(f, degs, win);
            } else
                throw CommandError("atlas random: base algebra must be sphere or wedge");
            mods.push_back({"M", random_module(A, seed, RandomModuleOptions{})});
        } else {
            throw CommandError("unknown atlas kind '" + kind + "'");
        }
        Document doc = document_from(A, mods, win);
        RunResult rr;
        rr.machine = serialize_document(doc);
        rr.human = rr.machine;
        rr.exit_code = 0;
        return rr;
    };

    if (field == "rational" || field == "q" || field == "Q") {
        return emit(RationalField{});
    }
    std::string p = field;
    if (!p.empty() && (p[0] == 'p' || p[0] == 'F')) p = p.substr(1);
    return emit(PrimeField(static_cast<std::uint32_t>(parse_long(p, "prime"))));
}

// ---------------------------------------------------------------- dispatcher

template <FieldType F>
RunResult run_typed(const F& f, const std::optional<Document>& doc,
                    const std::vector<std::string>& args) {
    RunResult rr;
    Block b;
    std::string cmd = args[0];
    std::optional<Universe<F>> uni;
    if (doc) uni = materialize(*doc, f);
    auto need_doc = [&]() -> const Universe<F>& {
        if (!uni) throw CommandError("command '" + cmd + "' requires a document (-f <path>)");
        return *uni;
    };
    auto win_of = [&]() { return need_doc().win; };
    auto eval = [&](const std::string& text, Side side) {
        return eval_expr(ExprParser(text).parse(), need_doc(), side);
    };

    if (doc) {
        b.add("field: " + doc->field_name());
        b.add("window: " + std::to_string(doc->win_lo) + " " + std::to_string(doc->win_hi));
    }

    if (cmd == "validate") {
        cmd_validate(need_doc(), b);
        rr.exit_code = b.status == "ok" ? 0 : 3;
        if (b.status != "ok") b.status = "error";
    } else if (cmd == "cohomology" || cmd == "betti" || cmd == "bass" || cmd == "pcd" ||
               cmd == "amp" || cmd == "tower") {
        Flags fl = split_flags(args, 1, {{"--up-to", 1}});
        if (fl.positional.size() != 1) throw CommandError(cmd + " <module-expr>");
        auto M = eval(fl.positional[0], Side::Left);
        if (cmd == "cohomology")
            cmd_cohomology(need_doc(), M, b);
        else if (cmd == "betti")
            cmd_betti(need_doc(), M, win_of(), b);
        else if (cmd == "bass")
            cmd_bass(need_doc(), M, win_of(), b);
        else if (cmd == "pcd")
            cmd_pcd(need_doc(), M, win_of(), b);
        else if (cmd == "amp")
            cmd_amp(need_doc(), M, b);
        else {
            int upto = fl.named.count("--up-to")
                           ? static_cast<int>(parse_long(fl.named.at("--up-to"), "--up-to"))
                           : win_of().hi;
            cmd_tower(need_doc(), M, upto, b);
        }
        rr.exit_code = exit_for(b.status);
    } else if (cmd == "tensor" || cmd == "series") {
        Flags fl = split_flags(args, 1, {});
        if (fl.positional.size() != 2) throw CommandError(cmd + " <P-expr> <M-expr>");
        auto P = eval(fl.positional[0], Side::Right);
        auto M = eval(fl.positional[1], Side::Left);
        if (cmd == "tensor")
            cmd_tensor(need_doc(), P, M, win_of(), b);
        else
            cmd_series(need_doc(), P, M, win_of(), b);
        rr.exit_code = exit_for(b.status);
    } else if (cmd == "verify") {
        Flags fl = split_flags(args, 1, {{"--seed", 1}, {"--count", 1}});
        if (fl.positional.size() != 1) throw CommandError("verify <theorem-id> [--seed s --count n]");
        std::uint64_t seed = fl.named.count("--seed")
                                 ? static_cast<std::uint64_t>(parse_long(fl.named.at("--seed"), "seed"))
                                 : 1;
        int count = fl.named.count("--count")
                        ? static_cast<int>(parse_long(fl.named.at("--count"), "count"))
                        : 5;
        rr.exit_code = run_verify(fl.positional[0], f, uni ? &*uni : nullptr, seed, count, b);
    } else if (cmd == "tasks") {
        if (!doc || doc->tasks.empty()) throw CommandError("document has no [tasks] section");
        int worst = 0;
        for (const auto& task : doc->tasks) {
            if (!task.empty() && task[0] == "tasks") throw CommandError("tasks may not nest");
            auto sub = run_command(doc, task);
            b.add("task '" + join(task) + "': exit " + std::to_string(sub.exit_code));
            std::istringstream in(sub.machine);
            std::string l;
            while (std::getline(in, l)) b.add("  " + l);
            worst = std::max(worst, sub.exit_code);
        }
        rr.exit_code = worst;
        if (worst == 2) b.status = "window-limited";
        if (worst == 1) b.status = "counterexample";
        if (worst >= 3) b.status = "error";
    } else {
        throw CommandError("unknown command '" + cmd + "'");
    }

    rr.machine = b.render(join(args));
    rr.human = rr.machine;
    return rr;
}

}  // namespace

RunResult run_command(const std::optional<Document>& doc, const std::vector<std::string>& args) {
    try {
        if (args.empty()) throw CommandError("no command given");
        if (args[0] == "atlas") return cmd_atlas(args);
        if (doc && doc->field_kind == Document::FieldKind::Prime)
            return run_typed(PrimeField(doc->prime), doc, args);
        if (doc) return run_typed(RationalField{}, doc, args);
        // commands that can run without a document default to Q
        return run_typed(RationalField{}, doc, args);
    } catch (const ParseError& e) {
        Block b;
        b.status = "error";
        b.add(std::string("error: ") + e.what());
        return {b.render(join(args)), b.render(join(args)), 3};
    } catch (const Error& e) {
        Block b;
        b.status = "error";
        b.add(std::string("error: ") + e.what());
        return {b.render(join(args)), b.render(join(args)), 3};
    }
}

}  // namespace dga
