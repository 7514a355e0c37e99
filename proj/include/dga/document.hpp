#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dga/atlas.hpp"

namespace dga {

/* Positioned parse/semantic error (1-based line and column). */
struct ParseError : Error {
    int line, col;
    ParseError(int l, int c, const std::string& msg)
        : Error("line " + std::to_string(l) + ", col " + std::to_string(c) + ": " + msg),
          line(l), col(c) {}
};

/* Line-oriented structured document:
 *
 *   [field]
 *   rational            (or: prime 5)
 *   [window]
 *   -2 12
 *   [algebra]
 *   basis 0 one
 *   basis 2 x
 *   d x = 0
 *   x * x = 0
 *   [module M]
 *   side left
 *   basis 0 m0
 *   act x m0 = 0
 *   [tasks]
 *   betti M
 *
 * Unknown keys are rejected; every referenced label must be declared; degrees
 * of all entries must land inside the window.  `truncated` marks data above
 * the window top as unknown rather than zero. */
struct Document {
    enum class FieldKind { Rational, Prime };

    struct Term {
        std::string coeff;  // empty means 1
        std::string label;
        friend bool operator==(const Term&, const Term&) = default;
    };
    struct LinComb {
        std::vector<Term> terms;  // empty means 0
        friend bool operator==(const LinComb&, const LinComb&) = default;
    };
    struct Relation {
        enum class Kind { Diff, Prod, Act };
        Kind kind;
        std::string a, b;  // Diff: a only; Prod/Act: a and b
        LinComb rhs;
        int line = 0;  // provenance only; not part of equality
        friend bool operator==(const Relation& x, const Relation& y) {
            return x.kind == y.kind && x.a == y.a && x.b == y.b && x.rhs == y.rhs;
        }
    };
    struct Section {
        std::string name;  // empty for the algebra
        Side side = Side::Left;
        bool truncated = false;
        std::vector<std::pair<int, std::vector<std::string>>> basis;  // (degree, labels)
        std::vector<Relation> rels;
        friend bool operator==(const Section&, const Section&) = default;
    };

    FieldKind field_kind = FieldKind::Rational;
    std::uint32_t prime = 0;
    int win_lo = 0, win_hi = 0;
    Section algebra;
    std::vector<Section> modules;
    std::vector<std::vector<std::string>> tasks;

    friend bool operator==(const Document&, const Document&) = default;

    std::string field_name() const {
        return field_kind == FieldKind::Rational ? "Q" : "F" + std::to_string(prime);
    }
};

Document parse_document(const std::string& text);
std::string serialize_document(const Document& doc);

/* Typed contents of a document over a concrete field. */
template <FieldType F>
struct Universe {
    F fld;
    Window win;
    AlgPtr<F> alg;
    std::vector<std::pair<std::string, ModPtr<F>>> modules;

    const ModPtr<F>* find(const std::string& name) const {
        for (auto& [n, m] : modules)
            if (n == name) return &m;
        return nullptr;
    }
};

template <FieldType F>
Universe<F> materialize(const Document& doc, const F& f);

/* Document describing an algebra and named modules (for replay files and the
 * atlas emitter).  Labels are sanitized to the document charset. */
template <FieldType F>
Document document_from(const AlgPtr<F>& alg,
                       const std::vector<std::pair<std::string, ModPtr<F>>>& modules,
                       Window win);

extern template Universe<RationalField> materialize(const Document&, const RationalField&);
extern template Universe<PrimeField> materialize(const Document&, const PrimeField&);
extern template Document document_from(const AlgPtr<RationalField>&,
                                       const std::vector<std::pair<std::string, ModPtr<RationalField>>>&,
                                       Window);
extern template Document document_from(const AlgPtr<PrimeField>&,
                                       const std::vector<std::pair<std::string, ModPtr<PrimeField>>>&,
                                       Window);

}  // namespace dga
