#pragma once

// Text format for describing the algebraic inputs, plus serializers.
//
// A document is a sequence of sections:
//   [meta]            key = value pairs; `kind` is one of
//                     dgla | artin | bigraded | extension | element
//   [space]           one line per basis vector: `label : degree` (two
//                     degrees `i j` for bigraded documents)
//   [differential]    rules `label -> c1*label1 + c2*label2 + ...`
//   [differential.h]  horizontal/vertical differentials of a bigraded
//   [differential.v]  document
//   [bracket]         rules `label,label -> ...` (DGLA); all ordered pairs
//                     with a nonzero value must be listed
//   [multiplication]  same shape, for Artinian coefficient algebras
//   [element]         rules `label -> p/q` assigning a coefficient
// Extension documents use dotted prefixes: [source.space],
// [source.multiplication], [source.differential], [target.*], and a [map]
// section `label -> ...` sending source basis labels to target combinations.
// `#` starts a comment; coefficients are exact rationals `p/q`.
// Parse errors carry line and column numbers.

#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dgdef/artin.hpp"
#include "dgdef/cosimplicial.hpp"
#include "dgdef/dgla.hpp"

namespace dgdef {

struct ParseError : std::runtime_error {
    struct raw_t {};
    int line, col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                             std::to_string(col_) + ")"),
          line(line_),
          col(col_) {}
    ParseError(raw_t, const std::string& msg, int line_, int col_)
        : std::runtime_error(msg), line(line_), col(col_) {}
};

struct Rule {
    std::vector<std::string> lhs;                   // one or two labels
    std::vector<std::pair<Rat, std::string>> rhs;   // coeff * label; label may be
    int line = 0;                                   // empty for a bare scalar
};

struct Document {
    std::map<std::string, std::string> meta;
    // section name ("space", "source.space", ...) -> ordered label/degree rows
    std::map<std::string, std::vector<std::pair<std::string, std::vector<int>>>> spaces;
    std::map<std::string, std::vector<Rule>> rules;

    std::string kind() const {
        auto it = meta.find("kind");
        return it == meta.end() ? std::string{} : it->second;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline Rat parse_coeff(const std::string& tok, int line, int col) {
    auto r = parse_rat(tok);
    if (!r) throw ParseError("expected a rational coefficient, got '" + tok + "'", line, col);
    return *r;
}

}  // namespace detail

inline Document parse_document(std::istream& in) {
    Document doc;
    std::string raw, section;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        int col = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("unterminated section header", lineno, col);
            section = detail::trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ParseError("empty section name", lineno, col);
            continue;
        }
        if (section.empty())
            throw ParseError("content before any section header", lineno, col);
        if (section == "meta" || section.size() > 4 && section.substr(section.size() - 5) == ".meta") {
            std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw ParseError("expected `key = value` in [meta]", lineno, col);
            doc.meta[detail::trim(line.substr(0, eq))] = detail::trim(line.substr(eq + 1));
        } else if (section == "space" ||
                   (section.size() > 5 && section.substr(section.size() - 6) == ".space")) {
            std::size_t colon = line.find(':');
            if (colon == std::string::npos)
                throw ParseError("expected `label : degree` in [" + section + "]", lineno, col);
            std::string label = detail::trim(line.substr(0, colon));
            if (label.empty()) throw ParseError("empty label", lineno, col);
            std::istringstream degs(line.substr(colon + 1));
            std::vector<int> dv;
            int d;
            while (degs >> d) dv.push_back(d);
            degs.clear();
            std::string junk;
            if (degs >> junk || dv.empty() || dv.size() > 2)
                throw ParseError("expected one or two integer degrees", lineno,
                                 col + static_cast<int>(colon) + 1);
            doc.spaces[section].emplace_back(label, dv);
        } else {
            std::size_t arrow = line.find("->");
            if (arrow == std::string::npos)
                throw ParseError("expected `lhs -> rhs` in [" + section + "]", lineno, col);
            Rule rule;
            rule.line = lineno;
            std::string lhs = detail::trim(line.substr(0, arrow));
            if (lhs.empty()) throw ParseError("empty left-hand side", lineno, col);
            std::size_t comma = lhs.find(',');
            if (comma == std::string::npos) {
                rule.lhs = {lhs};
            } else {
                rule.lhs = {detail::trim(lhs.substr(0, comma)),
                            detail::trim(lhs.substr(comma + 1))};
                if (rule.lhs[0].empty() || rule.lhs[1].empty())
                    throw ParseError("malformed label pair", lineno, col);
            }
            std::string rhs = detail::trim(line.substr(arrow + 2));
            if (rhs.empty())
                throw ParseError("empty right-hand side", lineno,
                                 col + static_cast<int>(arrow) + 2);
            if (rhs != "0") {
                std::size_t pos = 0;
                while (pos <= rhs.size()) {
                    std::size_t plus = rhs.find(" + ", pos);
                    std::string term = detail::trim(
                        rhs.substr(pos, plus == std::string::npos ? std::string::npos
                                                                  : plus - pos));
                    int tcol = col + static_cast<int>(arrow) + 2 + static_cast<int>(pos);
                    if (term.empty()) throw ParseError("empty term", lineno, tcol);
                    std::size_t star = term.find('*');
                    if (star == std::string::npos) {
                        rule.rhs.emplace_back(detail::parse_coeff(term, lineno, tcol), "");
                    } else {
                        std::string lab = detail::trim(term.substr(star + 1));
                        if (lab.empty()) throw ParseError("missing label after '*'", lineno, tcol);
                        rule.rhs.emplace_back(
                            detail::parse_coeff(detail::trim(term.substr(0, star)), lineno, tcol),
                            lab);
                    }
                    if (plus == std::string::npos) break;
                    pos = plus + 3;
                }
            }
            doc.rules[section].push_back(std::move(rule));
        }
    }
    return doc;
}

inline Document parse_document(const std::string& text) {
    std::istringstream in(text);
    return parse_document(in);
}

namespace detail {

inline std::size_t label_index(const std::vector<std::string>& labels, const std::string& l,
                               int line) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == l) return i;
    throw ParseError("unknown label '" + l + "'", line, 1);
}

inline SVec rule_rhs(const Rule& r, const std::vector<std::string>& labels) {
    SVec out;
    for (const auto& [c, l] : r.rhs) {
        if (l.empty())
            throw ParseError("expected `coeff*label` terms here", r.line, 1);
        sv_add_term(out, label_index(labels, l, r.line), c);
    }
    return out;
}

}  // namespace detail

inline DGLA dgla_from_document(const Document& doc) {
    DGLA L;
    auto it = doc.meta.find("name");
    L.name = it == doc.meta.end() ? "dgla" : it->second;
    auto sp = doc.spaces.find("space");
    if (sp == doc.spaces.end()) throw ParseError("missing [space] section", 0, 0);
    for (const auto& [label, degs] : sp->second) {
        if (degs.size() != 1) throw ParseError("DGLA basis needs a single degree", 0, 0);
        L.label.push_back(label);
        L.deg.push_back(degs[0]);
    }
    if (auto d = doc.rules.find("differential"); d != doc.rules.end())
        for (const Rule& r : d->second) {
            if (r.lhs.size() != 1)
                throw ParseError("differential rules take a single label", r.line, 1);
            L.diff[detail::label_index(L.label, r.lhs[0], r.line)] =
                detail::rule_rhs(r, L.label);
        }
    if (auto b = doc.rules.find("bracket"); b != doc.rules.end())
        for (const Rule& r : b->second) {
            if (r.lhs.size() != 2)
                throw ParseError("bracket rules take a label pair", r.line, 1);
            L.bracket[{detail::label_index(L.label, r.lhs[0], r.line),
                       detail::label_index(L.label, r.lhs[1], r.line)}] =
                detail::rule_rhs(r, L.label);
        }
    L.validate();
    return L;
}

inline ArtinCdga artin_from_document(const Document& doc, const std::string& prefix = "") {
    ArtinCdga A;
    auto it = doc.meta.find(prefix.empty() ? "name" : prefix + "name");
    A.name = it == doc.meta.end() ? "artin" : it->second;
    auto sp = doc.spaces.find(prefix + "space");
    if (sp == doc.spaces.end())
        throw ParseError("missing [" + prefix + "space] section", 0, 0);
    for (const auto& [label, degs] : sp->second) {
        if (degs.size() != 1)
            throw ParseError("Artinian basis needs a single degree", 0, 0);
        A.label.push_back(label);
        A.deg.push_back(degs[0]);
    }
    if (auto d = doc.rules.find(prefix + "differential"); d != doc.rules.end())
        for (const Rule& r : d->second) {
            if (r.lhs.size() != 1)
                throw ParseError("differential rules take a single label", r.line, 1);
            A.diff[detail::label_index(A.label, r.lhs[0], r.line)] =
                detail::rule_rhs(r, A.label);
        }
    if (auto m = doc.rules.find(prefix + "multiplication"); m != doc.rules.end())
        for (const Rule& r : m->second) {
            if (r.lhs.size() != 2)
                throw ParseError("multiplication rules take a label pair", r.line, 1);
            A.mult[{detail::label_index(A.label, r.lhs[0], r.line),
                    detail::label_index(A.label, r.lhs[1], r.line)}] =
                detail::rule_rhs(r, A.label);
        }
    A.finalize();
    A.validate();
    return A;
}

inline BigradedArtin bigraded_from_document(const Document& doc) {
    BigradedArtin B;
    auto it = doc.meta.find("name");
    B.name = it == doc.meta.end() ? "bigraded" : it->second;
    auto sp = doc.spaces.find("space");
    if (sp == doc.spaces.end()) throw ParseError("missing [space] section", 0, 0);
    for (const auto& [label, degs] : sp->second) {
        if (degs.size() != 2)
            throw ParseError("bigraded basis needs two degrees", 0, 0);
        B.label.push_back(label);
        B.deg.emplace_back(degs[0], degs[1]);
    }
    auto read_diff = [&](const char* sec, std::map<std::size_t, SVec>& dst) {
        if (auto d = doc.rules.find(sec); d != doc.rules.end())
            for (const Rule& r : d->second) {
                if (r.lhs.size() != 1)
                    throw ParseError("differential rules take a single label", r.line, 1);
                dst[detail::label_index(B.label, r.lhs[0], r.line)] =
                    detail::rule_rhs(r, B.label);
            }
    };
    read_diff("differential.h", B.dh_map);
    read_diff("differential.v", B.dv_map);
    if (auto m = doc.rules.find("multiplication"); m != doc.rules.end())
        for (const Rule& r : m->second) {
            if (r.lhs.size() != 2)
                throw ParseError("multiplication rules take a label pair", r.line, 1);
            B.mult[{detail::label_index(B.label, r.lhs[0], r.line),
                    detail::label_index(B.label, r.lhs[1], r.line)}] =
                detail::rule_rhs(r, B.label);
        }
    B.validate();
    return B;
}

// [meta] kind = extension, with [source.*], [target.*] and a [map] section.
inline CdgaMap extension_from_document(const Document& doc) {
    CdgaMap f{artin_from_document(doc, "source."), artin_from_document(doc, "target."), {}};
    if (auto m = doc.rules.find("map"); m != doc.rules.end())
        for (const Rule& r : m->second) {
            if (r.lhs.size() != 1)
                throw ParseError("map rules take a single label", r.line, 1);
            f.images[detail::label_index(f.source.label, r.lhs[0], r.line)] =
                detail::rule_rhs(r, f.target.label);
        }
    f.validate();
    return f;
}

// [element] section against a given ambient label list.
inline SVec element_from_document(const Document& doc, const std::vector<std::string>& labels) {
    SVec out;
    auto e = doc.rules.find("element");
    if (e == doc.rules.end()) throw ParseError("missing [element] section", 0, 0);
    for (const Rule& r : e->second) {
        if (r.lhs.size() != 1)
            throw ParseError("element rules take a single label", r.line, 1);
        if (r.rhs.empty()) continue;  // `label -> 0`
        if (r.rhs.size() != 1 || !r.rhs[0].second.empty())
            throw ParseError("element rules assign a bare rational", r.line, 1);
        sv_add_term(out, detail::label_index(labels, r.lhs[0], r.line), r.rhs[0].first);
    }
    return out;
}

// ----- serializers -----

namespace detail {

inline void write_terms(std::ostream& out, const SVec& v,
                        const std::vector<std::string>& labels) {
    bool first = true;
    for (const auto& [i, c] : v) {
        if (!first) out << " + ";
        out << to_string(c) << "*" << labels[i];
        first = false;
    }
    if (first) out << "0";
}

}  // namespace detail

inline std::string to_text(const DGLA& L) {
    std::ostringstream out;
    out << "[meta]\nkind = dgla\nname = " << L.name << "\n\n[space]\n";
    for (std::size_t i = 0; i < L.dim(); ++i)
        out << L.label[i] << " : " << L.deg[i] << "\n";
    out << "\n[differential]\n";
    for (const auto& [i, v] : L.diff) {
        out << L.label[i] << " -> ";
        detail::write_terms(out, v, L.label);
        out << "\n";
    }
    out << "\n[bracket]\n";
    for (const auto& [ij, v] : L.bracket) {
        out << L.label[ij.first] << "," << L.label[ij.second] << " -> ";
        detail::write_terms(out, v, L.label);
        out << "\n";
    }
    return out.str();
}

inline std::string to_text(const ArtinCdga& A) {
    std::ostringstream out;
    out << "[meta]\nkind = artin\nname = " << A.name << "\n\n[space]\n";
    for (std::size_t i = 0; i < A.dim(); ++i)
        out << A.label[i] << " : " << A.deg[i] << "\n";
    out << "\n[differential]\n";
    for (const auto& [i, v] : A.diff) {
        out << A.label[i] << " -> ";
        detail::write_terms(out, v, A.label);
        out << "\n";
    }
    out << "\n[multiplication]\n";
    for (const auto& [ij, v] : A.mult) {
        if (v.empty()) continue;
        out << A.label[ij.first] << "," << A.label[ij.second] << " -> ";
        detail::write_terms(out, v, A.label);
        out << "\n";
    }
    return out.str();
}

inline std::string to_text(const SVec& v, const std::vector<std::string>& labels) {
    std::ostringstream out;
    detail::write_terms(out, v, labels);
    return out.str();
}

}  // namespace dgdef
