// Command-line workbench for deformation problems over exact rationals.
// Exit codes: 0 success, 2 validation failure, 3 nonzero obstruction,
// 4 parse error.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dgdef/functors.hpp"
#include "dgdef/io.hpp"
#include "dgdef/koszul.hpp"
#include "dgdef/mcgauge.hpp"
#include "dgdef/simplicial.hpp"
#include "dgdef/zoo.hpp"
#include "json.hpp"

using namespace dgdef;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kInvalid = 2, kObstructed = 3, kParse = 4;

Document load_doc(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
    try {
        return parse_document(in);
    } catch (ParseError& e) {
        throw ParseError(ParseError::raw_t{}, path + ": " + e.what(), e.line, e.col);
    }
}

DGLA load_dgla(const std::string& path) { return dgla_from_document(load_doc(path)); }
ArtinCdga load_artin(const std::string& path) { return artin_from_document(load_doc(path)); }

SVec load_element(const std::string& path, const std::vector<std::string>& labels) {
    return element_from_document(load_doc(path), labels);
}

std::pair<int, int> parse_range(const std::string& s) {
    std::size_t dots = s.find("..");
    if (dots == std::string::npos)
        throw ParseError("expected a range of the form a..b, got '" + s + "'", 0, 0);
    try {
        return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw ParseError("malformed range '" + s + "'", 0, 0);
    }
}

unsigned parse_tower(const std::string& s) {
    std::string body = s;
    if (body.rfind("t^", 0) == 0) body = body.substr(2);
    try {
        int n = std::stoi(body);
        if (n < 2) throw std::exception();
        return static_cast<unsigned>(n);
    } catch (const std::exception&) {
        throw ParseError("expected a tower of the form t^N with N >= 2, got '" + s + "'", 0, 0);
    }
}

std::string form_str(const DeRhamForm& f) {
    if (f.terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, c] : f.terms) {
        if (!first) out << " + ";
        out << to_string(c);
        for (std::size_t i = 0; i < key.first.size(); ++i) {
            if (key.first[i] == 0) continue;
            out << "*t" << i + 1;
            if (key.first[i] > 1) out << "^" << key.first[i];
        }
        for (unsigned d : key.second) out << "*dt" << d + 1;
        first = false;
    }
    return out.str();
}

struct Session {
    std::ostringstream text;
    json j;
    std::string report_path;

    void line(const std::string& s) { text << s << "\n"; }

    int finish(int code) {
        std::cout << text.str();
        if (!report_path.empty()) {
            j["exit_code"] = code;
            j["text"] = text.str();
            std::ofstream out(report_path);
            out << j.dump(2) << "\n";
        }
        return code;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic workbench for dg Lie deformation problems"};
    app.require_subcommand(1);
    Session s;
    app.add_option("--report", s.report_path,
                   "also write a machine-readable report to this file");
    std::function<int()> action;

    // ---- validate ----
    auto* validate = app.add_subcommand("validate", "parse and validate a description file");
    static std::string v_file;
    validate->add_option("file", v_file, "input document")->required();
    validate->callback([&] {
        action = [&]() -> int {
            Document doc = load_doc(v_file);
            std::string kind = doc.kind();
            s.j["kind"] = kind;
            if (kind == "dgla") {
                DGLA L = dgla_from_document(doc);
                s.line("valid dgla '" + L.name + "': dimension " + std::to_string(L.dim()));
                s.j["name"] = L.name;
                s.j["dimension"] = L.dim();
            } else if (kind == "artin") {
                ArtinCdga A = artin_from_document(doc);
                s.line("valid artin '" + A.name + "': ideal dimension " +
                       std::to_string(A.dim()) + ", nilpotency index " +
                       std::to_string(A.nilpotency_index()));
                s.j["name"] = A.name;
                s.j["dimension"] = A.dim();
            } else if (kind == "bigraded") {
                BigradedArtin B = bigraded_from_document(doc);
                s.line("valid bigraded '" + B.name + "': ideal dimension " +
                       std::to_string(B.dim()));
                s.j["name"] = B.name;
                s.j["dimension"] = B.dim();
            } else if (kind == "extension") {
                CdgaMap f = extension_from_document(doc);
                SurjectionInfo info = classify_surjection(f);
                std::string k = info.kind == SurjectionKind::acyclic_small ? "acyclic small"
                                : info.kind == SurjectionKind::small       ? "small"
                                : info.kind == SurjectionKind::general     ? "surjective"
                                                                           : "not surjective";
                s.line("valid extension " + f.source.name + " -> " + f.target.name + ": " + k);
                s.j["classification"] = k;
            } else if (kind == "element") {
                auto it = doc.rules.find("element");
                std::size_t n = it == doc.rules.end() ? 0 : it->second.size();
                s.line("element document with " + std::to_string(n) + " entries");
            } else {
                throw ParseError("unknown or missing kind '" + kind + "' in [meta]", 0, 0);
            }
            return kOk;
        };
    });

    // ---- cohomology ----
    auto* coh = app.add_subcommand("cohomology", "cohomology of a dg Lie algebra");
    static std::string c_file, c_range = "0..3";
    coh->add_option("file", c_file)->required();
    coh->add_option("--range", c_range, "degree range a..b");
    coh->callback([&] {
        action = [&]() -> int {
            DGLA L = load_dgla(c_file);
            auto [a, b] = parse_range(c_range);
            s.line("cohomology of " + L.name);
            for (int n = a; n <= b; ++n) {
                std::size_t d = dgla_cohomology(L, n).dim;
                s.line("  H^" + std::to_string(n) + " = " + std::to_string(d));
                s.j["H"][std::to_string(n)] = d;
            }
            return kOk;
        };
    });

    // ---- mc-check ----
    auto* mcc = app.add_subcommand("mc-check", "check the Maurer-Cartan equation");
    static std::string m_dgla, m_artin, m_elem;
    mcc->add_option("dgla", m_dgla)->required();
    mcc->add_option("artin", m_artin)->required();
    mcc->add_option("element", m_elem)->required();
    mcc->callback([&] {
        action = [&]() -> int {
            NilpotentDGLA N = coefficient_extension(load_dgla(m_dgla), load_artin(m_artin));
            SVec w = load_element(m_elem, N.lie.label);
            SVec res = mc_residual(N, w);
            bool ok = is_mc(N, w);
            s.line(std::string("residual: ") + to_text(res, N.lie.label));
            s.line(ok ? "certified Maurer-Cartan" : "not Maurer-Cartan");
            s.j["maurer_cartan"] = ok;
            return ok ? kOk : kInvalid;
        };
    });

    // ---- mc-lift ----
    auto* mcl = app.add_subcommand("mc-lift", "lift first-order classes up a polynomial tower");
    static std::string l_dgla, l_tower;
    mcl->add_option("dgla", l_dgla)->required();
    mcl->add_option("--tower", l_tower, "t^N: lift along k[t]/t^{n+1} -> k[t]/t^n up to N")
        ->required();
    mcl->callback([&] {
        action = [&]() -> int {
            DGLA L = load_dgla(l_dgla);
            unsigned N = parse_tower(l_tower);
            Cohomology h1 = dgla_cohomology(L, 1);
            s.line("first-order classes: " + std::to_string(h1.dim));
            s.j["h1"] = h1.dim;
            int code = kOk;
            auto deg1 = L.indices_in_degree(1);
            for (std::size_t r = 0; r < h1.dim; ++r) {
                NilpotentDGLA N2 = coefficient_extension(L, truncated_polynomial(2));
                SVec w;
                for (std::size_t c = 0; c < deg1.size(); ++c) {
                    if (h1.representatives[r][c] == 0) continue;
                    for (std::size_t p = 0; p < N2.pairs.size(); ++p)
                        if (N2.pairs[p] == std::make_pair(deg1[c], std::size_t{0}))
                            sv_add_term(w, p, h1.representatives[r][c]);
                }
                s.line("class " + std::to_string(r) + ": start " + to_text(w, N2.lie.label));
                json stages = json::array();
                bool stuck = false;
                for (unsigned n = 2; n < N && !stuck; ++n) {
                    SmallExtension se =
                        make_small_extension(L, detail::poly_truncation(n + 1, n));
                    LiftResult lr = lift_across_small_extension(se, w);
                    std::string stage = "  k[t]/t^" + std::to_string(n) + " -> k[t]/t^" +
                                        std::to_string(n + 1) + ": obstruction ";
                    if (lr.lift) {
                        s.line(stage + "zero");
                        stages.push_back({{"order", n + 1}, {"obstructed", false}});
                        w = *lr.lift;
                    } else {
                        s.line(stage + "nonzero: " +
                               to_text(lr.obstruction.representative, se.NA.lie.label));
                        stages.push_back({{"order", n + 1}, {"obstructed", true}});
                        code = kObstructed;
                        stuck = true;
                    }
                }
                if (!stuck)
                    s.line("  lifted to k[t]/t^" + std::to_string(N) + ": " +
                           to_text(w, coefficient_extension(L, truncated_polynomial(N))
                                          .lie.label));
                s.j["classes"].push_back(stages);
            }
            return code;
        };
    });

    // ---- obstruction ----
    auto* obs = app.add_subcommand("obstruction", "obstruction class across a small extension");
    static std::string o_dgla, o_ext, o_elem, o_route = "both";
    obs->add_option("dgla", o_dgla)->required();
    obs->add_option("extension", o_ext)->required();
    obs->add_option("element", o_elem)->required();
    obs->add_option("--route", o_route)->check(CLI::IsMember({"direct", "cone", "both"}));
    obs->callback([&] {
        action = [&]() -> int {
            DGLA L = load_dgla(o_dgla);
            SmallExtension se = make_small_extension(L, extension_from_document(load_doc(o_ext)));
            SVec w = load_element(o_elem, se.NB.lie.label);
            bool zero = true;
            if (o_route != "cone") {
                LiftResult lr = lift_across_small_extension(se, w);
                zero = lr.obstruction.zero;
                s.line(std::string("direct route: obstruction ") + (zero ? "zero" : "nonzero"));
                if (!zero)
                    s.line("  representative: " +
                           to_text(lr.obstruction.representative, se.NA.lie.label));
                s.j["direct_zero"] = zero;
            }
            if (o_route != "direct") {
                ObstructionClass oc = obstruction_via_cone(se, w);
                s.line(std::string("cone route: obstruction ") +
                       (oc.zero ? "zero" : "nonzero"));
                s.j["cone_zero"] = oc.zero;
                if (o_route == "both" && oc.zero != zero)
                    throw std::logic_error("obstruction routes disagree");
                zero = oc.zero;
            }
            return zero ? kOk : kObstructed;
        };
    });

    // ---- gauge-act ----
    auto* ga = app.add_subcommand("gauge-act", "apply a gauge transformation");
    static std::string g_dgla, g_artin, g_x, g_w;
    ga->add_option("dgla", g_dgla)->required();
    ga->add_option("artin", g_artin)->required();
    ga->add_option("x", g_x, "degree-0 gauge element file")->required();
    ga->add_option("w", g_w, "Maurer-Cartan element file")->required();
    ga->callback([&] {
        action = [&]() -> int {
            NilpotentDGLA N = coefficient_extension(load_dgla(g_dgla), load_artin(g_artin));
            SVec x = load_element(g_x, N.lie.label);
            SVec w = load_element(g_w, N.lie.label);
            if (!is_mc(N, w)) throw std::invalid_argument("w is not Maurer-Cartan");
            SVec out = gauge_act(N, x, w);
            s.line("exp(x).w = " + to_text(out, N.lie.label));
            s.j["result"] = to_text(out, N.lie.label);
            return kOk;
        };
    });

    // ---- one-simplex ----
    auto* osx = app.add_subcommand("one-simplex",
                                   "the gauge path joining w and exp(x).w over the interval");
    static std::string s_dgla, s_artin, s_w, s_x;
    osx->add_option("dgla", s_dgla)->required();
    osx->add_option("artin", s_artin)->required();
    osx->add_option("w", s_w)->required();
    osx->add_option("x", s_x)->required();
    osx->callback([&] {
        action = [&]() -> int {
            NilpotentDGLA N = coefficient_extension(load_dgla(s_dgla), load_artin(s_artin));
            SVec w = load_element(s_w, N.lie.label);
            SVec x = load_element(s_x, N.lie.label);
            NerveCell cell = gauge_one_simplex(N, w, x);
            s.line("certified 1-cell:");
            for (const auto& [p, f] : cell.coeff) {
                s.line("  " + N.lie.label[p] + " : " + form_str(f));
                s.j["cell"][N.lie.label[p]] = form_str(f);
            }
            return kOk;
        };
    });

    // ---- nerve-pi ----
    auto* np = app.add_subcommand("nerve-pi", "homotopy groups over square-zero coefficients");
    static std::string n_dgla, n_artin;
    static unsigned n_i = 0;
    np->add_option("dgla", n_dgla)->required();
    np->add_option("artin", n_artin)->required();
    np->add_option("--degree", n_i, "homotopy degree i");
    np->callback([&] {
        action = [&]() -> int {
            DGLA L = load_dgla(n_dgla);
            ArtinCdga A = load_artin(n_artin);
            std::size_t d = nerve_pi_square_zero(L, A, n_i);
            s.line("pi_" + std::to_string(n_i) + " = " + std::to_string(d));
            s.j["pi"] = d;
            return kOk;
        };
    });

    // ---- bar ----
    auto* bar = app.add_subcommand("bar", "truncated bar construction of a dg Lie algebra");
    static std::string b_dgla;
    static unsigned b_order = 2;
    bar->add_option("dgla", b_dgla)->required();
    bar->add_option("--order", b_order, "maximal word length");
    bar->callback([&] {
        action = [&]() -> int {
            BarTruncation B = bar_truncation(load_dgla(b_dgla), b_order);
            s.line("bar truncation at order " + std::to_string(B.order) + ", dimension " +
                   std::to_string(B.algebra.dim()));
            s.text << to_text(B.algebra);
            s.j["dimension"] = B.algebra.dim();
            return kOk;
        };
    });

    // ---- cobar ----
    auto* cob = app.add_subcommand("cobar", "truncated cobar construction of an Artinian");
    static std::string cb_artin;
    static unsigned cb_order = 2;
    cob->add_option("artin", cb_artin)->required();
    cob->add_option("--order", cb_order, "maximal bracket length");
    cob->callback([&] {
        action = [&]() -> int {
            CobarTruncation C = cobar_truncation(load_artin(cb_artin), cb_order);
            s.line("cobar truncation at order " + std::to_string(C.order) + ", dimension " +
                   std::to_string(C.lie.dim()));
            s.text << to_text(C.lie);
            s.j["dimension"] = C.lie.dim();
            return kOk;
        };
    });

    // ---- adjunction-check ----
    auto* adj = app.add_subcommand("adjunction-check",
                                   "transport a Maurer-Cartan element both ways and back");
    static std::string a_dgla, a_artin, a_elem;
    static unsigned a_order = 0;
    adj->add_option("dgla", a_dgla)->required();
    adj->add_option("artin", a_artin)->required();
    adj->add_option("element", a_elem)->required();
    adj->add_option("--order", a_order, "truncation order (default: nilpotency index - 1)");
    adj->callback([&] {
        action = [&]() -> int {
            DGLA L = load_dgla(a_dgla);
            ArtinCdga A = load_artin(a_artin);
            NilpotentDGLA host = coefficient_extension(L, A);
            SVec w = load_element(a_elem, host.lie.label);
            unsigned ord = a_order ? a_order : std::max<unsigned>(A.nilpotency_index() - 1, 1);
            BarTruncation B = bar_truncation(L, ord);
            CdgaMap f = mc_to_bar(B, host, w);
            bool bar_ok = bar_to_mc(B, host, f) == w;
            CobarTruncation C = cobar_truncation(A, ord);
            CobarToDglaMap g = mc_to_cobar(C, host, w);
            bool cobar_ok = cobar_to_mc(C, host, g) == w;
            s.line(std::string("bar roundtrip: ") + (bar_ok ? "pass" : "FAIL"));
            s.line(std::string("cobar roundtrip: ") + (cobar_ok ? "pass" : "FAIL"));
            s.j["bar_roundtrip"] = bar_ok;
            s.j["cobar_roundtrip"] = cobar_ok;
            return bar_ok && cobar_ok ? kOk : kInvalid;
        };
    });

    // ---- counit-check ----
    auto* cc = app.add_subcommand("counit-check",
                                  "acyclicity of the counit cone in a fixed weight");
    static std::string cu_dgla;
    static unsigned cu_w = 1, cu_order = 0;
    cc->add_option("dgla", cu_dgla)->required();
    cc->add_option("--weight", cu_w, "word-length weight")->required();
    cc->add_option("--order", cu_order, "truncation order (default: weight)");
    cc->callback([&] {
        action = [&]() -> int {
            DGLA L = load_dgla(cu_dgla);
            auto dims = counit_cone_weight_cohomology(L, cu_w, cu_order ? cu_order : cu_w);
            bool acyclic = true;
            for (const auto& [n, d] : dims) {
                s.line("  H^" + std::to_string(n) + " = " + std::to_string(d));
                s.j["H"][std::to_string(n)] = d;
                acyclic = acyclic && d == 0;
            }
            s.line(acyclic ? "weight piece acyclic" : "weight piece NOT acyclic");
            s.j["acyclic"] = acyclic;
            return acyclic ? kOk : kInvalid;
        };
    });

    // ---- denormalize ----
    auto* den = app.add_subcommand("denormalize",
                                   "cosimplicial levels of a bigraded Artinian");
    static std::string d_file;
    static unsigned d_depth = 3;
    den->add_option("bigraded", d_file)->required();
    den->add_option("--depth", d_depth, "largest cosimplicial level");
    den->callback([&] {
        action = [&]() -> int {
            CosimplicialArtin D = denormalize(bigraded_from_document(load_doc(d_file)), d_depth);
            s.line("cosimplicial identities validated up to level " + std::to_string(d_depth));
            for (unsigned n = 0; n <= D.depth(); ++n) {
                std::string labels;
                for (const auto& l : D.level[n].label)
                    labels += (labels.empty() ? "" : " ") + l;
                s.line("level " + std::to_string(n) + ": dimension " +
                       std::to_string(D.level[n].dim()) + (labels.empty() ? "" : ": " + labels));
                s.j["levels"].push_back(D.level[n].dim());
            }
            return kOk;
        };
    });

    // ---- tot ----
    auto* tot = app.add_subcommand("tot", "total Artinian cdga of a bigraded Artinian");
    static std::string t_file;
    tot->add_option("bigraded", t_file)->required();
    tot->callback([&] {
        action = [&]() -> int {
            ArtinCdga T = tot_bigraded_artin(bigraded_from_document(load_doc(t_file)));
            s.text << to_text(T);
            s.j["dimension"] = T.dim();
            return kOk;
        };
    });

    // ---- tangent ----
    auto* tan = app.add_subcommand("tangent", "tangent cohomology of a deformation functor");
    static std::string tg_file, tg_functor = "def", tg_range = "0..4";
    tan->add_option("dgla", tg_file)->required();
    tan->add_option("--functor", tg_functor)->check(CLI::IsMember({"mc", "def"}));
    tan->add_option("--range", tg_range);
    tan->callback([&] {
        action = [&]() -> int {
            DGLA L = load_dgla(tg_file);
            FunctorUnderTest F = tg_functor == "mc" ? mc_functor(L) : def_functor(L);
            auto [a, b] = parse_range(tg_range);
            TangentReport r = tangent_report(F, a, b);
            s.text << r.text();
            for (const auto& [n, d] : r.dims) s.j["H"][std::to_string(n)] = d;
            return kOk;
        };
    });

    // ---- battery ----
    auto* bat = app.add_subcommand("battery", "run the deformation-functor axiom batteries");
    static std::string ba_file, ba_functor = "def", ba_suite = "both";
    static std::size_t ba_samples = 8;
    bat->add_option("dgla", ba_file)->required();
    bat->add_option("--functor", ba_functor)->check(CLI::IsMember({"mc", "def", "broken"}));
    bat->add_option("--suite", ba_suite)->check(CLI::IsMember({"axioms", "homotopy", "both"}));
    bat->add_option("--samples", ba_samples);
    bat->callback([&] {
        action = [&]() -> int {
            DGLA L = load_dgla(ba_file);
            FunctorUnderTest F = ba_functor == "mc"       ? mc_functor(L)
                                 : ba_functor == "broken" ? broken_def_functor(L)
                                                          : def_functor(L);
            DeformationBattery battery = standard_battery();
            bool ok = true;
            if (ba_suite != "homotopy") {
                BatteryReport r = manetti_battery(F, battery, ba_samples);
                s.text << r.text;
                s.j["axioms_pass"] = r.pass;
                ok = ok && r.pass;
            }
            if (ba_suite != "axioms") {
                BatteryReport r = schlessinger_homotopy_battery(F, battery, ba_samples);
                s.text << r.text;
                s.j["homotopy_pass"] = r.pass;
                ok = ok && r.pass;
            }
            return ok ? kOk : kInvalid;
        };
    });

    CLI11_PARSE(app, argc, argv);
    try {
        return s.finish(action());
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return s.finish(kParse);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return s.finish(kInvalid);
    }
}
