// Batch front end: load JSON documents, run one operation, print text or JSON.
// Exit codes: 0 computed true/ok, 1 computed false/invalid, 2 input error,
// 3 resource bound hit.
#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "algb/document.hpp"

using namespace algb;
using doc::json;

namespace {

struct Options {
    std::string order = "grevlex";
    unsigned degree = 6;
    std::string format = "text";
    std::string out_path;
};

MonomialOrder selected_order(const Options& opt) {
    if (opt.order == "lex") return MonomialOrder::lex_pot();
    return MonomialOrder::grevlex_top();
}

class Emitter {
public:
    Emitter(const Options& opt) : opt_(opt) {}

    void line(const std::string& s) { text_ << s << "\n"; }
    json& payload() { return json_; }

    void flush(const std::string& kind = "") {
        std::string body;
        if (opt_.format == "json") {
            if (!kind.empty()) {
                body = doc::dump_document(kind, json_);
            } else {
                body = json_.dump(2) + "\n";
            }
        } else {
            body = text_.str();
        }
        if (opt_.out_path.empty()) {
            std::cout << body;
        } else {
            std::ofstream out(opt_.out_path);
            if (!out) throw Error("io", "cannot write '" + opt_.out_path + "'");
            out << body;
        }
    }

private:
    const Options& opt_;
    std::ostringstream text_;
    json json_ = json::object();
};

int exit_code_for(const Error& e) {
    static const std::set<std::string> input_errors = {
        "parse",        "schema",     "ring-mismatch", "unknown-variable", "bad-ring",
        "bad-ring-map", "bad-monomial", "bad-projection", "ambient-mismatch",
        "target-mismatch", "module",  "module-map",    "free-element",     "groebner",
        "linalg",       "algebroid",  "diffop",        "connection",       "bivector",
        "unsupported",  "io",         "division-by-zero", "not-constant",  "log-tangent"};
    if (e.code() == "no-lift") return 3;
    if (input_errors.count(e.code())) return 2;
    return 1;  // computed-false / invalid input object, witnesses in the message
}

FreeElement parse_element(const std::string& text, const RingPtr& ring, std::size_t rank) {
    std::vector<Poly> comps;
    std::size_t start = 0;
    std::string buf = text;
    // Components separated by ';' (or ',' when unambiguous).
    char sep = text.find(';') != std::string::npos ? ';' : ',';
    while (true) {
        std::size_t pos = buf.find(sep, start);
        std::string piece = buf.substr(start, pos == std::string::npos ? pos : pos - start);
        comps.push_back(Poly::parse(piece, ring));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (comps.size() != rank)
        throw Error("parse", "expected " + std::to_string(rank) + " components, found " +
                                 std::to_string(comps.size()));
    FreeElement e(ring, rank);
    e.components = std::move(comps);
    return e;
}

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t pos = csv.find(',', start);
        std::string piece = csv.substr(start, pos == std::string::npos ? pos : pos - start);
        if (!piece.empty()) out.push_back(piece);
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

void emit_report(Emitter& em, const ValidationReport& report, const Options& opt) {
    if (opt.format == "json") {
        em.payload() = doc::report_payload(report);
        return;
    }
    em.line(report.ok() ? "ok" : "invalid");
    for (const auto& f : report.failures) em.line("failure: " + f.axiom + " at " + f.witness);
    for (const auto& n : report.notes) em.line("note: " + n);
}

int cmd_check(const std::string& file, const Options& opt) {
    doc::Document d = doc::load_document(file);
    ValidationReport report;
    if (d.kind == "family")
        report = validate_family(doc::expect_family(d));
    else
        report = validate_algebroid(doc::expect_algebroid(d));
    Emitter em(opt);
    emit_report(em, report, opt);
    em.flush();
    return report.ok() ? 0 : 1;
}

int cmd_sing(const std::string& file, const Options& opt) {
    Algebroid a = doc::expect_algebroid(doc::load_document(file));
    Ideal sing = singular_locus(a);
    Emitter em(opt);
    if (opt.format == "json") {
        json gens = json::array();
        for (const auto& g : sing.generators) gens.push_back(g.str());
        em.payload()["generators"] = std::move(gens);
        em.payload()["empty_locus"] = is_unit_ideal(sing);
    } else {
        if (is_unit_ideal(sing)) em.line("singular locus: empty (unit ideal)");
        std::string line = "ideal (";
        for (std::size_t i = 0; i < sing.generators.size(); ++i)
            line += (i ? ", " : "") + sing.generators[i].str();
        em.line(line + ")");
    }
    em.flush();
    return 0;
}

int cmd_gb(const std::string& file, const Options& opt) {
    Algebroid a = doc::expect_algebroid(doc::load_document(file));
    auto basis = groebner_basis(a.carrier.generators, a.carrier.ambient_rank, a.ring,
                                selected_order(opt));
    Emitter em(opt);
    if (opt.format == "json") {
        json rows = json::array();
        for (const auto& b : basis) {
            json row = json::array();
            for (const auto& p : b.components) row.push_back(p.str());
            rows.push_back(std::move(row));
        }
        em.payload()["basis"] = std::move(rows);
        em.payload()["order"] = opt.order;
    } else {
        em.line("reduced basis (" + std::to_string(basis.size()) + " elements, order " +
                opt.order + "):");
        for (const auto& b : basis) em.line("  " + b.str());
    }
    em.flush();
    return 0;
}

int cmd_nf(const std::string& file, const std::string& elem, const Options& opt) {
    Algebroid a = doc::expect_algebroid(doc::load_document(file));
    MonomialOrder order = selected_order(opt);
    auto basis = groebner_basis(a.carrier.generators, a.carrier.ambient_rank, a.ring, order);
    FreeElement e = parse_element(elem, a.ring, a.carrier.ambient_rank);
    FreeElement nf = normal_form(e, basis, order);
    Emitter em(opt);
    if (opt.format == "json") {
        json row = json::array();
        for (const auto& p : nf.components) row.push_back(p.str());
        em.payload()["normal_form"] = std::move(row);
        em.payload()["member"] = nf.is_zero();
    } else {
        em.line("normal form: " + nf.str());
        em.line(nf.is_zero() ? "member of the carrier span" : "not a member of the carrier span");
    }
    em.flush();
    return 0;
}

int cmd_pullback(const std::string& file, const std::string& map_file, const Options& opt) {
    Algebroid a = doc::expect_algebroid(doc::load_document(file));
    RingMap f = doc::expect_ring_map(doc::load_document(map_file));
    Algebroid pulled = pullback_algebroid(a, f);
    Emitter em(opt);
    if (pulled.carrier.is_zero()) {
        if (opt.format == "json")
            em.payload()["result"] = "zero_module";
        else
            em.line("zero module");
        em.flush();
        return 0;
    }
    if (opt.format == "json") {
        em.payload()["result"] = "algebroid";
        em.payload()["document"] =
            json::parse(doc::dump_document("algebroid", doc::algebroid_payload(pulled)));
    } else {
        em.line("pullback algebroid with " + std::to_string(pulled.ngens()) +
                " generators, generic rank " + std::to_string(pulled.carrier.generic_rank()));
        for (const auto& g : pulled.carrier.generators) em.line("  gen " + g.str());
    }
    em.flush();
    return 0;
}

int cmd_family(const std::string& file, const std::string& fiber, const std::string& base,
               const Options& opt) {
    Algebroid a = doc::expect_algebroid(doc::load_document(file));
    SmoothProjection proj = SmoothProjection::make(a.ring, split_names(fiber), split_names(base));
    InducedFamily fam = induced_family(a, proj);
    Emitter em(opt);
    if (opt.format == "json") {
        em.payload() = doc::family_payload(fam.family);
        em.flush("family");
    } else {
        em.line("induced family with " + std::to_string(fam.family.alg.ngens()) +
                " generators over base (" + base + ")");
        for (const auto& g : fam.family.alg.carrier.generators) em.line("  gen " + g.str());
        if (fam.family.alg.carrier.generic_rank() + proj.nbase() != a.carrier.generic_rank())
            em.line("note: rank drop, the family is not part of an unfolding pair");
        em.flush();
    }
    return 0;
}

int cmd_unfold_check(const std::string& afile, const std::string& ffile, bool transversal,
                     const Options& opt) {
    Algebroid a = doc::expect_algebroid(doc::load_document(afile));
    FamilyAlgebroid fam = doc::expect_family(doc::load_document(ffile));
    bool verdict = transversal ? is_transversal(a, fam) : is_unfolding(a, fam);
    Emitter em(opt);
    if (opt.format == "json")
        em.payload()["result"] = verdict;
    else
        em.line(verdict ? "true" : "false");
    em.flush();
    return verdict ? 0 : 1;
}

int cmd_build_unfolding(const std::string& file, const Options& opt) {
    UnfoldingData d = doc::expect_unfolding_data(doc::load_document(file));
    Algebroid a = unfolding_from_data(d, opt.degree);
    Emitter em(opt);
    if (opt.format == "json") {
        em.payload() = doc::algebroid_payload(a);
        em.flush("algebroid");
    } else {
        em.line("unfolding with " + std::to_string(a.ngens()) + " generators (degree bound " +
                std::to_string(opt.degree) + ")");
        em.flush();
    }
    return 0;
}

int cmd_extract(const std::string& afile, const std::string& ffile, const Options& opt) {
    Algebroid a = doc::expect_algebroid(doc::load_document(afile));
    FamilyAlgebroid fam = doc::expect_family(doc::load_document(ffile));
    UnfoldingData d = data_from_unfolding(a, fam, opt.degree);
    Emitter em(opt);
    if (opt.format == "json") {
        em.payload() = doc::unfolding_data_payload(d);
        em.flush("unfolding-data");
    } else {
        em.line("extracted " + std::to_string(d.operators.size()) +
                " operators (verified to degree " + std::to_string(opt.degree) + ")");
        for (const auto& op : d.operators) em.line("  symbol " + op.symbol.str());
        em.flush();
    }
    return 0;
}

int cmd_symmetries(const std::string& file, const Options& opt) {
    Algebroid a = doc::expect_algebroid(doc::load_document(file));
    if (a.ngens() == 0) throw Error("algebroid", "symmetries needs a nonzero foliation generator");
    FreeElement v(a.ring, a.nvars());
    for (std::size_t k = 0; k < a.nvars(); ++k) v[k] = a.anchor[0][k];
    auto fields = symmetry_fields(v, opt.degree);
    Emitter em(opt);
    if (opt.format == "json") {
        json rows = json::array();
        for (const auto& f : fields) {
            json row = json::array();
            for (const auto& p : f.components) row.push_back(p.str());
            rows.push_back(std::move(row));
        }
        em.payload()["basis"] = std::move(rows);
        em.payload()["dimension"] = fields.size();
        em.payload()["degree_bound"] = opt.degree;
    } else {
        em.line("symmetry algebra dimension " + std::to_string(fields.size()) +
                " (coefficient degree <= " + std::to_string(opt.degree) + ")");
        for (const auto& f : fields) em.line("  " + f.str());
    }
    em.flush();
    return 0;
}

int cmd_log(const std::string& divisor, const std::string& vars, const Options& opt) {
    RingPtr ring = Ring::make(split_names(vars));
    Algebroid a = log_tangent_algebroid(Poly::parse(divisor, ring));
    Emitter em(opt);
    if (opt.format == "json") {
        em.payload() = doc::algebroid_payload(a);
        em.flush("algebroid");
    } else {
        em.line("log tangent algebroid of (" + divisor + ") with " + std::to_string(a.ngens()) +
                " generators");
        for (const auto& g : a.carrier.generators) em.line("  " + g.str());
        em.flush();
    }
    return 0;
}

int cmd_poisson(const std::string& file, const std::string& fiber, const std::string& base,
                const Options& opt) {
    Bivector p = doc::expect_bivector(doc::load_document(file));
    PoissonAlgebroid pa = poisson_algebroid(p);
    auto jac = schouten_jacobiator(p);
    Emitter em(opt);
    json jj = json::array();
    std::string first_nonzero;
    for (const auto& c : jac) {
        if (c.value.is_zero()) continue;
        json e;
        e["i"] = c.i;
        e["j"] = c.j;
        e["k"] = c.k;
        e["value"] = c.value.str();
        jj.push_back(std::move(e));
        if (first_nonzero.empty())
            first_nonzero = "J^(" + std::to_string(c.i) + "," + std::to_string(c.j) + "," +
                            std::to_string(c.k) + ") = " + c.value.str();
    }
    bool has_block = !fiber.empty() || !base.empty();
    if (opt.format == "json") {
        em.payload()["valid"] = pa.verdict.ok();
        em.payload()["jacobiator"] = std::move(jj);
        em.payload()["document"] =
            json::parse(doc::dump_document("algebroid", doc::algebroid_payload(pa.algebroid)));
        if (has_block) {
            SmoothProjection proj =
                SmoothProjection::make(p.ring, split_names(fiber), split_names(base));
            TransverseBlock block = transverse_poisson_block(p, proj);
            json rows = json::array();
            for (const auto& row : block.block) {
                json r = json::array();
                for (const auto& e : row) r.push_back(e.str());
                rows.push_back(std::move(r));
            }
            em.payload()["transverse_block"] = std::move(rows);
            em.payload()["transverse_invertible"] = block.invertible;
        }
    } else {
        em.line(pa.verdict.ok() ? "valid Poisson structure" : "not a Poisson structure");
        if (!first_nonzero.empty()) em.line("jacobiator witness: " + first_nonzero);
        if (has_block) {
            SmoothProjection proj =
                SmoothProjection::make(p.ring, split_names(fiber), split_names(base));
            TransverseBlock block = transverse_poisson_block(p, proj);
            em.line(std::string("transverse block invertible: ") +
                    (block.invertible ? "true" : "false"));
        }
    }
    em.flush();
    return pa.verdict.ok() ? 0 : 1;
}

int cmd_extension(const std::string& file, const Options& opt) {
    auto [conn, cocycle] = doc::expect_connection(doc::load_document(file));
    Algebroid a = abelian_extension(conn, cocycle);
    Emitter em(opt);
    if (opt.format == "json") {
        em.payload() = doc::algebroid_payload(a);
        em.flush("algebroid");
    } else {
        em.line("abelian extension with " + std::to_string(a.ngens()) + " generators");
        em.flush();
    }
    return 0;
}

int cmd_bott(const std::string& divisor, const std::string& vars, const std::string& fiber,
             const std::string& base, const std::string& u, const std::string& q,
             const Options& opt) {
    RingPtr ring = Ring::make(split_names(vars));
    Algebroid log_alg = log_tangent_algebroid(Poly::parse(divisor, ring));
    SmoothProjection proj = SmoothProjection::make(ring, split_names(fiber), split_names(base));
    FreeElement uu = parse_element(u, ring, ring->nvars());
    FreeElement qq = parse_element(q, ring, ring->nvars());
    FreeElement cls = bott_connection(log_alg, proj, uu, qq);
    Emitter em(opt);
    if (opt.format == "json") {
        json row = json::array();
        for (const auto& p : cls.components) row.push_back(p.str());
        em.payload()["class"] = std::move(row);
    } else {
        em.line("Bott connection class: " + cls.str());
    }
    em.flush();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"algebroid: exact computations with singular Lie algebroids over affine models"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--order", opt.order, "Monomial order")->check(CLI::IsMember({"lex", "grevlex"}));
    app.add_option("--degree", opt.degree, "Degree bound for semidecidable checks");
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", opt.out_path, "Write output to a file instead of stdout");

    std::string file, file2, elem, map_file, fiber, base, divisor, vars, u_text, q_text;

    auto* check = app.add_subcommand("check", "Validate the algebroid axioms of a document");
    check->add_option("file", file)->required();

    auto* sing = app.add_subcommand("sing", "Singular locus ideal via Fitting ideals");
    sing->add_option("file", file)->required();

    auto* gb = app.add_subcommand("gb", "Reduced Groebner basis of the carrier module");
    gb->add_option("file", file)->required();

    auto* nf = app.add_subcommand("nf", "Normal form of an ambient element against the carrier");
    nf->add_option("file", file)->required();
    nf->add_option("--elem", elem, "Element, components separated by ';' or ','")->required();

    auto* pullback = app.add_subcommand("pullback", "Pullback algebroid along a morphism");
    pullback->add_option("file", file)->required();
    pullback->add_option("--map", map_file, "Map document")->required();

    auto* family = app.add_subcommand("family", "Induced family along a coordinate projection");
    family->add_option("file", file)->required();
    family->add_option("--fiber", fiber, "Comma-separated fiber variables")->required();
    family->add_option("--base", base, "Comma-separated base variables")->required();

    auto* unfold = app.add_subcommand("unfold-check", "Is the algebroid an unfolding of the family?");
    unfold->add_option("algebroid", file)->required();
    unfold->add_option("family", file2)->required();

    auto* trans = app.add_subcommand("transversal", "Is the unfolding transversal?");
    trans->add_option("algebroid", file)->required();
    trans->add_option("family", file2)->required();

    auto* build = app.add_subcommand("build-unfolding", "Algebroid from unfolding data");
    build->add_option("file", file)->required();

    auto* extract = app.add_subcommand("extract", "Unfolding data from a transversal unfolding");
    extract->add_option("algebroid", file)->required();
    extract->add_option("family", file2)->required();

    auto* sym = app.add_subcommand("symmetries", "Symmetry fields of a rank-1 foliation");
    sym->add_option("file", file)->required();

    auto* log_cmd = app.add_subcommand("log", "Log tangent algebroid of a principal divisor");
    log_cmd->add_option("--divisor", divisor, "Divisor polynomial")->required();
    log_cmd->add_option("--vars", vars, "Comma-separated ring variables")->required();

    auto* poisson = app.add_subcommand("poisson", "Poisson algebroid of a bivector");
    poisson->add_option("file", file)->required();
    poisson->add_option("--fiber", fiber, "Fiber variables for the transverse block");
    poisson->add_option("--base", base, "Base variables for the transverse block");

    auto* ext = app.add_subcommand("extension", "Abelian extension from a flat connection");
    ext->add_option("file", file)->required();

    auto* bott = app.add_subcommand("bott", "Bott partial connection class on a log family");
    bott->add_option("--divisor", divisor)->required();
    bott->add_option("--vars", vars)->required();
    bott->add_option("--fiber", fiber)->required();
    bott->add_option("--base", base)->required();
    bott->add_option("--u", u_text, "Relative log field")->required();
    bott->add_option("--q", q_text, "Log field whose class is transported")->required();

    // Global flags are accepted after the subcommand's own arguments.
    for (CLI::App* sub : {check, sing, gb, nf, pullback, family, unfold, trans, build, extract,
                          sym, log_cmd, poisson, ext, bott})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*check) return cmd_check(file, opt);
        if (*sing) return cmd_sing(file, opt);
        if (*gb) return cmd_gb(file, opt);
        if (*nf) return cmd_nf(file, elem, opt);
        if (*pullback) return cmd_pullback(file, map_file, opt);
        if (*family) return cmd_family(file, fiber, base, opt);
        if (*unfold) return cmd_unfold_check(file, file2, false, opt);
        if (*trans) return cmd_unfold_check(file, file2, true, opt);
        if (*build) return cmd_build_unfolding(file, opt);
        if (*extract) return cmd_extract(file, file2, opt);
        if (*sym) return cmd_symmetries(file, opt);
        if (*log_cmd) return cmd_log(divisor, vars, opt);
        if (*poisson) return cmd_poisson(file, fiber, base, opt);
        if (*ext) return cmd_extension(file, opt);
        if (*bott) return cmd_bott(divisor, vars, fiber, base, u_text, q_text, opt);
    } catch (const Error& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
