#include "algb/document.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace algb::doc {

namespace {

const json& field(const json& j, const char* name, const std::string& ptr) {
    if (!j.is_object()) throw SchemaError(ptr, "expected an object");
    auto it = j.find(name);
    if (it == j.end()) throw SchemaError(ptr + "/" + name, "missing field");
    return *it;
}

std::string str_field(const json& j, const char* name, const std::string& ptr) {
    const json& v = field(j, name, ptr);
    if (!v.is_string()) throw SchemaError(ptr + "/" + name, "expected a string");
    return v.get<std::string>();
}

std::size_t uint_field(const json& j, const char* name, const std::string& ptr) {
    const json& v = field(j, name, ptr);
    if (!v.is_number_unsigned()) throw SchemaError(ptr + "/" + name, "expected a nonnegative integer");
    return v.get<std::size_t>();
}

const json& array_field(const json& j, const char* name, const std::string& ptr) {
    const json& v = field(j, name, ptr);
    if (!v.is_array()) throw SchemaError(ptr + "/" + name, "expected an array");
    return v;
}

Poly read_poly(const json& j, const RingPtr& ring, const std::string& ptr) {
    if (!j.is_string()) throw SchemaError(ptr, "expected a polynomial string");
    try {
        return Poly::parse(j.get<std::string>(), ring);
    } catch (const Error& e) {
        throw SchemaError(ptr, e.what());
    }
}

std::vector<Poly> read_poly_row(const json& j, const RingPtr& ring, std::size_t width,
                                const std::string& ptr) {
    if (!j.is_array()) throw SchemaError(ptr, "expected an array of polynomial strings");
    if (j.size() != width)
        throw SchemaError(ptr, "expected " + std::to_string(width) + " entries, found " +
                                   std::to_string(j.size()));
    std::vector<Poly> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(read_poly(j[i], ring, ptr + "/" + std::to_string(i)));
    return out;
}

PolyMatrix read_matrix(const json& j, const RingPtr& ring, std::size_t width,
                       const std::string& ptr) {
    if (!j.is_array()) throw SchemaError(ptr, "expected an array of rows");
    PolyMatrix out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(read_poly_row(j[i], ring, width, ptr + "/" + std::to_string(i)));
    return out;
}

std::vector<std::string> read_names(const json& j, const std::string& ptr) {
    if (!j.is_array()) throw SchemaError(ptr, "expected an array of names");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) throw SchemaError(ptr + "/" + std::to_string(i), "expected a string");
        out.push_back(j[i].get<std::string>());
    }
    return out;
}

PresentedModule read_module(const json& j, const RingPtr& ring, const std::string& ptr) {
    std::size_t ambient = uint_field(j, "ambient_rank", ptr);
    PresentedModule m;
    m.ring = ring;
    m.ambient_rank = ambient;
    const json& gens = array_field(j, "generators", ptr);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        FreeElement e(ring, ambient);
        e.components =
            read_poly_row(gens[i], ring, ambient, ptr + "/generators/" + std::to_string(i));
        m.generators.push_back(std::move(e));
    }
    if (j.contains("relations"))
        m.relations = read_matrix(j["relations"], ring, m.ngens(), ptr + "/relations");
    return m;
}

std::map<std::pair<std::size_t, std::size_t>, FreeElement> read_pair_table(
    const json& j, const RingPtr& ring, std::size_t index_bound, std::size_t width,
    const std::string& ptr) {
    std::map<std::pair<std::size_t, std::size_t>, FreeElement> out;
    if (!j.is_array()) throw SchemaError(ptr, "expected an array");
    for (std::size_t t = 0; t < j.size(); ++t) {
        std::string p = ptr + "/" + std::to_string(t);
        std::size_t i = uint_field(j[t], "i", p);
        std::size_t jj = uint_field(j[t], "j", p);
        if (i >= jj) throw SchemaError(p, "entries require i < j");
        if (jj >= index_bound) throw SchemaError(p + "/j", "index out of range");
        FreeElement e(ring, width);
        e.components = read_poly_row(field(j[t], "coeffs", p), ring, width, p + "/coeffs");
        if (!e.is_zero()) out.emplace(std::make_pair(i, jj), std::move(e));
    }
    return out;
}

json poly_row_json(const std::vector<Poly>& row) {
    json out = json::array();
    for (const auto& p : row) out.push_back(p.str());
    return out;
}

json matrix_json(const PolyMatrix& m) {
    json out = json::array();
    for (const auto& row : m) out.push_back(poly_row_json(row));
    return out;
}

json pair_table_json(const std::map<std::pair<std::size_t, std::size_t>, FreeElement>& table) {
    json out = json::array();
    for (const auto& [key, val] : table) {
        json entry;
        entry["i"] = key.first;
        entry["j"] = key.second;
        entry["coeffs"] = poly_row_json(val.components);
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace

Document parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
    std::string version = str_field(j, "schema_version", "");
    if (version != kSchemaVersion)
        throw SchemaError("/schema_version", "unsupported schema version '" + version + "'");
    std::string kind = str_field(j, "kind", "");
    static const char* kinds[] = {"ring",      "algebroid",  "family", "unfolding-data",
                                  "map",       "bivector",   "connection", "cocycle"};
    bool known = false;
    for (const char* k : kinds) known = known || kind == k;
    if (!known) throw SchemaError("/kind", "unknown document kind '" + kind + "'");
    return Document{kind, field(j, "payload", "")};
}

Document load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

std::string dump_document(const std::string& kind, const json& payload) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    j["payload"] = payload;
    return j.dump(2) + "\n";
}

RingPtr read_ring(const json& j, const std::string& ptr) {
    try {
        return Ring::make(read_names(field(j, "vars", ptr), ptr + "/vars"));
    } catch (const Error& e) {
        if (std::string(e.code()) == "schema") throw;
        throw SchemaError(ptr + "/vars", e.what());
    }
}

Algebroid read_algebroid(const json& payload, const std::string& ptr) {
    RingPtr ring = read_ring(field(payload, "ring", ptr), ptr + "/ring");
    PresentedModule carrier = read_module(field(payload, "carrier", ptr), ring, ptr + "/carrier");
    PolyMatrix anchor =
        read_matrix(field(payload, "anchor", ptr), ring, ring->nvars(), ptr + "/anchor");
    if (anchor.size() != carrier.ngens())
        throw SchemaError(ptr + "/anchor", "one anchor row per carrier generator required");
    std::map<std::pair<std::size_t, std::size_t>, FreeElement> structure;
    if (payload.contains("structure"))
        structure = read_pair_table(payload["structure"], ring, carrier.ngens(), carrier.ngens(),
                                    ptr + "/structure");
    try {
        return make_algebroid(ring, std::move(carrier), std::move(anchor), std::move(structure));
    } catch (const Error& e) {
        throw SchemaError(ptr, e.what());
    }
}

FamilyAlgebroid read_family(const json& payload, const std::string& ptr) {
    Algebroid alg = read_algebroid(field(payload, "algebroid", ptr), ptr + "/algebroid");
    std::vector<std::string> fiber = read_names(field(payload, "fiber", ptr), ptr + "/fiber");
    std::vector<std::string> base = read_names(field(payload, "base", ptr), ptr + "/base");
    try {
        SmoothProjection proj = SmoothProjection::make(alg.ring, fiber, base);
        return make_family(std::move(proj), std::move(alg));
    } catch (const Error& e) {
        throw SchemaError(ptr, e.what());
    }
}

RingMap read_ring_map(const json& payload, const std::string& ptr) {
    RingPtr source = read_ring(field(payload, "source", ptr), ptr + "/source");
    RingPtr target = read_ring(field(payload, "target", ptr), ptr + "/target");
    const json& images = array_field(payload, "images", ptr);
    if (images.size() != source->nvars())
        throw SchemaError(ptr + "/images", "one image per source variable required");
    std::vector<Poly> imgs;
    for (std::size_t i = 0; i < images.size(); ++i)
        imgs.push_back(read_poly(images[i], target, ptr + "/images/" + std::to_string(i)));
    return RingMap::make(std::move(source), std::move(target), std::move(imgs));
}

Bivector read_bivector(const json& payload, const std::string& ptr) {
    RingPtr ring = read_ring(field(payload, "ring", ptr), ptr + "/ring");
    PolyMatrix m = read_matrix(field(payload, "matrix", ptr), ring, ring->nvars(), ptr + "/matrix");
    try {
        return make_bivector(ring, std::move(m));
    } catch (const Error& e) {
        throw SchemaError(ptr + "/matrix", e.what());
    }
}

std::pair<ConnectionData, TwoCocycle> read_connection(const json& payload, const std::string& ptr) {
    RingPtr ring = read_ring(field(payload, "ring", ptr), ptr + "/ring");
    std::vector<std::string> fiber = read_names(field(payload, "fiber", ptr), ptr + "/fiber");
    std::vector<std::string> base = read_names(field(payload, "base", ptr), ptr + "/base");
    SmoothProjection proj = SmoothProjection::make(ring, fiber, base);
    PresentedModule module = read_module(field(payload, "module", ptr), ring, ptr + "/module");
    const json& mats = array_field(payload, "matrices", ptr);
    std::vector<PolyMatrix> matrices;
    for (std::size_t b = 0; b < mats.size(); ++b)
        matrices.push_back(
            read_matrix(mats[b], ring, module.ngens(), ptr + "/matrices/" + std::to_string(b)));
    TwoCocycle cocycle;
    if (payload.contains("cocycle"))
        cocycle.values = read_pair_table(payload["cocycle"], ring, proj.nbase(), module.ngens(),
                                         ptr + "/cocycle");
    try {
        return {make_connection(std::move(proj), std::move(module), std::move(matrices)),
                std::move(cocycle)};
    } catch (const Error& e) {
        throw SchemaError(ptr, e.what());
    }
}

UnfoldingData read_unfolding_data(const json& payload, const std::string& ptr) {
    FamilyAlgebroid fam = read_family(field(payload, "family", ptr), ptr + "/family");
    const RingPtr& ring = fam.alg.ring;
    const std::size_t p = fam.alg.ngens();
    UnfoldingData d{fam, {}, {}};
    const json& ops = array_field(payload, "operators", ptr);
    for (std::size_t j = 0; j < ops.size(); ++j) {
        std::string p_op = ptr + "/operators/" + std::to_string(j);
        PolyMatrix endo = read_matrix(field(ops[j], "endo", p_op), ring, p, p_op + "/endo");
        if (endo.size() != p) throw SchemaError(p_op + "/endo", "square matrix over the generators required");
        FreeElement symbol(ring, ring->nvars());
        symbol.components =
            read_poly_row(field(ops[j], "symbol", p_op), ring, ring->nvars(), p_op + "/symbol");
        d.operators.push_back(DiffOp1{fam.alg.carrier, std::move(endo), std::move(symbol)});
    }
    if (payload.contains("witnesses"))
        d.witnesses = read_pair_table(payload["witnesses"], ring, fam.proj.nbase(), p,
                                      ptr + "/witnesses");
    return d;
}

namespace {

template <class T, class F>
T expect_kind(const Document& d, const char* kind, F reader) {
    if (d.kind != kind)
        throw SchemaError("/kind", std::string("expected a '") + kind + "' document, found '" +
                                       d.kind + "'");
    return reader(d.payload, "/payload");
}

}  // namespace

Algebroid expect_algebroid(const Document& d) {
    return expect_kind<Algebroid>(d, "algebroid", read_algebroid);
}
FamilyAlgebroid expect_family(const Document& d) {
    return expect_kind<FamilyAlgebroid>(d, "family", read_family);
}
RingMap expect_ring_map(const Document& d) { return expect_kind<RingMap>(d, "map", read_ring_map); }
Bivector expect_bivector(const Document& d) {
    return expect_kind<Bivector>(d, "bivector", read_bivector);
}
std::pair<ConnectionData, TwoCocycle> expect_connection(const Document& d) {
    return expect_kind<std::pair<ConnectionData, TwoCocycle>>(d, "connection", read_connection);
}
UnfoldingData expect_unfolding_data(const Document& d) {
    return expect_kind<UnfoldingData>(d, "unfolding-data", read_unfolding_data);
}

json ring_payload(const RingPtr& ring) {
    json j;
    j["vars"] = ring->vars();
    return j;
}

json algebroid_payload(const Algebroid& a) {
    json j;
    j["ring"] = ring_payload(a.ring);
    json carrier;
    carrier["ambient_rank"] = a.carrier.ambient_rank;
    json gens = json::array();
    for (const auto& g : a.carrier.generators) gens.push_back(poly_row_json(g.components));
    carrier["generators"] = std::move(gens);
    carrier["relations"] = matrix_json(a.carrier.relations);
    j["carrier"] = std::move(carrier);
    j["anchor"] = matrix_json(a.anchor);
    j["structure"] = pair_table_json(a.structure);
    return j;
}

json family_payload(const FamilyAlgebroid& fam) {
    json j;
    j["fiber"] = fam.proj.fiber_names();
    j["base"] = fam.proj.base_names();
    j["algebroid"] = algebroid_payload(fam.alg);
    return j;
}

json unfolding_data_payload(const UnfoldingData& d) {
    json j;
    j["family"] = family_payload(d.family);
    json ops = json::array();
    for (const auto& op : d.operators) {
        json o;
        o["endo"] = matrix_json(op.endo);
        o["symbol"] = poly_row_json(op.symbol.components);
        ops.push_back(std::move(o));
    }
    j["operators"] = std::move(ops);
    j["witnesses"] = pair_table_json(d.witnesses);
    return j;
}

json report_payload(const ValidationReport& r) {
    json j;
    j["ok"] = r.ok();
    json failures = json::array();
    for (const auto& f : r.failures) {
        json e;
        e["axiom"] = f.axiom;
        e["witness"] = f.witness;
        failures.push_back(std::move(e));
    }
    j["failures"] = std::move(failures);
    j["notes"] = r.notes;
    return j;
}

}  // namespace algb::doc
