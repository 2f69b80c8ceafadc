#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "algb/gallery.hpp"

// JSON documents: the interchange format of the CLI and the python bindings.
// Every polynomial travels as a string in the expression grammar; documents
// are schema-validated before any computation, and validation errors carry a
// JSON pointer to the offending field.
namespace algb::doc {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

class SchemaError : public Error {
public:
    SchemaError(std::string pointer, const std::string& what)
        : Error("schema", what + " (at " + pointer + ")"), pointer_(std::move(pointer)) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

struct Document {
    std::string kind;
    json payload;
};

Document parse_document(const std::string& text);
Document load_document(const std::string& path);
std::string dump_document(const std::string& kind, const json& payload);

RingPtr read_ring(const json& j, const std::string& ptr);
Algebroid read_algebroid(const json& payload, const std::string& ptr);
FamilyAlgebroid read_family(const json& payload, const std::string& ptr);
RingMap read_ring_map(const json& payload, const std::string& ptr);
Bivector read_bivector(const json& payload, const std::string& ptr);
// The connection payload may embed a "cocycle" array; absent means zero.
std::pair<ConnectionData, TwoCocycle> read_connection(const json& payload, const std::string& ptr);
UnfoldingData read_unfolding_data(const json& payload, const std::string& ptr);

Algebroid expect_algebroid(const Document& d);
FamilyAlgebroid expect_family(const Document& d);
RingMap expect_ring_map(const Document& d);
Bivector expect_bivector(const Document& d);
std::pair<ConnectionData, TwoCocycle> expect_connection(const Document& d);
UnfoldingData expect_unfolding_data(const Document& d);

json ring_payload(const RingPtr& ring);
json algebroid_payload(const Algebroid& a);
json family_payload(const FamilyAlgebroid& fam);
json unfolding_data_payload(const UnfoldingData& d);
json report_payload(const ValidationReport& r);

}  // namespace algb::doc
