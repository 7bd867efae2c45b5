#include "moorehom/groupoid_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace moore {

namespace {

using nlohmann::json;

std::string line_col(const std::string& text, size_t byte) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

ArrowId as_index(const json& v, const std::string& where) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<int64_t>() >= 0))
        throw FormatError(where + ": expected a nonnegative integer, got " + v.dump());
    uint64_t x = v.get<uint64_t>();
    if (x >= kNoArrow) throw FormatError(where + ": index too large");
    return static_cast<ArrowId>(x);
}

std::vector<ArrowId> index_list(const json& doc, const char* field) {
    if (!doc.contains(field)) throw FormatError(std::string("missing field '") + field + "'");
    const json& arr = doc.at(field);
    if (!arr.is_array()) throw FormatError(std::string("field '") + field + "': expected an array");
    std::vector<ArrowId> out;
    for (size_t i = 0; i < arr.size(); ++i)
        out.push_back(as_index(arr[i], std::string("field '") + field + "'[" + std::to_string(i) + "]"));
    return out;
}

size_t parse_count(const std::string& s, const std::string& preset) {
    size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (s.empty() || pos != s.size() || s[0] == '-') throw FormatError("preset '" + preset + "': bad number '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

std::string groupoid_to_json(const FiniteGroupoid& G) {
    json doc;
    doc["arrows"] = G.arrow_count();
    doc["units"] = G.units();
    doc["source"] = G.sources();
    doc["range"] = G.ranges();
    doc["inverse"] = G.inverses();
    json triples = json::array();
    for (const auto& t : G.compose_triples()) triples.push_back({t[0], t[1], t[2]});
    doc["compose"] = std::move(triples);
    return doc.dump() + "\n";
}

FiniteGroupoid groupoid_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError("malformed JSON at " + line_col(text, e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw FormatError("top level: expected an object");
    if (!doc.contains("arrows")) throw FormatError("missing field 'arrows'");
    size_t k = as_index(doc.at("arrows"), "field 'arrows'");
    auto units = index_list(doc, "units");
    auto src = index_list(doc, "source");
    auto rng = index_list(doc, "range");
    auto inv = index_list(doc, "inverse");
    if (!doc.contains("compose")) throw FormatError("missing field 'compose'");
    const json& comp = doc.at("compose");
    if (!comp.is_array()) throw FormatError("field 'compose': expected an array");
    std::vector<std::array<ArrowId, 3>> triples;
    for (size_t i = 0; i < comp.size(); ++i) {
        std::string where = "field 'compose'[" + std::to_string(i) + "]";
        if (!comp[i].is_array() || comp[i].size() != 3) throw FormatError(where + ": expected [g, d, g.d]");
        triples.push_back({as_index(comp[i][0], where), as_index(comp[i][1], where), as_index(comp[i][2], where)});
    }
    FiniteGroupoid G(k, units, src, rng, inv, triples);
    validate_groupoid(G);
    return G;
}

FiniteGroupoid read_groupoid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return groupoid_from_json(ss.str());
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void write_groupoid_file(const FiniteGroupoid& G, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << groupoid_to_json(G);
}

FiniteGroupoid make_preset(const std::string& preset) {
    auto colon = preset.find(':');
    if (colon == std::string::npos) {
        if (preset.size() > 5 && preset.ends_with(".json")) return read_groupoid_file(preset);
        throw FormatError("preset '" + preset + "': expected kind:parameters");
    }
    std::string kind = preset.substr(0, colon), rest = preset.substr(colon + 1);
    if (kind == "units") return presets::units(parse_count(rest, preset));
    if (kind == "cyclic") return presets::one_object_cyclic(parse_count(rest, preset));
    if (kind == "pair") return presets::pair(parse_count(rest, preset));
    if (kind == "action") {
        auto c2 = rest.find(':');
        if (c2 == std::string::npos) throw FormatError("preset '" + preset + "': expected action:m:p0,p1,...");
        std::vector<size_t> perm;
        for (const auto& p : split(rest.substr(c2 + 1), ',')) perm.push_back(parse_count(p, preset));
        return presets::action(parse_count(rest.substr(0, c2), preset), perm);
    }
    if (kind == "union") {
        auto parts = split(rest, ',');
        if (parts.size() < 2) throw FormatError("preset '" + preset + "': union needs at least two operands");
        FiniteGroupoid G = make_preset(parts[0]);
        for (size_t i = 1; i < parts.size(); ++i) G = presets::disjoint_union(G, make_preset(parts[i]));
        return G;
    }
    throw FormatError("unknown preset kind '" + kind + "'");
}

}  // namespace moore
