#include "search.hpp"

#include <cvxdiff/certificate_io.hpp>
#include <cvxdiff/sequence_io.hpp>

#include <array>
#include <cstring>
#include <fstream>
#include <iterator>

namespace cvxdiff {

namespace {

using nlohmann::json;

const json& field(const json& doc, const char* key)
{
    if (!doc.is_object() || !doc.contains(key))
        throw FormatError(std::string("missing field '") + key + "'");
    return doc.at(key);
}

template <typename T>
T as(const json& doc, const char* key)
{
    try {
        return field(doc, key).get<T>();
    }
    catch (const json::exception& e) {
        throw FormatError(std::string("field '") + key + "': " + e.what());
    }
}

json rats_to_json(std::span<const Rat> values)
{
    json arr = json::array();
    for (const auto& v : values)
        arr.push_back(rat_to_json(v));
    return arr;
}

std::vector<Rat> rats_from_json(const json& arr)
{
    if (!arr.is_array())
        throw FormatError("expected an array of rationals");
    std::vector<Rat> out;
    for (const auto& v : arr)
        out.push_back(rat_from_json(v));
    return out;
}

json path_to_json(const ClassPath& path)
{
    json arr = json::array();
    for (auto c : path)
        arr.push_back(static_cast<int>(c));
    return arr;
}

ClassPath path_from_json(const json& arr)
{
    if (!arr.is_array())
        throw FormatError("class path must be an array");
    ClassPath out;
    for (const auto& v : arr) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || v.get<std::int64_t>() > 255)
            throw FormatError("class id out of range: " + v.dump());
        out.push_back(static_cast<std::uint8_t>(v.get<int>()));
    }
    return out;
}

json closure_to_json(const Closure& c)
{
    json doc{{"path", path_to_json(c.path)}};
    if (c.kind == Closure::Kind::order_cycle) {
        doc["reason"] = "order_cycle";
        json cyc = json::array();
        for (auto [u, v] : c.cycle)
            cyc.push_back(json::array({u, v}));
        doc["cycle"] = std::move(cyc);
    }
    else {
        doc["reason"] = "farkas";
        doc["strict"] = rats_to_json(c.farkas.strict_multipliers);
        doc["equality"] = rats_to_json(c.farkas.equality_multipliers);
    }
    return doc;
}

Closure closure_from_json(const json& doc)
{
    Closure c;
    c.path = path_from_json(field(doc, "path"));
    const auto reason = as<std::string>(doc, "reason");
    if (reason == "order_cycle") {
        c.kind = Closure::Kind::order_cycle;
        const auto& cyc = field(doc, "cycle");
        if (!cyc.is_array())
            throw FormatError("cycle must be an array");
        for (const auto& e : cyc) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                throw FormatError("cycle edge must be a pair of window indices");
            c.cycle.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    }
    else if (reason == "farkas") {
        c.kind = Closure::Kind::farkas;
        c.farkas.strict_multipliers = rats_from_json(field(doc, "strict"));
        c.farkas.equality_multipliers = rats_from_json(field(doc, "equality"));
    }
    else {
        throw FormatError("unknown closure reason '" + reason + "'");
    }
    return c;
}

json logs_to_json(const std::vector<ExhaustionLog>& logs)
{
    json arr = json::array();
    for (const auto& log : logs) {
        json closures = json::array();
        for (const auto& c : log.closures)
            closures.push_back(closure_to_json(c));
        arr.push_back({{"class_count", log.class_count}, {"nodes", log.nodes}, {"closures", std::move(closures)}});
    }
    return arr;
}

std::vector<ExhaustionLog> logs_from_json(const json& arr)
{
    if (!arr.is_array())
        throw FormatError("exhaustion must be an array");
    std::vector<ExhaustionLog> out;
    for (const auto& doc : arr) {
        ExhaustionLog log;
        log.class_count = as<int>(doc, "class_count");
        log.nodes = as<std::uint64_t>(doc, "nodes");
        const auto& closures = field(doc, "closures");
        if (!closures.is_array())
            throw FormatError("closures must be an array");
        for (const auto& c : closures)
            log.closures.push_back(closure_from_json(c));
        out.push_back(std::move(log));
    }
    return out;
}

OffsetSet offsets_from_json(const json& arr)
{
    try {
        return OffsetSet::from(arr.get<std::vector<int>>());
    }
    catch (const json::exception& e) {
        throw FormatError(std::string("offsets: ") + e.what());
    }
    catch (const RangeError& e) {
        throw FormatError(std::string("offsets: ") + e.what());
    }
}

std::size_t size_from_json(const json& doc, const char* key)
{
    auto v = as<std::int64_t>(doc, key);
    if (v < 2)
        throw FormatError(std::string(key) + " must be at least 2");
    return static_cast<std::size_t>(v);
}

constexpr std::array<char, 4> kMagic{'C', 'V', 'X', 'F'};
constexpr std::uint32_t kSnapshotVersion = 1;

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes)
{
    for (int i = 0; i < bytes; ++i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(const std::vector<std::uint8_t>& in, std::size_t at, int bytes)
{
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i)
        v |= static_cast<std::uint64_t>(in[at + static_cast<std::size_t>(i)]) << (8 * i);
    return v;
}

} // namespace

json certificate_to_json(const Certificate& cert)
{
    json gaps = json::array();
    for (const auto& g : cert.witness_gaps)
        gaps.push_back(format_rat(g));
    return json{
        {"kind", cert.kind == Certificate::Kind::witness ? "witness" : "exhaustion"},
        {"n", cert.n},
        {"offsets", cert.offsets.offsets()},
        {"convexity_k", cert.convexity_k},
        {"value", cert.value},
        {"witness_gaps", std::move(gaps)},
        {"initial_lower_bound", cert.initial_lower_bound},
        {"lower_bound_source", cert.lower_bound_source},
        {"exhaustion", logs_to_json(cert.exhaustion)},
    };
}

Certificate certificate_from_json(const json& doc)
{
    Certificate cert;
    const auto kind = as<std::string>(doc, "kind");
    if (kind == "witness")
        cert.kind = Certificate::Kind::witness;
    else if (kind == "exhaustion")
        cert.kind = Certificate::Kind::exhaustion;
    else
        throw FormatError("unknown certificate kind '" + kind + "'");
    cert.n = size_from_json(doc, "n");
    cert.offsets = offsets_from_json(field(doc, "offsets"));
    cert.convexity_k = as<int>(doc, "convexity_k");
    cert.value = as<int>(doc, "value");
    cert.witness_gaps = rats_from_json(field(doc, "witness_gaps"));
    cert.initial_lower_bound = as<int>(doc, "initial_lower_bound");
    cert.lower_bound_source = as<std::string>(doc, "lower_bound_source");
    cert.exhaustion = logs_from_json(field(doc, "exhaustion"));
    return cert;
}

void write_certificate_file(const std::filesystem::path& path, const Certificate& cert)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << certificate_to_json(cert).dump(1) << '\n';
    if (!out)
        throw IoError("write failed for " + path.string());
}

Certificate read_certificate_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    json doc;
    try {
        in >> doc;
    }
    catch (const json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    return certificate_from_json(doc);
}

void write_frontier_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& blob)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(blob.data()), static_cast<std::streamsize>(blob.size()));
    if (!out)
        throw IoError("write failed for " + path.string());
}

std::vector<std::uint8_t> read_frontier_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

namespace detail {

std::vector<std::uint8_t> encode_snapshot(const SearchState& st)
{
    json solutions = json::array();
    for (const auto& p : st.solutions)
        solutions.push_back(path_to_json(p));
    json frontier = json::array();
    for (const auto& p : st.frontier)
        frontier.push_back(path_to_json(p));
    json closures = json::array();
    for (const auto& c : st.closures)
        closures.push_back(closure_to_json(c));
    json doc{
        {"n", st.n},
        {"offsets", st.offsets.offsets()},
        {"convexity_k", st.convexity_k},
        {"initial_lower_bound", st.initial_lower_bound},
        {"lower_bound_source", st.lower_bound_source},
        {"count", st.count},
        {"upper", st.upper},
        {"upper_gaps", rats_to_json(st.upper_gaps)},
        {"completed", logs_to_json(st.completed)},
        {"closures", std::move(closures)},
        {"solutions", std::move(solutions)},
        {"frontier", std::move(frontier)},
        {"count_nodes", st.count_nodes},
        {"nodes", st.nodes},
    };
    const std::string payload = doc.dump();

    std::vector<std::uint8_t> blob(kMagic.begin(), kMagic.end());
    put_le(blob, kSnapshotVersion, 4);
    put_le(blob, payload.size(), 8);
    blob.insert(blob.end(), payload.begin(), payload.end());
    return blob;
}

SearchState decode_snapshot(const std::vector<std::uint8_t>& blob)
{
    constexpr std::size_t header = 4 + 4 + 8;
    if (blob.size() < header || std::memcmp(blob.data(), kMagic.data(), kMagic.size()) != 0)
        throw FormatError("not a frontier snapshot");
    const auto version = get_le(blob, 4, 4);
    if (version != kSnapshotVersion)
        throw FormatError("unsupported snapshot version " + std::to_string(version));
    const auto length = get_le(blob, 8, 8);
    if (length != blob.size() - header)
        throw FormatError("snapshot payload length mismatch");

    json doc;
    try {
        doc = json::parse(blob.begin() + header, blob.end());
    }
    catch (const json::parse_error& e) {
        throw FormatError(std::string("snapshot payload: ") + e.what());
    }
    SearchState st;
    st.n = size_from_json(doc, "n");
    st.offsets = offsets_from_json(field(doc, "offsets"));
    st.convexity_k = as<int>(doc, "convexity_k");
    st.initial_lower_bound = as<int>(doc, "initial_lower_bound");
    st.lower_bound_source = as<std::string>(doc, "lower_bound_source");
    st.count = as<int>(doc, "count");
    st.upper = as<int>(doc, "upper");
    st.upper_gaps = rats_from_json(field(doc, "upper_gaps"));
    st.completed = logs_from_json(field(doc, "completed"));
    for (const auto& c : field(doc, "closures"))
        st.closures.push_back(closure_from_json(c));
    for (const auto& p : field(doc, "solutions"))
        st.solutions.push_back(path_from_json(p));
    for (const auto& p : field(doc, "frontier"))
        st.frontier.push_back(path_from_json(p));
    st.count_nodes = as<std::uint64_t>(doc, "count_nodes");
    st.nodes = as<std::uint64_t>(doc, "nodes");
    if (st.convexity_k < 1 || st.offsets.max() > static_cast<int>(st.n) - 1)
        throw FormatError("snapshot parameters are inconsistent");
    return st;
}

} // namespace detail

} // namespace cvxdiff
