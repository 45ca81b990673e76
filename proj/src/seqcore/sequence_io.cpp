#include <cvxdiff/sequence_io.hpp>

#include <fstream>
#include <limits>

namespace cvxdiff {

nlohmann::json rat_to_json(const Rat& value)
{
    if (is_integer(value)) {
        const BigInt& num = boost::multiprecision::numerator(value);
        if (num >= std::numeric_limits<std::int64_t>::min() && num <= std::numeric_limits<std::int64_t>::max())
            return num.convert_to<std::int64_t>();
    }
    return format_rat(value);
}

Rat rat_from_json(const nlohmann::json& value)
{
    if (value.is_number_unsigned())
        return Rat(value.get<std::uint64_t>());
    if (value.is_number_integer())
        return Rat(value.get<std::int64_t>());
    if (value.is_string())
        return parse_rat(value.get<std::string>());
    throw FormatError("expected an integer or a \"p/q\" string, got " + value.dump());
}

nlohmann::json sequence_to_json(std::span<const Rat> values)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : values)
        arr.push_back(rat_to_json(v));
    return nlohmann::json{{"values", std::move(arr)}};
}

std::vector<Rat> sequence_values_from_json(const nlohmann::json& doc, bool allow_nonconvex)
{
    if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_array())
        throw FormatError("sequence document must be an object with a \"values\" array");
    std::vector<Rat> values;
    for (const auto& v : doc["values"])
        values.push_back(rat_from_json(v));
    if (!allow_nonconvex)
        (void)ConvexSequence::from_values(values);
    return values;
}

ConvexSequence sequence_from_json(const nlohmann::json& doc)
{
    return ConvexSequence::from_values(sequence_values_from_json(doc));
}

std::vector<Rat> read_sequence_file(const std::filesystem::path& path, bool allow_nonconvex)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    }
    catch (const nlohmann::json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    return sequence_values_from_json(doc, allow_nonconvex);
}

void write_sequence_file(const std::filesystem::path& path, std::span<const Rat> values)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << sequence_to_json(values).dump() << '\n';
    if (!out)
        throw IoError("write failed for " + path.string());
}

} // namespace cvxdiff
