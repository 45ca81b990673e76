#pragma once

#include <cvxdiff/sequence.hpp>

#include <filesystem>
#include <nlohmann/json.hpp>

namespace cvxdiff {

/// Integers that fit in 64 bits become JSON numbers; everything else is a
/// "p/q" (or "p") string.
nlohmann::json rat_to_json(const Rat& value);

/// Accepts JSON integers and "p"/"p/q" strings; floats are rejected.
Rat rat_from_json(const nlohmann::json& value);

/// {"values": [v, ...]}
nlohmann::json sequence_to_json(std::span<const Rat> values);

/// Raw values of a sequence document. Unless allow_nonconvex is set the
/// values must form a ConvexSequence (ConvexityError otherwise).
std::vector<Rat> sequence_values_from_json(const nlohmann::json& doc, bool allow_nonconvex = false);

ConvexSequence sequence_from_json(const nlohmann::json& doc);

std::vector<Rat> read_sequence_file(const std::filesystem::path& path, bool allow_nonconvex = false);
void write_sequence_file(const std::filesystem::path& path, std::span<const Rat> values);

/// I/O failure (missing file, unwritable path).
class IoError : public std::runtime_error
{
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cvxdiff
