#pragma once

#include <cvxdiff/solver.hpp>

#include <filesystem>
#include <nlohmann/json.hpp>

namespace cvxdiff {

/// {kind, n, offsets, convexity_k, value, witness_gaps, initial_lower_bound,
///  lower_bound_source, exhaustion: [{class_count, nodes, closures}]}
nlohmann::json certificate_to_json(const Certificate& cert);

/// Throws FormatError on missing or mistyped fields.
Certificate certificate_from_json(const nlohmann::json& doc);

void write_certificate_file(const std::filesystem::path& path, const Certificate& cert);
Certificate read_certificate_file(const std::filesystem::path& path);

void write_frontier_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& blob);
std::vector<std::uint8_t> read_frontier_file(const std::filesystem::path& path);

} // namespace cvxdiff
