#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "caa/model.hpp"

namespace caa {

/// Parses a model document (JSON; see README for the schema), renormalizes
/// rows that are stochastic within kStochasticTol and validates the result.
/// Throws ParseError (with line/column or field path) or ValidationError.
CaaModel parse_model(std::string_view text);
CaaModel load_model(const std::filesystem::path& path);

std::string dump_model(const CaaModel& model);

/// Stable 64-bit FNV-1a digest of the canonical (compact) model document,
/// rendered as 16 hex digits.
std::string model_hash(const CaaModel& model);

struct TrajectoryFile {
  Trajectory trajectory;
  std::string model_hash;  // empty when the document carries none
};

/// `include_private` controls whether y and pi are written.
std::string dump_trajectory(const Trajectory& traj, const std::string& model_hash,
                            bool include_private = true);
TrajectoryFile parse_trajectory(std::string_view text);
TrajectoryFile load_trajectory(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace caa
