#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "mgnull/types.hpp"

namespace mgnull {

std::vector<std::string> default_node_ids(Index n);

/// Dense CSV: one header row of node ids, then one row of values per node.
void write_matrix_csv(const std::filesystem::path& path, const MatrixXd& matrix,
                      const std::vector<std::string>& ids);
MatrixXd read_matrix_csv(const std::filesystem::path& path,
                         std::vector<std::string>* ids = nullptr);

/// Sparse JSON variant: {"n": ..., "ids": [...], "entries": [[i, j, value], ...]}
/// listing nonzero entries with i <= j; matrices are symmetric.
void write_matrix_json(const std::filesystem::path& path, const MatrixXd& matrix,
                       const std::vector<std::string>& ids);
MatrixXd read_matrix_json(const std::filesystem::path& path,
                          std::vector<std::string>* ids = nullptr);

void write_degree_csv(const std::filesystem::path& path, const CountVector& d,
                      const std::vector<std::string>& ids);

/// Accepts either one integer per line or a CSV with a "degree" column.
CountVector read_degree_file(const std::filesystem::path& path,
                             std::vector<std::string>* ids = nullptr);

void write_beta_csv(const std::filesystem::path& path, const CountVector& d,
                    const VectorXd& beta, const std::vector<std::string>& ids);

void write_vector_csv(const std::filesystem::path& path, const std::string& column,
                      const VectorXd& values, const std::vector<std::string>& ids);

void write_partition_csv(const std::filesystem::path& path, const std::vector<int>& labels,
                         const std::vector<std::string>& ids);
std::vector<int> read_partition_csv(const std::filesystem::path& path,
                                    std::vector<std::string>* ids = nullptr);

void write_json(const std::filesystem::path& path, const nlohmann::json& value);

/// Common metadata block: tool name, version, seed, wall-clock timestamp.
nlohmann::json run_metadata(const std::string& subcommand, std::uint64_t seed);

}  // namespace mgnull
