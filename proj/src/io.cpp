#include "mgnull/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mgnull {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw DataError("cannot open output file: " + path.string());
  out.precision(17);
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open input file: " + path.string());
  return in;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  return fields;
}

double parse_double(const std::string& s, const std::filesystem::path& path, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError(path.string() + ": line " + std::to_string(line) + ": malformed number '" +
                    s + "'");
  }
}

Count parse_count(const std::string& s, const std::filesystem::path& path, std::size_t line) {
  Count v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw DataError(path.string() + ": line " + std::to_string(line) + ": malformed integer '" +
                    s + "'");
  return v;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

std::vector<std::string> default_node_ids(Index n) {
  std::vector<std::string> ids;
  ids.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  return ids;
}

void write_matrix_csv(const std::filesystem::path& path, const MatrixXd& matrix,
                      const std::vector<std::string>& ids) {
  const Index n = matrix.rows();
  if (static_cast<Index>(ids.size()) != n) throw DataError("id list has wrong length");
  auto out = open_output(path);
  for (Index j = 0; j < n; ++j) out << (j ? "," : "") << ids[static_cast<std::size_t>(j)];
  out << "\n";
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) out << (j ? "," : "") << matrix(i, j);
    out << "\n";
  }
}

MatrixXd read_matrix_csv(const std::filesystem::path& path, std::vector<std::string>* ids) {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path.string() + ": empty matrix file");
  const auto header = split_csv(line);
  const Index n = static_cast<Index>(header.size());
  if (ids) *ids = header;
  MatrixXd matrix(n, n);
  std::size_t line_number = 1;
  for (Index i = 0; i < n; ++i) {
    if (!std::getline(in, line))
      throw DataError(path.string() + ": expected " + std::to_string(n) + " data rows");
    ++line_number;
    const auto fields = split_csv(line);
    if (static_cast<Index>(fields.size()) != n)
      throw DataError(path.string() + ": line " + std::to_string(line_number) +
                      ": expected " + std::to_string(n) + " columns");
    for (Index j = 0; j < n; ++j)
      matrix(i, j) = parse_double(fields[static_cast<std::size_t>(j)], path, line_number);
  }
  return matrix;
}

void write_matrix_json(const std::filesystem::path& path, const MatrixXd& matrix,
                       const std::vector<std::string>& ids) {
  const Index n = matrix.rows();
  if (static_cast<Index>(ids.size()) != n) throw DataError("id list has wrong length");
  nlohmann::json doc;
  doc["n"] = n;
  doc["ids"] = ids;
  auto entries = nlohmann::json::array();
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j)
      if (matrix(i, j) != 0.0) entries.push_back({i, j, matrix(i, j)});
  doc["entries"] = std::move(entries);
  write_json(path, doc);
}

MatrixXd read_matrix_json(const std::filesystem::path& path, std::vector<std::string>* ids) {
  auto in = open_input(path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  const Index n = doc.at("n").get<Index>();
  if (ids) *ids = doc.at("ids").get<std::vector<std::string>>();
  MatrixXd matrix = MatrixXd::Zero(n, n);
  for (const auto& entry : doc.at("entries")) {
    const Index i = entry.at(0).get<Index>();
    const Index j = entry.at(1).get<Index>();
    const double v = entry.at(2).get<double>();
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw DataError(path.string() + ": entry index out of range");
    matrix(i, j) = v;
    matrix(j, i) = v;
  }
  return matrix;
}

void write_degree_csv(const std::filesystem::path& path, const CountVector& d,
                      const std::vector<std::string>& ids) {
  if (static_cast<Index>(ids.size()) != d.size()) throw DataError("id list has wrong length");
  auto out = open_output(path);
  out << "node_id,degree\n";
  for (Index i = 0; i < d.size(); ++i)
    out << ids[static_cast<std::size_t>(i)] << "," << d[i] << "\n";
}

CountVector read_degree_file(const std::filesystem::path& path, std::vector<std::string>* ids) {
  auto in = open_input(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw DataError(path.string() + ": empty degree file");

  const auto header = split_csv(lines.front());
  Index degree_col = -1;
  Index id_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto name = lower(header[c]);
    if (name == "degree") degree_col = static_cast<Index>(c);
    if (name == "node_id" || name == "id" || name == "node") id_col = static_cast<Index>(c);
  }

  std::vector<Count> degrees;
  std::vector<std::string> labels;
  if (degree_col >= 0) {
    for (std::size_t r = 1; r < lines.size(); ++r) {
      const auto fields = split_csv(lines[r]);
      if (static_cast<Index>(fields.size()) <= degree_col)
        throw DataError(path.string() + ": line " + std::to_string(r + 1) + ": missing degree");
      degrees.push_back(parse_count(fields[static_cast<std::size_t>(degree_col)], path, r + 1));
      labels.push_back(id_col >= 0 && static_cast<Index>(fields.size()) > id_col
                           ? fields[static_cast<std::size_t>(id_col)]
                           : std::to_string(r - 1));
    }
  } else {
    for (std::size_t r = 0; r < lines.size(); ++r) {
      degrees.push_back(parse_count(lines[r], path, r + 1));
      labels.push_back(std::to_string(r));
    }
  }
  if (ids) *ids = labels;
  CountVector d(static_cast<Index>(degrees.size()));
  for (std::size_t i = 0; i < degrees.size(); ++i) d[static_cast<Index>(i)] = degrees[i];
  return d;
}

void write_beta_csv(const std::filesystem::path& path, const CountVector& d,
                    const VectorXd& beta, const std::vector<std::string>& ids) {
  if (d.size() != beta.size() || static_cast<Index>(ids.size()) != d.size())
    throw DataError("degree, beta, and id lengths disagree");
  auto out = open_output(path);
  out << "node_id,degree,beta\n";
  for (Index i = 0; i < d.size(); ++i)
    out << ids[static_cast<std::size_t>(i)] << "," << d[i] << "," << beta[i] << "\n";
}

void write_vector_csv(const std::filesystem::path& path, const std::string& column,
                      const VectorXd& values, const std::vector<std::string>& ids) {
  if (static_cast<Index>(ids.size()) != values.size()) throw DataError("id list has wrong length");
  auto out = open_output(path);
  out << "node_id," << column << "\n";
  for (Index i = 0; i < values.size(); ++i)
    out << ids[static_cast<std::size_t>(i)] << "," << values[i] << "\n";
}

void write_partition_csv(const std::filesystem::path& path, const std::vector<int>& labels,
                         const std::vector<std::string>& ids) {
  if (ids.size() != labels.size()) throw DataError("id list has wrong length");
  auto out = open_output(path);
  out << "node_id,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << ids[i] << "," << labels[i] << "\n";
}

std::vector<int> read_partition_csv(const std::filesystem::path& path,
                                    std::vector<std::string>* ids) {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path.string() + ": empty partition file");
  std::vector<int> labels;
  std::vector<std::string> labels_ids;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv(line);
    if (fields.size() != 2)
      throw DataError(path.string() + ": line " + std::to_string(line_number) +
                      ": expected 'node_id,label'");
    labels_ids.push_back(fields[0]);
    labels.push_back(static_cast<int>(parse_count(fields[1], path, line_number)));
  }
  if (ids) *ids = labels_ids;
  return labels;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& value) {
  auto out = open_output(path);
  out << value.dump(2) << "\n";
}

nlohmann::json run_metadata(const std::string& subcommand, std::uint64_t seed) {
  nlohmann::json meta;
  meta["tool"] = "mgnull";
  meta["version"] = kVersion;
  meta["subcommand"] = subcommand;
  meta["seed"] = seed;
  meta["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                          std::chrono::system_clock::now().time_since_epoch())
                          .count();
  return meta;
}

}  // namespace mgnull
