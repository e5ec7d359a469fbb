#include "mgnull/edge_list.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace mgnull {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
      if (!current.empty()) fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) fields.push_back(std::move(current));
  return fields;
}

std::int64_t parse_timestamp(const std::string& s, std::size_t line) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw DataError("line " + std::to_string(line) + ": malformed timestamp '" + s + "'");
  return value;
}

}  // namespace

std::vector<EdgeRecord> parse_edge_list(std::istream& in) {
  std::vector<EdgeRecord> records;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find_first_not_of(" \t\r");
    if (hash == std::string::npos || line[hash] == '#') continue;
    auto fields = split_fields(line);
    if (fields.size() < 2 || fields.size() > 3)
      throw DataError("line " + std::to_string(line_number) +
                      ": expected 'u v [t]', found " + std::to_string(fields.size()) + " fields");
    EdgeRecord rec;
    rec.u = std::move(fields[0]);
    rec.v = std::move(fields[1]);
    if (fields.size() == 3) rec.t = parse_timestamp(fields[2], line_number);
    rec.line = line_number;
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<EdgeRecord> read_edge_list_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open edge list file: " + path.string());
  return parse_edge_list(in);
}

std::vector<EdgeRecord> temporal_threshold(std::vector<EdgeRecord> records, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw DataError("fraction must lie in (0, 1]");
  if (records.empty()) throw DataError("empty edge list");
  for (const auto& rec : records)
    if (!rec.t)
      throw DataError("line " + std::to_string(rec.line) + ": record has no timestamp");
  std::stable_sort(records.begin(), records.end(),
                   [](const EdgeRecord& a, const EdgeRecord& b) { return *a.t < *b.t; });
  const auto total = records.size();
  const auto keep = static_cast<std::size_t>(
      std::min<double>(static_cast<double>(total), std::ceil(fraction * static_cast<double>(total))));
  std::size_t cut = total - keep;
  const std::int64_t cut_t = *records[cut].t;
  while (cut > 0 && *records[cut - 1].t == cut_t) --cut;
  records.erase(records.begin(), records.begin() + static_cast<std::ptrdiff_t>(cut));
  return records;
}

IngestResult from_edge_list(const std::vector<EdgeRecord>& records, IngestOptions options) {
  if (records.empty()) throw DataError("empty edge list");
  std::unordered_map<std::string, Index> index_of;
  std::vector<std::string> ids;
  std::vector<std::pair<Index, Index>> edges;
  Count skipped = 0;
  const auto intern = [&](const std::string& label) {
    auto [it, inserted] = index_of.emplace(label, static_cast<Index>(ids.size()));
    if (inserted) ids.push_back(label);
    return it->second;
  };
  for (const auto& rec : records) {
    if (rec.u == rec.v) {
      if (!options.skip_self_loops)
        throw DataError("line " + std::to_string(rec.line) + ": self-loop on node '" + rec.u + "'");
      ++skipped;
      continue;
    }
    const Index a = intern(rec.u);
    const Index b = intern(rec.v);
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  if (edges.empty()) throw DataError("empty edge list after skipping self-loops");
  IngestResult result{Multigraph::from_edges(static_cast<Index>(ids.size()), edges),
                      std::move(ids), skipped};
  return result;
}

}  // namespace mgnull
