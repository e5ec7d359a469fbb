#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "mgnull/multigraph.hpp"
#include "mgnull/types.hpp"

namespace mgnull {

/// One interaction record: two node labels and an optional timestamp.
struct EdgeRecord {
  std::string u;
  std::string v;
  std::optional<std::int64_t> t;
  std::size_t line = 0;
};

/// Parses lines of the form "u v [t]" with whitespace or comma separators.
/// Lines starting with '#' and blank lines are ignored.
std::vector<EdgeRecord> parse_edge_list(std::istream& in);
std::vector<EdgeRecord> read_edge_list_file(const std::filesystem::path& path);

/// Suffix of the records, ordered by timestamp, holding the last
/// ceil(fraction * count) interactions. Records tied with the cut
/// timestamp are all included.
std::vector<EdgeRecord> temporal_threshold(std::vector<EdgeRecord> records, double fraction);

struct IngestOptions {
  bool skip_self_loops = false;
};

struct IngestResult {
  Multigraph graph;
  std::vector<std::string> node_ids;  // dense index -> original label
  Count skipped_self_loops = 0;
};

/// Accumulates records into a multigraph, relabeling nodes densely in
/// order of first appearance.
IngestResult from_edge_list(const std::vector<EdgeRecord>& records, IngestOptions options = {});

}  // namespace mgnull
