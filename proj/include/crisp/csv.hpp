#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "crisp/analysis.hpp"
#include "crisp/confusion.hpp"

namespace crisp {

/// Dataset CSV: header `id,true_label,score`; true_label in {0,1}; score a
/// decimal literal; UTF-8 with LF or CRLF line endings. An empty id field
/// means "no id". Errors carry 1-based line numbers.
ScoredDataset read_scored_dataset(const std::string& path);
ScoredDataset parse_scored_dataset(std::istream& in, const std::string& source_name);

/// Points CSV: header `x,y,label`.
std::vector<Point2D> read_points(const std::string& path);
std::vector<Point2D> parse_points(std::istream& in, const std::string& source_name);

/// Rank manifest CSV: header `name,path,threshold`. Paths are resolved
/// relative to the manifest's own directory.
struct ManifestEntry {
    std::string name;
    std::string path;
    double threshold = 0.0;
};

std::vector<ManifestEntry> read_manifest(const std::string& path);
std::vector<ManifestEntry> parse_manifest(std::istream& in, const std::string& source_name);

}  // namespace crisp
