#include "crisp/csv.hpp"

#include <cmath>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace crisp {

namespace {

struct CsvReader {
    std::istream& in;
    std::string source;
    std::size_t line_no = 0;

    [[noreturn]] void fail(const std::string& message) const {
        std::ostringstream os;
        os << source << ":" << line_no << ": " << message;
        throw input_error(os.str());
    }

    bool next_line(std::string& line) {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    }

    std::vector<std::string> split(const std::string& line, std::size_t expected_fields) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ss(line);
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.push_back("");
        if (fields.size() != expected_fields)
            fail("expected " + std::to_string(expected_fields) + " fields, got " +
                 std::to_string(fields.size()));
        return fields;
    }

    void expect_header(const std::string& expected) {
        std::string line;
        if (!next_line(line)) fail("missing header '" + expected + "'");
        if (line != expected) fail("expected header '" + expected + "', got '" + line + "'");
    }

    double parse_double(const std::string& field, const char* what) {
        double value = 0.0;
        const char* begin = field.data();
        const char* end = begin + field.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr != end)
            fail(std::string("invalid ") + what + ": '" + field + "'");
        if (!std::isfinite(value)) fail(std::string(what) + " must be finite: '" + field + "'");
        return value;
    }

    int parse_binary_label(const std::string& field, const char* what) {
        if (field == "0") return 0;
        if (field == "1") return 1;
        fail(std::string(what) + " must be 0 or 1, got '" + field + "'");
    }
};

std::ifstream open_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    return in;
}

}  // namespace

ScoredDataset parse_scored_dataset(std::istream& in, const std::string& source_name) {
    CsvReader reader{in, source_name};
    reader.expect_header("id,true_label,score");
    std::vector<ScoredRecord> records;
    std::string line;
    while (reader.next_line(line)) {
        const auto fields = reader.split(line, 3);
        ScoredRecord r;
        if (!fields[0].empty()) r.id = fields[0];
        r.label = reader.parse_binary_label(fields[1], "true_label");
        r.score = reader.parse_double(fields[2], "score");
        records.push_back(std::move(r));
    }
    if (records.empty()) throw input_error(source_name + ": dataset has no records");
    return ScoredDataset(std::move(records));
}

ScoredDataset read_scored_dataset(const std::string& path) {
    auto in = open_file(path);
    return parse_scored_dataset(in, path);
}

std::vector<Point2D> parse_points(std::istream& in, const std::string& source_name) {
    CsvReader reader{in, source_name};
    reader.expect_header("x,y,label");
    std::vector<Point2D> points;
    std::string line;
    while (reader.next_line(line)) {
        const auto fields = reader.split(line, 3);
        Point2D p;
        p.x = reader.parse_double(fields[0], "x");
        p.y = reader.parse_double(fields[1], "y");
        p.label = reader.parse_binary_label(fields[2], "label");
        points.push_back(p);
    }
    if (points.empty()) throw input_error(source_name + ": points file has no records");
    return points;
}

std::vector<Point2D> read_points(const std::string& path) {
    auto in = open_file(path);
    return parse_points(in, path);
}

std::vector<ManifestEntry> parse_manifest(std::istream& in, const std::string& source_name) {
    CsvReader reader{in, source_name};
    reader.expect_header("name,path,threshold");
    std::vector<ManifestEntry> entries;
    std::string line;
    while (reader.next_line(line)) {
        const auto fields = reader.split(line, 3);
        if (fields[0].empty()) reader.fail("classifier name must not be empty");
        if (fields[1].empty()) reader.fail("dataset path must not be empty");
        ManifestEntry e;
        e.name = fields[0];
        e.path = fields[1];
        e.threshold = reader.parse_double(fields[2], "threshold");
        entries.push_back(std::move(e));
    }
    if (entries.empty()) throw input_error(source_name + ": manifest has no entries");
    return entries;
}

std::vector<ManifestEntry> read_manifest(const std::string& path) {
    auto in = open_file(path);
    auto entries = parse_manifest(in, path);
    const auto base = std::filesystem::path(path).parent_path();
    for (auto& e : entries) {
        std::filesystem::path p(e.path);
        if (p.is_relative()) e.path = (base / p).string();
    }
    return entries;
}

}  // namespace crisp
