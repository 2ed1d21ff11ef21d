#include "facefuse/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "facefuse/errors.hpp"

namespace facefuse {

std::string to_string(Split split) {
    return split == Split::train ? "train" : "test";
}

Split split_from_string(const std::string& tag) {
    if (tag == "train") return Split::train;
    if (tag == "test") return Split::test;
    throw MalformedManifest("unknown split tag '" + tag + "' (expected train or test)");
}

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path,
                                               const std::string& expected_header) {
    std::ifstream in(path);
    if (!in) {
        throw FileNotFound("no such manifest file: " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw MalformedManifest(path.string() + ": empty manifest file");
    }
    if (strip_cr(line) != expected_header) {
        throw MalformedManifest(path.string() + ": expected header '" + expected_header + "'");
    }
    std::vector<std::vector<std::string>> rows;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        auto fields = split_csv_row(line);
        const size_t expected = static_cast<size_t>(
            std::count(expected_header.begin(), expected_header.end(), ',') + 1);
        if (fields.size() != expected) {
            throw MalformedManifest(path.string() + ": line " + std::to_string(line_no) +
                                    " has " + std::to_string(fields.size()) +
                                    " fields, expected " + std::to_string(expected));
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& raw) {
    std::filesystem::path p(raw);
    return p.is_absolute() ? p : base / p;
}

void record_class(std::vector<std::string>& labels, const std::string& subject) {
    if (std::find(labels.begin(), labels.end(), subject) == labels.end()) {
        labels.push_back(subject);
    }
}

// Written paths are made relative to the CSV location when possible so the
// dataset directory stays relocatable.
std::string portable(const std::filesystem::path& file, const std::filesystem::path& base) {
    std::error_code ec;
    const auto rel = std::filesystem::relative(file, base, ec);
    if (!ec && !rel.empty()) {
        return rel.generic_string();
    }
    return file.generic_string();
}

} // namespace

DatasetManifest load_manifest(const std::filesystem::path& path) {
    const auto rows = read_csv(path, "visual_path,thermal_path,subject,split");
    const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");

    DatasetManifest manifest;
    for (const auto& row : rows) {
        ManifestEntry entry;
        entry.visual_path = resolve(base, row[0]);
        entry.thermal_path = resolve(base, row[1]);
        entry.subject = row[2];
        entry.split = split_from_string(row[3]);
        if (entry.subject.empty()) {
            throw MalformedManifest(path.string() + ": empty subject identifier");
        }
        if (entry.visual_path == entry.thermal_path) {
            throw MalformedManifest(path.string() + ": visual and thermal paths are equal ('" +
                                    row[0] + "')");
        }
        record_class(manifest.class_labels, entry.subject);
        manifest.entries.push_back(std::move(entry));
    }
    return manifest;
}

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoFailure("cannot open " + path.string() + " for writing");
    }
    const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    out << "visual_path,thermal_path,subject,split\n";
    for (const auto& e : manifest.entries) {
        out << portable(e.visual_path, base) << "," << portable(e.thermal_path, base) << ","
            << e.subject << "," << to_string(e.split) << "\n";
    }
    if (!out) {
        throw IoFailure("write failed: " + path.string());
    }
}

FusedManifest load_fused_manifest(const std::filesystem::path& path) {
    const auto rows = read_csv(path, "fused_path,subject,split");
    const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");

    FusedManifest manifest;
    for (const auto& row : rows) {
        FusedEntry entry;
        entry.fused_path = resolve(base, row[0]);
        entry.subject = row[1];
        entry.split = split_from_string(row[2]);
        if (entry.subject.empty()) {
            throw MalformedManifest(path.string() + ": empty subject identifier");
        }
        record_class(manifest.class_labels, entry.subject);
        manifest.entries.push_back(std::move(entry));
    }
    return manifest;
}

void save_fused_manifest(const FusedManifest& manifest, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoFailure("cannot open " + path.string() + " for writing");
    }
    const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    out << "fused_path,subject,split\n";
    for (const auto& e : manifest.entries) {
        out << portable(e.fused_path, base) << "," << e.subject << "," << to_string(e.split)
            << "\n";
    }
    if (!out) {
        throw IoFailure("write failed: " + path.string());
    }
}

} // namespace facefuse
