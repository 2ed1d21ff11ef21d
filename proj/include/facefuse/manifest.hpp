#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace facefuse {

enum class Split { train, test };

std::string to_string(Split split);
Split split_from_string(const std::string& tag); // throws MalformedManifest

// One registered visual/thermal pair with its class label and split.
struct ManifestEntry {
    std::filesystem::path visual_path;
    std::filesystem::path thermal_path;
    std::string subject;
    Split split = Split::train;
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;
    std::vector<std::string> class_labels; // ordered by first appearance
};

// One fused image with its class label and split.
struct FusedEntry {
    std::filesystem::path fused_path;
    std::string subject;
    Split split = Split::train;
};

struct FusedManifest {
    std::vector<FusedEntry> entries;
    std::vector<std::string> class_labels; // ordered by first appearance
};

// CSV with header `visual_path,thermal_path,subject,split`. Relative paths
// are resolved against the manifest's directory. LF and CRLF both accepted.
DatasetManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

// CSV with header `fused_path,subject,split`, same path conventions.
FusedManifest load_fused_manifest(const std::filesystem::path& path);
void save_fused_manifest(const FusedManifest& manifest, const std::filesystem::path& path);

} // namespace facefuse
