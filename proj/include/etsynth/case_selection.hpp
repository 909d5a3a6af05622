#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace etsynth {

enum class ViewPosition { AP, PA, Other };

ViewPosition parse_view_position(std::string_view text) noexcept;
std::string_view to_string(ViewPosition view) noexcept;

struct CaseRecord {
    std::string case_id;     ///< image index without extension
    std::string image_file;  ///< image index as listed in the metadata
    ViewPosition view_position = ViewPosition::Other;
    /// True when the case appears in the known-tube exclusion list.
    bool has_tube_annotation = false;
};

struct CaseFilter {
    ViewPosition view = ViewPosition::AP;
    /// Case ids (or image file names) known to contain a tube.
    std::set<std::string> excluded;
};

/// Parses a metadata CSV. The header must contain an image-index column
/// ("Image Index" or "image_index") and a view column ("View Position" or
/// "view_position"); matching ignores case, spaces and underscores.
/// Throws SchemaError naming the missing columns, IoError if unreadable.
std::vector<CaseRecord> read_metadata(const std::filesystem::path& metadata_csv,
                                      const std::set<std::string>& known_tube_cases = {});

/// Records matching the filter view, minus excluded cases, in file order.
std::vector<CaseRecord> select_cases(const std::filesystem::path& metadata_csv, const CaseFilter& filter);

/// One id per line; blank lines and '#' comments ignored.
std::set<std::string> read_id_list(const std::filesystem::path& path);

}  // namespace etsynth
