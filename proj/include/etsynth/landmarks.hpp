#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "etsynth/image.hpp"

namespace etsynth {

/// Binary clavicle segmentation (values 0/1) at working resolution.
struct ClavicleMask {
    BinaryImage pixels;
    std::string source_id;
};

/// Anchor point for tube placement: column between the clavicles and the
/// lowest clavicle row.
struct ClavicleLandmarks {
    int mid_x = 0;
    int low_y = 0;

    friend bool operator==(const ClavicleLandmarks&, const ClavicleLandmarks&) = default;
};

struct Component {
    int label = 0;
    int area = 0;
    std::int64_t sum_x = 0;
    std::int64_t sum_y = 0;
    double centroid_x = 0.0;
    double centroid_y = 0.0;
    int max_row = -1;
};

inline constexpr int kMinClavicleArea = 25;

/// 4-connected component labeling. Labels start at 1 in raster order of each
/// component's first pixel; background is 0.
std::vector<Component> connected_components(const BinaryImage& mask, Image<int>* labels = nullptr);

/// mid_x: rounded midpoint of the centroids of the two largest components with
/// area >= 25 px (halves round up). low_y: lowest row touched by either.
/// Throws LandmarkError when fewer than two components qualify.
ClavicleLandmarks extract_landmarks(const ClavicleMask& mask);

/// Loads `<case_id>_clavicle.png` (nonzero = foreground) and checks its size.
/// Throws IoError if the file is missing or unreadable, ValidationError on a
/// size mismatch.
ClavicleMask load_clavicle_mask(const std::filesystem::path& masks_dir, const std::string& case_id,
                                int working_resolution);

std::filesystem::path clavicle_mask_path(const std::filesystem::path& masks_dir, const std::string& case_id);

}  // namespace etsynth
