#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "etsynth/case_selection.hpp"
#include "etsynth/compositor.hpp"
#include "etsynth/landmarks.hpp"
#include "etsynth/random.hpp"
#include "etsynth/trajectory.hpp"
#include "etsynth/tube_profile.hpp"

namespace etsynth {

struct GenerationPaths {
    std::filesystem::path images_dir;
    std::filesystem::path clavicle_masks_dir;
    std::filesystem::path metadata_csv;
    std::filesystem::path out_dir;
    /// Optional list of cases known to contain a tube.
    std::filesystem::path exclude_list;
};

struct GenerationCounts {
    int num_positive = 869;
    int num_negative = 800;
};

struct GenerationConfig {
    int working_resolution = 224;
    std::uint64_t seed = 0;
    std::vector<int> angles{0, 30, 60, 90};
    double blend_weight_lo = 0.1;
    double blend_weight_hi = 0.2;
    double mask_threshold = kDefaultMaskThreshold;
    TrajectoryParams trajectory;
    TubeCrossSection tube;
    GenerationCounts counts;
    GenerationPaths paths;
    int workers = 1;

    void validate() const;
};

/// Reads a JSON config whose keys mirror GenerationConfig. Relative paths
/// resolve against the config file's directory. Missing keys keep defaults.
GenerationConfig load_config(const std::filesystem::path& path);

struct SyntheticCaseMeta {
    std::string source_case_id;
    std::uint64_t seed = 0;
    std::optional<int> angle;
    std::optional<double> blend_weight;
    std::vector<Point2> control_points;
    std::optional<ClavicleLandmarks> landmarks;
};

struct SyntheticCase {
    GrayImage image;
    BinaryImage mask;
    bool label = false;
    SyntheticCaseMeta meta;
};

struct ManifestEntry {
    std::string case_id;
    std::string source_case_id;
    bool label = false;
    std::string image_file;  ///< relative to the output directory
    std::string mask_file;
    std::uint64_t seed = 0;
    std::optional<int> angle;
    std::optional<double> blend_weight;
    std::vector<Point2> control_points;
    std::optional<ClavicleLandmarks> landmarks;
};

/// One JSON object per line, fixed key order.
std::string to_json_line(const ManifestEntry& entry);
ManifestEntry parse_manifest_line(const std::string& line);
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

/// Profiles for the configured angles, computed once per run.
class ProfileBank {
public:
    ProfileBank(const TubeCrossSection& tube, const std::vector<int>& angles);
    const ProjectionProfile& at(int angle) const;

private:
    std::vector<ProjectionProfile> profiles_;
};

/// Loads the source radiograph and scales it to working resolution in [0,1].
GrayImage load_radiograph(const std::filesystem::path& images_dir, const CaseRecord& record, int working_resolution);

/// Full positive-case pipeline on an already loaded radiograph and mask:
/// landmarks -> control points -> spline -> profile angle -> stamp -> mask ->
/// blend weight -> blend. Draws from `rng` in exactly that order.
SyntheticCase render_case(const GrayImage& radiograph, const ClavicleMask& clavicles, const GenerationConfig& config,
                          const ProfileBank& profiles, RandomStream& rng);

/// File-backed variant: loads the record's radiograph and clavicle mask and
/// seeds the stream from (config.seed, case_id). Errors are rethrown with the
/// case id prefixed.
SyntheticCase render_case(const CaseRecord& record, const GenerationConfig& config, const ProfileBank& profiles);

struct GenerationPlan {
    std::size_t eligible = 0;
    std::size_t requested = 0;
};

/// Checks inputs and reports how many eligible cases exist, without writing.
GenerationPlan plan_dataset(const GenerationConfig& config);

/// Writes images/, masks/ and manifest.jsonl under config.paths.out_dir and
/// returns the manifest. Positive cases whose landmarks fail are logged and
/// replaced by the next eligible case in seeded order.
std::vector<ManifestEntry> generate_dataset(const GenerationConfig& config);

}  // namespace etsynth
