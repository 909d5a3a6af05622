#include "etsynth/generation.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <set>
#include <thread>

#include <json.hpp>

#include "etsynth/png_io.hpp"

namespace etsynth {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

void GenerationConfig::validate() const
{
    if (working_resolution < 2 * kStampMargin + 1)
        throw ValidationError("config: working_resolution too small");
    if (angles.empty())
        throw ValidationError("config: angles must be non-empty");
    for (int a : angles)
        if (std::find(kCanonicalAngles.begin(), kCanonicalAngles.end(), a) == kCanonicalAngles.end())
            throw ValidationError("config: angle " + std::to_string(a) + " is not one of 0, 30, 60, 90");
    if (!(blend_weight_lo >= 0.0 && blend_weight_lo <= blend_weight_hi && blend_weight_hi <= 1.0))
        throw ValidationError("config: blend_weight_range must be an ordered sub-range of [0, 1]");
    if (!(mask_threshold > 0.0 && mask_threshold < 1.0))
        throw ValidationError("config: mask_threshold must lie in (0, 1)");
    if (counts.num_positive < 0 || counts.num_negative < 0)
        throw ValidationError("config: counts must be non-negative");
    if (workers < 1)
        throw ValidationError("config: workers must be >= 1");
    trajectory.validate(working_resolution);
    tube.validate();
}

namespace {

template <typename T>
void read_if(const ordered_json& j, const char* key, T& out)
{
    if (auto it = j.find(key); it != j.end())
        out = it->get<T>();
}

void reject_unknown(const ordered_json& j, std::initializer_list<std::string_view> known, const std::string& where)
{
    if (!j.is_object())
        throw ValidationError("config: " + where + " must be an object");
    for (const auto& [key, _] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ValidationError("config: unknown key '" + key + "' in " + where);
}

IntRange read_range(const ordered_json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw ValidationError("config: ranges are two-element arrays");
    return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

fs::path resolve(const fs::path& base, const std::string& p)
{
    if (p.empty())
        return {};
    fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

}  // namespace

GenerationConfig load_config(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config " + path.string());
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("config: " + std::string(e.what()));
    }

    GenerationConfig cfg;
    const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
    try {
        reject_unknown(j,
                       {"working_resolution", "seed", "angles", "blend_weight_range", "mask_threshold", "trajectory",
                        "tube", "counts", "paths", "workers"},
                       "config");
        read_if(j, "working_resolution", cfg.working_resolution);
        read_if(j, "seed", cfg.seed);
        read_if(j, "angles", cfg.angles);
        read_if(j, "mask_threshold", cfg.mask_threshold);
        read_if(j, "workers", cfg.workers);
        if (auto it = j.find("blend_weight_range"); it != j.end()) {
            if (!it->is_array() || it->size() != 2)
                throw ValidationError("config: blend_weight_range must be [lo, hi]");
            cfg.blend_weight_lo = (*it)[0].get<double>();
            cfg.blend_weight_hi = (*it)[1].get<double>();
        }
        if (auto it = j.find("trajectory"); it != j.end()) {
            reject_unknown(*it, {"x_jitter_px", "y_end_offset_px", "num_control_points", "samples_per_curve"},
                           "trajectory");
            if (it->contains("x_jitter_px"))
                cfg.trajectory.x_jitter = read_range(it->at("x_jitter_px"));
            if (it->contains("y_end_offset_px"))
                cfg.trajectory.y_end_offset = read_range(it->at("y_end_offset_px"));
            read_if(*it, "num_control_points", cfg.trajectory.num_control_points);
            read_if(*it, "samples_per_curve", cfg.trajectory.samples_per_curve);
        }
        if (auto it = j.find("tube"); it != j.end()) {
            reject_unknown(*it,
                           {"outer_diameter_d1", "inner_diameter_d2", "strip_thickness_t", "tube_attenuation_c1",
                            "marker_attenuation_c2", "grid_size"},
                           "tube");
            read_if(*it, "outer_diameter_d1", cfg.tube.outer_diameter);
            read_if(*it, "inner_diameter_d2", cfg.tube.inner_diameter);
            read_if(*it, "strip_thickness_t", cfg.tube.strip_thickness);
            read_if(*it, "tube_attenuation_c1", cfg.tube.tube_attenuation);
            read_if(*it, "marker_attenuation_c2", cfg.tube.marker_attenuation);
            read_if(*it, "grid_size", cfg.tube.grid_size);
        }
        if (auto it = j.find("counts"); it != j.end()) {
            reject_unknown(*it, {"num_positive", "num_negative"}, "counts");
            read_if(*it, "num_positive", cfg.counts.num_positive);
            read_if(*it, "num_negative", cfg.counts.num_negative);
        }
        if (auto it = j.find("paths"); it != j.end()) {
            reject_unknown(*it, {"images_dir", "clavicle_masks_dir", "metadata_csv", "out_dir", "exclude_list"},
                           "paths");
            std::string s;
            auto take = [&](const char* key, fs::path& out) {
                s.clear();
                read_if(*it, key, s);
                if (!s.empty())
                    out = resolve(base, s);
            };
            take("images_dir", cfg.paths.images_dir);
            take("clavicle_masks_dir", cfg.paths.clavicle_masks_dir);
            take("metadata_csv", cfg.paths.metadata_csv);
            take("out_dir", cfg.paths.out_dir);
            take("exclude_list", cfg.paths.exclude_list);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("config: " + std::string(e.what()));
    }
    return cfg;
}

// --- manifest ---------------------------------------------------------------

std::string to_json_line(const ManifestEntry& e)
{
    ordered_json j;
    j["case_id"] = e.case_id;
    j["source_case_id"] = e.source_case_id;
    j["label"] = e.label ? 1 : 0;
    j["image_file"] = e.image_file;
    j["mask_file"] = e.mask_file;
    j["seed"] = e.seed;
    j["angle"] = e.angle ? ordered_json(*e.angle) : ordered_json(nullptr);
    j["blend_weight"] = e.blend_weight ? ordered_json(*e.blend_weight) : ordered_json(nullptr);
    ordered_json pts = ordered_json::array();
    for (const auto& p : e.control_points)
        pts.push_back({p.x, p.y});
    j["control_points"] = std::move(pts);
    if (e.landmarks)
        j["landmarks"] = {{"mid_x", e.landmarks->mid_x}, {"low_y", e.landmarks->low_y}};
    else
        j["landmarks"] = nullptr;
    return j.dump();
}

ManifestEntry parse_manifest_line(const std::string& line)
{
    try {
        const auto j = ordered_json::parse(line);
        ManifestEntry e;
        e.case_id = j.at("case_id").get<std::string>();
        e.source_case_id = j.at("source_case_id").get<std::string>();
        e.label = j.at("label").get<int>() != 0;
        e.image_file = j.at("image_file").get<std::string>();
        e.mask_file = j.at("mask_file").get<std::string>();
        e.seed = j.at("seed").get<std::uint64_t>();
        if (!j.at("angle").is_null())
            e.angle = j.at("angle").get<int>();
        if (!j.at("blend_weight").is_null())
            e.blend_weight = j.at("blend_weight").get<double>();
        for (const auto& p : j.at("control_points"))
            e.control_points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        if (!j.at("landmarks").is_null())
            e.landmarks = ClavicleLandmarks{j["landmarks"].at("mid_x").get<int>(), j["landmarks"].at("low_y").get<int>()};
        return e;
    } catch (const nlohmann::json::exception& ex) {
        throw ValidationError("manifest: " + std::string(ex.what()));
    }
}

std::vector<ManifestEntry> read_manifest(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open manifest " + path.string());
    std::vector<ManifestEntry> entries;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty())
            entries.push_back(parse_manifest_line(line));
    return entries;
}

// --- rendering --------------------------------------------------------------

ProfileBank::ProfileBank(const TubeCrossSection& tube, const std::vector<int>& angles)
{
    const auto grid = rasterize_cross_section(tube);
    for (int a : angles)
        profiles_.push_back(sample_profile(radon_project(grid, a), a));
}

const ProjectionProfile& ProfileBank::at(int angle) const
{
    for (const auto& p : profiles_)
        if (static_cast<int>(p.angle_deg) == angle)
            return p;
    throw ValidationError("no profile computed for angle " + std::to_string(angle));
}

GrayImage load_radiograph(const fs::path& images_dir, const CaseRecord& record, int working_resolution)
{
    const auto path = images_dir / record.image_file;
    if (!fs::exists(path))
        throw IoError(record.case_id + ": no image at " + path.string());
    return resize(from_u8(png::read_gray8(path)), working_resolution, working_resolution);
}

SyntheticCase render_case(const GrayImage& radiograph, const ClavicleMask& clavicles, const GenerationConfig& config,
                          const ProfileBank& profiles, RandomStream& rng)
{
    const int res = config.working_resolution;
    if (radiograph.width() != res || radiograph.height() != res)
        throw ValidationError("radiograph is not at working resolution");

    const auto landmarks = extract_landmarks(clavicles);
    const auto control = sample_control_points(landmarks, config.trajectory, res, rng);
    const auto curve = interpolate_bspline(control, config.trajectory.resolved_samples(res));
    const int angle = config.angles[rng.index(config.angles.size())];
    const auto overlay = stamp_tube(curve, profiles.at(angle), {res, res}, config.mask_threshold);
    auto mask = derive_mask(overlay);
    const double weight = rng.uniform_real(config.blend_weight_lo, config.blend_weight_hi);

    SyntheticCase out;
    out.image = blend(radiograph, overlay, weight);
    out.label = std::any_of(mask.pixels().begin(), mask.pixels().end(), [](auto v) { return v != 0; });
    out.mask = std::move(mask);
    out.meta.source_case_id = clavicles.source_id;
    out.meta.angle = angle;
    out.meta.blend_weight = weight;
    out.meta.control_points = control;
    out.meta.landmarks = landmarks;
    if (!out.label)
        throw ValidationError("tube mask is empty");
    return out;
}

SyntheticCase render_case(const CaseRecord& record, const GenerationConfig& config, const ProfileBank& profiles)
{
    const std::uint64_t seed = derive_seed(config.seed, record.case_id);
    try {
        const auto clavicles =
            load_clavicle_mask(config.paths.clavicle_masks_dir, record.case_id, config.working_resolution);
        const auto radiograph = load_radiograph(config.paths.images_dir, record, config.working_resolution);
        RandomStream rng(seed);
        auto out = render_case(radiograph, clavicles, config, profiles, rng);
        out.meta.seed = seed;
        return out;
    } catch (const LandmarkError&) {
        throw;
    } catch (const IoError& e) {
        throw IoError(record.case_id + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(record.case_id + ": " + e.what());
    }
}

// --- batch generation -------------------------------------------------------

namespace {

struct Inputs {
    std::vector<CaseRecord> eligible;
};

Inputs gather_inputs(const GenerationConfig& config)
{
    config.validate();
    for (const auto& [dir, what] : {std::pair{config.paths.images_dir, "images_dir"},
                                    std::pair{config.paths.clavicle_masks_dir, "clavicle_masks_dir"}})
        if (dir.empty() || !fs::is_directory(dir))
            throw IoError(std::string(what) + " is not a directory: " + dir.string());
    if (config.paths.metadata_csv.empty())
        throw IoError("metadata_csv not set");

    CaseFilter filter;
    if (!config.paths.exclude_list.empty())
        filter.excluded = read_id_list(config.paths.exclude_list);
    return {select_cases(config.paths.metadata_csv, filter)};
}

/// Runs job(i) for i in [0, n) on up to `workers` threads; exceptions are
/// captured per index.
template <typename Job>
std::vector<std::exception_ptr> parallel_for(std::size_t n, int workers, Job job)
{
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                job(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto threads = static_cast<std::size_t>(std::max(1, workers));
    if (threads == 1 || n < 2) {
        run();
        return errors;
    }
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(threads, n); ++t)
        pool.emplace_back(run);
    pool.clear();
    return errors;
}

void write_case_files(const fs::path& out_dir, const ManifestEntry& e, const GrayImage& image, const BinaryImage& mask)
{
    png::write_gray8(out_dir / e.image_file, to_u8(image));
    Image<std::uint8_t> mask8(mask.width(), mask.height());
    for (std::size_t i = 0; i < mask.size(); ++i)
        mask8.pixels()[i] = mask.pixels()[i] ? 255 : 0;
    png::write_gray8(out_dir / e.mask_file, mask8);
}

}  // namespace

GenerationPlan plan_dataset(const GenerationConfig& config)
{
    const auto inputs = gather_inputs(config);
    GenerationPlan plan;
    plan.eligible = inputs.eligible.size();
    plan.requested = static_cast<std::size_t>(config.counts.num_positive) + static_cast<std::size_t>(config.counts.num_negative);
    return plan;
}

std::vector<ManifestEntry> generate_dataset(const GenerationConfig& config)
{
    auto candidates = gather_inputs(config).eligible;
    const auto num_pos = static_cast<std::size_t>(config.counts.num_positive);
    const auto num_neg = static_cast<std::size_t>(config.counts.num_negative);
    if (num_pos + num_neg > candidates.size())
        throw ValidationError("insufficient eligible cases: requested " + std::to_string(num_pos + num_neg) +
                              ", eligible " + std::to_string(candidates.size()) + ", shortfall " +
                              std::to_string(num_pos + num_neg - candidates.size()));

    const fs::path& out_dir = config.paths.out_dir;
    if (out_dir.empty())
        throw IoError("out_dir not set");
    try {
        fs::create_directories(out_dir / "images");
        fs::create_directories(out_dir / "masks");
    } catch (const fs::filesystem_error& e) {
        throw IoError(e.what());
    }

    RandomStream order_rng(mix64(config.seed ^ 0x6f72646572ULL));
    shuffle(candidates, order_rng);

    const ProfileBank profiles(config.tube, config.angles);
    const int res = config.working_resolution;

    // positives: windows sized to the remaining deficit, so successes never overshoot
    std::vector<ManifestEntry> positives;
    std::vector<bool> used(candidates.size(), false);
    std::size_t cursor = 0;
    while (positives.size() < num_pos) {
        const std::size_t want = num_pos - positives.size();
        if (cursor + want > candidates.size())
            throw ValidationError("insufficient cases with usable clavicle landmarks: need " + std::to_string(want) +
                                  " more positives, " + std::to_string(candidates.size() - cursor) +
                                  " candidates left");
        std::vector<std::optional<ManifestEntry>> window(want);
        auto errors = parallel_for(want, config.workers, [&](std::size_t i) {
            const CaseRecord& rec = candidates[cursor + i];
            if (!fs::exists(clavicle_mask_path(config.paths.clavicle_masks_dir, rec.case_id)))
                throw LandmarkError(rec.case_id, "no clavicle mask");
            auto rendered = render_case(rec, config, profiles);
            ManifestEntry e;
            e.case_id = "pos_" + rec.case_id;
            e.source_case_id = rec.case_id;
            e.label = true;
            e.image_file = "images/" + e.case_id + ".png";
            e.mask_file = "masks/" + e.case_id + ".png";
            e.seed = rendered.meta.seed;
            e.angle = rendered.meta.angle;
            e.blend_weight = rendered.meta.blend_weight;
            e.control_points = rendered.meta.control_points;
            e.landmarks = rendered.meta.landmarks;
            write_case_files(out_dir, e, rendered.image, rendered.mask);
            window[i] = std::move(e);
        });
        for (std::size_t i = 0; i < want; ++i) {
            if (errors[i]) {
                try {
                    std::rethrow_exception(errors[i]);
                } catch (const LandmarkError& e) {
                    spdlog::warn("skipping {}: {}", candidates[cursor + i].case_id, e.what());
                    continue;
                }
            }
            used[cursor + i] = true;
            positives.push_back(std::move(*window[i]));
        }
        cursor += want;
    }

    std::vector<const CaseRecord*> negative_src;
    for (std::size_t i = 0; i < candidates.size() && negative_src.size() < num_neg; ++i)
        if (!used[i])
            negative_src.push_back(&candidates[i]);
    if (negative_src.size() < num_neg)
        throw ValidationError("insufficient eligible cases for negatives");

    std::vector<ManifestEntry> negatives(num_neg);
    auto errors = parallel_for(num_neg, config.workers, [&](std::size_t i) {
        const CaseRecord& rec = *negative_src[i];
        ManifestEntry& e = negatives[i];
        e.case_id = "neg_" + rec.case_id;
        e.source_case_id = rec.case_id;
        e.label = false;
        e.image_file = "images/" + e.case_id + ".png";
        e.mask_file = "masks/" + e.case_id + ".png";
        e.seed = derive_seed(config.seed, rec.case_id);
        write_case_files(out_dir, e, load_radiograph(config.paths.images_dir, rec, res), BinaryImage(res, res, 0));
    });
    for (auto& err : errors)
        if (err)
            std::rethrow_exception(err);

    std::vector<ManifestEntry> manifest = std::move(positives);
    manifest.insert(manifest.end(), std::make_move_iterator(negatives.begin()), std::make_move_iterator(negatives.end()));

    for (const auto& e : manifest)
        if (!fs::exists(out_dir / e.image_file) || !fs::exists(out_dir / e.mask_file))
            throw IoError("output missing for " + e.case_id);

    const auto final_path = out_dir / "manifest.jsonl";
    const auto tmp_path = out_dir / "manifest.jsonl.tmp";
    {
        std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot write " + tmp_path.string());
        for (const auto& e : manifest)
            out << to_json_line(e) << '\n';
        out.flush();
        if (!out)
            throw IoError("write failed: " + tmp_path.string());
    }
    std::error_code ec;
    fs::rename(tmp_path, final_path, ec);
    if (ec)
        throw IoError("cannot move manifest into place: " + ec.message());
    return manifest;
}

}  // namespace etsynth
