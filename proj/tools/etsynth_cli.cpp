// etsynth: synthetic endotracheal-tube dataset generator.
//
//   etsynth generate --config cfg.json --seed 7 --out build/ds [--workers 4] [--dry-run]
//   etsynth select --metadata Data_Entry.csv --view AP --out ap_cases.txt
//   etsynth profiles --out dump/            (tube cross-section, projections, profiles)

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <fstream>
#include <iostream>

#include "etsynth/case_selection.hpp"
#include "etsynth/generation.hpp"
#include "etsynth/tube_profile.hpp"

namespace fs = std::filesystem;
using namespace etsynth;

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kIo = 2 };

int run_generate(const fs::path& config_path, std::optional<std::uint64_t> seed, const fs::path& out,
                 std::optional<int> workers, bool dry_run)
{
    auto config = load_config(config_path);
    if (seed)
        config.seed = *seed;
    if (!out.empty())
        config.paths.out_dir = out;
    if (workers)
        config.workers = *workers;

    if (dry_run) {
        const auto plan = plan_dataset(config);
        std::cout << "eligible AP cases: " << plan.eligible << "\n"
                  << "requested: " << plan.requested << " (" << config.counts.num_positive << " positive, "
                  << config.counts.num_negative << " negative)\n";
        if (plan.requested > plan.eligible) {
            std::cerr << "shortfall: " << plan.requested - plan.eligible << "\n";
            return kValidation;
        }
        return kOk;
    }

    const auto manifest = generate_dataset(config);
    std::cout << "wrote " << manifest.size() << " cases to " << config.paths.out_dir.string() << "\n";
    return kOk;
}

int run_select(const fs::path& metadata, const std::string& view, const fs::path& exclude, const fs::path& out)
{
    CaseFilter filter;
    filter.view = parse_view_position(view);
    if (filter.view == ViewPosition::Other)
        throw ValidationError("--view must be AP or PA");
    if (!exclude.empty())
        filter.excluded = read_id_list(exclude);
    const auto records = select_cases(metadata, filter);

    std::ofstream os(out);
    if (!os)
        throw IoError("cannot write " + out.string());
    for (const auto& r : records)
        os << r.image_file << '\n';
    if (!os)
        throw IoError("write failed: " + out.string());
    std::cout << records.size() << " cases\n";
    return kOk;
}

int run_profiles(const fs::path& out)
{
    fs::create_directories(out);
    const TubeCrossSection tube;
    const auto grid = rasterize_cross_section(tube);
    std::vector<std::vector<double>> projections;
    std::vector<ProjectionProfile> profiles;
    for (int a : kCanonicalAngles) {
        projections.push_back(radon_project(grid, a));
        profiles.push_back(sample_profile(projections.back(), a));
    }
    debug::write_grid_png16(out / "cross_section.png", grid);
    debug::write_projections_png16(out / "projections.png", projections);
    debug::write_profiles_csv(out / "profiles.csv", profiles);
    std::cout << "wrote cross_section.png, projections.png, profiles.csv to " << out.string() << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Synthetic endotracheal tube dataset generator"};
    app.require_subcommand(1);

    fs::path config_path, out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    bool dry_run = false;
    auto* gen = app.add_subcommand("generate", "Render positive and negative cases and write a manifest");
    gen->add_option("--config", config_path, "JSON generation config")->required()->check(CLI::ExistingFile);
    gen->add_option("--seed", seed, "Global seed (overrides the config)");
    gen->add_option("--out", out_dir, "Output directory (overrides the config)");
    gen->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    gen->add_flag("--dry-run", dry_run, "Validate inputs and report counts without writing");

    fs::path metadata, select_out, exclude;
    std::string view = "AP";
    auto* sel = app.add_subcommand("select", "List eligible cases from a metadata CSV");
    sel->add_option("--metadata", metadata, "Metadata CSV")->required()->check(CLI::ExistingFile);
    sel->add_option("--view", view, "View position to keep")->capture_default_str();
    sel->add_option("--exclude", exclude, "Known-tube case list to drop");
    sel->add_option("--out", select_out, "Output list, one image per line")->required();

    fs::path profile_out;
    auto* prof = app.add_subcommand("profiles", "Dump tube cross-section, projections and profiles");
    prof->add_option("--out", profile_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kValidation;
    }

    try {
        if (*gen)
            return run_generate(config_path, seed, out_dir, workers, dry_run);
        if (*sel)
            return run_select(metadata, view, exclude, select_out);
        return run_profiles(profile_out);
    } catch (const IoError& e) {
        spdlog::error("{}", e.what());
        return kIo;
    } catch (const Error& e) {
        spdlog::error("{}", e.what());
        return kValidation;
    } catch (const std::filesystem::filesystem_error& e) {
        spdlog::error("{}", e.what());
        return kIo;
    }
}
