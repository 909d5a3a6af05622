#include "corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "etsynth/png_io.hpp"

namespace etsynth::fixtures {

namespace fs = std::filesystem;

TempDir::TempDir(const std::string& tag)
{
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("etsynth_" + tag + "_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
}

TempDir::~TempDir()
{
    std::error_code ec;
    fs::remove_all(path_, ec);
}

GrayImage make_radiograph(int size, std::uint64_t seed)
{
    RandomStream rng(seed);
    const double lung_dx = rng.uniform_real(0.18, 0.24);
    const double brightness = rng.uniform_real(0.25, 0.4);
    GrayImage img(size, size);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            const double u = (x + 0.5) / size - 0.5;
            const double v = (y + 0.5) / size - 0.5;
            // dark lungs either side of a brighter mediastinum
            const double lungs = std::exp(-((std::abs(u) - lung_dx) * (std::abs(u) - lung_dx)) / 0.01 - v * v / 0.08);
            const double spine = std::exp(-u * u / 0.004);
            double value = brightness + 0.35 * spine - 0.2 * lungs + 0.05 * v;
            value += rng.uniform_real(-0.02, 0.02);
            img(x, y) = std::clamp(value, 0.0, 1.0);
        }
    return img;
}

BinaryImage make_clavicle_mask(int size, int mid_x, int low_y)
{
    BinaryImage mask(size, size, 0);
    const double half_gap = size * 0.06;
    const double ax = size * 0.13;
    const double ay = size * 0.025;
    const double cy = low_y - ay + 0.25;  // bottom row is exactly low_y
    for (int side : {-1, 1}) {
        const double cx = mid_x + side * (half_gap + ax);
        for (int y = 0; y < size; ++y)
            for (int x = 0; x < size; ++x) {
                const double dx = (x - cx) / ax;
                const double dy = (y - cy) / ay;
                if (dx * dx + dy * dy <= 1.0)
                    mask(x, y) = 1;
            }
    }
    return mask;
}

namespace {

void write_mask(const fs::path& path, const BinaryImage& mask)
{
    Image<std::uint8_t> out(mask.width(), mask.height());
    for (std::size_t i = 0; i < mask.size(); ++i)
        out.pixels()[i] = mask.pixels()[i] ? 255 : 0;
    png::write_gray8(path, out);
}

}  // namespace

GenerationConfig write_corpus(const fs::path& root, const CorpusSpec& spec)
{
    fs::create_directories(root / "images");
    fs::create_directories(root / "clavicles");
    std::ofstream csv(root / "metadata.csv");
    csv << "Image Index,Finding Labels,Follow-up #,Patient ID,Patient Age,Patient Gender,View Position\n";

    const int total = spec.ap_cases + spec.pa_cases;
    int ap_seen = 0;
    int pa_seen = 0;
    for (int i = 0; i < total; ++i) {
        // interleave PA cases so file order matters
        const bool pa = pa_seen < spec.pa_cases && (i % 5 == 1 || total - i == spec.pa_cases - pa_seen);
        if (pa)
            ++pa_seen;
        char name[32];
        std::snprintf(name, sizeof name, "%08d_000", i + 1);
        const std::string id = name;
        png::write_gray8(root / "images" / (id + ".png"), to_u8(make_radiograph(spec.source_size, 1000 + i)));

        const int mid = spec.mask_size / 2 + (i % 5) - 2;
        const int low = static_cast<int>(spec.mask_size * 0.3) + (i % 7);
        BinaryImage mask = make_clavicle_mask(spec.mask_size, mid, low);
        if (!pa && ap_seen < spec.broken_masks) {
            // keep only the left clavicle
            for (int y = 0; y < mask.height(); ++y)
                for (int x = mid; x < mask.width(); ++x)
                    mask(x, y) = 0;
        }
        write_mask(root / "clavicles" / (id + "_clavicle.png"), mask);
        if (!pa)
            ++ap_seen;
        csv << id << ".png,No Finding,0," << i + 1 << ",60,M," << (pa ? "PA" : "AP") << "\n";
    }
    csv.close();

    GenerationConfig cfg;
    cfg.seed = 7;
    cfg.paths.images_dir = root / "images";
    cfg.paths.clavicle_masks_dir = root / "clavicles";
    cfg.paths.metadata_csv = root / "metadata.csv";
    cfg.paths.out_dir = root / "out";
    cfg.working_resolution = spec.mask_size;
    return cfg;
}

std::map<std::string, std::string> read_tree(const fs::path& root)
{
    std::map<std::string, std::string> tree;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file())
            continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        tree[fs::relative(entry.path(), root).generic_string()] = ss.str();
    }
    return tree;
}

}  // namespace etsynth::fixtures
