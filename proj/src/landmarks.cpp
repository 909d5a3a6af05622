#include "etsynth/landmarks.hpp"

#include <algorithm>
#include <cmath>

#include "etsynth/png_io.hpp"

namespace etsynth {

std::vector<Component> connected_components(const BinaryImage& mask, Image<int>* labels_out)
{
    Image<int> labels(mask.width(), mask.height(), 0);
    std::vector<Component> components;
    std::vector<std::pair<int, int>> stack;

    for (int y0 = 0; y0 < mask.height(); ++y0) {
        for (int x0 = 0; x0 < mask.width(); ++x0) {
            if (!mask(x0, y0) || labels(x0, y0))
                continue;
            Component comp;
            comp.label = static_cast<int>(components.size()) + 1;
            labels(x0, y0) = comp.label;
            stack.assign(1, {x0, y0});
            while (!stack.empty()) {
                const auto [x, y] = stack.back();
                stack.pop_back();
                ++comp.area;
                comp.sum_x += x;
                comp.sum_y += y;
                comp.max_row = std::max(comp.max_row, y);
                constexpr int dx[] = {1, -1, 0, 0};
                constexpr int dy[] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    const int nx = x + dx[k];
                    const int ny = y + dy[k];
                    if (mask.contains(nx, ny) && mask(nx, ny) && !labels(nx, ny)) {
                        labels(nx, ny) = comp.label;
                        stack.emplace_back(nx, ny);
                    }
                }
            }
            comp.centroid_x = static_cast<double>(comp.sum_x) / comp.area;
            comp.centroid_y = static_cast<double>(comp.sum_y) / comp.area;
            components.push_back(comp);
        }
    }
    if (labels_out)
        *labels_out = std::move(labels);
    return components;
}

ClavicleLandmarks extract_landmarks(const ClavicleMask& mask)
{
    for (auto v : mask.pixels.pixels())
        if (v > 1)
            throw ValidationError(mask.source_id + ": clavicle mask is not binary");

    auto components = connected_components(mask.pixels);
    std::erase_if(components, [](const Component& c) { return c.area < kMinClavicleArea; });
    if (components.size() < 2)
        throw LandmarkError(mask.source_id, "expected two clavicle components of at least " +
                                                std::to_string(kMinClavicleArea) + " px, found " +
                                                std::to_string(components.size()));

    // largest first; equal areas keep raster order
    std::stable_sort(components.begin(), components.end(),
                     [](const Component& a, const Component& b) { return a.area > b.area; });
    const Component& a = components[0];
    const Component& b = components[1];

    ClavicleLandmarks out;
    // midpoint = num / den exactly; round half up in integers so translation is exact
    const std::int64_t num = a.sum_x * b.area + b.sum_x * a.area;
    const std::int64_t den = 2 * static_cast<std::int64_t>(a.area) * b.area;
    out.mid_x = static_cast<int>((2 * num + den) / (2 * den));
    out.low_y = std::max(a.max_row, b.max_row);
    return out;
}

std::filesystem::path clavicle_mask_path(const std::filesystem::path& masks_dir, const std::string& case_id)
{
    return masks_dir / (case_id + "_clavicle.png");
}

ClavicleMask load_clavicle_mask(const std::filesystem::path& masks_dir, const std::string& case_id,
                                int working_resolution)
{
    const auto path = clavicle_mask_path(masks_dir, case_id);
    if (!std::filesystem::exists(path))
        throw IoError(case_id + ": no clavicle mask at " + path.string());
    auto raw = png::read_gray8(path);
    if (raw.width() != working_resolution || raw.height() != working_resolution)
        throw ValidationError(case_id + ": clavicle mask is " + std::to_string(raw.width()) + "x" +
                              std::to_string(raw.height()) + ", expected " + std::to_string(working_resolution) +
                              " square");
    ClavicleMask mask{BinaryImage(raw.width(), raw.height()), case_id};
    for (std::size_t i = 0; i < raw.size(); ++i)
        mask.pixels.pixels()[i] = raw.pixels()[i] != 0 ? 1 : 0;
    return mask;
}

}  // namespace etsynth
