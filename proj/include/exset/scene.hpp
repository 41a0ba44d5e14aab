#pragma once

#include <filesystem>
#include <string>

#include "exset/classifier.hpp"

namespace exset {

/// Batch input: labeled generator matrices, labeled curve components, and
/// caller-asserted group hypotheses. Entries are kept sorted by label.
struct SceneFile {
    std::vector<std::pair<std::string, Mat3>> group;
    std::vector<std::pair<std::string, HomPoly>> curve;
    std::optional<bool> infinite;
    std::optional<bool> virtually_cyclic;

    const Mat3* find_generator(const std::string& label) const;
    const HomPoly* find_component(const std::string& label) const;

    GroupPresentation group_presentation() const;
};

/// Throws Error(parse_error) on malformed input, non-invertible matrices or
/// invalid polynomials.
SceneFile parse_scene(const std::string& text);
SceneFile load_scene(const std::filesystem::path& path);

std::string serialize_scene(const SceneFile& scene);

} // namespace exset
