#pragma once

#include <filesystem>
#include <string>

#include "occelm/classifier.hpp"

namespace occelm {

// Text model format, first line "OCCELM v1". Numbers are written with 17
// significant digits so load(save(m)) restores every field exactly.

std::string serialize(const Model& model);
Model deserialize(const std::string& text);

void save_model(const std::filesystem::path& path, const Model& model);
Model load_model(const std::filesystem::path& path);

}  // namespace occelm
