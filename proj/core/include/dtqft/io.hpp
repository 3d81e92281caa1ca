#pragma once
// Structured-text (JSON) readers and writers for every file format.
#include <filesystem>
#include <string>

#include <json.hpp>

#include "dtqft/defect_data.hpp"
#include "dtqft/fusion.hpp"

namespace dtqft {

class DecoratedSurface;
class StratifiedBordism;
struct TwoMorphismDiagram;
struct Movie;

using json = nlohmann::json;

json read_json_file(const std::filesystem::path& p);

GroupTable group_from_json(const json& j);
json group_to_json(const GroupTable& g);

FusionCategory category_from_json(const json& j);
FusionCategory load_category(const std::filesystem::path& p);

DefectData defect_data_from_json(const json& j);
DefectData load_defect_data(const std::filesystem::path& p);

DecoratedSurface surface_from_json(const json& j);
json surface_to_json(const DecoratedSurface& s);

StratifiedBordism bordism_from_json(const json& j);
json bordism_to_json(const StratifiedBordism& b);

TwoMorphismDiagram diagram_from_json(const json& j);
json diagram_to_json(const TwoMorphismDiagram& d);
Movie movie_from_json(const json& j);
json movie_to_json(const Movie& mv);

// Resolve a bundled data name ("fibonacci") or a path.
std::filesystem::path resolve_data_path(const std::string& name_or_path,
                                        const std::string& kind);

}  // namespace dtqft
