#include "gk/groupfile.hpp"

#include "gk/errors.hpp"
#include "json.hpp"

namespace gk {

namespace {
constexpr int kDegreeCap = 5000;
}

GroupFile groupfile_from_group(const std::string& name, const Group& g) {
    GroupFile f;
    f.name = name;
    f.degree = g.degree();
    for (const Perm& p : g.generators()) f.generators.push_back(p.images());
    return f;
}

Group groupfile_to_group(const GroupFile& f, int cap) {
    if (f.degree < 1 || f.degree > kDegreeCap)
        throw FormatError("group file degree out of range");
    std::vector<Perm> gens;
    for (const auto& images : f.generators) {
        if ((int)images.size() != f.degree)
            throw FormatError("generator length does not match the degree");
        try {
            gens.emplace_back(images);
        } catch (const NotAPermutation&) {
            throw FormatError("generator array is not a permutation");
        }
    }
    return Group::from_generators(f.degree, std::move(gens), cap);
}

std::string groupfile_to_json(const GroupFile& f) {
    nlohmann::ordered_json j;
    j["name"] = f.name;
    j["degree"] = f.degree;
    j["generators"] = f.generators;
    if (!f.metadata.empty()) j["metadata"] = f.metadata;
    return j.dump(2) + "\n";
}

GroupFile groupfile_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    GroupFile f;
    try {
        f.name = j.value("name", std::string{});
        f.degree = j.at("degree").get<int>();
        f.generators = j.at("generators").get<std::vector<std::vector<int>>>();
        if (j.contains("metadata"))
            f.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad group file fields: ") + e.what());
    }
    return f;
}

}  // namespace gk
