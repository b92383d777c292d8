#pragma once

#include <map>
#include <string>
#include <vector>

#include "gk/group.hpp"

namespace gk {

// JSON exchange format for permutation groups: name, degree, generator image
// arrays (0-based), optional string metadata. Degree is capped at 5000.
struct GroupFile {
    std::string name;
    int degree = 0;
    std::vector<std::vector<int>> generators;
    std::map<std::string, std::string> metadata;
};

GroupFile groupfile_from_group(const std::string& name, const Group& g);
Group groupfile_to_group(const GroupFile& f, int cap = Group::kDefaultCap);

std::string groupfile_to_json(const GroupFile& f);
// Throws FormatError on malformed documents or invalid permutations.
GroupFile groupfile_from_json(const std::string& text);

}  // namespace gk
