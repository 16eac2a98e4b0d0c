#pragma once

#include "teamlogic/core.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace fixtures {

inline std::string path(const std::string& rel)
{
    return std::string(TEAMLOGIC_FIXTURES) + "/" + rel;
}

inline std::string text(const std::string& rel)
{
    return teamlogic::read_file(path(rel));
}

// Sorted relative paths of the files in a fixture directory with the given extension.
inline std::vector<std::string> list(const std::string& dir, const std::string& ext)
{
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(path(dir)))
        if (e.path().extension() == ext)
            out.push_back(dir + "/" + e.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace fixtures
