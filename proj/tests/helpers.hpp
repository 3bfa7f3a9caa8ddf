#pragma once

#include <filesystem>
#include <string>

#include <unistd.h>

// Shared plumbing for the test binaries: fixture lookup and scratch
// directories for tests that need to write files.

inline std::string fixture_path(const std::string& name) {
    return std::string(SLICEKIT_FIXTURE_DIR) + "/" + name;
}

inline std::string fresh_temp_dir(const std::string& tag) {
    namespace fs = std::filesystem;
    const auto dir =
        fs::temp_directory_path() / ("slicekit-" + tag + "-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir.string();
}
