#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace testing {

/// Fresh directory under the system temp dir, removed on scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("uamlink-" + tag + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

    std::filesystem::path write(const std::string& name, const std::string& contents) const {
        const auto p = path_ / name;
        std::ofstream(p) << contents;
        return p;
    }

private:
    std::filesystem::path path_;
};

inline std::string bundled_scenario(const std::string& name) {
    return std::string(UAMLINK_SOURCE_DIR) + "/scenarios/" + name + ".yaml";
}

}  // namespace testing
