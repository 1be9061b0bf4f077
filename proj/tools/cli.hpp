#pragma once

#include <string>
#include <vector>

namespace modat::cli {

inline constexpr const char* kVersion = "modat 0.1.0";

struct RunResult {
    int code = 0;
    std::string out;  // artifact text when no --out was given
    std::string err;  // diagnostics
};

// args exclude the program name
RunResult run(const std::vector<std::string>& args);

std::string sha256_hex(const std::string& data);

}  // namespace modat::cli
