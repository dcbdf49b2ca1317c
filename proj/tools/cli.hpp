#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pblocks::cli {

enum class Format { Json, Dot, Text };

struct RunConfig {
    std::string command; // blocks|triblocks|planar|faces|autos|quotient|cayley|check
    std::string input_path;
    Format format = Format::Json;
    bool per_component = false;
    bool reduce = false;
    std::optional<std::size_t> limit; // overrides every search bound when set
};

struct RunResult {
    int exit_code = 0;
    std::string output;
};

const std::vector<std::string> &commands();

// PLANAR_BLOCKS_LIMIT, when set to a positive integer.
std::optional<std::size_t> limit_from_env();

// Exit 0 on success, 1 on contract violations (and failed checks), 2 when
// the input does not parse.
RunResult run(const RunConfig &cfg, std::string_view input);

} // namespace pblocks::cli
