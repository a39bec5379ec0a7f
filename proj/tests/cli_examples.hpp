#pragma once

#include <string>
#include <vector>

namespace qsf::testing {

/// Invocations documented in the README; each must produce byte-identical output run to run.
inline const std::vector<std::vector<std::string>>& documented_examples() {
    static const std::vector<std::vector<std::string>> ex = {
        {"fuse", "--rep", "1/2", "--rep2", "1/2"},
        {"fuse", "--rep", "2x1/2 + 1", "--rep2", "3/2", "--format", "json"},
        {"dim", "--rep", "0 + 2x1", "--q", "0.5"},
        {"index", "--rep", "1/2", "--q", "0.5", "--format", "json"},
        {"index", "--rep", "1"},
        {"tower", "--rep", "1/2", "--n", "4"},
        {"tower", "--rep", "1/2", "--n", "3", "--q", "0.5", "--format", "json"},
        {"tower", "--rep", "1/2", "--n", "2", "--dot"},
        {"type3", "--rep", "0 + 1/2", "--q", "0.5"},
        {"type3", "--rep", "2x1/2", "--q", "0.3", "--sigma", "1/2", "--format", "json"},
        {"verify", "relations"},
        {"verify", "all", "--format", "json"},
    };
    return ex;
}

}  // namespace qsf::testing
