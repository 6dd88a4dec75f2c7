#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace conicstab {

struct CorpusOutcome {
    bool pass = false;
    std::string detail;
};

// A named worked example bundled with the library as a self-check.  run is
// deterministic for a fixed seed.
struct CorpusEntry {
    std::string key;
    std::string description;
    std::function<CorpusOutcome(std::uint64_t seed)> run;
};

const std::vector<CorpusEntry>& corpus_entries();

}  // namespace conicstab
