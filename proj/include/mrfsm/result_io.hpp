#ifndef MRFSM_RESULT_IO_HPP_
#define MRFSM_RESULT_IO_HPP_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace mrfsm {

struct FrequentPattern {
    std::string code;  // canonical code string
    std::uint64_t support = 0;

    auto operator<=>(const FrequentPattern&) const = default;
};

struct PhaseTiming {
    std::string phase;
    double seconds = 0.0;
};

/// Sorts by code string and writes `<code>\t<support>` lines.
void write_frequent(const std::filesystem::path& path, std::vector<FrequentPattern> patterns);
std::vector<FrequentPattern> read_frequent(const std::filesystem::path& path);

void write_timing(const std::filesystem::path& path, const std::vector<PhaseTiming>& timings);

/// Number of edges in a code string, i.e. its count of tuples.
std::size_t code_string_size(const std::string& code);

}  // namespace mrfsm

#endif  // MRFSM_RESULT_IO_HPP_
