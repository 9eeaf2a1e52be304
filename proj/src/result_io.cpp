#include "mrfsm/result_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mrfsm/serialize.hpp"

namespace mrfsm {

void write_frequent(const std::filesystem::path& path, std::vector<FrequentPattern> patterns) {
    std::sort(patterns.begin(), patterns.end());
    std::ostringstream out;
    for (const auto& p : patterns) out << p.code << '\t' << p.support << '\n';
    write_file_atomic(path, out.str());
}

std::vector<FrequentPattern> read_frequent(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<FrequentPattern> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": missing tab");
        FrequentPattern p;
        p.code = line.substr(0, tab);
        try {
            p.support = std::stoull(line.substr(tab + 1));
        } catch (const std::exception&) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": bad support");
        }
        out.push_back(std::move(p));
    }
    return out;
}

void write_timing(const std::filesystem::path& path, const std::vector<PhaseTiming>& timings) {
    std::ostringstream out;
    for (const auto& t : timings) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", t.seconds);
        out << t.phase << '\t' << buf << '\n';
    }
    write_file_atomic(path, out.str());
}

std::size_t code_string_size(const std::string& code) {
    return static_cast<std::size_t>(std::count(code.begin(), code.end(), '('));
}

}  // namespace mrfsm
