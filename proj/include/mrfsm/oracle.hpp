#ifndef MRFSM_ORACLE_HPP_
#define MRFSM_ORACLE_HPP_

#include <cstdint>
#include <vector>

#include "mrfsm/graph.hpp"
#include "mrfsm/result_io.hpp"

namespace mrfsm {

/// Serial reference miner: breadth-first candidate generation and test over
/// the whole dataset in one process, one level per pattern size.
std::vector<FrequentPattern> mine_sequential(const GraphDataset& dataset, std::uint32_t threshold);

inline constexpr std::size_t kBruteForceMaxSize = 6;

/// Enumerates every connected edge subset of up to `max_size` edges of every
/// graph, canonicalizes it and counts the graphs containing it. Shares only
/// min_dfs_code with the miner. Throws std::invalid_argument if max_size
/// exceeds kBruteForceMaxSize.
std::vector<FrequentPattern> brute_force(const GraphDataset& dataset, std::uint32_t threshold, std::size_t max_size);

}  // namespace mrfsm

#endif  // MRFSM_ORACLE_HPP_
