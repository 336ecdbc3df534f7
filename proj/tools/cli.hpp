#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace primedyn::cli {

/// Runs one `primedyn` invocation. `args` excludes the program name.
/// Returns 0 on success, 2 on argument errors and 1 on runtime errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Regenerates every curve, table and attractor into `out_dir` and writes a
/// manifest with a digest per artifact. Returns the number of artifacts.
std::size_t write_report(std::uint64_t n_primes, const std::filesystem::path& out_dir, std::uint64_t seed,
                         unsigned threads, std::ostream& log);

}  // namespace primedyn::cli
