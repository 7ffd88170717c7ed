#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "fedspec/experiment.hpp"

namespace fedspec {

inline constexpr std::string_view kCsvHeader =
    "mode,seed,episode,agent_id,episode_reward,avg_user_reward,joint_reward";

/// One CSV row (no trailing newline). Reals carry 9 significant digits.
std::string format_csv_row(const MetricsRecord& record);

/// Streams records to a file as they are produced.
class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path);

    void write(const MetricsRecord& record);
    /// Flushes and checks the stream; throws IoError on failure.
    void close();

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

void write_csv(const std::vector<MetricsRecord>& records, const std::filesystem::path& path);

std::vector<MetricsRecord> read_csv(const std::filesystem::path& path);

}  // namespace fedspec
