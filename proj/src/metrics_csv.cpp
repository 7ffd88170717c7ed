#include "fedspec/metrics_csv.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "fedspec/error.hpp"

namespace fedspec {
namespace {

std::string real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

template <typename T>
T parse_int(const std::string& text, const std::filesystem::path& path, std::size_t line_no) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw IoError(path.string() + ":" + std::to_string(line_no) + ": bad integer \"" + text + "\"");
    }
    return value;
}

double parse_real(const std::string& text, const std::filesystem::path& path, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used == text.size()) return value;
    } catch (const std::exception&) {
    }
    throw IoError(path.string() + ":" + std::to_string(line_no) + ": bad number \"" + text + "\"");
}

}  // namespace

std::string format_csv_row(const MetricsRecord& r) {
    std::string row;
    row += to_string(r.mode);
    row += ',' + std::to_string(r.seed);
    row += ',' + std::to_string(r.episode);
    row += ',' + std::to_string(r.agent_id);
    row += ',' + real(r.episode_reward);
    row += ',' + real(r.avg_user_reward);
    row += ',' + real(r.joint_reward);
    return row;
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) {
        throw IoError("cannot open " + path_.string() + " for writing");
    }
    out_ << kCsvHeader << '\n';
}

void CsvWriter::write(const MetricsRecord& record) {
    out_ << format_csv_row(record) << '\n';
    if (!out_) {
        throw IoError("write failed on " + path_.string());
    }
}

void CsvWriter::close() {
    out_.flush();
    if (!out_) {
        throw IoError("write failed on " + path_.string());
    }
    out_.close();
}

void write_csv(const std::vector<MetricsRecord>& records, const std::filesystem::path& path) {
    CsvWriter writer(path);
    for (const auto& r : records) writer.write(r);
    writer.close();
}

std::vector<MetricsRecord> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw IoError(path.string() + ": missing or unexpected CSV header");
    }
    std::vector<MetricsRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != 7) {
            throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected 7 columns");
        }
        MetricsRecord r;
        if (cells[0] == "fl") {
            r.mode = Mode::fl;
        } else if (cells[0] == "dl") {
            r.mode = Mode::dl;
        } else {
            throw IoError(path.string() + ":" + std::to_string(line_no) + ": bad mode \"" + cells[0] + "\"");
        }
        r.seed = parse_int<std::uint64_t>(cells[1], path, line_no);
        r.episode = parse_int<int>(cells[2], path, line_no);
        r.agent_id = parse_int<int>(cells[3], path, line_no);
        r.episode_reward = parse_real(cells[4], path, line_no);
        r.avg_user_reward = parse_real(cells[5], path, line_no);
        r.joint_reward = parse_real(cells[6], path, line_no);
        records.push_back(r);
    }
    return records;
}

}  // namespace fedspec
