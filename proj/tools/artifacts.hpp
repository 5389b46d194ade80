#pragma once

// Output helpers for the command-line front end: CSV tables, SVG line plots
// and write-to-temp-then-rename file output.

#include <filesystem>
#include <string>
#include <vector>

namespace psur {

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
    void add_row(const std::vector<double>& values);
    void add_row(const std::vector<std::string>& cells);
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string format_number(double v);

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
    std::string color = "#1f77b4";
    bool markers = false;
};

/// Self-contained SVG with axes, ticks, labels and a legend.
std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series);

/// Writes `path` atomically: content goes to a sibling temporary file first.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Collects outputs and commits them only when every one has been produced.
class OutputSet {
public:
    explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}
    void add(const std::string& name, std::string content) { files_.emplace_back(name, std::move(content)); }
    /// Returns the written paths.
    std::vector<std::filesystem::path> commit() const;

private:
    std::filesystem::path dir_;
    std::vector<std::pair<std::string, std::string>> files_;
};

} // namespace psur
