#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nxmds/experiments.hpp"

namespace nxmds {

/// Ordered key/value report rendered as "key: value" lines. Keys keep their
/// insertion order so identical runs produce identical bytes.
class ReportDocument {
   public:
    void set(std::string key, std::string value);
    void set(std::string key, std::uint64_t value) { set(std::move(key), std::to_string(value)); }
    void set(std::string key, const std::vector<std::size_t>& ids);
    void set_real(std::string key, double value);

    const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }
    std::string render() const;

   private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// "[1, 3]" style node list.
std::string format_ids(const std::vector<std::size_t>& ids);
/// Fixed 9-significant-digit rendering shared by reports and CSV.
std::string format_real(double v);

struct ExperimentRow {
    std::string mode;
    std::size_t n = 0;
    std::size_t k = 0;
    std::uint64_t q = 0;
    std::size_t N = 0;
    std::string model;
    std::size_t t = 0;
    RateEstimate estimate;
    bool pass = false;
};

std::string csv_header();
std::string csv_row(const ExperimentRow& row);

}  // namespace nxmds
