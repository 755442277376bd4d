#include "nxmds/report.hpp"

#include <cstdio>
#include <sstream>

namespace nxmds {

void ReportDocument::set(std::string key, std::string value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    entries_.emplace_back(std::move(key), std::move(value));
}

void ReportDocument::set(std::string key, const std::vector<std::size_t>& ids) { set(std::move(key), format_ids(ids)); }

void ReportDocument::set_real(std::string key, double value) { set(std::move(key), format_real(value)); }

std::string ReportDocument::render() const {
    std::string out;
    for (const auto& [k, v] : entries_) out += k + ": " + v + "\n";
    return out;
}

std::string format_ids(const std::vector<std::size_t>& ids) {
    std::string out = "[";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(ids[i]);
    }
    return out + "]";
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string csv_header() { return "mode,n,k,q,N,model,t,trials,failures,estimate,ci_low,ci_high,bound,pass\n"; }

std::string csv_row(const ExperimentRow& row) {
    std::ostringstream os;
    const auto& e = row.estimate;
    os << row.mode << ',' << row.n << ',' << row.k << ',' << row.q << ',' << row.N << ',' << row.model << ','
       << row.t << ',' << e.trials << ',' << e.failures << ',' << format_real(e.estimate) << ','
       << format_real(e.ci_low) << ',' << format_real(e.ci_high) << ',' << format_real(e.bound) << ','
       << (row.pass ? "pass" : "fail") << '\n';
    return os.str();
}

}  // namespace nxmds
