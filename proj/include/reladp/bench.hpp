#pragma once

// Runs the prover over a directory of .trs files.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "prover.hpp"
#include "trs.hpp"

namespace reladp {

struct BenchEntry {
    std::string file;
    std::string verdict;  // YES, NO, MAYBE or ERROR
    double seconds = 0;
    std::string error;
};

struct BenchReport {
    std::vector<BenchEntry> entries;
    std::size_t yes = 0, no = 0, maybe = 0, errors = 0;

    double average_seconds() const {
        if (entries.empty()) return 0;
        double s = 0;
        for (const auto& e : entries) s += e.seconds;
        return s / static_cast<double>(entries.size());
    }
};

inline BenchReport run_benchmark(const std::filesystem::path& dir, const ProverConfig& cfg) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw Error("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".trs") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());

    BenchReport report;
    for (const auto& f : files) {
        BenchEntry entry;
        entry.file = f.filename().string();
        auto t0 = std::chrono::steady_clock::now();
        try {
            auto res = prove(load_relative_trs(f.string()), cfg);
            entry.verdict = to_string(res.answer);
            switch (res.answer) {
                case Answer::Yes: ++report.yes; break;
                case Answer::No: ++report.no; break;
                case Answer::Maybe: ++report.maybe; break;
            }
        } catch (const std::exception& ex) {
            entry.verdict = "ERROR";
            entry.error = ex.what();
            ++report.errors;
        }
        entry.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.entries.push_back(std::move(entry));
    }
    return report;
}

inline void write_csv(std::ostream& os, const BenchReport& report) {
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string o = "\"";
        for (char c : s) {
            if (c == '"') o += '"';
            o += c;
        }
        return o + "\"";
    };
    os << "file,verdict,seconds,error\n";
    for (const auto& e : report.entries) {
        os << quote(e.file) << ',' << e.verdict << ',' << std::fixed << std::setprecision(3) << e.seconds << ','
           << quote(e.error) << '\n';
    }
}

inline void print_table(std::ostream& os, const BenchReport& report) {
    std::size_t w = 4;
    for (const auto& e : report.entries) w = std::max(w, e.file.size());
    os << std::left << std::setw(static_cast<int>(w)) << "file" << "  " << std::setw(7) << "verdict"
       << "  time(s)\n";
    for (const auto& e : report.entries) {
        os << std::left << std::setw(static_cast<int>(w)) << e.file << "  " << std::setw(7) << e.verdict << "  "
           << std::right << std::fixed << std::setprecision(3) << e.seconds;
        if (!e.error.empty()) os << "  " << e.error;
        os << '\n';
    }
    os << "YES " << report.yes << "  NO " << report.no << "  MAYBE " << report.maybe;
    if (report.errors) os << "  ERROR " << report.errors;
    os << "  avg " << std::fixed << std::setprecision(3) << report.average_seconds() << " s\n";
}

}  // namespace reladp
