#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spectra_svi/experiment/grid.hpp"

namespace spectra_svi::experiment {

inline constexpr const char* kGapCsvHeader = "method,m,n,sigma,lambda,path,iter,gap,elapsed_ms";
inline constexpr const char* kThroughputCsvHeader = "method,player,path,iter,R";
inline constexpr const char* kSummaryCsvHeader = "method,m,n,sigma,lambda,iter,mean_gap,paths";

/// Writes the header and the records sorted by (method, m, n, sigma, lambda,
/// path, iter); floating-point columns use 17 significant digits.
void WriteGapCsv(std::ostream& out, std::vector<GapRecord> records);
void WriteGapCsv(const std::string& path, std::vector<GapRecord> records);

/// Parses a file written by WriteGapCsv. Throws DomainError with the line
/// number on malformed input.
std::vector<GapRecord> ReadGapCsv(std::istream& in);
std::vector<GapRecord> ReadGapCsv(const std::string& path);

void WriteThroughputCsv(std::ostream& out, const std::vector<ThroughputRecord>& records);
void WriteSummaryCsv(std::ostream& out, const std::vector<MeanGapRecord>& records);

}  // namespace spectra_svi::experiment
