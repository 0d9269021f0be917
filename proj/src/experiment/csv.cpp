#include "spectra_svi/experiment/csv.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "spectra_svi/error.hpp"
#include "spectra_svi/matrix_io.hpp"

namespace spectra_svi::experiment {

namespace {

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

[[noreturn]] void Fail(int line, const std::string& what) {
  throw DomainError("csv line " + std::to_string(line) + ": " + what);
}

double ToDouble(const std::string& s, int line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) Fail(line, "bad number '" + s + "'");
  return v;
}

template <typename Int>
Int ToInt(const std::string& s, int line) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    Fail(line, "bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

void WriteGapCsv(std::ostream& out, std::vector<GapRecord> records) {
  SortRecords(records);
  out << kGapCsvHeader << '\n';
  for (const GapRecord& r : records) {
    out << r.method << ',' << r.m << ',' << r.n << ',' << FormatDouble(r.sigma) << ','
        << FormatDouble(r.lambda) << ',' << r.path << ',' << r.iter << ',' << FormatDouble(r.gap)
        << ',' << FormatDouble(r.elapsed_ms) << '\n';
  }
}

void WriteGapCsv(const std::string& path, std::vector<GapRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  WriteGapCsv(out, std::move(records));
}

std::vector<GapRecord> ReadGapCsv(std::istream& in) {
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line) || line != kGapCsvHeader) Fail(line_no, "unexpected header");
  std::vector<GapRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitFields(line);
    if (f.size() != 9) Fail(line_no, "expected 9 fields");
    GapRecord r;
    r.method = f[0];
    r.m = ToInt<long>(f[1], line_no);
    r.n = ToInt<long>(f[2], line_no);
    r.sigma = ToDouble(f[3], line_no);
    r.lambda = ToDouble(f[4], line_no);
    r.path = ToInt<int>(f[5], line_no);
    r.iter = ToInt<long>(f[6], line_no);
    r.gap = ToDouble(f[7], line_no);
    r.elapsed_ms = ToDouble(f[8], line_no);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<GapRecord> ReadGapCsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  return ReadGapCsv(in);
}

void WriteThroughputCsv(std::ostream& out, const std::vector<ThroughputRecord>& records) {
  out << kThroughputCsvHeader << '\n';
  for (const ThroughputRecord& r : records) {
    out << r.method << ',' << r.player << ',' << r.path << ',' << r.iter << ','
        << FormatDouble(r.rate) << '\n';
  }
}

void WriteSummaryCsv(std::ostream& out, const std::vector<MeanGapRecord>& records) {
  out << kSummaryCsvHeader << '\n';
  for (const MeanGapRecord& r : records) {
    out << r.method << ',' << r.m << ',' << r.n << ',' << FormatDouble(r.sigma) << ','
        << FormatDouble(r.lambda) << ',' << r.iter << ',' << FormatDouble(r.mean_gap) << ','
        << r.paths << '\n';
  }
}

}  // namespace spectra_svi::experiment
