#include "spectra_svi/matrix_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "spectra_svi/error.hpp"

namespace spectra_svi {

namespace {

constexpr const char* kMagic = "spectra-svi-matrices";
constexpr int kVersion = 1;

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty, non-comment line.
  std::string Next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return line;
    }
    Fail("unexpected end of input");
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw DomainError("matrix file line " + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

Complex ParseEntry(const std::string& token, const LineReader& reader) {
  // (re,im)
  if (token.size() < 5 || token.front() != '(' || token.back() != ')') {
    reader.Fail("malformed entry '" + token + "'");
  }
  const auto comma = token.find(',');
  if (comma == std::string::npos) reader.Fail("malformed entry '" + token + "'");
  const std::string re_s = token.substr(1, comma - 1);
  const std::string im_s = token.substr(comma + 1, token.size() - comma - 2);
  char* end = nullptr;
  const double re = std::strtod(re_s.c_str(), &end);
  if (end == re_s.c_str() || *end != '\0') reader.Fail("bad real part '" + re_s + "'");
  const double im = std::strtod(im_s.c_str(), &end);
  if (end == im_s.c_str() || *end != '\0') reader.Fail("bad imaginary part '" + im_s + "'");
  return {re, im};
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void WriteMatrices(std::ostream& out, std::span<const ComplexMatrix> matrices) {
  out << kMagic << ' ' << kVersion << '\n';
  out << "count " << matrices.size() << '\n';
  for (const ComplexMatrix& m : matrices) {
    out << "matrix " << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (c > 0) out << ' ';
        out << '(' << FormatDouble(m(r, c).real()) << ',' << FormatDouble(m(r, c).imag()) << ')';
      }
      out << '\n';
    }
  }
}

std::vector<ComplexMatrix> ReadMatrices(std::istream& in) {
  LineReader reader(in);
  {
    std::istringstream header(reader.Next());
    std::string magic;
    int version = 0;
    if (!(header >> magic >> version) || magic != kMagic) reader.Fail("missing format header");
    if (version != kVersion) reader.Fail("unsupported format version " + std::to_string(version));
  }
  long count = -1;
  {
    std::istringstream line(reader.Next());
    std::string key;
    if (!(line >> key >> count) || key != "count" || count < 0) reader.Fail("expected 'count <K>'");
  }
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) {
    std::istringstream line(reader.Next());
    std::string key;
    long rows = 0, cols = 0;
    if (!(line >> key >> rows >> cols) || key != "matrix" || rows < 1 || cols < 1) {
      reader.Fail("expected 'matrix <rows> <cols>'");
    }
    ComplexMatrix m(rows, cols);
    for (long r = 0; r < rows; ++r) {
      std::istringstream row(reader.Next());
      std::string token;
      long c = 0;
      while (row >> token) {
        if (c >= cols) reader.Fail("too many entries in row");
        m(r, c++) = ParseEntry(token, reader);
      }
      if (c != cols) reader.Fail("expected " + std::to_string(cols) + " entries in row");
    }
    out.push_back(std::move(m));
  }
  return out;
}

void WriteBlockProfile(std::ostream& out, const BlockProfile& profile) {
  std::vector<ComplexMatrix> ms;
  ms.reserve(profile.size());
  for (const HermitianMatrix& b : profile.blocks) ms.push_back(b.matrix());
  WriteMatrices(out, ms);
}

BlockProfile ReadBlockProfile(std::istream& in) {
  BlockProfile p;
  for (const ComplexMatrix& m : ReadMatrices(in)) {
    p.blocks.push_back(HermitianMatrix::FromMatrix(m));
  }
  return p;
}

}  // namespace spectra_svi
