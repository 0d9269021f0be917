#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "spectra_svi/block_profile.hpp"

namespace spectra_svi {

// Text format shared by block profiles and channel sets:
//
//   spectra-svi-matrices 1
//   count <K>
//   matrix <rows> <cols>
//   (<re>,<im>) (<re>,<im>) ...      one line per row
//   ...
//
// Values are written with 17 significant digits, so a write/read cycle is
// exact. Lines starting with '#' are ignored on read.

void WriteMatrices(std::ostream& out, std::span<const ComplexMatrix> matrices);

/// Throws DomainError naming the offending line on malformed input.
std::vector<ComplexMatrix> ReadMatrices(std::istream& in);

void WriteBlockProfile(std::ostream& out, const BlockProfile& profile);
BlockProfile ReadBlockProfile(std::istream& in);

/// %.17g formatting used by every text writer in the project.
std::string FormatDouble(double v);

}  // namespace spectra_svi
