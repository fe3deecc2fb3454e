// SPDX-License-Identifier: Apache-2.0
//
// Dataset CSV files and box sidecar files.
//
// CSV header: feature_0,...,feature_{d-1},b1,b2. One impression per row;
// values are written with 17 significant digits so a round trip is exact.
// Rows stored with a multiplicity are written that many times.

#ifndef RPO_IO_H_
#define RPO_IO_H_

#include <istream>
#include <ostream>
#include <string>

#include "rpo/core.h"

namespace rpo {

// Throws std::invalid_argument with the 1-based line number on a malformed
// header, a non-numeric cell, a wrong cell count or invalid bids.
Dataset ReadCsv(std::istream& in);
void WriteCsv(const Dataset& data, std::ostream& out);

Dataset LoadCsv(const std::string& path);
void SaveCsv(const Dataset& data, const std::string& path);

// {"lower": [...], "upper": [...], "offset_lower": x, "offset_upper": y}
std::string BoxToJson(const Box& box);
Box BoxFromJson(const std::string& text);
Box LoadBox(const std::string& path);
void SaveBox(const Box& box, const std::string& path);

std::string ModelToJson(const LinearModel& model);

}  // namespace rpo

#endif  // RPO_IO_H_
