#pragma once

#include <iosfwd>
#include <string>

#include "uu/sample.hpp"

namespace uu {

// Input format: header `source_id,entity_id,value`, one observation per row,
// row order is arrival order. Throws ParseError with the offending line, and
// the build_sample errors with row context.
IntegratedSample ingest_csv(std::istream& in);
IntegratedSample ingest_csv_file(const std::string& path);

// Same format, arrival order, values printed with shortest round-trip
// precision so re-ingesting reproduces the statistics exactly.
void write_csv(std::ostream& out, const IntegratedSample& sample);

std::string format_double(double v);

} // namespace uu
