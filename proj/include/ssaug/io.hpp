#ifndef SSAUG_IO_HPP
#define SSAUG_IO_HPP

#include <string>

#include "ssaug/metrics.hpp"
#include "ssaug/time_series.hpp"

namespace ssaug {

// On-disk formats. Datasets are one JSON object per line with fields
// id ("subject/trial"), label, values; single series files are one value per
// line with optional '#' comments. All floats are written with shortest
// round-trip precision, so write -> read -> write is byte-identical.

std::string format_double(double v);

Dataset read_dataset(const std::string& path);
void write_dataset(const Dataset& d, const std::string& path);

TimeSeries read_series(const std::string& path);
void write_series(const TimeSeries& s, const std::string& path, const std::string& header = "");

// fidelity report as a single JSON object; dtw is also reported x100 as
// dtw_pct
std::string fidelity_to_json(const FidelityReport& r);

}  // namespace ssaug

#endif
