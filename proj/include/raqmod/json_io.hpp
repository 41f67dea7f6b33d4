#pragma once

#include "raqmod/series.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace raqmod {

using json = nlohmann::json;

json scalar_to_json(const PeriodScalar& s);
PeriodScalar scalar_from_json(const json& j);

// {"weights":[r,s],"order":N,"terms":[{"m","n","k","coeff"}]} in (m,n,k) order.
json series_to_json(const RAForm& f);
RAForm series_from_json(const json& j);
RAForm read_series_file(const std::string& path);

// Family: {"r,s": series, ..., "constants": [names]}.
json family_to_json(const std::map<std::pair<int, int>, RAForm>& members, const std::vector<std::string>& constants);

// Serializes with floats at 17 significant digits and sorted object keys.
std::string dump_json(const json& j, int indent = 1);
std::string format_double(double v);

} // namespace raqmod
