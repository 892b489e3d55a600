#pragma once

#include <string>
#include <utility>
#include <vector>

#include "jcpost/channels.hpp"
#include "jcpost/husimi.hpp"
#include "jcpost/table.hpp"

namespace jcpost {

inline constexpr const char* kToolVersion = "1.0.0";

using MetaList = std::vector<std::pair<std::string, std::string>>;

// Columns: <x_name>, channel, mean_in, mean_out, fraction, success, dim,
// top_population, flag.
Table sweep_table(const std::vector<SweepRow>& rows, const std::string& x_name,
                  const MetaList& meta);

// Columns: re, im, q. Grid geometry is recorded in the metadata.
Table qgrid_table(const QGrid& grid, const MetaList& meta);

}  // namespace jcpost
